//! `springs`: reproduces the named experiments and designs single pulses.

mod error;
mod experiments;
mod manifest;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use error::{CliError, Result};
use manifest::Manifest;
use output::Output;

#[derive(Parser)]
#[command(name = "springs", version, about = "Pulse design for ensembles of driven springs")]
struct Cli {
    /// Worker threads for frequency and ion sweeps (0 = one per core).
    #[arg(long, short, global = true, default_value_t = 0)]
    jobs: usize,
    /// Root directory for results; each run writes to a subdirectory.
    #[arg(long, global = true, env = "SPRINGS_OUTPUT_DIR", default_value = "springs-output")]
    output_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment.
    Run {
        name: String,
        /// TOML file of parameter overrides, applied before --set.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override one parameter, e.g. --set lambda=1e-2.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Design a single pulse and sweep its end states.
    Design {
        method: Method,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// List experiments, their parameters and output files.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Adiabatic,
    Sta,
    Oct1,
    Oct2,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Adiabatic => "adiabatic",
            Method::Sta => "sta",
            Method::Oct1 => "oct1",
            Method::Oct2 => "oct2",
        }
    }
}

fn configure(m: &mut Manifest, config: Option<&Path>, overrides: &[String]) -> Result<()> {
    if let Some(path) = config {
        m.params.merge_file(path)?;
    }
    for o in overrides {
        m.params.set_str(o)?;
    }
    Ok(())
}

fn execute(m: &Manifest, dir: &Path, jobs: usize) -> Result<()> {
    let mut out = Output::create(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| experiments::run(&m.name, &m.params, &mut out))?;
    for path in out.written() {
        println!("{}", path.display());
    }
    Ok(())
}

fn list() {
    for m in manifest::builtin() {
        println!("{}: {}", m.name, m.description);
        println!("  parameters:");
        for (k, v) in m.params.iter() {
            println!("    {k} = {v}");
        }
        println!("  outputs:");
        for o in m.outputs.iter().chain(std::iter::once(&"summary.toml: u_max, energy, endpoint residuals, conditions".to_string())) {
            println!("    {o}");
        }
    }
    println!("design methods: adiabatic, sta, oct1, oct2 (parameters as for `custom`)");
}

fn main_inner(cli: Cli) -> Result<()> {
    match cli.command {
        Command::List => {
            list();
            Ok(())
        }
        Command::Run { name, config, overrides } => {
            let mut m = manifest::find(&name)?;
            configure(&mut m, config.as_deref(), &overrides)?;
            execute(&m, &cli.output_dir.join(&m.name), cli.jobs)
        }
        Command::Design { method, config, overrides } => {
            let mut m = manifest::find("custom")?;
            m.params.set("method", toml::Value::String(method.name().into()))?;
            configure(&mut m, config.as_deref(), &overrides)?;
            let dir = cli.output_dir.join(format!("design-{}", method.name()));
            execute(&m, &dir, cli.jobs)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Solver { .. } | CliError::Io { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
