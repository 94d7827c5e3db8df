//! Built-in experiment manifests and parameter overrides.

use std::path::Path;

use toml::{Table, Value};

use crate::error::{CliError, Result};

const SOURCES: [&str; 8] = [
    include_str!("../manifests/fig1.toml"),
    include_str!("../manifests/fig2.toml"),
    include_str!("../manifests/fig3.toml"),
    include_str!("../manifests/table1.toml"),
    include_str!("../manifests/icr.toml"),
    include_str!("../manifests/fig6.toml"),
    include_str!("../manifests/fig7.toml"),
    include_str!("../manifests/custom.toml"),
];

#[derive(Debug, Clone)]
pub struct Manifest {
    pub name: String,
    pub description: String,
    /// One line per output file: `file: columns`.
    pub outputs: Vec<String>,
    pub params: Params,
}

/// Every built-in manifest, in listing order.
pub fn builtin() -> Vec<Manifest> {
    SOURCES.iter().map(|s| parse(s).expect("built-in manifest is valid")).collect()
}

pub fn find(name: &str) -> Result<Manifest> {
    let all = builtin();
    let valid = all.iter().map(|m| m.name.clone()).collect();
    all.into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| CliError::UnknownExperiment { name: name.to_string(), valid })
}

fn parse(src: &str) -> std::result::Result<Manifest, String> {
    let mut t: Table = src.parse().map_err(|e: toml::de::Error| e.to_string())?;
    let text = |t: &Table, k: &str| t.get(k).and_then(Value::as_str).map(str::to_string).ok_or(format!("missing `{k}`"));
    let name = text(&t, "name")?;
    let description = text(&t, "description")?;
    let outputs = t
        .get("outputs")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(str::to_string).collect())
        .unwrap_or_default();
    let values = match t.remove("params") {
        Some(Value::Table(p)) => p,
        _ => return Err("missing [params]".into()),
    };
    Ok(Manifest {
        params: Params { experiment: name.clone(), values },
        name,
        description,
        outputs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    experiment: String,
    values: Table,
}

impl Params {
    pub fn keys(&self) -> Vec<String> {
        self.values.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.values.iter()
    }

    fn unknown(&self, key: &str) -> CliError {
        let valid = self.keys();
        let suggestion = valid
            .iter()
            .map(|k| (strsim::levenshtein(key, k), k))
            .filter(|(d, _)| *d <= 2)
            .min()
            .map(|(_, k)| k.clone());
        CliError::UnknownKey { key: key.to_string(), experiment: self.experiment.clone(), suggestion, valid }
    }

    /// Replaces a default, keeping its type. Integers are accepted for floats.
    pub fn set(&mut self, key: &str, value: Value) -> Result<()> {
        let old = self.values.get(key).ok_or_else(|| self.unknown(key))?;
        let value = coerce(key, old, value)?;
        self.values.insert(key.to_string(), value);
        Ok(())
    }

    /// Applies a `key=value` string. The value is read as a TOML value, or as
    /// a bare string when that fails; a comma list fills an array default.
    pub fn set_str(&mut self, assignment: &str) -> Result<()> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::MalformedOverride(assignment.to_string()))?;
        let (key, raw) = (key.trim(), raw.trim());
        let old = self.values.get(key).ok_or_else(|| self.unknown(key))?;
        let value = match format!("v = {raw}").parse::<Table>() {
            Ok(mut t) => t.remove("v").expect("parsed key"),
            Err(_) if old.is_array() => Value::Array(raw.split(',').map(|s| scalar(s.trim())).collect()),
            Err(_) => Value::String(raw.to_string()),
        };
        self.set(key, value)
    }

    /// Applies every key of a flat TOML file.
    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        let t: Table = src
            .parse()
            .map_err(|e: toml::de::Error| CliError::Config { path: path.to_path_buf(), msg: e.to_string() })?;
        for (k, v) in t {
            self.set(&k, v)?;
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Result<&Value> {
        self.values.get(key).ok_or_else(|| self.unknown(key))
    }

    fn bad(&self, key: &str, expected: &str) -> CliError {
        CliError::BadValue {
            key: key.to_string(),
            value: self.values.get(key).map(|v| v.to_string()).unwrap_or_default(),
            expected: expected.to_string(),
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        match self.get(key)? {
            Value::Float(x) => Ok(*x),
            Value::Integer(i) => Ok(*i as f64),
            _ => Err(self.bad(key, "a number")),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        match self.get(key)? {
            Value::Integer(i) if *i >= 0 => Ok(*i as usize),
            _ => Err(self.bad(key, "a non-negative integer")),
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        self.get(key)?.as_bool().ok_or_else(|| self.bad(key, "true or false"))
    }

    pub fn str(&self, key: &str) -> Result<&str> {
        self.get(key)?.as_str().ok_or_else(|| self.bad(key, "a string"))
    }

    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>> {
        let arr = self.get(key)?.as_array().ok_or_else(|| self.bad(key, "a list of integers"))?;
        arr.iter()
            .map(|v| match v {
                Value::Integer(i) if *i > 0 => Ok(*i as usize),
                _ => Err(self.bad(key, "a list of positive integers")),
            })
            .collect()
    }

    /// String value restricted to `choices`.
    pub fn choice(&self, key: &str, choices: &[&str]) -> Result<&str> {
        let s = self.str(key)?;
        if choices.contains(&s) {
            Ok(s)
        } else {
            Err(self.bad(key, &format!("one of {}", choices.join(", "))))
        }
    }
}

fn scalar(s: &str) -> Value {
    if let Ok(i) = s.parse::<i64>() {
        Value::Integer(i)
    } else if let Ok(x) = s.parse::<f64>() {
        Value::Float(x)
    } else {
        Value::String(s.to_string())
    }
}

fn coerce(key: &str, old: &Value, new: Value) -> Result<Value> {
    let bad = |new: &Value| CliError::BadValue {
        key: key.to_string(),
        value: new.to_string(),
        expected: old.type_str().to_string(),
    };
    match (old, new) {
        (Value::Float(_), Value::Integer(i)) => Ok(Value::Float(i as f64)),
        (Value::Array(_), Value::Array(a)) => Ok(Value::Array(a)),
        (Value::Array(_), v @ Value::Integer(_)) => Ok(Value::Array(vec![v])),
        (o, n) if o.same_type(&n) => Ok(n),
        (_, n) => Err(bad(&n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        let names: Vec<String> = builtin().into_iter().map(|m| m.name).collect();
        assert_eq!(names, ["fig1", "fig2", "fig3", "table1", "icr", "fig6", "fig7", "custom"]);
    }

    #[test]
    fn typo_suggests_key() {
        let mut p = find("icr").unwrap().params;
        let e = p.set_str("lamda=0.1").unwrap_err().to_string();
        assert!(e.contains("did you mean `lambda`"), "{e}");
        assert!(e.contains("steps_per_period"), "{e}");
    }

    #[test]
    fn overrides_keep_types() {
        let mut p = find("fig2").unwrap().params;
        p.set_str("t_f=12").unwrap();
        assert_eq!(p.f64("t_f").unwrap(), 12.0);
        p.set_str("n_values=2,4").unwrap();
        assert_eq!(p.usize_list("n_values").unwrap(), vec![2, 4]);
        p.set_str("n_values=[6]").unwrap();
        assert_eq!(p.usize_list("n_values").unwrap(), vec![6]);
        p.set_str("family=minimal").unwrap();
        assert_eq!(p.str("family").unwrap(), "minimal");
        assert!(p.set_str("t_f=abc").is_err());
        assert!(p.set_str("n_points=1.5").is_err());
        assert!(p.set_str("t_f").is_err());
    }
}
