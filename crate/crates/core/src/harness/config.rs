//! Flat `key = value` configuration files.
//!
//! One entry per line, `#` starts a comment, blank lines are ignored. Keys
//! are case-sensitive and `_` is read as `-`, so `tau_max` and `tau-max`
//! name the same key. A key may appear only once. List values are
//! comma-separated.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::models::ModelId;

use super::sweep::{SweepMethod, SweepSpec};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("line {line_no}: expected `key = value`")))?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(Error::Spec(format!("line {line_no}: empty key")));
            }
            if let Some((first, _)) = entries.get(&key) {
                return Err(Error::Spec(format!("line {line_no}: `{key}` already set on line {first}")));
            }
            entries.insert(key, (line_no, value.trim().to_string()));
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Config::parse(&text).map_err(|e| match e {
            Error::Spec(msg) => Error::Spec(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize(key)).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Fail on the first key not in `known`.
    pub fn check_keys(&self, known: &[&str]) -> Result<()> {
        match self.entries.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            Some((k, (line, _))) => Err(Error::Spec(format!("line {line}: unknown key `{k}`"))),
            None => Ok(()),
        }
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(&normalize(key)) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Spec(format!("line {line}: cannot parse `{key} = {v}`"))),
        }
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        self.parsed(key)
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        self.parsed(key)
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>> {
        self.parsed(key)
    }

    pub fn get_list(&self, key: &str) -> Option<Vec<&str>> {
        self.get(key)
            .map(|v| v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
    }
}

/// Keys accepted in a sweep file.
pub const SWEEP_KEYS: &[&str] = &[
    "model",
    "aT",
    "bT-min",
    "bT-max",
    "bT-steps",
    "methods",
    "alpha",
    "rtol",
    "atol",
    "tau-max",
    "max-steps",
    "quad-rel-tol",
    "jobs",
];

/// Build a sweep from a config. `model`, `aT` and `methods` are required;
/// the `bT` grid defaults to `[0, 10]` with 401 points.
pub fn sweep_spec_from_config(cfg: &Config) -> Result<SweepSpec> {
    cfg.check_keys(SWEEP_KEYS)?;
    let model: ModelId = cfg
        .get("model")
        .ok_or_else(|| Error::Spec("missing `model`".into()))?
        .parse()
        .map_err(|e: Error| Error::Spec(e.to_string()))?;
    let a_values = cfg
        .get_list("aT")
        .ok_or_else(|| Error::Spec("missing `aT`".into()))?
        .into_iter()
        .map(|s| s.parse::<f64>().map_err(|_| Error::Spec(format!("bad aT value `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    let methods = cfg
        .get_list("methods")
        .ok_or_else(|| Error::Spec("missing `methods`".into()))?
        .into_iter()
        .map(str::parse)
        .collect::<Result<Vec<SweepMethod>>>()?;

    let mut spec = SweepSpec::new(model, a_values, methods);
    if let Some(v) = cfg.get_f64("bT-min")? {
        spec.b_min = v;
    }
    if let Some(v) = cfg.get_f64("bT-max")? {
        spec.b_max = v;
    }
    if let Some(v) = cfg.get_usize("bT-steps")? {
        spec.b_steps = v;
    }
    spec.alpha = cfg.get_f64("alpha")?;
    if let Some(v) = cfg.get_f64("rtol")? {
        spec.integrator.rtol = v;
    }
    if let Some(v) = cfg.get_f64("atol")? {
        spec.integrator.atol = v;
    }
    if let Some(v) = cfg.get_usize("max-steps")? {
        spec.integrator.max_steps = v;
    }
    spec.window = cfg.get_f64("tau-max")?;
    if let Some(v) = spec.window {
        spec.integrator.tau_max = v;
    }
    if let Some(v) = cfg.get_f64("quad-rel-tol")? {
        spec.quadrature.rel_tol = v;
    }
    spec.jobs = cfg.get_usize("jobs")?;
    spec.validate()?;
    Ok(spec)
}
