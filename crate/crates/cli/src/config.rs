//! Datum and weight resolution from flags and the optional TOML config.

use crate::error::CliError;
use framedcb::cartan::{CartanDatum, Weight};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub datum: Option<DatumSection>,
    #[serde(default)]
    pub weights: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSection {
    /// Node names; defaults to i0, i1, ...
    pub names: Option<Vec<String>>,
    pub rows: Vec<Vec<i64>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("bad config: {e}")))
    }

    pub fn datum(&self) -> Result<Option<CartanDatum>, CliError> {
        let Some(d) = &self.datum else { return Ok(None) };
        let names = match &d.names {
            Some(n) => n.clone(),
            None => (0..d.rows.len()).map(|k| format!("i{k}")).collect(),
        };
        CartanDatum::new(names, d.rows.clone()).map(Some).map_err(CliError::from)
    }
}

/// Built-in datum for a type name: A1, A2, A3, ...
pub fn builtin_datum(ty: &str) -> Result<CartanDatum, CliError> {
    let up = ty.trim().to_ascii_uppercase();
    match up.as_str() {
        "A1" => Ok(CartanDatum::a1()),
        "A2" => Ok(CartanDatum::a2()),
        _ => match up.strip_prefix('A').and_then(|r| r.parse::<usize>().ok()) {
            Some(n) if n >= 1 => Ok(CartanDatum::a_n(n)),
            _ => Err(CliError::unsupported(format!(
                "type {ty} is not available; canonical bases are implemented for A1 and A2 only"
            ))),
        },
    }
}

/// Parses `1,0,2`; an empty string is the zero vector of length 0.
pub fn parse_vector(s: &str) -> Result<Vec<i64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::usage(format!("bad integer vector {s}"))))
        .collect()
}

/// A weight given literally or as a name from `[weights]`.
pub fn resolve_weight(spec: &str, cfg: &ConfigFile, d: &CartanDatum) -> Result<Weight, CliError> {
    let trimmed = spec.trim();
    let literal = trimmed.starts_with(|c: char| c.is_ascii_digit() || c == '-');
    let v = if literal {
        parse_vector(trimmed)?
    } else {
        cfg.weights
            .get(trimmed)
            .cloned()
            .ok_or_else(|| CliError::usage(format!("unknown weight name {trimmed}")))?
    };
    if v.len() != d.len() {
        return Err(CliError::usage(format!("weight {spec} has {} entries, the datum has {} nodes", v.len(), d.len())));
    }
    let w = Weight::new(v);
    if !w.is_dominant() {
        return Err(CliError::usage(format!("weight {spec} is not dominant")));
    }
    Ok(w)
}

/// A root in ℕ[I] of the right length.
pub fn resolve_root(spec: &str, d: &CartanDatum) -> Result<Vec<i64>, CliError> {
    let v = parse_vector(spec)?;
    if v.len() != d.len() || v.iter().any(|&x| x < 0) {
        return Err(CliError::usage(format!("root {spec} must have {} nonnegative entries", d.len())));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_with_datum_and_weights() {
        let cfg = ConfigFile::parse(
            r#"
            [datum]
            names = ["a", "b"]
            rows = [[2, -1], [-1, 2]]
            [weights]
            rho = [1, 1]
            "#,
        )
        .unwrap();
        let d = cfg.datum().unwrap().unwrap();
        assert_eq!(d.fingerprint(), CartanDatum::new(vec!["a".into(), "b".into()], vec![vec![2, -1], vec![-1, 2]]).unwrap().fingerprint());
        assert_eq!(resolve_weight("rho", &cfg, &d).unwrap(), Weight::new(vec![1, 1]));
        assert_eq!(resolve_weight("2,0", &cfg, &d).unwrap(), Weight::new(vec![2, 0]));
        assert!(resolve_weight("-1,0", &cfg, &d).is_err());
        assert!(resolve_weight("1", &cfg, &d).is_err());
    }

    #[test]
    fn builtin_types() {
        assert_eq!(builtin_datum("a2").unwrap().len(), 2);
        assert_eq!(builtin_datum("A4").unwrap().len(), 4);
        assert_eq!(builtin_datum("B2").unwrap_err().exit_code(), 3);
    }
}
