//! Line-oriented instance files.
//!
//! ```text
//! field: 101
//! vars: y1, y2
//! gens: y1^2, y1*y2, y2^3
//! bound: 4            # optional; discovered up to bound_max when absent
//! koszul: y1 + y2, y2^2
//! gens2: y1^3, y2^2   # Tor mode: a second ideal in the same variables
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::PrimeField;
use crate::poly::{parse_poly, ParseError, TruncatedPoly};

/// Polynomials in instance files are read modulo `m^PARSE_BOUND`. Any ideal
/// certified with a bound below this is unaffected by the cut.
pub const PARSE_BOUND: u32 = 64;
pub const DEFAULT_FIELD: u64 = 101;
pub const DEFAULT_BOUND_MAX: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: expected `key: value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}:`")]
    MissingKey(&'static str),
    #[error("line {line}: modulus must be prime, got `{value}`")]
    NotPrime { line: usize, value: String },
    #[error("line {line}: invalid bound `{value}` (expected an integer in 1..{})", PARSE_BOUND - 1)]
    BadBound { line: usize, value: String },
    #[error("line {line}, `{key}` entry {index}: {source}")]
    Poly {
        line: usize,
        key: &'static str,
        index: usize,
        source: ParseError,
    },
    #[error("line {line}: variable name `{name}` is invalid or repeated")]
    BadVariable { line: usize, name: String },
    #[error("line {line}, `{key}` entry {index}: generator has a nonzero constant term")]
    ConstantTerm {
        line: usize,
        key: &'static str,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Provenance {
    Path { path: String },
    Seed { seed: u64 },
    Builtin { name: String },
    Inline,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Path { path } => write!(f, "{path}"),
            Provenance::Seed { seed } => write!(f, "seed {seed}"),
            Provenance::Builtin { name } => write!(f, "builtin:{name}"),
            Provenance::Inline => write!(f, "<inline>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub field: PrimeField,
    pub vars: Vec<String>,
    pub gens: Vec<TruncatedPoly>,
    pub bound: Option<u32>,
    pub koszul: Option<Vec<TruncatedPoly>>,
    pub gens2: Option<Vec<TruncatedPoly>>,
    pub provenance: Provenance,
}

impl InstanceSpec {
    pub fn gens_text(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.fmt_with(&self.vars)).collect()
    }

    pub fn koszul_text(&self) -> Option<Vec<String>> {
        self.koszul
            .as_ref()
            .map(|xs| xs.iter().map(|x| x.fmt_with(&self.vars)).collect())
    }

    pub fn gens2_text(&self) -> Option<Vec<String>> {
        self.gens2
            .as_ref()
            .map(|gs| gs.iter().map(|g| g.fmt_with(&self.vars)).collect())
    }

    /// Canonical file form; parses back to the same spec.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.provenance);
        out += &format!("field: {}\n", self.field.modulus());
        out += &format!("vars: {}\n", self.vars.join(", "));
        out += &format!("gens: {}\n", self.gens_text().join(", "));
        if let Some(b) = self.bound {
            out += &format!("bound: {b}\n");
        }
        if let Some(k) = self.koszul_text() {
            out += &format!("koszul: {}\n", k.join(", "));
        }
        if let Some(g) = self.gens2_text() {
            out += &format!("gens2: {}\n", g.join(", "));
        }
        out
    }
}

const KEYS: [&str; 6] = ["field", "vars", "gens", "bound", "koszul", "gens2"];

pub fn parse_instance(text: &str, provenance: Provenance) -> Result<InstanceSpec, InstanceError> {
    let mut entries: [Option<(usize, &str)>; 6] = Default::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once(':').ok_or(InstanceError::Syntax { line })?;
        let key = key.trim();
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| InstanceError::UnknownKey {
                line,
                key: key.to_owned(),
            })?;
        if entries[slot].is_some() {
            return Err(InstanceError::DuplicateKey {
                line,
                key: key.to_owned(),
            });
        }
        entries[slot] = Some((line, value.trim()));
    }
    let [field, vars, gens, bound, koszul, gens2] = entries;

    let field = match field {
        None => PrimeField::new(DEFAULT_FIELD).expect("default modulus is prime"),
        Some((line, value)) => value
            .parse::<u64>()
            .ok()
            .and_then(|p| PrimeField::new(p).ok())
            .ok_or_else(|| InstanceError::NotPrime {
                line,
                value: value.to_owned(),
            })?,
    };

    let (vars_line, vars_text) = vars.ok_or(InstanceError::MissingKey("vars"))?;
    let vars = split_list(vars_text);
    for (k, v) in vars.iter().enumerate() {
        let valid = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if !valid || vars[..k].contains(v) {
            return Err(InstanceError::BadVariable {
                line: vars_line,
                name: v.clone(),
            });
        }
    }

    let parse_list = |key: &'static str, (line, value): (usize, &str)| {
        split_list(value)
            .iter()
            .enumerate()
            .map(|(index, t)| {
                parse_poly(t, &vars, field, PARSE_BOUND).map_err(|source| InstanceError::Poly {
                    line,
                    key,
                    index,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let ideal_list = |key: &'static str, entry: (usize, &str)| {
        let polys = parse_list(key, entry)?;
        if let Some(index) = polys.iter().position(|g| g.constant_term() != 0) {
            return Err(InstanceError::ConstantTerm {
                line: entry.0,
                key,
                index,
            });
        }
        Ok(polys)
    };

    let gens = ideal_list("gens", gens.ok_or(InstanceError::MissingKey("gens"))?)?;
    let gens2 = gens2.map(|e| ideal_list("gens2", e)).transpose()?;
    let koszul = koszul.map(|e| parse_list("koszul", e)).transpose()?;
    let bound = bound
        .map(|(line, value)| {
            value
                .parse::<u32>()
                .ok()
                .filter(|b| (1..PARSE_BOUND - 1).contains(b))
                .ok_or_else(|| InstanceError::BadBound {
                    line,
                    value: value.to_owned(),
                })
        })
        .transpose()?;

    Ok(InstanceSpec {
        field,
        vars,
        gens,
        bound,
        koszul,
        gens2,
        provenance,
    })
}

fn split_list(value: &str) -> Vec<String> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    value.split(',').map(|s| s.trim().to_owned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
field: 101
vars: y1, y2
gens: y1^2, y1*y2, y2^3
bound: 4            # optional
koszul: y1 + y2, y2^2
";

    #[test]
    fn parses_documented_format() {
        let spec = parse_instance(SAMPLE, Provenance::Inline).unwrap();
        assert_eq!(spec.field.modulus(), 101);
        assert_eq!(spec.vars, vec!["y1", "y2"]);
        assert_eq!(spec.gens_text(), vec!["y1^2", "y1*y2", "y2^3"]);
        assert_eq!(spec.bound, Some(4));
        assert_eq!(spec.koszul_text().unwrap(), vec!["y2 + y1", "y2^2"]);
        assert!(spec.gens2.is_none());
        let again = parse_instance(&spec.to_text(), Provenance::Inline).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn missing_gens() {
        let err = parse_instance("field: 5\nvars: y\n", Provenance::Inline).unwrap_err();
        assert_eq!(err, InstanceError::MissingKey("gens"));
        assert!(err.to_string().contains("gens"));
    }

    #[test]
    fn composite_field() {
        let err = parse_instance("field: 4\nvars: y\ngens: y^2\n", Provenance::Inline).unwrap_err();
        assert!(matches!(err, InstanceError::NotPrime { line: 1, .. }));
        assert!(err.to_string().contains("modulus must be prime"));
    }

    #[test]
    fn other_errors() {
        let p = |t: &str| parse_instance(t, Provenance::Inline).unwrap_err();
        assert!(matches!(p("vars: y\ngens: y\ncolour: red\n"), InstanceError::UnknownKey { line: 3, .. }));
        assert!(matches!(p("vars: y\ngens: z^2\n"), InstanceError::Poly { line: 2, .. }));
        assert!(matches!(p("vars: y\ngens: y^2, 1 + y\n"), InstanceError::ConstantTerm { index: 1, .. }));
        assert!(matches!(p("vars: y\ngens: y\ngens: y^2\n"), InstanceError::DuplicateKey { line: 3, .. }));
        assert!(matches!(p("vars: y, y\ngens: y\n"), InstanceError::BadVariable { .. }));
        assert!(matches!(p("vars: y\ngens: y\nbound: 0\n"), InstanceError::BadBound { .. }));
        assert!(matches!(p("vars y\n"), InstanceError::Syntax { line: 1 }));
        assert_eq!(p("gens: y\n"), InstanceError::MissingKey("vars"));
    }

    #[test]
    fn residue_field_instance() {
        let spec = parse_instance("vars:\ngens:\nkoszul: 0, 0\n", Provenance::Inline).unwrap();
        assert!(spec.vars.is_empty() && spec.gens.is_empty());
        assert_eq!(spec.koszul.unwrap().len(), 2);
        assert_eq!(spec.field.modulus(), 101);
    }
}
