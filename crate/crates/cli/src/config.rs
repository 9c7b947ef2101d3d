//! Problem configuration files (TOML).
//!
//! ```toml
//! mode = "T1"
//! f = "x^2 - x - 1"
//!
//! [[G]]
//! a = "1"
//! alpha = "x"
//!
//! [[H]]
//! a = "1"
//! alpha = "x + 1"
//! ```

use std::fmt;
use std::path::Path;

use num_traits::Signed;
use pillai_core::{Poly, RatFunc, Rational, Recurrence};
use serde::Deserialize;
use thiserror::Error;

use crate::parse::{parse_expression, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    T1,
    T2,
    T3,
    Corollary,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::T1 => "T1",
            Mode::T2 => "T2",
            Mode::T3 => "T3",
            Mode::Corollary => "COROLLARY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub a: String,
    pub alpha: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum Multiplier {
    Int(u64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "G")]
    g: Vec<TermSpec>,
    #[serde(rename = "H")]
    h: Vec<TermSpec>,
    f: Option<String>,
    #[serde(default)]
    genus: u64,
    mode: Mode,
    window_multiplier: Option<Multiplier>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("in {field}: {source}")]
    Expression { field: String, source: ParseError },
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// A validated problem: every expression parsed, `f` present exactly when
/// the mode needs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemConfig {
    pub g_spec: Vec<TermSpec>,
    pub h_spec: Vec<TermSpec>,
    pub g: Recurrence,
    pub h: Recurrence,
    pub f: Option<RatFunc>,
    pub genus: u64,
    pub mode: Mode,
    pub window_multiplier: Rational,
}

fn expr(field: String, text: &str) -> Result<RatFunc, ConfigError> {
    parse_expression(text).map_err(|source| ConfigError::Expression { field, source })
}

fn recurrence(name: &str, spec: &[TermSpec]) -> Result<Recurrence, ConfigError> {
    let terms = spec
        .iter()
        .enumerate()
        .map(|(i, t)| Ok((expr(format!("{name}[{i}].a"), &t.a)?, expr(format!("{name}[{i}].alpha"), &t.alpha)?)))
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Recurrence::new(terms).map_err(|e| ConfigError::Invalid(format!("{name}: {e}")))
}

impl ProblemConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        let g = recurrence("G", &raw.g)?;
        let h = recurrence("H", &raw.h)?;
        let needs_f = matches!(raw.mode, Mode::T1 | Mode::Corollary);
        let f = match (&raw.f, needs_f) {
            (Some(text), true) => Some(expr("f".into(), text)?),
            (None, false) => None,
            (None, true) => return Err(ConfigError::Invalid(format!("mode {} requires f", raw.mode))),
            (Some(_), false) => return Err(ConfigError::Invalid(format!("mode {} takes no f", raw.mode))),
        };
        let window_multiplier = match raw.window_multiplier {
            None => Rational::from_integer(3.into()),
            Some(Multiplier::Int(n)) => Rational::from_integer(n.into()),
            Some(Multiplier::Text(s)) => {
                let v = expr("window_multiplier".into(), &s)?;
                v.as_constant().ok_or_else(|| ConfigError::Invalid("window_multiplier must be a number".into()))?
            }
        };
        if !window_multiplier.is_positive() {
            return Err(ConfigError::Invalid("window_multiplier must be positive".into()));
        }
        let config = ProblemConfig {
            g_spec: raw.g,
            h_spec: raw.h,
            g,
            h,
            f,
            genus: raw.genus,
            mode: raw.mode,
            window_multiplier,
        };
        if config.mode == Mode::Corollary {
            config.corollary_polys()?;
        }
        Ok(config)
    }

    /// `(p, q, f)` for the pure-power mode.
    pub fn corollary_polys(&self) -> Result<(Poly, Poly, Poly), ConfigError> {
        let single = |name: &str, r: &Recurrence| -> Result<Poly, ConfigError> {
            match r.terms() {
                [t] if t.coeff.is_one() && t.root.is_polynomial() => Ok(t.root.num().clone()),
                _ => Err(ConfigError::Invalid(format!("{name} must be a single term with a = 1 and polynomial alpha"))),
            }
        };
        let f = self.f.as_ref().expect("validated");
        if !f.is_polynomial() {
            return Err(ConfigError::Invalid("f must be a polynomial".into()));
        }
        Ok((single("G", &self.g)?, single("H", &self.h)?, f.num().clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
mode = "T1"
f = "x^2 - x - 1"
[[G]]
a = "1"
alpha = "x"
[[H]]
a = "1"
alpha = "x + 1"
"#;

    #[test]
    fn loads_example() {
        let c = ProblemConfig::from_toml(EXAMPLE).unwrap();
        assert_eq!(c.mode, Mode::T1);
        assert_eq!(c.window_multiplier, Rational::from_integer(3.into()));
        assert_eq!(c.f.unwrap().to_string(), "x^2 - x - 1");
    }

    #[test]
    fn rejects_bad_configs() {
        let no_f = EXAMPLE.replace("f = \"x^2 - x - 1\"", "");
        assert!(matches!(ProblemConfig::from_toml(&no_f), Err(ConfigError::Invalid(_))));
        let t2_with_f = EXAMPLE.replace("\"T1\"", "\"T2\"");
        assert!(matches!(ProblemConfig::from_toml(&t2_with_f), Err(ConfigError::Invalid(_))));
        let bad_expr = EXAMPLE.replace("x + 1", "x +");
        assert!(matches!(ProblemConfig::from_toml(&bad_expr), Err(ConfigError::Expression { .. })));
        assert!(matches!(ProblemConfig::from_toml("mode = 1"), Err(ConfigError::Toml(_))));
        let half = format!("{EXAMPLE}\nwindow_multiplier = \"5/2\"\n");
        // Top-level keys after a table belong to the table; put it first.
        assert!(ProblemConfig::from_toml(&half).is_err());
        let half = format!("window_multiplier = \"5/2\"\n{EXAMPLE}");
        assert_eq!(ProblemConfig::from_toml(&half).unwrap().window_multiplier, Rational::new(5.into(), 2.into()));
    }
}
