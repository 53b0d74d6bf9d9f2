use std::collections::HashMap;
use std::path::Path;

use hvir_core::lattice::{mu_form, LatticeVector};
use hvir_core::scalars::{parse_rational, Context, Rational, Scalar, Var, PARAMS};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "HVIR_CONFIG";

/// Session settings shared by all commands. Every field has a default, so a
/// config file only needs the fields it changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    pub n: usize,
    pub params: Vec<String>,
    #[serde(rename = "window_B")]
    pub window_b: i64,
    #[serde(rename = "degree_D")]
    pub degree_d: usize,
    #[serde(rename = "coord_K")]
    pub coord_k: i64,
    pub mu_values: Option<Vec<RationalLit>>,
    pub seed: u64,
}

/// A rational given either as a JSON integer or as a string like `"-7/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLit {
    Int(i64),
    Text(String),
}

impl RationalLit {
    pub fn value(&self) -> Option<Rational> {
        match self {
            RationalLit::Int(i) => Some(Rational::from_integer((*i).into())),
            RationalLit::Text(t) => parse_rational(t),
        }
    }
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            n: 2,
            params: PARAMS.iter().map(|p| p.to_string()).collect(),
            window_b: 2,
            degree_d: 2,
            coord_k: 2,
            mu_values: None,
            seed: 0,
        }
    }
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<SessionConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 || self.n > hvir_core::scalars::MAX_RANK {
            return Err(CliError::Usage(format!(
                "n must be in 1..={}",
                hvir_core::scalars::MAX_RANK
            )));
        }
        if self.window_b < 1 || self.degree_d < 1 || self.coord_k < 1 {
            return Err(CliError::Usage(
                "window_B, degree_D and coord_K must be positive".into(),
            ));
        }
        if let Some(mu) = &self.mu_values {
            if mu.len() != self.n {
                return Err(CliError::Usage(format!(
                    "mu_values needs {} entries, got {}",
                    self.n,
                    mu.len()
                )));
            }
            if mu.iter().any(|m| m.value().is_none()) {
                return Err(CliError::Usage("mu_values entries must be rationals".into()));
            }
        }
        Context::new(self.n, &self.params).map_err(CliError::Usage)?;
        Ok(())
    }
}

/// A validated config together with its parsing context and specialization.
pub struct Session {
    pub config: SessionConfig,
    pub ctx: Context,
    mu: Option<HashMap<Var, Rational>>,
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Session, CliError> {
        config.validate()?;
        let ctx = Context::new(config.n, &config.params).map_err(CliError::Usage)?;
        let mu = config.mu_values.as_ref().map(|vals| {
            vals.iter()
                .enumerate()
                .map(|(i, v)| (Var::mu(i), v.value().expect("validated")))
                .collect()
        });
        Ok(Session { config, ctx, mu })
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    /// Fails when `μ·α` vanishes at the configured specialization for `α != 0`.
    pub fn guard(&self, alpha: &LatticeVector) -> Result<(), CliError> {
        let Some(mu) = &self.mu else { return Ok(()) };
        if alpha.is_zero() || alpha.dim() != self.config.n {
            return Ok(());
        }
        let v = mu_form(alpha)
            .partial_eval(mu)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        if v.is_zero() {
            return Err(CliError::NonGeneric(alpha.clone()));
        }
        Ok(())
    }

    pub fn guard_all<'a>(&self, alphas: impl IntoIterator<Item = &'a LatticeVector>) -> Result<(), CliError> {
        alphas.into_iter().try_for_each(|a| self.guard(a))
    }

    /// Substitutes the configured `μ` values, if any.
    pub fn specialize(&self, s: &Scalar) -> Result<Scalar, CliError> {
        match &self.mu {
            None => Ok(s.clone()),
            Some(mu) => s.partial_eval(mu).map_err(|e| CliError::Usage(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let c: SessionConfig = serde_json::from_str(r#"{"n": 3, "mu_values": [1, "-2/3", "5"]}"#).unwrap();
        assert_eq!(c.window_b, 2);
        assert_eq!(c.params.len(), PARAMS.len());
        c.validate().unwrap();
        assert!(serde_json::from_str::<SessionConfig>(r#"{"mu": [1]}"#).is_err());
    }

    #[test]
    fn guard_rejects_vanishing_forms() {
        let config = SessionConfig {
            mu_values: Some(vec![RationalLit::Int(2), RationalLit::Int(1)]),
            ..SessionConfig::default()
        };
        let s = Session::new(config).unwrap();
        assert!(matches!(s.guard(&[1, -2].into()), Err(CliError::NonGeneric(_))));
        s.guard(&[1, -1].into()).unwrap();
        s.guard(&[0, 0].into()).unwrap();
        assert_eq!(s.specialize(&mu_form(&[1, 1].into())).unwrap(), Scalar::int(3));
    }
}
