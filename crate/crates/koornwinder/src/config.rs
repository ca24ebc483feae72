//! Flat JSON configuration for the command-line tools: exact rational
//! strings for the parameters, an optional explicit torus point, and an
//! optional seed for the randomized suites.

use crate::operators::{forced_torus_point, OperatorError, RepContext};
use crate::scalars::{parse_rat, ParamSpec, Rat, ScalarError, TorusPoint};
use crate::weyl::{orbit_of, Orbit};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub rank: usize,
    pub sqrt_q: String,
    pub k0: String,
    pub u0: String,
    pub k: String,
    pub kr: String,
    pub ur: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad value in config: {0}")]
    Scalar(#[from] ScalarError),
    #[error("explicit t has {got} coordinates but rank is {rank}")]
    TorusRank { got: usize, rank: usize },
    #[error(
        "the orbit constraints leave free torus directions; supply t explicitly \
         (facet {facet:?})"
    )]
    TorusUnderdetermined { facet: Vec<usize> },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn params(&self) -> Result<ParamSpec, ConfigError> {
        Ok(ParamSpec::new(
            self.rank,
            parse_rat(&self.sqrt_q)?,
            parse_rat(&self.k0)?,
            parse_rat(&self.u0)?,
            parse_rat(&self.k)?,
            parse_rat(&self.kr)?,
            parse_rat(&self.ur)?,
        )?)
    }

    /// The torus point to use for an orbit: the explicit `t` when present,
    /// otherwise the point forced by the orbit's constraints. An orbit
    /// with free torus directions and no explicit `t` is an error.
    pub fn torus_point(
        &self,
        params: &ParamSpec,
        orbit: &Orbit,
    ) -> Result<TorusPoint, ConfigError> {
        match &self.t {
            Some(coords) => {
                if coords.len() != params.rank {
                    return Err(ConfigError::TorusRank {
                        got: coords.len(),
                        rank: params.rank,
                    });
                }
                let parsed: Result<Vec<Rat>, ScalarError> =
                    coords.iter().map(|s| parse_rat(s)).collect();
                Ok(TorusPoint::new(parsed?)?)
            }
            None => {
                forced_torus_point(params, orbit).ok_or_else(|| ConfigError::TorusUnderdetermined {
                    facet: orbit.facet.clone(),
                })
            }
        }
    }

    /// A full representation context on the orbit of `point`.
    pub fn context_for(&self, point: &[Rat]) -> Result<RepContext, ConfigError> {
        let params = self.params()?;
        let orbit = orbit_of(point);
        let t = self.torus_point(&params, &orbit)?;
        Ok(RepContext::new(params, orbit, t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_int;

    fn base_config() -> Config {
        Config {
            rank: 2,
            sqrt_q: "3".into(),
            k0: "2".into(),
            u0: "5".into(),
            k: "7".into(),
            kr: "11".into(),
            ur: "13".into(),
            t: None,
            seed: None,
        }
    }

    #[test]
    fn params_parse() {
        let p = base_config().params().unwrap();
        assert_eq!(p.rank, 2);
        assert_eq!(p.sqrt_q, rat_int(3));
        assert_eq!(p.ur, rat_int(13));
    }

    #[test]
    fn integer_orbit_needs_no_explicit_t() {
        let cfg = base_config();
        let ctx = cfg.context_for(&[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(ctx.t, TorusPoint::one(2));
    }

    #[test]
    fn regular_orbit_demands_explicit_t() {
        let cfg = base_config();
        let err = cfg.context_for(&[crate::scalars::rat(1, 3), crate::scalars::rat(1, 5)]);
        assert!(matches!(err, Err(ConfigError::TorusUnderdetermined { .. })));

        let mut with_t = base_config();
        with_t.t = Some(vec!["17/5".into(), "19/5".into()]);
        let ctx = with_t
            .context_for(&[crate::scalars::rat(1, 3), crate::scalars::rat(1, 5)])
            .unwrap();
        assert_eq!(ctx.t.coords[0], crate::scalars::rat(17, 5));
    }

    #[test]
    fn invalid_explicit_t_is_rejected() {
        let mut cfg = base_config();
        cfg.t = Some(vec!["2".into(), "2".into()]);
        // integer orbit forces t = 1
        let err = cfg.context_for(&[rat_int(0), rat_int(0)]);
        assert!(matches!(err, Err(ConfigError::Operator(_))));
    }

    #[test]
    fn json_roundtrip() {
        let text =
            r#"{"rank":1,"sqrt_q":"3","k0":"2","u0":"5","k":"7","kr":"11","ur":"13","seed":42}"#;
        let cfg: Config = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.seed, Some(42));
        assert_eq!(cfg.t, None);
        let back = serde_json::to_string(&cfg).unwrap();
        let again: Config = serde_json::from_str(&back).unwrap();
        assert_eq!(again.rank, 1);
        assert_eq!(again.seed, Some(42));
    }
}
