//! Experiment configuration for corpus generation.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff_rings::{IdealDescriptor, RingDescriptor};
use crate::groups::{FormKind, FormType};
use crate::reduction::SearchBudget;

use super::json::{self, Carrier};
use super::IoError;

/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "UMROW_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Unimodular rows over `Z/n` (isotropic for orthogonal forms).
    Unimodular,
    /// Rows congruent to `e_1` modulo an ideal.
    Radical,
    /// Group matrices fixing `e_{2n}`, built from words.
    Fixing,
    /// Unimodular rows over a monoid ring, drawn from the orbit of `e_1`.
    MonoidRows,
    /// Unimodular rows over a monoid ring with independent random entries.
    RandomMonoidRows,
    /// Rows over a polynomial ring whose restriction to `t_1 = 0` is unimodular.
    Nagata,
    /// Random pointed rank-2 cones.
    Cones,
    /// The fixed monoid corpus.
    Monoids,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub family: Family,
    #[serde(default = "default_form")]
    pub form: String,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Value>,
    /// Support degree bound for monoid-ring rows.
    #[serde(default = "default_degree")]
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_bound: Option<i64>,
    #[serde(default = "default_beam")]
    pub search_beam: usize,
    #[serde(default = "default_depth")]
    pub search_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seminormal_bound: Option<i64>,
}

fn default_form() -> String {
    "symplectic".into()
}

fn default_sizes() -> Vec<usize> {
    vec![4]
}

fn default_degree() -> i64 {
    3
}

fn default_beam() -> usize {
    SearchBudget::default().beam_width
}

fn default_depth() -> usize {
    SearchBudget::default().max_depth
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| IoError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies a seed override such as the value of [`SEED_ENV`].
    pub fn override_seed(&mut self, value: Option<&str>) -> Result<(), IoError> {
        if let Some(v) = value {
            self.seed = v.trim().parse().map_err(|_| IoError::Config(format!("{SEED_ENV}={v:?} is not a u64")))?;
        }
        Ok(())
    }

    pub fn form_type(&self) -> Result<FormType, IoError> {
        match self.form.as_str() {
            "symplectic" => Ok(FormType::Symplectic),
            "orthogonal" => Ok(FormType::Orthogonal),
            other => Err(IoError::Config(format!("unknown form {other:?}"))),
        }
    }

    pub fn forms(&self) -> Result<Vec<FormKind>, IoError> {
        let kind = self.form_type()?;
        self.sizes.iter().map(|&s| Ok(FormKind::new(kind, s / 2)?)).collect()
    }

    pub fn carrier(&self) -> Result<Option<Carrier>, IoError> {
        self.ring.as_ref().map(json::carrier_from_json).transpose()
    }

    pub fn ideal_in(&self, base: &RingDescriptor) -> Result<Option<IdealDescriptor>, IoError> {
        self.ideal.as_ref().map(|v| json::ideal_from_json(base, v)).transpose()
    }

    pub fn search_budget(&self) -> SearchBudget {
        SearchBudget { beam_width: self.search_beam, max_depth: self.search_depth, seed: self.seed }
    }

    pub fn validate(&self) -> Result<(), IoError> {
        let err = |m: String| Err(IoError::Config(m));
        if self.count == 0 {
            return err("count must be positive".into());
        }
        if self.sizes.is_empty() {
            return err("sizes must be nonempty".into());
        }
        if let Some(s) = self.sizes.iter().find(|&&s| s < 4 || s % 2 != 0) {
            return err(format!("form size {s} must be even and at least 4"));
        }
        self.form_type()?;
        if self.degree <= 0 || self.search_beam == 0 || self.search_depth == 0 {
            return err("degree and search bounds must be positive".into());
        }
        if self.witness_bound.is_some_and(|b| b <= 0) || self.seminormal_bound.is_some_and(|b| b <= 0) {
            return err("bounds must be positive".into());
        }
        let carrier = self.carrier()?;
        let needs_ring = !matches!(self.family, Family::Cones | Family::Monoids);
        match (&carrier, needs_ring) {
            (None, true) => return err(format!("family {:?} needs a ring", self.family)),
            (Some(_), false) => return err(format!("family {:?} takes no ring", self.family)),
            _ => {}
        }
        match (self.family, &carrier) {
            (Family::Unimodular | Family::Radical | Family::Fixing, Some(Carrier::Scalar(RingDescriptor::IntegersMod(_)))) => {}
            (Family::MonoidRows | Family::RandomMonoidRows | Family::Nagata, Some(Carrier::Monoid(_))) => {}
            (Family::Cones | Family::Monoids, None) => {}
            (f, _) => return err(format!("family {f:?} does not fit the configured ring")),
        }
        if self.family == Family::Radical {
            let Some(Carrier::Scalar(r)) = &carrier else { unreachable!() };
            if self.ideal_in(r)?.is_none() {
                return err("radical rows need an ideal".into());
            }
        }
        Ok(())
    }
}

/// The stable range `D(R)` for a ring of dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityBound {
    pub d: u32,
    pub kind: FormType,
}

impl StabilityBound {
    pub fn value(&self) -> u32 {
        match self.kind {
            FormType::Symplectic => (self.d + 2).max(4),
            FormType::Orthogonal => (2 * self.d + 4).max(6),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stability_bounds() {
        let s = |d| StabilityBound { d, kind: FormType::Symplectic }.value();
        let o = |d| StabilityBound { d, kind: FormType::Orthogonal }.value();
        assert_eq!((s(0), s(1), s(2), s(5)), (4, 4, 4, 7));
        assert_eq!((o(0), o(1), o(2)), (6, 6, 8));
    }

    #[test]
    fn config_validation() {
        let good = r#"{"seed": 42, "family": "unimodular", "count": 100, "ring": {"kind": "mod", "n": 360}}"#;
        let mut cfg = ExperimentConfig::from_json(good).unwrap();
        assert_eq!(cfg.sizes, vec![4]);
        cfg.override_seed(Some("7")).unwrap();
        assert_eq!(cfg.seed, 7);
        assert!(cfg.override_seed(Some("x")).is_err());

        let zero = good.replace("100", "0");
        assert!(ExperimentConfig::from_json(&zero).is_err());
        let odd = r#"{"seed": 1, "family": "unimodular", "count": 1, "sizes": [5], "ring": {"kind": "mod", "n": 4}}"#;
        assert!(ExperimentConfig::from_json(odd).is_err());
        let no_ring = r#"{"seed": 1, "family": "radical", "count": 1}"#;
        assert!(ExperimentConfig::from_json(no_ring).is_err());
        let unknown = r#"{"seed": 1, "family": "monoids", "count": 1, "colour": "red"}"#;
        assert!(ExperimentConfig::from_json(unknown).is_err());
        assert!(ExperimentConfig::from_json(r#"{"seed": 1, "family": "monoids", "count": 1}"#).is_ok());
    }
}
