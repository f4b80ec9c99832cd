//! Analytically tractable synthetic oracle.
//!
//! The oracle's metric is a sum of a base level, per-factor configuration
//! offsets, hashed pairwise interaction offsets and a per-assignment
//! residual noise term. Every term is derived deterministically from the
//! spec seed, so the metric is a pure function of the assignment and the
//! whole response surface can be enumerated exactly. That makes the oracle a
//! verification harness with known ground truth: effect strengths are dialed
//! in per factor, interaction strength with a single amplitude, and the
//! expected decomposition is computable by full enumeration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::executor::{AdapterError, ExperimentAdapter, SeedBundle};
use crate::hash::{normal_from_hash, StableHasher};
use crate::planner::enumerate_joint;
use crate::space::{Assignment, FactorSpace};
use crate::stats::{self, StatsError};

/// Enumeration bound for [`analytic_decomposition`]: full grids above this
/// many cells are refused rather than ground through.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle spec invalid: {0}")]
    Spec(String),
    #[error("space ({cells} cells) exceeds the enumeration limit of {limit}")]
    SpaceTooLarge { cells: u64, limit: u64 },
    #[error("factor `{0}` not covered by the oracle spec")]
    UnknownFactor(String),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Per-configuration offsets of one factor: an explicit table, or a normal
/// distribution whose per-configuration draws derive from the surface seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectSpec {
    Offsets(Vec<f64>),
    Normal { sigma: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEffect {
    pub factor: String,
    pub effect: EffectSpec,
}

/// Ground-truth response surface of the synthetic oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticOracleSpec {
    /// Base metric level.
    pub base: f64,
    pub effects: Vec<FactorEffect>,
    /// Pairwise interaction amplitude; each factor-config pair contributes a
    /// hashed offset scaled by this.
    pub interaction: f64,
    /// Residual noise level, drawn per assignment.
    pub noise: f64,
    /// Seed for all derived offsets. Changing it realizes a fresh surface
    /// with the same effect strengths.
    pub seed: u64,
}

impl SyntheticOracleSpec {
    /// Spec with normal effects of the given sigmas, matched to `space`
    /// factor order.
    pub fn with_sigmas(
        space: &FactorSpace,
        base: f64,
        sigmas: &[f64],
        interaction: f64,
        noise: f64,
        seed: u64,
    ) -> Result<Self, OracleError> {
        if sigmas.len() != space.num_factors() {
            return Err(OracleError::Spec(format!(
                "{} sigmas for {} factors",
                sigmas.len(),
                space.num_factors()
            )));
        }
        Ok(Self {
            base,
            effects: space
                .factors()
                .iter()
                .zip(sigmas)
                .map(|(f, &sigma)| FactorEffect {
                    factor: f.name().to_string(),
                    effect: EffectSpec::Normal { sigma },
                })
                .collect(),
            interaction,
            noise,
            seed,
        })
    }

    pub fn validate(&self, space: &FactorSpace) -> Result<(), OracleError> {
        if self.noise < 0.0 || !self.noise.is_finite() {
            return Err(OracleError::Spec("noise must be non-negative".into()));
        }
        if !self.interaction.is_finite() {
            return Err(OracleError::Spec("interaction must be finite".into()));
        }
        for factor in space.factors() {
            let effect = self
                .effects
                .iter()
                .find(|e| e.factor == factor.name())
                .ok_or_else(|| OracleError::UnknownFactor(factor.name().to_string()))?;
            match &effect.effect {
                EffectSpec::Offsets(v) => {
                    if v.len() as u64 != factor.cardinality() {
                        return Err(OracleError::Spec(format!(
                            "factor `{}` has cardinality {} but {} explicit offsets",
                            factor.name(),
                            factor.cardinality(),
                            v.len()
                        )));
                    }
                }
                EffectSpec::Normal { sigma } => {
                    if *sigma < 0.0 || !sigma.is_finite() {
                        return Err(OracleError::Spec(format!(
                            "factor `{}` has invalid sigma {sigma}",
                            factor.name()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn effect_offset(&self, factor: &str, index: u64) -> Result<f64, OracleError> {
        let effect = self
            .effects
            .iter()
            .find(|e| e.factor == factor)
            .ok_or_else(|| OracleError::UnknownFactor(factor.to_string()))?;
        Ok(match &effect.effect {
            EffectSpec::Offsets(v) => v[index as usize],
            EffectSpec::Normal { sigma } => {
                sigma
                    * normal_from_hash(
                        StableHasher::new()
                            .write_u64(self.seed)
                            .write_str("effect")
                            .write_str(factor)
                            .write_u64(index)
                            .finish(),
                    )
            }
        })
    }

    fn pair_offset(&self, f1: &str, k1: u64, f2: &str, k2: u64) -> f64 {
        normal_from_hash(
            StableHasher::new()
                .write_u64(self.seed)
                .write_str("pair")
                .write_str(f1)
                .write_u64(k1)
                .write_str(f2)
                .write_u64(k2)
                .finish(),
        )
    }

    fn noise_draw(&self, assignment: &Assignment) -> f64 {
        let mut h = StableHasher::new().write_u64(self.seed).write_str("noise");
        for (name, index) in assignment.entries() {
            h = h.write_str(name).write_u64(index);
        }
        self.noise * normal_from_hash(h.finish())
    }

    /// The oracle metric: pure and deterministic in the assignment.
    pub fn value(&self, assignment: &Assignment) -> Result<f64, OracleError> {
        let mut v = self.base;
        let entries: Vec<(&str, u64)> = assignment.entries().collect();
        for &(name, index) in &entries {
            v += self.effect_offset(name, index)?;
        }
        if self.interaction != 0.0 {
            for i in 0..entries.len() {
                for j in (i + 1)..entries.len() {
                    let (f1, k1) = entries[i];
                    let (f2, k2) = entries[j];
                    v += self.interaction * self.pair_offset(f1, k1, f2, k2);
                }
            }
        }
        Ok(v + self.noise_draw(assignment))
    }
}

/// [`ExperimentAdapter`] wrapping a [`SyntheticOracleSpec`].
#[derive(Debug, Clone)]
pub struct SyntheticOracle {
    spec: SyntheticOracleSpec,
    space: FactorSpace,
    experiment_id: String,
}

impl SyntheticOracle {
    pub fn new(spec: SyntheticOracleSpec, space: FactorSpace) -> Result<Self, OracleError> {
        spec.validate(&space)?;
        Ok(Self {
            spec,
            space,
            experiment_id: "synthetic".to_string(),
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.experiment_id = id.into();
        self
    }

    pub fn spec(&self) -> &SyntheticOracleSpec {
        &self.spec
    }

    pub fn space(&self) -> &FactorSpace {
        &self.space
    }
}

impl ExperimentAdapter for SyntheticOracle {
    fn experiment_id(&self) -> &str {
        &self.experiment_id
    }

    fn metric_name(&self) -> &str {
        "oracle_metric"
    }

    fn evaluate(&self, assignment: &Assignment, _seeds: &SeedBundle) -> Result<f64, AdapterError> {
        self.space
            .validate_assignment(assignment)
            .map_err(|e| AdapterError::Config(e.to_string()))?;
        self.spec
            .value(assignment)
            .map_err(|e| AdapterError::Failure(e.to_string()))
    }
}

/// Exact expectations of the decomposition statistics for one factor,
/// computed by full enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedDecomposition {
    pub c_std: f64,
    pub m_std: f64,
    pub gm_std: f64,
    pub importance: f64,
}

/// Enumerates the entire configuration space of `spec` over `space` and
/// computes c_std/m_std/gm_std/importance with the same estimator
/// definitions the sampled path uses. Serves as the independent reference
/// the sampled investigation is checked against.
pub fn analytic_decomposition(
    spec: &SyntheticOracleSpec,
    space: &FactorSpace,
    investigated: &str,
) -> Result<ExpectedDecomposition, OracleError> {
    spec.validate(space)?;
    let factor = space
        .factor(investigated)
        .ok_or_else(|| OracleError::UnknownFactor(investigated.to_string()))?;
    let golden = space.golden_space_size();
    if golden.saturated || golden.value > ENUMERATION_LIMIT {
        return Err(OracleError::SpaceTooLarge {
            cells: golden.value,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mitigated: Vec<(&str, u64)> = space
        .factors()
        .iter()
        .filter(|f| f.name() != investigated)
        .map(|f| (f.name(), f.cardinality()))
        .collect();
    let rows = enumerate_joint(&mitigated);

    let mut p_means = Vec::with_capacity(rows.len());
    let mut p_stds = Vec::with_capacity(rows.len());
    let mut all_values = Vec::with_capacity(golden.value as usize);
    for row in rows {
        let mut row_values = Vec::with_capacity(factor.cardinality() as usize);
        for k in 0..factor.cardinality() {
            let mut entries = row.clone();
            entries.insert(investigated.to_string(), k);
            row_values.push(spec.value(&Assignment::new(entries))?);
        }
        let (p_mean, p_std) = stats::partial_stats(&row_values)?;
        p_means.push(p_mean);
        p_stds.push(p_std);
        all_values.extend(row_values);
    }

    let c_std = stats::mean(&p_stds)?;
    let m_std = stats::sample_std(&p_means)?;
    let gm_std = stats::sample_std(&all_values)?;
    let importance = stats::importance(c_std, m_std, gm_std)?.score;
    Ok(ExpectedDecomposition {
        c_std,
        m_std,
        gm_std,
        importance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::executor::derive_seed_bundle;
    use std::collections::BTreeMap;

    fn space3(cards: [u64; 3]) -> FactorSpace {
        FactorSpace::build([("f1", cards[0]), ("f2", cards[1]), ("f3", cards[2])]).unwrap()
    }

    fn assignment(k1: u64, k2: u64, k3: u64) -> Assignment {
        Assignment::new(BTreeMap::from([
            ("f1".to_string(), k1),
            ("f2".to_string(), k2),
            ("f3".to_string(), k3),
        ]))
    }

    #[test]
    fn degenerate_spec_is_constant() {
        let space = space3([4, 4, 4]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 10.0, &[0.0, 0.0, 0.0], 0.0, 0.0, 1).unwrap();
        for k in 0..4 {
            assert_eq!(spec.value(&assignment(k, 3 - k, k)).unwrap(), 10.0);
        }
    }

    #[test]
    fn single_effect_factor_makes_rows_permutations_of_one_multiset() {
        // only f1 carries effects: within an interactions grid for f1 every
        // row holds the same values, so m_std is exactly zero
        let space = space3([5, 4, 3]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 0.0, &[1.5, 0.0, 0.0], 0.0, 0.0, 9).unwrap();
        let exp = analytic_decomposition(&spec, &space, "f1").unwrap();
        assert_eq!(exp.m_std, 0.0);
        assert!(exp.c_std > 0.0);
        assert!((exp.importance - exp.c_std / exp.gm_std).abs() < 1e-12);
    }

    #[test]
    fn oracle_is_pure_and_seed_sensitive() {
        let space = space3([6, 6, 6]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 1.0, &[2.0, 1.0, 0.5], 0.3, 0.2, 4).unwrap();
        let a = assignment(1, 2, 3);
        assert_eq!(spec.value(&a).unwrap(), spec.value(&a).unwrap());
        let spec2 = SyntheticOracleSpec {
            seed: 5,
            ..spec.clone()
        };
        assert_ne!(spec.value(&a).unwrap(), spec2.value(&a).unwrap());
    }

    #[test]
    fn adapter_contract_and_purity() {
        let space = space3([8, 8, 8]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 0.5, &[1.0, 0.5, 0.0], 0.2, 0.1, 2).unwrap();
        let oracle = SyntheticOracle::new(spec, space).unwrap();
        let a = assignment(0, 1, 2);
        let seeds = derive_seed_bundle(oracle.experiment_id(), &a);
        let v1 = oracle.evaluate(&a, &seeds).unwrap();
        let v2 = oracle.evaluate(&a, &seeds).unwrap();
        assert_eq!(v1.to_bits(), v2.to_bits());
    }

    #[test]
    fn explicit_offsets_are_used_verbatim() {
        let spec = SyntheticOracleSpec {
            base: 1.0,
            effects: vec![
                FactorEffect {
                    factor: "f1".into(),
                    effect: EffectSpec::Offsets(vec![0.0, 10.0]),
                },
                FactorEffect {
                    factor: "f2".into(),
                    effect: EffectSpec::Offsets(vec![-1.0, 1.0]),
                },
            ],
            interaction: 0.0,
            noise: 0.0,
            seed: 0,
        };
        let a = Assignment::new(BTreeMap::from([
            ("f1".to_string(), 1u64),
            ("f2".to_string(), 0u64),
        ]));
        assert_eq!(spec.value(&a).unwrap(), 10.0);
    }

    #[test]
    fn offsets_length_mismatch_is_rejected() {
        let space = FactorSpace::build([("f1", 3u64), ("f2", 2u64)]).unwrap();
        let spec = SyntheticOracleSpec {
            base: 0.0,
            effects: vec![
                FactorEffect {
                    factor: "f1".into(),
                    effect: EffectSpec::Offsets(vec![0.0, 1.0]),
                },
                FactorEffect {
                    factor: "f2".into(),
                    effect: EffectSpec::Normal { sigma: 1.0 },
                },
            ],
            interaction: 0.0,
            noise: 0.0,
            seed: 0,
        };
        assert!(matches!(
            SyntheticOracle::new(spec, space).unwrap_err(),
            OracleError::Spec(_)
        ));
    }

    #[test]
    fn zero_effect_factor_in_noisy_model_has_negative_expected_importance() {
        let space = space3([6, 6, 6]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 0.0, &[1.0, 1.0, 0.0], 0.0, 0.4, 7).unwrap();
        let exp = analytic_decomposition(&spec, &space, "f3").unwrap();
        assert!(exp.importance < 0.0, "importance {}", exp.importance);
    }

    #[test]
    fn single_effect_factor_without_noise_has_importance_near_one() {
        let space = space3([8, 4, 4]);
        let spec =
            SyntheticOracleSpec::with_sigmas(&space, 0.0, &[2.0, 0.0, 0.0], 0.0, 0.0, 3).unwrap();
        let exp = analytic_decomposition(&spec, &space, "f1").unwrap();
        // m_std = 0 and the grand std equals the per-row std here, up to the
        // row-vs-pooled estimator difference
        assert!(exp.importance > 0.9, "importance {}", exp.importance);
    }

    #[test]
    fn symmetric_factors_have_symmetric_importance() {
        let space = space3([10, 10, 4]);
        // same sigma realizes *different* offsets per factor, so symmetry is
        // statistical; use explicit identical tables to make it exact
        let offsets: Vec<f64> = (0..10).map(|i| (i as f64) * 0.3 - 1.5).collect();
        let spec = SyntheticOracleSpec {
            base: 0.0,
            effects: vec![
                FactorEffect {
                    factor: "f1".into(),
                    effect: EffectSpec::Offsets(offsets.clone()),
                },
                FactorEffect {
                    factor: "f2".into(),
                    effect: EffectSpec::Offsets(offsets),
                },
                FactorEffect {
                    factor: "f3".into(),
                    effect: EffectSpec::Offsets(vec![0.0; 4]),
                },
            ],
            interaction: 0.0,
            noise: 0.0,
            seed: 0,
        };
        let exp1 = analytic_decomposition(&spec, &space, "f1").unwrap();
        let exp2 = analytic_decomposition(&spec, &space, "f2").unwrap();
        assert!((exp1.importance - exp2.importance).abs() < 1e-12);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let space = FactorSpace::build([("a", 2000u64), ("b", 2000u64)]).unwrap();
        let spec = SyntheticOracleSpec::with_sigmas(&space, 0.0, &[1.0, 1.0], 0.0, 0.0, 0).unwrap();
        assert!(matches!(
            analytic_decomposition(&spec, &space, "a").unwrap_err(),
            OracleError::SpaceTooLarge { .. }
        ));
    }
}
