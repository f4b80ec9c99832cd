//! Variance-attribution statistics over executed grids.
//!
//! Given an M x N grid of metric values (rows = mitigation runs, columns =
//! investigation runs), this module computes per-row partial means and
//! standard deviations, aggregates them into the contributed standard
//! deviation (`c_std`, mean of row stds) and the mitigated standard
//! deviation (`m_std`, std of row means), and scores the investigated
//! factor as `importance = (c_std - m_std) / gm_std` against a golden-model
//! standard deviation. A factor with importance above zero contributes more
//! deviation than all remaining factors combined.
//!
//! All standard deviations use the sample estimator (n-1 denominator),
//! uniformly across this module and every oracle that checks it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planner::Strategy;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("need at least {min} values, got {got}")]
    TooFewValues { min: usize, got: usize },
    #[error("grid rows have unequal lengths ({first} vs {other})")]
    RaggedGrid { first: usize, other: usize },
    #[error("grid needs at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("grid needs at least 2 columns, got {0}")]
    TooFewCols(usize),
    #[error("non-finite metric value in grid at row {row}, col {col}")]
    NonFiniteValue { row: usize, col: usize },
    #[error("importance undefined: golden-model standard deviation is zero")]
    ImportanceUndefined,
}

/// Sample standard deviation with the (n-1) denominator.
///
/// Corrected two-pass algorithm: the second pass subtracts the residual of
/// the mean, so identical inputs yield exactly zero.
pub fn sample_std(values: &[f64]) -> Result<f64, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::TooFewValues {
            min: 2,
            got: values.len(),
        });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut ss, mut residual) = (0.0, 0.0);
    for v in values {
        let d = v - mean;
        ss += d * d;
        residual += d;
    }
    ss -= residual * residual / n;
    Ok((ss.max(0.0) / (values.len() - 1) as f64).sqrt())
}

pub fn mean(values: &[f64]) -> Result<f64, StatsError> {
    if values.is_empty() {
        return Err(StatsError::TooFewValues { min: 1, got: 0 });
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Partial mean and partial standard deviation of one mitigation run (row).
pub fn partial_stats(row: &[f64]) -> Result<(f64, f64), StatsError> {
    Ok((mean(row)?, sample_std(row)?))
}

/// Identity of the plan a grid was collected under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub strategy: Strategy,
    pub investigated_factor: Option<String>,
    pub seed: u64,
}

/// Rectangular matrix of metric values: M rows (mitigation runs) by N
/// columns (investigation runs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    values: Vec<Vec<f64>>,
    pub metric_name: String,
    pub provenance: Provenance,
}

impl GridResult {
    pub fn new(
        values: Vec<Vec<f64>>,
        metric_name: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self, StatsError> {
        if values.len() < 2 {
            return Err(StatsError::TooFewRows(values.len()));
        }
        let n_cols = values[0].len();
        if n_cols < 2 {
            return Err(StatsError::TooFewCols(n_cols));
        }
        for row in &values {
            if row.len() != n_cols {
                return Err(StatsError::RaggedGrid {
                    first: n_cols,
                    other: row.len(),
                });
            }
        }
        for (r, row) in values.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(StatsError::NonFiniteValue { row: r, col: c });
                }
            }
        }
        Ok(Self {
            values,
            metric_name: metric_name.into(),
            provenance,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.values.len()
    }

    pub fn n_cols(&self) -> usize {
        self.values[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn flat(&self) -> Vec<f64> {
        self.values.iter().flatten().copied().collect()
    }
}

/// Output of [`decompose`]: the grid-level aggregates plus the per-row
/// partials they were computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub c_std: f64,
    pub m_std: f64,
    pub row_partials: Vec<(f64, f64)>,
}

/// Computes the contributed and mitigated standard deviations of a grid.
///
/// `c_std` is the arithmetic mean of the row partial stds; `m_std` is the
/// sample std of the row partial means.
pub fn decompose(grid: &GridResult) -> Result<Decomposition, StatsError> {
    let row_partials = grid
        .rows()
        .iter()
        .map(|row| partial_stats(row))
        .collect::<Result<Vec<_>, _>>()?;
    let p_means: Vec<f64> = row_partials.iter().map(|&(m, _)| m).collect();
    let p_stds: Vec<f64> = row_partials.iter().map(|&(_, s)| s).collect();
    Ok(Decomposition {
        c_std: mean(&p_stds)?,
        m_std: sample_std(&p_means)?,
        row_partials,
    })
}

/// Importance score of a factor and the importance-over-zero verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Importance {
    pub score: f64,
    pub important: bool,
}

/// `importance = (c_std - m_std) / gm_std`; important when above zero.
pub fn importance(c_std: f64, m_std: f64, gm_std: f64) -> Result<Importance, StatsError> {
    if gm_std <= 0.0 {
        return Err(StatsError::ImportanceUndefined);
    }
    let score = (c_std - m_std) / gm_std;
    Ok(Importance {
        score,
        important: score > 0.0,
    })
}

/// Golden-model standard deviation and mean over a flat set of runs.
pub fn golden_std(values: &[f64]) -> Result<(f64, f64), StatsError> {
    Ok((sample_std(values)?, mean(values)?))
}

/// Baseline importance rule: a factor is important when its observed
/// deviation is at least `threshold` (default 0.5) of the golden-model
/// deviation. Boundary inclusive.
pub fn baseline_verdict(observed_std: f64, gm_std: f64, threshold: f64) -> bool {
    observed_std >= threshold * gm_std
}

/// Full per-factor result of an interactions investigation. `importance`
/// is exactly `(c_std - m_std) / gm_std`, recomputable from the stored
/// fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub factor: String,
    /// Mean metric over the whole grid.
    pub mean: f64,
    /// Sample std of the metric over the whole grid.
    pub std: f64,
    pub c_std: f64,
    pub m_std: f64,
    pub gm_std: f64,
    pub importance: f64,
    pub important: bool,
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl DecompositionResult {
    pub fn from_grid(
        factor: impl Into<String>,
        grid: &GridResult,
        gm_std: f64,
        l: usize,
    ) -> Result<Self, StatsError> {
        let dec = decompose(grid)?;
        let flat = grid.flat();
        let imp = importance(dec.c_std, dec.m_std, gm_std)?;
        Ok(Self {
            factor: factor.into(),
            mean: mean(&flat)?,
            std: sample_std(&flat)?,
            c_std: dec.c_std,
            m_std: dec.m_std,
            gm_std,
            importance: imp.score,
            important: imp.important,
            n: grid.n_cols(),
            m: grid.n_rows(),
            l,
        })
    }

    /// Recomputes the importance from the stored fields. Matches the stored
    /// score bit-for-bit for any result produced by this module.
    pub fn recomputed_importance(&self) -> Result<f64, StatsError> {
        Ok(importance(self.c_std, self.m_std, self.gm_std)?.score)
    }
}

/// Per-factor entry of a strategy comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorComparison {
    pub factor: String,
    pub random_std: Option<f64>,
    pub random_important: Option<bool>,
    pub fixed_std: Option<f64>,
    pub fixed_important: Option<bool>,
    pub interactions_c_std: f64,
    pub interactions_importance: f64,
    pub interactions_important: bool,
    /// Strategies that call the factor important while the interactions
    /// method does not.
    pub overestimated_by: Vec<Strategy>,
    /// Strategies that miss a factor the interactions method calls important.
    pub underestimated_by: Vec<Strategy>,
}

/// Comparison of the Random/Fixed baselines against the interactions method,
/// per factor, under a shared golden model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyComparison {
    pub gm_std: f64,
    /// Threshold of the 50%-of-golden-deviation baseline rule.
    pub baseline_threshold: f64,
    pub factors: Vec<FactorComparison>,
}

/// Raw per-factor inputs for [`compare_strategies`].
#[derive(Debug, Clone)]
pub struct StrategyObservation {
    pub factor: String,
    pub random_std: Option<f64>,
    pub fixed_std: Option<f64>,
    pub interactions: DecompositionResult,
}

/// Flags over/underestimation of each baseline strategy relative to the
/// interactions verdict.
pub fn compare_strategies(
    gm_std: f64,
    baseline_threshold: f64,
    observations: &[StrategyObservation],
) -> StrategyComparison {
    let factors = observations
        .iter()
        .map(|obs| {
            let verdict =
                |std: Option<f64>| std.map(|s| baseline_verdict(s, gm_std, baseline_threshold));
            let random_important = verdict(obs.random_std);
            let fixed_important = verdict(obs.fixed_std);
            let ours = obs.interactions.important;
            let mut overestimated_by = Vec::new();
            let mut underestimated_by = Vec::new();
            for (strategy, important) in [
                (Strategy::Random, random_important),
                (Strategy::Fixed, fixed_important),
            ] {
                match important {
                    Some(true) if !ours => overestimated_by.push(strategy),
                    Some(false) if ours => underestimated_by.push(strategy),
                    _ => {}
                }
            }
            FactorComparison {
                factor: obs.factor.clone(),
                random_std: obs.random_std,
                random_important,
                fixed_std: obs.fixed_std,
                fixed_important,
                interactions_c_std: obs.interactions.c_std,
                interactions_importance: obs.interactions.importance,
                interactions_important: ours,
                overestimated_by,
                underestimated_by,
            }
        })
        .collect();
    StrategyComparison {
        gm_std,
        baseline_threshold,
        factors,
    }
}
