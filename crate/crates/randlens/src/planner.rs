//! Run-plan construction for the investigation strategies.
//!
//! * `interactions` — the M x N grid: M distinct mitigated assignments
//!   (rows), each swept over the same N distinct configurations of the
//!   investigated factor (columns).
//! * `fixed` — a single mitigated assignment swept over N investigated
//!   configurations.
//! * `random` — every run drawn fully independently, no constraints.
//! * `golden` — runs drawn without replacement from the full cross product
//!   of all factor configurations.
//!
//! Plans are pure functions of their arguments: the same seed produces a
//! byte-identical plan.
//!
//! Only single-factor investigation ships. Investigating several factors
//! jointly reduces to declaring one combined factor whose configuration
//! indices enumerate the cross product (indices are opaque, so adapters can
//! decode a mixed-radix index into the underlying decisions); no separate
//! machinery is needed.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::executor::{execute_plan, ExecError, ExperimentAdapter, MemoryStore};
use crate::hash::mix_seed;
use crate::space::{Assignment, FactorSpace, SpaceError};
use crate::stats;

/// Rejection sampling of distinct items retries up to this multiple of the
/// requested count before giving up, so a near-exhausted space surfaces as
/// an error instead of an endless loop.
pub const SAMPLING_RETRY_FACTOR: u64 = 100;

/// Below `EXHAUSTIVE_FALLBACK_FACTOR * count` candidates, without-replacement
/// sampling enumerates and shuffles instead of rejection sampling.
pub const EXHAUSTIVE_FALLBACK_FACTOR: u64 = 10;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(
        "factor `{factor}` has {available} configurations, cannot draw {requested} distinct ones"
    )]
    NotEnoughConfigurations {
        factor: String,
        requested: usize,
        available: u64,
    },
    #[error("mitigated space for `{factor}` holds {available} assignments, cannot draw {requested} distinct ones (pass allow_exhaustive to use all of them)")]
    MitigatedSpaceTooSmall {
        factor: String,
        requested: usize,
        available: u64,
    },
    #[error("golden space holds {available} assignments, cannot draw {requested} distinct ones (pass allow_exhaustive to use all of them)")]
    GoldenSpaceTooSmall { requested: usize, available: u64 },
    #[error("{what} must be at least {min}, got {got}")]
    InvalidRunCount {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("gave up sampling {requested} distinct assignments after {attempts} attempts; space appears nearly exhausted")]
    SamplingRetriesExhausted { requested: usize, attempts: u64 },
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("budget {budget} cannot fund a first estimate ({needed} runs at N={n}, M=2)")]
    BudgetExhaustedBeforeFirstEstimate {
        budget: usize,
        needed: usize,
        n: usize,
    },
    #[error("execution failed during run-count selection: {0}")]
    Exec(#[from] ExecError),
    #[error(transparent)]
    Stats(#[from] stats::StatsError),
}

/// Investigation strategy a plan was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Interactions,
    Fixed,
    Random,
    Golden,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Strategy::Interactions => "interactions",
            Strategy::Fixed => "fixed",
            Strategy::Random => "random",
            Strategy::Golden => "golden",
        };
        f.write_str(s)
    }
}

/// One planned run: its grid position and the full assignment to execute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanCell {
    pub row: usize,
    pub col: usize,
    pub assignment: Assignment,
}

/// A planned set of runs for one strategy. Immutable and shareable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunPlan {
    pub format_version: u32,
    pub strategy: Strategy,
    pub investigated_factor: Option<String>,
    pub n_rows: usize,
    pub n_cols: usize,
    pub seed: u64,
    /// False when the plan cannot support a deviation estimate (fewer than
    /// two values along the varying dimension). Such plans still execute.
    pub analyzable: bool,
    pub cells: Vec<PlanCell>,
}

pub const PLAN_FORMAT_VERSION: u32 = 1;

impl RunPlan {
    pub fn total_runs(&self) -> usize {
        self.cells.len()
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Draws `count` distinct values from `0..range`. Enumerates and shuffles
/// when the range is small, rejection-samples with a retry cap otherwise.
fn sample_distinct_indices(
    range: u64,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u64>, PlanError> {
    if range <= EXHAUSTIVE_FALLBACK_FACTOR.saturating_mul(count as u64) {
        let mut all: Vec<u64> = (0..range).collect();
        all.shuffle(rng);
        all.truncate(count);
        return Ok(all);
    }
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let cap = SAMPLING_RETRY_FACTOR * count as u64;
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > cap {
            return Err(PlanError::SamplingRetriesExhausted {
                requested: count,
                attempts,
            });
        }
        let v = rng.random_range(0..range);
        if seen.insert(v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Enumerates every joint assignment over `factors` in mixed-radix order.
pub(crate) fn enumerate_joint(factors: &[(&str, u64)]) -> Vec<BTreeMap<String, u64>> {
    let total: u64 = factors.iter().map(|&(_, c)| c).product();
    let mut out = Vec::with_capacity(total as usize);
    let mut counters = vec![0u64; factors.len()];
    loop {
        let entry: BTreeMap<String, u64> = factors
            .iter()
            .zip(&counters)
            .map(|(&(name, _), &idx)| (name.to_string(), idx))
            .collect();
        out.push(entry);
        // increment the mixed-radix counter, least significant factor last
        let mut pos = factors.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            counters[pos] += 1;
            if counters[pos] < factors[pos].1 {
                break;
            }
            counters[pos] = 0;
        }
    }
}

/// Draws `count` distinct joint assignments over `factors`.
fn sample_distinct_joint(
    space: &FactorSpace,
    factors: &[(&str, u64)],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<BTreeMap<String, u64>>, PlanError> {
    let mut size: u64 = 1;
    let mut saturated = false;
    for &(_, c) in factors {
        match size.checked_mul(c) {
            Some(v) => size = v,
            None => {
                saturated = true;
                break;
            }
        }
    }
    if !saturated && size <= EXHAUSTIVE_FALLBACK_FACTOR.saturating_mul(count as u64) {
        let mut all = enumerate_joint(factors);
        all.shuffle(rng);
        all.truncate(count);
        return Ok(all);
    }
    let fixed_names: HashSet<&str> = factors.iter().map(|&(n, _)| n).collect();
    let key_of = |entry: &BTreeMap<String, u64>| -> Vec<u64> { entry.values().copied().collect() };
    let mut seen: HashSet<Vec<u64>> = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let cap = SAMPLING_RETRY_FACTOR * count as u64;
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > cap {
            return Err(PlanError::SamplingRetriesExhausted {
                requested: count,
                attempts,
            });
        }
        let mut entry = BTreeMap::new();
        for factor in space.factors() {
            if fixed_names.contains(factor.name()) {
                entry.insert(
                    factor.name().to_string(),
                    rng.random_range(0..factor.cardinality()),
                );
            }
        }
        if seen.insert(key_of(&entry)) {
            out.push(entry);
        }
    }
    Ok(out)
}

fn mitigated_factors<'a>(space: &'a FactorSpace, investigated: &str) -> Vec<(&'a str, u64)> {
    space
        .factors()
        .iter()
        .filter(|f| f.name() != investigated)
        .map(|f| (f.name(), f.cardinality()))
        .collect()
}

/// Plans the interaction-aware M x N grid for one investigated factor.
///
/// The N investigated-factor indices are drawn without replacement and
/// reused across all rows, so columns align. The M mitigated assignments are
/// drawn without replacement; duplicate rows would waste budget and bias the
/// contributed std toward that row's variance.
pub fn plan_interactions(
    space: &FactorSpace,
    investigated: &str,
    n: usize,
    m: usize,
    seed: u64,
    allow_exhaustive: bool,
) -> Result<RunPlan, PlanError> {
    if n < 2 {
        return Err(PlanError::InvalidRunCount {
            what: "investigation runs (N)",
            min: 2,
            got: n,
        });
    }
    if m < 2 {
        return Err(PlanError::InvalidRunCount {
            what: "mitigation runs (M)",
            min: 2,
            got: m,
        });
    }
    let factor = space.require(investigated)?;
    if (n as u64) > factor.cardinality() {
        return Err(PlanError::NotEnoughConfigurations {
            factor: investigated.to_string(),
            requested: n,
            available: factor.cardinality(),
        });
    }
    let mit_size = space.mitigated_space_size(investigated)?;
    let m = if !mit_size.admits(m as u64) {
        if allow_exhaustive {
            log::warn!(
                "mitigated space for `{investigated}` holds only {mit_size} assignments; \
                 using all of them instead of the requested M={m}"
            );
            mit_size.value as usize
        } else {
            return Err(PlanError::MitigatedSpaceTooSmall {
                factor: investigated.to_string(),
                requested: m,
                available: mit_size.value,
            });
        }
    } else {
        m
    };

    // separate streams so a grown N or M extends a smaller plan instead of
    // reshuffling it
    let mut col_rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "interactions:investigated"));
    let mut row_rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "interactions:mitigated"));
    let col_indices = sample_distinct_indices(factor.cardinality(), n, &mut col_rng)?;
    let rows = sample_distinct_joint(
        space,
        &mitigated_factors(space, investigated),
        m,
        &mut row_rng,
    )?;

    let mut cells = Vec::with_capacity(m * n);
    for (row_idx, row) in rows.iter().enumerate() {
        for (col_idx, &inv_index) in col_indices.iter().enumerate() {
            let mut entries = row.clone();
            entries.insert(investigated.to_string(), inv_index);
            cells.push(PlanCell {
                row: row_idx,
                col: col_idx,
                assignment: Assignment::new(entries),
            });
        }
    }
    Ok(RunPlan {
        format_version: PLAN_FORMAT_VERSION,
        strategy: Strategy::Interactions,
        investigated_factor: Some(investigated.to_string()),
        n_rows: m,
        n_cols: n,
        seed,
        analyzable: true,
        cells,
    })
}

/// Plans the Fixed baseline: one sampled mitigated assignment, N distinct
/// investigated configurations.
pub fn plan_fixed(
    space: &FactorSpace,
    investigated: &str,
    n: usize,
    seed: u64,
) -> Result<RunPlan, PlanError> {
    if n < 1 {
        return Err(PlanError::InvalidRunCount {
            what: "investigation runs (N)",
            min: 1,
            got: n,
        });
    }
    let factor = space.require(investigated)?;
    if (n as u64) > factor.cardinality() {
        return Err(PlanError::NotEnoughConfigurations {
            factor: investigated.to_string(),
            requested: n,
            available: factor.cardinality(),
        });
    }
    let mut col_rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "fixed:investigated"));
    let mut row_rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "fixed:mitigated"));
    let col_indices = sample_distinct_indices(factor.cardinality(), n, &mut col_rng)?;
    let row = sample_distinct_joint(
        space,
        &mitigated_factors(space, investigated),
        1,
        &mut row_rng,
    )?
    .pop()
    .expect("requested one mitigated assignment");

    let cells = col_indices
        .iter()
        .enumerate()
        .map(|(col_idx, &inv_index)| {
            let mut entries = row.clone();
            entries.insert(investigated.to_string(), inv_index);
            PlanCell {
                row: 0,
                col: col_idx,
                assignment: Assignment::new(entries),
            }
        })
        .collect();
    Ok(RunPlan {
        format_version: PLAN_FORMAT_VERSION,
        strategy: Strategy::Fixed,
        investigated_factor: Some(investigated.to_string()),
        n_rows: 1,
        n_cols: n,
        seed,
        analyzable: n >= 2,
        cells,
    })
}

/// Plans the Random baseline: `count` fully independent assignments. The
/// investigated factor is recorded for labeling only.
pub fn plan_random(
    space: &FactorSpace,
    investigated: &str,
    count: usize,
    seed: u64,
) -> Result<RunPlan, PlanError> {
    if count < 1 {
        return Err(PlanError::InvalidRunCount {
            what: "run count",
            min: 1,
            got: count,
        });
    }
    space.require(investigated)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "random"));
    let empty = BTreeMap::new();
    let cells = (0..count)
        .map(|i| {
            let assignment = space.sample_assignment(&empty, &mut rng)?;
            Ok(PlanCell {
                row: i,
                col: 0,
                assignment,
            })
        })
        .collect::<Result<Vec<_>, SpaceError>>()?;
    Ok(RunPlan {
        format_version: PLAN_FORMAT_VERSION,
        strategy: Strategy::Random,
        investigated_factor: Some(investigated.to_string()),
        n_rows: count,
        n_cols: 1,
        seed,
        analyzable: count >= 2,
        cells,
    })
}

/// Plans the golden model: `l` assignments drawn without replacement from
/// the full cross product of all factor configurations.
pub fn plan_golden(
    space: &FactorSpace,
    l: usize,
    seed: u64,
    allow_exhaustive: bool,
) -> Result<RunPlan, PlanError> {
    if l < 1 {
        return Err(PlanError::InvalidRunCount {
            what: "golden runs (L)",
            min: 1,
            got: l,
        });
    }
    let golden_size = space.golden_space_size();
    let l = if !golden_size.admits(l as u64) {
        if allow_exhaustive {
            log::warn!(
                "golden space holds only {golden_size} assignments; \
                 using all of them instead of the requested L={l}"
            );
            golden_size.value as usize
        } else {
            return Err(PlanError::GoldenSpaceTooSmall {
                requested: l,
                available: golden_size.value,
            });
        }
    } else {
        l
    };
    let all_factors: Vec<(&str, u64)> = space
        .factors()
        .iter()
        .map(|f| (f.name(), f.cardinality()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "golden"));
    let rows = sample_distinct_joint(space, &all_factors, l, &mut rng)?;
    let cells = rows
        .into_iter()
        .enumerate()
        .map(|(i, entries)| PlanCell {
            row: i,
            col: 0,
            assignment: Assignment::new(entries),
        })
        .collect();
    Ok(RunPlan {
        format_version: PLAN_FORMAT_VERSION,
        strategy: Strategy::Golden,
        investigated_factor: None,
        n_rows: l,
        n_cols: 1,
        seed,
        analyzable: l >= 2,
        cells,
    })
}

/// One evaluation point of the run-count search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionStep {
    pub n: usize,
    pub m: usize,
    pub grid_runs: usize,
    pub c_std: f64,
    pub m_std: f64,
    pub importance: f64,
    /// Largest absolute change of (c_std, m_std, importance) versus the
    /// previous step; absent on the first step.
    pub delta: Option<f64>,
}

/// Result of the iterative search for N and M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunCountSelection {
    pub n_investigation: usize,
    pub n_mitigation: usize,
    pub n_golden: usize,
    pub epsilon: f64,
    pub converged: bool,
    /// True when the search stopped because the run budget was exhausted.
    pub budget_exhausted: bool,
    pub trace: Vec<SelectionStep>,
}

/// Mitigation runs grow in steps of this size during run-count selection.
pub const M_GROWTH_STEP: usize = 5;
/// Investigation runs grow in steps of this size during run-count selection.
pub const N_GROWTH_STEP: usize = 2;

/// Searches for the smallest (N, M) whose statistics have stabilised.
///
/// Starting from `(start_n, 2)`, the grid grows by `M_GROWTH_STEP` mitigation
/// runs per step (growing M is preferred; N grows only when another M step
/// would not fit the budget), re-estimating `c_std`, `m_std` and the
/// importance score after each growth. The search stops when all three
/// change by less than `epsilon` between consecutive steps, or when the
/// budget is exhausted (returning the best estimate so far with the
/// `budget_exhausted` flag set).
///
/// `max_budget` bounds the number of grid runs; golden-model runs mirror the
/// grid (L = N*M) and reuse earlier runs across steps.
pub fn select_run_counts(
    adapter: &dyn ExperimentAdapter,
    space: &FactorSpace,
    investigated: &str,
    epsilon: f64,
    start_n: usize,
    max_budget: usize,
    seed: u64,
) -> Result<RunCountSelection, PlanError> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(PlanError::InvalidEpsilon(epsilon));
    }
    if start_n < 2 {
        return Err(PlanError::InvalidRunCount {
            what: "starting investigation runs (N)",
            min: 2,
            got: start_n,
        });
    }
    if max_budget < start_n * 2 {
        return Err(PlanError::BudgetExhaustedBeforeFirstEstimate {
            budget: max_budget,
            needed: start_n * 2,
            n: start_n,
        });
    }

    let grid_store = MemoryStore::new();
    let golden_store = MemoryStore::new();
    let golden_seed = mix_seed(seed, "selection:golden");
    let mut n = start_n;
    let mut m = 2usize;
    let mut trace: Vec<SelectionStep> = Vec::new();
    let mut converged = false;
    let mut budget_exhausted = false;

    loop {
        let plan = plan_interactions(space, investigated, n, m, seed, false)?;
        let exec = execute_plan(&plan, adapter, 1, &grid_store)?;
        let grid = exec.grid(&plan)?;
        let dec = stats::decompose(&grid)?;

        let golden_plan = plan_golden(space, n * m, golden_seed, true)?;
        let gexec = execute_plan(&golden_plan, adapter, 1, &golden_store)?;
        let (gm_std, _) = stats::golden_std(&gexec.metrics())?;
        let imp = stats::importance(dec.c_std, dec.m_std, gm_std)?;

        let delta = trace.last().map(|prev: &SelectionStep| {
            (dec.c_std - prev.c_std)
                .abs()
                .max((dec.m_std - prev.m_std).abs())
                .max((imp.score - prev.importance).abs())
        });
        trace.push(SelectionStep {
            n,
            m,
            grid_runs: n * m,
            c_std: dec.c_std,
            m_std: dec.m_std,
            importance: imp.score,
            delta,
        });

        if let Some(d) = delta {
            if d < epsilon {
                converged = true;
                break;
            }
        }

        // grow M first, fall back to N, stop when neither fits the budget
        // or the space
        let mit_size = space.mitigated_space_size(investigated)?;
        let card = space.require(investigated)?.cardinality();
        let m_grown = m + M_GROWTH_STEP;
        let n_grown = n + N_GROWTH_STEP;
        if n * m_grown <= max_budget && mit_size.admits(m_grown as u64) {
            m = m_grown;
        } else if n_grown * m <= max_budget && (n_grown as u64) <= card {
            n = n_grown;
        } else {
            budget_exhausted = true;
            break;
        }
    }

    Ok(RunCountSelection {
        n_investigation: n,
        n_mitigation: m,
        n_golden: n * m,
        epsilon,
        converged,
        budget_exhausted,
        trace,
    })
}

/// Convenience wrapper taking an `Arc`ed adapter.
pub fn select_run_counts_arc(
    adapter: &Arc<dyn ExperimentAdapter>,
    space: &FactorSpace,
    investigated: &str,
    epsilon: f64,
    start_n: usize,
    max_budget: usize,
    seed: u64,
) -> Result<RunCountSelection, PlanError> {
    select_run_counts(
        adapter.as_ref(),
        space,
        investigated,
        epsilon,
        start_n,
        max_budget,
        seed,
    )
}
