//! Shared helpers for the integration suites.
//!
//! Each integration target uses its own subset of these.
#![allow(dead_code)]

pub mod fixtures;

use std::collections::BTreeMap;

use randlens::executor::{execute_plan, ExperimentAdapter};
use randlens::planner::{plan_golden, plan_interactions};
use randlens::space::FactorSpace;
use randlens::stats;
use randlens::store::MemoryStore;

/// Textbook recomputation of the grid statistics, kept deliberately
/// independent of the library's implementation: plain two-pass mean/std,
/// direct loops, no shared code paths.
pub mod naive {
    pub fn mean(values: &[f64]) -> f64 {
        let mut sum = 0.0;
        for v in values {
            sum += v;
        }
        sum / values.len() as f64
    }

    pub fn sample_std(values: &[f64]) -> f64 {
        let m = mean(values);
        let mut ss = 0.0;
        for v in values {
            ss += (v - m) * (v - m);
        }
        (ss / (values.len() as f64 - 1.0)).sqrt()
    }

    /// Contributed and mitigated std of a grid, from first principles.
    pub fn decompose(rows: &[Vec<f64>]) -> (f64, f64) {
        let mut p_means = Vec::with_capacity(rows.len());
        let mut p_stds = Vec::with_capacity(rows.len());
        for row in rows {
            p_means.push(mean(row));
            p_stds.push(sample_std(row));
        }
        (mean(&p_stds), sample_std(&p_means))
    }

    pub fn importance(c_std: f64, m_std: f64, gm_std: f64) -> f64 {
        (c_std - m_std) / gm_std
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

pub struct InvestigationStats {
    pub c_std: f64,
    pub m_std: f64,
    pub importance: f64,
}

/// One sampled interactions investigation of `factor` with an in-memory
/// store, returning the decomposition against the supplied golden std.
pub fn investigate_factor(
    adapter: &dyn ExperimentAdapter,
    space: &FactorSpace,
    factor: &str,
    n: usize,
    m: usize,
    seed: u64,
    gm_std: f64,
) -> InvestigationStats {
    let plan = plan_interactions(space, factor, n, m, seed, false).expect("plan");
    let store = MemoryStore::new();
    let exec = execute_plan(&plan, adapter, 8, &store).expect("execute");
    let grid = exec.grid(&plan).expect("grid");
    let d = stats::decompose(&grid).expect("decompose");
    InvestigationStats {
        c_std: d.c_std,
        m_std: d.m_std,
        importance: stats::importance(d.c_std, d.m_std, gm_std)
            .expect("importance")
            .score,
    }
}

/// Golden-model std over `l` runs drawn from the full cross product.
pub fn golden_std_of(
    adapter: &dyn ExperimentAdapter,
    space: &FactorSpace,
    l: usize,
    seed: u64,
) -> f64 {
    let plan = plan_golden(space, l, seed, false).expect("golden plan");
    let store = MemoryStore::new();
    let exec = execute_plan(&plan, adapter, 8, &store).expect("execute golden");
    stats::golden_std(&exec.metrics()).expect("golden std").0
}

/// Convenience constructor for assignments in tests.
pub fn assignment_of(pairs: &[(&str, u64)]) -> randlens::space::Assignment {
    randlens::space::Assignment::new(
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect::<BTreeMap<_, _>>(),
    )
}
