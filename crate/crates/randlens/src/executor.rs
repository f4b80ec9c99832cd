//! Plan execution against experiment adapters: deterministic per-run seed
//! derivation, parallel fan-out, persistence and resume.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::index::sample as index_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash::{mix_seed, StableHasher};
use crate::planner::{PlanCell, RunPlan, Strategy};
use crate::space::Assignment;
use crate::stats::{GridResult, Provenance, StatsError};
use crate::store::{RunStore, StoreError};

/// Environment variable that overrides the requested parallelism.
pub const PARALLELISM_ENV: &str = "RANDLENS_PARALLELISM";

/// Errors an adapter can signal for a single run.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdapterError {
    #[error("metric is not finite: {0}")]
    NonFiniteMetric(String),
    #[error("assignment has no entry for factor `{0}` required by the adapter")]
    MissingFactor(String),
    #[error("bad experiment configuration: {0}")]
    Config(String),
    #[error("external command failed: {0}")]
    Process(String),
    #[error("adapter failure: {0}")]
    Failure(String),
}

#[derive(Debug, Error)]
pub enum ExecError {
    #[error("parallelism must be at least 1")]
    InvalidParallelism,
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("failed to build worker pool: {0}")]
    Pool(String),
    #[error("adapter is not deterministic; {} of {checked} re-executed cells changed their metric", mismatches.len())]
    NonDeterministicAdapter {
        checked: usize,
        mismatches: Vec<DeterminismMismatch>,
    },
    #[error("grid incomplete: {missing} cells missing, {failed} failed")]
    IncompleteGrid { missing: usize, failed: usize },
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Per-factor and master seeds derived for one assignment.
///
/// Every seed is a stable hash with pinned constants, so the same
/// (experiment, assignment) pair maps to the same seeds on any platform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedBundle {
    pub per_factor: BTreeMap<String, u64>,
    pub master: u64,
}

impl SeedBundle {
    pub fn for_factor(&self, name: &str) -> Option<u64> {
        self.per_factor.get(name).copied()
    }

    /// Seed for a factor the adapter requires; missing factors are a
    /// contract violation surfaced as [`AdapterError::MissingFactor`].
    pub fn require(&self, name: &str) -> Result<u64, AdapterError> {
        self.for_factor(name)
            .ok_or_else(|| AdapterError::MissingFactor(name.to_string()))
    }
}

/// Derives one 64-bit seed per factor plus a master seed.
pub fn derive_seed_bundle(experiment_id: &str, assignment: &Assignment) -> SeedBundle {
    let mut per_factor = BTreeMap::new();
    let mut master_hasher = StableHasher::new()
        .write_str(experiment_id)
        .write_str("master");
    for (name, index) in assignment.entries() {
        let seed = StableHasher::new()
            .write_str(experiment_id)
            .write_str(name)
            .write_u64(index)
            .finish();
        master_hasher = master_hasher.write_str(name).write_u64(seed);
        per_factor.insert(name.to_string(), seed);
    }
    SeedBundle {
        per_factor,
        master: master_hasher.finish(),
    }
}

/// The contract any stochastic experiment implements: assignment plus
/// derived seeds in, one finite scalar metric out.
///
/// `evaluate` must be a pure function of its arguments — no hidden global
/// randomness, no wall clock. Adapters are invoked concurrently from
/// multiple threads unless they declare `single_threaded_only`.
pub trait ExperimentAdapter: Send + Sync {
    /// Stable identifier; feeds run ids and seed derivation.
    fn experiment_id(&self) -> &str;

    fn metric_name(&self) -> &str;

    fn evaluate(&self, assignment: &Assignment, seeds: &SeedBundle) -> Result<f64, AdapterError>;

    /// Declared metric range, for documentation and sanity checks.
    fn metric_range(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Adapters that cannot be invoked concurrently force parallelism 1.
    fn single_threaded_only(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Failed,
}

/// One executed (or failed) run. Key order in JSONL output follows field
/// order here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub experiment_id: String,
    pub metric_name: String,
    pub strategy: Strategy,
    pub factor: Option<String>,
    pub plan_seed: u64,
    pub row: usize,
    pub col: usize,
    pub assignment: Assignment,
    pub master_seed: u64,
    pub status: RunStatus,
    pub metric: Option<f64>,
    pub error: Option<String>,
    pub duration_ms: u64,
}

impl RunRecord {
    pub fn is_ok(&self) -> bool {
        self.status == RunStatus::Ok
    }

    /// Equality ignoring the wall-clock duration, for reproducibility checks.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.duration_ms = 0;
        b.duration_ms = 0;
        a == b
    }
}

/// Stable run identifier: re-planning with the same arguments reproduces the
/// same ids, which is what makes resume work.
pub fn run_id(experiment_id: &str, plan: &RunPlan, cell: &PlanCell) -> String {
    let mut h = StableHasher::new()
        .write_str(experiment_id)
        .write_u64(plan.seed)
        .write_str(&plan.strategy.to_string())
        .write_str(plan.investigated_factor.as_deref().unwrap_or(""))
        .write_usize(cell.row)
        .write_usize(cell.col);
    for (name, index) in cell.assignment.entries() {
        h = h.write_str(name).write_u64(index);
    }
    format!("{:016x}", h.finish())
}

/// Outcome of executing one plan.
#[derive(Debug, Clone)]
pub struct ExecutionSummary {
    /// One record per plan cell, ordered by (row, col).
    pub records: Vec<RunRecord>,
    pub newly_run: usize,
    pub skipped: usize,
    pub failures: usize,
}

impl ExecutionSummary {
    pub fn complete(&self) -> bool {
        self.failures == 0
    }

    /// Metrics of successful runs, in (row, col) order.
    pub fn metrics(&self) -> Vec<f64> {
        self.records.iter().filter_map(|r| r.metric).collect()
    }

    /// Assembles the full M x N grid; errors if any cell failed.
    pub fn grid(&self, plan: &RunPlan) -> Result<GridResult, ExecError> {
        let failed = self.records.iter().filter(|r| !r.is_ok()).count();
        let missing = plan.total_runs().saturating_sub(self.records.len());
        if failed > 0 || missing > 0 {
            return Err(ExecError::IncompleteGrid { missing, failed });
        }
        let mut values = vec![vec![f64::NAN; plan.n_cols]; plan.n_rows];
        for r in &self.records {
            values[r.row][r.col] = r.metric.expect("ok records carry a metric");
        }
        let metric_name = self
            .records
            .first()
            .map(|r| r.metric_name.clone())
            .unwrap_or_default();
        Ok(GridResult::new(
            values,
            metric_name,
            Provenance {
                strategy: plan.strategy,
                investigated_factor: plan.investigated_factor.clone(),
                seed: plan.seed,
            },
        )?)
    }
}

/// Requested parallelism after applying the `RANDLENS_PARALLELISM` override.
pub fn effective_parallelism(requested: usize) -> usize {
    match std::env::var(PARALLELISM_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(p) if p >= 1 => p,
            _ => {
                log::warn!("ignoring invalid {PARALLELISM_ENV}={v}");
                requested
            }
        },
        Err(_) => requested,
    }
}

fn execute_cell(plan: &RunPlan, cell: &PlanCell, adapter: &dyn ExperimentAdapter) -> RunRecord {
    let id = run_id(adapter.experiment_id(), plan, cell);
    let seeds = derive_seed_bundle(adapter.experiment_id(), &cell.assignment);
    let started = Instant::now();
    let outcome = adapter.evaluate(&cell.assignment, &seeds).and_then(|v| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(AdapterError::NonFiniteMetric(format!("{v}")))
        }
    });
    let duration_ms = started.elapsed().as_millis() as u64;
    let (status, metric, error) = match outcome {
        Ok(v) => (RunStatus::Ok, Some(v), None),
        Err(e) => (RunStatus::Failed, None, Some(e.to_string())),
    };
    RunRecord {
        run_id: id,
        experiment_id: adapter.experiment_id().to_string(),
        metric_name: adapter.metric_name().to_string(),
        strategy: plan.strategy,
        factor: plan.investigated_factor.clone(),
        plan_seed: plan.seed,
        row: cell.row,
        col: cell.col,
        assignment: cell.assignment.clone(),
        master_seed: seeds.master,
        status,
        metric,
        error,
        duration_ms,
    }
}

/// Executes every cell of `plan` exactly once, skipping cells whose run id
/// is already in `store` (resume). Records are appended to the store as each
/// run finishes; the returned list is ordered by (row, col) regardless of
/// completion order. Adapter failures are recorded as failed runs, not
/// errors — the summary's `failures` count marks the plan incomplete.
pub fn execute_plan(
    plan: &RunPlan,
    adapter: &dyn ExperimentAdapter,
    parallelism: usize,
    store: &dyn RunStore,
) -> Result<ExecutionSummary, ExecError> {
    if parallelism < 1 {
        return Err(ExecError::InvalidParallelism);
    }
    let workers = if adapter.single_threaded_only() {
        1
    } else {
        parallelism
    };

    let mut done: Vec<RunRecord> = Vec::new();
    let mut pending: Vec<&PlanCell> = Vec::new();
    for cell in &plan.cells {
        match store.get(&run_id(adapter.experiment_id(), plan, cell)) {
            Some(record) => done.push(record),
            None => pending.push(cell),
        }
    }
    let skipped = done.len();
    let newly_run = pending.len();

    let new_records: Vec<RunRecord> = if workers <= 1 || pending.len() <= 1 {
        let mut out = Vec::with_capacity(pending.len());
        for cell in pending {
            let record = execute_cell(plan, cell, adapter);
            store.append(&record)?;
            out.push(record);
        }
        out
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| ExecError::Pool(e.to_string()))?;
        pool.install(|| {
            pending
                .par_iter()
                .map(|cell| {
                    let record = execute_cell(plan, cell, adapter);
                    store.append(&record)?;
                    Ok(record)
                })
                .collect::<Result<Vec<_>, StoreError>>()
        })?
    };

    let mut records = done;
    records.extend(new_records);
    records.sort_by_key(|r| (r.row, r.col));
    let failures = records.iter().filter(|r| !r.is_ok()).count();
    Ok(ExecutionSummary {
        records,
        newly_run,
        skipped,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterminismMismatch {
    pub row: usize,
    pub col: usize,
    pub first: f64,
    pub second: f64,
}

/// Result of a determinism spot check.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminismReport {
    pub checked: usize,
}

/// Re-executes `sample_k` randomly chosen cells twice and compares the
/// metrics bit-exactly. Guards the purity assumption adapters must satisfy.
pub fn verify_determinism(
    plan: &RunPlan,
    adapter: &dyn ExperimentAdapter,
    sample_k: usize,
    seed: u64,
) -> Result<DeterminismReport, ExecError> {
    let k = sample_k.min(plan.cells.len());
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, "verify-determinism"));
    let chosen = index_sample(&mut rng, plan.cells.len(), k);
    let mut mismatches = Vec::new();
    for idx in chosen {
        let cell = &plan.cells[idx];
        let first = execute_cell(plan, cell, adapter);
        let second = execute_cell(plan, cell, adapter);
        if first.metric.map(f64::to_bits) != second.metric.map(f64::to_bits)
            || first.status != second.status
        {
            mismatches.push(DeterminismMismatch {
                row: cell.row,
                col: cell.col,
                first: first.metric.unwrap_or(f64::NAN),
                second: second.metric.unwrap_or(f64::NAN),
            });
        }
    }
    if mismatches.is_empty() {
        Ok(DeterminismReport { checked: k })
    } else {
        Err(ExecError::NonDeterministicAdapter {
            checked: k,
            mismatches,
        })
    }
}

pub use crate::store::MemoryStore;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{plan_golden, plan_interactions};
    use crate::space::FactorSpace;
    use crate::store::JsonlStore;
    use std::sync::atomic::{AtomicUsize, Ordering};

    /// Deterministic toy adapter: metric is a hash-mix of the assignment.
    struct HashAdapter {
        id: String,
    }

    impl HashAdapter {
        fn new() -> Self {
            Self {
                id: "hash-adapter".into(),
            }
        }
    }

    impl ExperimentAdapter for HashAdapter {
        fn experiment_id(&self) -> &str {
            &self.id
        }
        fn metric_name(&self) -> &str {
            "score"
        }
        fn evaluate(
            &self,
            assignment: &Assignment,
            seeds: &SeedBundle,
        ) -> Result<f64, AdapterError> {
            let _ = assignment;
            Ok((seeds.master % 10_000) as f64 / 10_000.0)
        }
    }

    struct FailingAdapter {
        inner: HashAdapter,
    }

    impl ExperimentAdapter for FailingAdapter {
        fn experiment_id(&self) -> &str {
            "failing-adapter"
        }
        fn metric_name(&self) -> &str {
            "score"
        }
        fn evaluate(
            &self,
            assignment: &Assignment,
            seeds: &SeedBundle,
        ) -> Result<f64, AdapterError> {
            if assignment.get("a") == Some(0) && assignment.get("b") == Some(0) {
                return Ok(f64::NAN);
            }
            self.inner.evaluate(assignment, seeds)
        }
    }

    /// Adapter whose output depends on how often it has been called.
    struct StatefulAdapter {
        calls: AtomicUsize,
    }

    impl ExperimentAdapter for StatefulAdapter {
        fn experiment_id(&self) -> &str {
            "stateful"
        }
        fn metric_name(&self) -> &str {
            "score"
        }
        fn evaluate(&self, _: &Assignment, _: &SeedBundle) -> Result<f64, AdapterError> {
            Ok(self.calls.fetch_add(1, Ordering::SeqCst) as f64)
        }
    }

    fn space() -> FactorSpace {
        FactorSpace::build([("a", 16u64), ("b", 16u64)]).unwrap()
    }

    #[test]
    fn seed_bundles_are_deterministic_and_sensitive() {
        let a1 = Assignment::new(BTreeMap::from([("x".into(), 1u64), ("y".into(), 2u64)]));
        let b1 = derive_seed_bundle("exp", &a1);
        let b2 = derive_seed_bundle("exp", &a1);
        assert_eq!(b1, b2);

        // changing one factor index changes that factor's seed and the master
        let a2 = a1.with("y", 3);
        let b3 = derive_seed_bundle("exp", &a2);
        assert_eq!(b1.for_factor("x"), b3.for_factor("x"));
        assert_ne!(b1.for_factor("y"), b3.for_factor("y"));
        assert_ne!(b1.master, b3.master);

        // different experiments get different streams for the same assignment
        let b4 = derive_seed_bundle("other", &a1);
        assert_ne!(b1.master, b4.master);
    }

    #[test]
    fn master_seeds_do_not_collide_over_many_assignments() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = std::collections::HashSet::with_capacity(100_000);
        for _ in 0..100_000 {
            let a = Assignment::new(BTreeMap::from([
                ("f1".to_string(), rng.random_range(0..1u64 << 30)),
                ("f2".to_string(), rng.random_range(0..1u64 << 30)),
                ("f3".to_string(), rng.random_range(0..1u64 << 30)),
            ]));
            assert!(seen.insert(derive_seed_bundle("smoke", &a).master));
        }
    }

    #[test]
    fn parallel_and_serial_execution_agree() {
        let plan = plan_interactions(&space(), "a", 4, 4, 9, false).unwrap();
        let adapter = HashAdapter::new();
        let s1 = MemoryStore::new();
        let s4 = MemoryStore::new();
        let serial = execute_plan(&plan, &adapter, 1, &s1).unwrap();
        let parallel = execute_plan(&plan, &adapter, 4, &s4).unwrap();
        assert_eq!(serial.records.len(), parallel.records.len());
        for (a, b) in serial.records.iter().zip(&parallel.records) {
            assert!(a.same_outcome(b), "records diverge: {a:?} vs {b:?}");
        }
        assert_eq!(serial.metrics(), parallel.metrics());
    }

    #[test]
    fn resume_skips_completed_runs() {
        let plan = plan_golden(&space(), 10, 3, false).unwrap();
        let adapter = HashAdapter::new();
        let store = MemoryStore::new();
        let first = execute_plan(&plan, &adapter, 2, &store).unwrap();
        assert_eq!(first.newly_run, 10);
        let second = execute_plan(&plan, &adapter, 2, &store).unwrap();
        assert_eq!(second.newly_run, 0);
        assert_eq!(second.skipped, 10);
        for (a, b) in first.records.iter().zip(&second.records) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn interrupted_execution_resumes_to_identical_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let plan = plan_golden(&space(), 12, 8, false).unwrap();
        let adapter = HashAdapter::new();

        // uninterrupted reference run
        let full_store = MemoryStore::new();
        let reference = execute_plan(&plan, &adapter, 1, &full_store).unwrap();

        // partial run: execute a prefix of the plan, as if killed halfway
        {
            let store = JsonlStore::open(&path).unwrap();
            let mut half = plan.clone();
            half.cells.truncate(6);
            execute_plan(&half, &adapter, 1, &store).unwrap();
        }
        let store = JsonlStore::open(&path).unwrap();
        let resumed = execute_plan(&plan, &adapter, 1, &store).unwrap();
        assert_eq!(resumed.skipped, 6);
        assert_eq!(resumed.newly_run, 6);
        assert_eq!(reference.records.len(), resumed.records.len());
        for (a, b) in reference.records.iter().zip(&resumed.records) {
            assert!(a.same_outcome(b));
        }
    }

    #[test]
    fn nan_metric_becomes_failed_run_and_incomplete_plan() {
        let s = FactorSpace::build([("a", 2u64), ("b", 2u64)]).unwrap();
        let plan = plan_interactions(&s, "a", 2, 2, 1, false).unwrap();
        let adapter = FailingAdapter {
            inner: HashAdapter::new(),
        };
        let store = MemoryStore::new();
        let summary = execute_plan(&plan, &adapter, 1, &store).unwrap();
        assert_eq!(summary.records.len(), 4);
        assert_eq!(summary.failures, 1);
        assert!(!summary.complete());
        let failed: Vec<_> = summary.records.iter().filter(|r| !r.is_ok()).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].error.as_deref().unwrap().contains("not finite"));
        assert!(matches!(
            summary.grid(&plan).unwrap_err(),
            ExecError::IncompleteGrid { failed: 1, .. }
        ));
    }

    #[test]
    fn aggregation_is_order_independent() {
        let plan = plan_interactions(&space(), "a", 3, 3, 2, false).unwrap();
        let adapter = HashAdapter::new();
        let store = MemoryStore::new();
        let summary = execute_plan(&plan, &adapter, 1, &store).unwrap();
        let grid = summary.grid(&plan).unwrap();
        let d1 = crate::stats::decompose(&grid).unwrap();

        // shuffle arrival order, rebuild through a fresh store
        let mut shuffled = summary.records.clone();
        shuffled.reverse();
        shuffled.swap(0, 4);
        let store2 = MemoryStore::new();
        for r in &shuffled {
            store2.append(r).unwrap();
        }
        let resumed = execute_plan(&plan, &adapter, 1, &store2).unwrap();
        assert_eq!(resumed.newly_run, 0);
        let d2 = crate::stats::decompose(&resumed.grid(&plan).unwrap()).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn verify_determinism_accepts_pure_and_rejects_stateful() {
        let plan = plan_golden(&space(), 10, 5, false).unwrap();
        let pure = HashAdapter::new();
        let report = verify_determinism(&plan, &pure, 5, 0).unwrap();
        assert_eq!(report.checked, 5);

        let stateful = StatefulAdapter {
            calls: AtomicUsize::new(0),
        };
        let err = verify_determinism(&plan, &stateful, 5, 0).unwrap_err();
        assert!(matches!(err, ExecError::NonDeterministicAdapter { .. }));
    }

    #[test]
    fn effective_parallelism_env_override() {
        // temp-env style: set, check, restore
        std::env::set_var(PARALLELISM_ENV, "3");
        assert_eq!(effective_parallelism(8), 3);
        std::env::set_var(PARALLELISM_ENV, "bogus");
        assert_eq!(effective_parallelism(8), 8);
        std::env::remove_var(PARALLELISM_ENV);
        assert_eq!(effective_parallelism(8), 8);
    }
}
