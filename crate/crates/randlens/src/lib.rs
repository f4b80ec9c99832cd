//! randlens — variance attribution for randomness factors.
//!
//! A stochastic training/evaluation pipeline makes non-deterministic
//! decisions: how the data is split, which samples get labels, the order
//! samples are consumed in, which exemplars a prompt uses, how weights are
//! initialised. Each such decision is a *randomness factor* with a set of
//! configurations. This crate measures how much of the run-to-run deviation
//! in a metric each factor is responsible for, while explicitly mitigating
//! the interactions between factors:
//!
//! 1. Pick the investigated factor. Sample M joint configurations of the
//!    remaining factors (mitigation runs). Under each, sweep N
//!    configurations of the investigated factor (investigation runs) and
//!    record the metric — an M x N grid.
//! 2. Per row, take the mean and sample std. The mean of row stds is the
//!    *contributed std* (`c_std`) of the investigated factor; the std of
//!    row means is the *mitigated std* (`m_std`) of everything else.
//! 3. Run a *golden model*: L = N*M runs sampled from the full cross
//!    product of all configurations, whose std (`gm_std`) estimates the
//!    overall deviation.
//! 4. Score `importance = (c_std - m_std) / gm_std`. A factor above zero
//!    contributes more deviation than all remaining factors combined.
//!
//! The `Random` (vary everything per run) and `Fixed` (pin everything else
//! once) baseline strategies are included for comparison, along with
//! synthetic experiments whose ground truth is known by construction, a
//! deterministic parallel executor with JSONL persistence and resume, and
//! reporting (CSV/JSON summaries, SVG importance charts).
//!
//! Entry points: build a [`space::FactorSpace`], pick an adapter (built-ins
//! live in [`experiments`], external commands in [`cli`]), plan with
//! [`planner`], execute with [`executor`], summarize with [`report`]. The
//! `examples/` directory walks through each capability end to end.

pub mod cli;
pub mod config;
pub mod executor;
pub mod experiments;
pub mod hash;
pub mod planner;
pub mod report;
pub mod space;
pub mod stats;
pub mod store;

pub use executor::{
    derive_seed_bundle, execute_plan, verify_determinism, AdapterError, ExperimentAdapter,
    RunRecord, SeedBundle,
};
pub use planner::{
    plan_fixed, plan_golden, plan_interactions, plan_random, select_run_counts, RunPlan, Strategy,
};
pub use space::{Assignment, Factor, FactorSpace, SpaceError};
pub use stats::{decompose, importance, DecompositionResult, GridResult};
pub use store::{JsonlStore, MemoryStore, RunStore};
