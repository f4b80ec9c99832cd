//! Choosing N and M: grow the grid until the contributed std, mitigated std
//! and importance all change by less than epsilon between steps.
//!
//! ```bash
//! cargo run --release --example select_run_counts
//! ```

use randlens::experiments::{SyntheticOracle, SyntheticOracleSpec};
use randlens::planner::select_run_counts;
use randlens::space::FactorSpace;

fn main() -> anyhow::Result<()> {
    let space = FactorSpace::build([("data_order", 400u64), ("sample_choice", 400)])?;
    let spec = SyntheticOracleSpec::with_sigmas(&space, 0.0, &[1.5, 0.8], 0.0, 0.2, 3)?;
    let oracle = SyntheticOracle::new(spec, space.clone())?;

    let selection = select_run_counts(
        &oracle,
        &space,
        "data_order",
        0.05, // epsilon: smallest acceptable change
        10,   // starting N
        2000, // grid-run budget
        21,
    )?;

    println!(
        "{:>4} {:>4} {:>6} {:>8} {:>8} {:>11} {:>8}",
        "N", "M", "runs", "c_std", "m_std", "importance", "delta"
    );
    for step in &selection.trace {
        println!(
            "{:>4} {:>4} {:>6} {:>8.4} {:>8.4} {:>11.3} {:>8}",
            step.n,
            step.m,
            step.grid_runs,
            step.c_std,
            step.m_std,
            step.importance,
            step.delta
                .map(|d| format!("{d:.4}"))
                .unwrap_or_else(|| "-".into())
        );
    }
    println!(
        "\nselected N={} M={} (L={}), {}",
        selection.n_investigation,
        selection.n_mitigation,
        selection.n_golden,
        if selection.converged {
            "converged"
        } else {
            "budget exhausted"
        }
    );
    Ok(())
}
