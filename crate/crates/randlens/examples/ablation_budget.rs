//! Budget ablation on the fine-tuning analog: vary the number of mitigation
//! runs and the evaluation-set size, and watch the mitigated std inflate
//! while the contributed std stays approximately the same.
//!
//! ```bash
//! cargo run --release --example ablation_budget
//! ```

use randlens::executor::execute_plan;
use randlens::experiments::{ToyExperimentConfig, ToyFinetune};
use randlens::planner::{plan_golden, plan_interactions};
use randlens::space::{Factor, FactorSpace};
use randlens::stats::{decompose, golden_std, importance};
use randlens::store::MemoryStore;

fn main() -> anyhow::Result<()> {
    let base = ToyExperimentConfig::default();
    let space = FactorSpace::new(
        ToyFinetune::required_factors()
            .into_iter()
            .map(Factor::unbounded)
            .collect(),
    )?;
    let n = 10;
    let seed = 29;
    let test_size = base.test_size();
    let factors = ToyFinetune::required_factors();

    println!(
        "{:<16} {:>6} {:>6} {:>8} {:>8} {:>8} {:>11}",
        "factor", "M", "eval", "gm_std", "c_std", "m_std", "importance"
    );
    for (m, eval_fraction) in [(20usize, 1.0f64), (20, 0.25), (5, 1.0), (5, 0.25)] {
        let eval_cap = ((test_size as f64) * eval_fraction).round().max(2.0) as usize;
        let config = ToyExperimentConfig {
            eval_cap,
            ..base.clone()
        };
        let adapter = ToyFinetune::new(config)?.with_id(format!("ablate-m{m}-eval{eval_cap}"));
        let store = MemoryStore::new();
        let golden = execute_plan(
            &plan_golden(&space, n * m, seed, false)?,
            &adapter,
            8,
            &store,
        )?;
        let (gm_std, _) = golden_std(&golden.metrics())?;
        for factor in factors {
            let plan = plan_interactions(&space, factor, n, m, seed, false)?;
            let exec = execute_plan(&plan, &adapter, 8, &store)?;
            let d = decompose(&exec.grid(&plan)?)?;
            let imp = importance(d.c_std, d.m_std, gm_std)?;
            println!(
                "{:<16} {:>6} {:>6} {:>8.4} {:>8.4} {:>8.4} {:>8.2} {}",
                factor,
                m,
                eval_cap,
                gm_std,
                d.c_std,
                d.m_std,
                imp.score,
                if imp.important { "(*)" } else { "" }
            );
        }
        println!();
    }
    println!("the same grid is available from the command line:");
    println!("  randlens ablate --experiment toy_finetune --m-values 20,5 --eval-sizes 1.0,0.25");
    Ok(())
}
