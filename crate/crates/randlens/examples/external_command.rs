//! Wiring an external training script as the experiment, and splitting work
//! across machines by shipping plans as JSON.
//!
//! The protocol: the command is invoked once per run with one JSON document
//! on stdin — `{"assignment": {...}, "seeds": {"per_factor": {...},
//! "master": ...}, "config": {...}}` — and must print `{"metric": <float>}`
//! on stdout.
//!
//! ```bash
//! cargo run --release --example external_command
//! ```

use std::time::Duration;

use randlens::cli::ExternalCommandAdapter;
use randlens::executor::execute_plan;
use randlens::planner::{plan_interactions, RunPlan};
use randlens::space::FactorSpace;
use randlens::stats::decompose;
use randlens::store::MemoryStore;

fn main() -> anyhow::Result<()> {
    // stand-in for a real training script: reads the assignment, derives a
    // metric from the per-factor seeds it was handed
    let script = r#"python3 -c '
import json, sys
doc = json.loads(sys.stdin.readline())
seeds = doc["seeds"]["per_factor"]
value = 0.8 + (seeds["data_order"] % 97) / 1000.0 - (seeds["sample_choice"] % 53) / 2000.0
print(json.dumps({"metric": value}))
'"#;
    let adapter = ExternalCommandAdapter::new(
        vec!["sh".into(), "-c".into(), script.into()],
        "external-demo",
        Duration::from_secs(30),
        serde_json::json!({"note": "any [experiment] config is passed through here"}),
    )?;

    let space = FactorSpace::build([("data_order", 1u64 << 32), ("sample_choice", 1u64 << 32)])?;
    let plan = plan_interactions(&space, "data_order", 4, 6, 99, false)?;

    // plans serialize to JSON, so another machine can execute a shard and
    // ship `records.jsonl` back; run ids line up because they derive from
    // the plan, not from the machine
    let shipped = plan.to_json()?;
    let reloaded = RunPlan::from_json(&shipped)?;
    assert_eq!(reloaded, plan);

    let store = MemoryStore::new();
    let exec = execute_plan(&reloaded, &adapter, 4, &store)?;
    println!(
        "executed {} external runs ({} failures)",
        exec.records.len(),
        exec.failures
    );
    let d = decompose(&exec.grid(&reloaded)?)?;
    println!("data_order: c_std {:.4}, m_std {:.4}", d.c_std, d.m_std);
    Ok(())
}
