//! Command-line entry point: wires spaces, plans, execution, statistics and
//! reporting together, and hosts the external-command adapter and the
//! ablation harness.
//!
//! Exit codes: 0 success, 1 config/usage error, 2 incomplete plan,
//! 3 adapter contract violation.

use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::config::{resolve, ConfigError, ExperimentSelection, FileConfig, Overrides, Settings};
use crate::executor::{
    effective_parallelism, execute_plan, verify_determinism, AdapterError, ExecError,
    ExperimentAdapter, SeedBundle,
};
use crate::experiments::{ToyFinetune, ToyIcl};
use crate::hash::StableHasher;
use crate::planner::{
    plan_fixed, plan_golden, plan_interactions, plan_random, select_run_counts, PlanError, RunPlan,
    Strategy,
};
use crate::report::{
    format_comparison_text, summarize, write_report_tree, InvestigationReport, ReportError,
    SummarizeOptions,
};
use crate::space::Assignment;
use crate::stats::DecompositionResult;
use crate::store::{JsonlStore, StoreError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Exec(#[from] ExecError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Exit status of a command, before mapping to a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    /// Some planned runs are missing; re-running resumes them.
    Incomplete,
    /// At least one run violated the adapter contract (non-finite metric,
    /// adapter failure, or nondeterminism).
    ContractViolation,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Incomplete => 2,
            ExitStatus::ContractViolation => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "randlens",
    version,
    about = "Quantifies how much each randomness factor contributes to the performance variance of a stochastic experiment"
)]
pub struct Cli {
    /// Plain-text config file with `[space]`, `[experiment]`, `[run]` and
    /// `[ablation]` sections; every flag below overrides its config key.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Experiment backing the runs: synthetic, toy_finetune, toy_icl or
    /// external.
    #[arg(long, global = true)]
    pub experiment: Option<String>,

    /// Factor space as `name=cardinality,...` (cardinality may be
    /// `unbounded`).
    #[arg(long, global = true)]
    pub space: Option<String>,

    /// Factors to investigate (default: every factor in the space).
    #[arg(long, global = true, value_delimiter = ',')]
    pub factors: Option<Vec<String>>,

    /// Investigation runs per mitigation run.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Mitigation runs.
    #[arg(long, global = true)]
    pub m: Option<usize>,

    /// Golden-model runs (default: n*m).
    #[arg(long, global = true)]
    pub l: Option<usize>,

    /// Master seed; all plan seeds derive from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Concurrent adapter evaluations (RANDLENS_PARALLELISM overrides).
    #[arg(long, global = true)]
    pub parallelism: Option<usize>,

    /// Output directory for records and reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Tolerate missing/failed runs: rows with gaps are dropped whole, as
    /// long as at least 95% of each plan succeeded.
    #[arg(long, global = true)]
    pub allow_missing: bool,

    /// When a space is too small for the requested run counts, use every
    /// configuration instead of failing.
    #[arg(long, global = true)]
    pub allow_exhaustive: bool,

    /// Convergence threshold for select-params.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    /// Starting N for select-params.
    #[arg(long, global = true)]
    pub start_n: Option<usize>,

    /// Grid-run budget for select-params.
    #[arg(long, global = true)]
    pub budget: Option<usize>,

    /// Grant the fixed baseline the full n*m budget instead of n runs.
    #[arg(long, global = true)]
    pub fixed_full_budget: bool,

    /// Re-execute this many sampled cells twice and fail on any bit-exact
    /// metric mismatch.
    #[arg(long, global = true, value_name = "K")]
    pub verify_determinism: Option<usize>,

    /// Mitigation-run counts for the ablation grid.
    #[arg(long, global = true, value_delimiter = ',')]
    pub m_values: Option<Vec<usize>>,

    /// Evaluation-set sizes for the ablation grid: fractions (<= 1.0) of
    /// the test set or absolute counts.
    #[arg(long, global = true, value_delimiter = ',')]
    pub eval_sizes: Option<Vec<f64>>,

    /// External adapter command, run through `sh -c` (prefer `command` in
    /// the config file for argument vectors).
    #[arg(long, global = true)]
    pub command: Option<String>,

    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the interaction-aware investigation for each factor plus the
    /// golden model, and write the report tree.
    Investigate,
    /// Run the Random and Fixed baselines alongside the interaction-aware
    /// method on identical budgets and emit the comparison table.
    CompareStrategies,
    /// Search for the smallest stable (N, M) by growing the grid until the
    /// statistics change less than epsilon.
    SelectParams,
    /// Re-run the investigation over a grid of mitigation-run counts and
    /// evaluation-set sizes.
    Ablate,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            experiment: self.experiment.clone(),
            space: self.space.clone(),
            factors: self.factors.clone(),
            n: self.n,
            m: self.m,
            l: self.l,
            seed: self.seed,
            parallelism: self.parallelism,
            out_dir: self.out.clone(),
            allow_missing: self.allow_missing,
            allow_exhaustive: self.allow_exhaustive,
            epsilon: self.epsilon,
            start_n: self.start_n,
            budget: self.budget,
            fixed_full_budget: self.fixed_full_budget,
            baseline_threshold: None,
            m_values: self.m_values.clone(),
            eval_sizes: self.eval_sizes.clone(),
            command: self.command.clone(),
            verify_determinism: self.verify_determinism,
        }
    }
}

/// Derives a plan seed from the master seed, so one number reproduces a
/// whole investigation.
pub fn plan_seed(master: u64, strategy: Strategy, factor: Option<&str>) -> u64 {
    StableHasher::new()
        .write_u64(master)
        .write_str("plan")
        .write_str(&strategy.to_string())
        .write_str(factor.unwrap_or(""))
        .finish()
}

/// Adapter wrapping a user command invoked once per run: a JSON document
/// with the assignment, derived seeds and experiment config on stdin, a
/// `{"metric": <float>}` document on stdout.
pub struct ExternalCommandAdapter {
    command: Vec<String>,
    experiment_id: String,
    timeout: Duration,
    config: serde_json::Value,
}

impl ExternalCommandAdapter {
    pub fn new(
        command: Vec<String>,
        experiment_id: impl Into<String>,
        timeout: Duration,
        config: serde_json::Value,
    ) -> Result<Self, ConfigError> {
        if command.is_empty() {
            return Err(ConfigError::Invalid("external command is empty".into()));
        }
        Ok(Self {
            command,
            experiment_id: experiment_id.into(),
            timeout,
            config,
        })
    }
}

impl ExperimentAdapter for ExternalCommandAdapter {
    fn experiment_id(&self) -> &str {
        &self.experiment_id
    }

    fn metric_name(&self) -> &str {
        "metric"
    }

    fn evaluate(&self, assignment: &Assignment, seeds: &SeedBundle) -> Result<f64, AdapterError> {
        let payload = serde_json::json!({
            "assignment": assignment,
            "seeds": seeds,
            "config": self.config,
        });
        let mut child = std::process::Command::new(&self.command[0])
            .args(&self.command[1..])
            .stdin(std::process::Stdio::piped())
            .stdout(std::process::Stdio::piped())
            .stderr(std::process::Stdio::piped())
            .spawn()
            .map_err(|e| AdapterError::Process(format!("spawn `{}`: {e}", self.command[0])))?;

        {
            let mut stdin = child.stdin.take().expect("stdin is piped");
            let mut line = payload.to_string();
            line.push('\n');
            // a child that never reads stdin (e.g. an echo-style stub)
            // closes the pipe early; that is not an error
            if let Err(e) = stdin.write_all(line.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(AdapterError::Process(format!("write stdin: {e}")));
                }
            }
        }
        // drain pipes on threads so a chatty child cannot deadlock on a
        // full pipe buffer while we wait
        let stdout = child.stdout.take().expect("stdout is piped");
        let stderr = child.stderr.take().expect("stderr is piped");
        let out_handle = std::thread::spawn(move || -> std::io::Result<String> {
            use std::io::Read;
            let mut s = String::new();
            let mut r = stdout;
            r.read_to_string(&mut s)?;
            Ok(s)
        });
        let err_handle = std::thread::spawn(move || -> std::io::Result<String> {
            use std::io::Read;
            let mut s = String::new();
            let mut r = stderr;
            r.read_to_string(&mut s)?;
            Ok(s)
        });

        let started = Instant::now();
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) => {
                    if started.elapsed() > self.timeout {
                        let _ = child.kill();
                        let _ = child.wait();
                        return Err(AdapterError::Process(format!(
                            "timed out after {:?}",
                            self.timeout
                        )));
                    }
                    std::thread::sleep(Duration::from_millis(2));
                }
                Err(e) => return Err(AdapterError::Process(format!("wait: {e}"))),
            }
        };
        let stdout_text = out_handle
            .join()
            .map_err(|_| AdapterError::Process("stdout reader panicked".into()))?
            .map_err(|e| AdapterError::Process(format!("read stdout: {e}")))?;
        let stderr_text = err_handle
            .join()
            .map_err(|_| AdapterError::Process("stderr reader panicked".into()))?
            .map_err(|e| AdapterError::Process(format!("read stderr: {e}")))?;

        if !status.success() {
            let mut snippet = stderr_text.trim().to_string();
            snippet.truncate(300);
            return Err(AdapterError::Process(format!(
                "exit status {status}: {snippet}"
            )));
        }
        let line = stdout_text
            .lines()
            .rev()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| AdapterError::Process("no output".into()))?;
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| AdapterError::Process(format!("bad JSON `{line}`: {e}")))?;
        let metric = value
            .get("metric")
            .and_then(|m| m.as_f64())
            .ok_or_else(|| AdapterError::Process(format!("no numeric `metric` in `{line}`")))?;
        Ok(metric)
    }
}

fn build_adapter(settings: &Settings) -> Result<Arc<dyn ExperimentAdapter>, CliError> {
    match settings.selection {
        ExperimentSelection::External => {
            let command = settings.experiment.command.clone().ok_or_else(|| {
                ConfigError::Invalid(
                    "external experiment needs `command` in [experiment] or --command".into(),
                )
            })?;
            let id = settings
                .experiment
                .id
                .clone()
                .unwrap_or_else(|| "external".to_string());
            let timeout = Duration::from_secs(settings.experiment.timeout_secs.unwrap_or(300));
            let config = serde_json::to_value(&settings.experiment)
                .expect("experiment sections always serialize");
            Ok(Arc::new(ExternalCommandAdapter::new(
                command, id, timeout, config,
            )?))
        }
        _ => Ok(settings.build_builtin_adapter()?),
    }
}

fn print_summary(report: &InvestigationReport) {
    println!(
        "experiment {} | metric {} | N={} M={} L={} | golden mean {:.4} std {:.4}",
        report.meta.experiment_id,
        report.meta.metric_name,
        report.meta.n,
        report.meta.m,
        report.meta.l,
        report.golden_mean,
        report.golden_std
    );
    println!(
        "{:<20} {:>10} {:>10} {:>10} {:>10} {:>11}",
        "factor", "mean", "c_std", "m_std", "gm_std", "importance"
    );
    for outcome in &report.factors {
        let d = &outcome.decomposition;
        // human-facing importance is rounded to 2 decimals; machine outputs
        // keep full precision
        println!(
            "{:<20} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>8.2} {}",
            d.factor,
            d.mean,
            d.c_std,
            d.m_std,
            d.gm_std,
            d.importance,
            if d.important { "(*)" } else { "" }
        );
        if outcome.dropped_rows > 0 {
            println!(
                "  ({} rows dropped: {} failed cells, {} missing)",
                outcome.dropped_rows, outcome.failed_cells, outcome.missing_cells
            );
        }
    }
}

struct ExecutionTally {
    failures: usize,
}

fn execute_all(
    plans: &[RunPlan],
    adapter: &Arc<dyn ExperimentAdapter>,
    settings: &Settings,
    store: &JsonlStore,
) -> Result<ExecutionTally, CliError> {
    let parallelism = effective_parallelism(settings.parallelism);
    let mut failures = 0;
    for plan in plans {
        let summary = execute_plan(plan, adapter.as_ref(), parallelism, store)?;
        failures += summary.failures;
        log::info!(
            "{} plan{}: {} new, {} resumed, {} failed",
            plan.strategy,
            plan.investigated_factor
                .as_deref()
                .map(|f| format!(" for `{f}`"))
                .unwrap_or_default(),
            summary.newly_run,
            summary.skipped,
            summary.failures
        );
    }
    Ok(ExecutionTally { failures })
}

fn summarize_and_report(
    settings: &Settings,
    plans: &[RunPlan],
    adapter: &Arc<dyn ExperimentAdapter>,
    store: &JsonlStore,
    tally: &ExecutionTally,
    out_dir: &std::path::Path,
) -> Result<(ExitStatus, Option<InvestigationReport>), CliError> {
    let options = SummarizeOptions {
        allow_missing: settings.allow_missing,
        master_seed: settings.seed,
        baseline_threshold: settings.baseline_threshold,
        ..Default::default()
    };
    match summarize(
        store,
        plans,
        adapter.experiment_id(),
        &settings.space,
        &options,
    ) {
        Ok(report) => {
            write_report_tree(out_dir, &report)?;
            let status = if tally.failures > 0 {
                ExitStatus::ContractViolation
            } else {
                ExitStatus::Success
            };
            Ok((status, Some(report)))
        }
        Err(e @ ReportError::IncompletePlan { .. }) => {
            eprintln!("{e}");
            let status = if tally.failures > 0 {
                ExitStatus::ContractViolation
            } else {
                ExitStatus::Incomplete
            };
            Ok((status, None))
        }
        Err(other) => Err(other.into()),
    }
}

/// Plans and executes the interaction-aware investigation for every
/// requested factor plus one shared golden plan, then writes the report
/// tree under the output directory.
pub fn cmd_investigate(settings: &Settings) -> Result<ExitStatus, CliError> {
    let adapter = build_adapter(settings)?;
    let mut plans = Vec::new();
    for factor in &settings.factors {
        plans.push(plan_interactions(
            &settings.space,
            factor,
            settings.n,
            settings.m,
            plan_seed(settings.seed, Strategy::Interactions, Some(factor)),
            settings.allow_exhaustive,
        )?);
    }
    plans.push(plan_golden(
        &settings.space,
        settings.l,
        plan_seed(settings.seed, Strategy::Golden, None),
        settings.allow_exhaustive,
    )?);

    std::fs::create_dir_all(&settings.out_dir).map_err(|source| CliError::Io {
        path: settings.out_dir.display().to_string(),
        source,
    })?;
    let store = JsonlStore::open(settings.out_dir.join("records.jsonl"))?;
    let tally = execute_all(&plans, &adapter, settings, &store)?;

    if let Some(k) = settings.verify_determinism {
        verify_determinism(&plans[0], adapter.as_ref(), k, settings.seed)?;
        println!("determinism check passed on {k} sampled cells");
    }

    let (status, report) = summarize_and_report(
        settings,
        &plans,
        &adapter,
        &store,
        &tally,
        &settings.out_dir,
    )?;
    if let Some(report) = &report {
        print_summary(report);
    }
    Ok(status)
}

/// Runs Random (budget n*m), Fixed (budget n, or n*m with
/// `fixed_full_budget`) and Interactions (n*m) per factor on identical
/// master seeds, plus the shared golden plan, and emits the comparison.
pub fn cmd_compare_strategies(settings: &Settings) -> Result<ExitStatus, CliError> {
    let random_budget = settings.n * settings.m;
    let fixed_budget = if settings.fixed_full_budget {
        settings.n * settings.m
    } else {
        settings.n
    };
    if random_budget < 2 || fixed_budget < 2 {
        return Err(ConfigError::Invalid(format!(
            "every strategy needs a budget of at least 2 runs (random {random_budget}, fixed {fixed_budget})"
        ))
        .into());
    }
    let adapter = build_adapter(settings)?;
    let mut plans = Vec::new();
    for factor in &settings.factors {
        plans.push(plan_interactions(
            &settings.space,
            factor,
            settings.n,
            settings.m,
            plan_seed(settings.seed, Strategy::Interactions, Some(factor)),
            settings.allow_exhaustive,
        )?);
        plans.push(plan_random(
            &settings.space,
            factor,
            random_budget,
            plan_seed(settings.seed, Strategy::Random, Some(factor)),
        )?);
        plans.push(plan_fixed(
            &settings.space,
            factor,
            fixed_budget,
            plan_seed(settings.seed, Strategy::Fixed, Some(factor)),
        )?);
    }
    plans.push(plan_golden(
        &settings.space,
        settings.l,
        plan_seed(settings.seed, Strategy::Golden, None),
        settings.allow_exhaustive,
    )?);

    std::fs::create_dir_all(&settings.out_dir).map_err(|source| CliError::Io {
        path: settings.out_dir.display().to_string(),
        source,
    })?;
    let store = JsonlStore::open(settings.out_dir.join("records.jsonl"))?;
    let tally = execute_all(&plans, &adapter, settings, &store)?;
    let (status, report) = summarize_and_report(
        settings,
        &plans,
        &adapter,
        &store,
        &tally,
        &settings.out_dir,
    )?;
    if let Some(report) = &report {
        if let Some(comparison) = &report.comparison {
            print!("{}", format_comparison_text(comparison));
        }
    }
    Ok(status)
}

/// Runs the iterative (N, M) search for each requested factor and writes
/// one trace CSV per factor.
pub fn cmd_select_params(settings: &Settings) -> Result<ExitStatus, CliError> {
    let adapter = build_adapter(settings)?;
    std::fs::create_dir_all(&settings.out_dir).map_err(|source| CliError::Io {
        path: settings.out_dir.display().to_string(),
        source,
    })?;
    let mut rec_n = 0usize;
    let mut rec_m = 0usize;
    for factor in &settings.factors {
        let selection = select_run_counts(
            adapter.as_ref(),
            &settings.space,
            factor,
            settings.epsilon,
            settings.start_n,
            settings.budget,
            plan_seed(settings.seed, Strategy::Interactions, Some(factor)),
        )?;
        let mut csv = String::from("step,n,m,grid_runs,c_std,m_std,importance,delta\n");
        for (i, step) in selection.trace.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                i,
                step.n,
                step.m,
                step.grid_runs,
                step.c_std,
                step.m_std,
                step.importance,
                step.delta.map(|d| d.to_string()).unwrap_or_default()
            ));
        }
        let path = settings.out_dir.join(format!("select_params_{factor}.csv"));
        std::fs::write(&path, csv).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        println!(
            "{factor}: N={} M={} after {} steps ({}{})",
            selection.n_investigation,
            selection.n_mitigation,
            selection.trace.len(),
            if selection.converged {
                "converged"
            } else {
                "stopped"
            },
            if selection.budget_exhausted {
                ", budget exhausted"
            } else {
                ""
            }
        );
        rec_n = rec_n.max(selection.n_investigation);
        rec_m = rec_m.max(selection.n_mitigation);
    }
    println!(
        "recommendation across factors: N={rec_n} M={rec_m} L={}",
        rec_n * rec_m
    );
    Ok(ExitStatus::Success)
}

/// Outcome of one ablation grid point.
pub struct AblationCell {
    pub m: usize,
    pub eval_cap: usize,
    pub golden_mean: f64,
    pub golden_std: f64,
    pub decompositions: Vec<DecompositionResult>,
}

/// Re-runs the investigation over the cross product of mitigation-run
/// counts and evaluation-set sizes. Only the toy experiments expose the
/// evaluation-size knob.
pub fn cmd_ablate(settings: &Settings) -> Result<ExitStatus, CliError> {
    let toy_config = match settings.selection {
        ExperimentSelection::ToyFinetune | ExperimentSelection::ToyIcl => settings.toy_config(),
        _ => {
            return Err(ConfigError::Invalid(
                "ablate needs a toy experiment (toy_finetune or toy_icl); the evaluation-size knob has no meaning elsewhere".into(),
            )
            .into())
        }
    };
    let test_size = toy_config.test_size();
    let mut worst = ExitStatus::Success;
    let mut cells: Vec<AblationCell> = Vec::new();

    for &m in &settings.ablation_m_values {
        for &eval_size in &settings.ablation_eval_sizes {
            let eval_cap = if eval_size <= 1.0 {
                ((test_size as f64) * eval_size).round().max(1.0) as usize
            } else {
                eval_size as usize
            };
            let mut config = toy_config.clone();
            config.eval_cap = eval_cap;
            // combos keep the base experiment id; each grid point gets its
            // own store directory, and a degenerate one-point grid then
            // reproduces `investigate` exactly
            let adapter: Arc<dyn ExperimentAdapter> = match settings.selection {
                ExperimentSelection::ToyIcl => {
                    let a = ToyIcl::new(config).map_err(|e| ConfigError::Invalid(e.to_string()))?;
                    Arc::new(match &settings.experiment.id {
                        Some(id) => a.with_id(id.clone()),
                        None => a,
                    })
                }
                _ => {
                    let a = ToyFinetune::new(config)
                        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                    Arc::new(match &settings.experiment.id {
                        Some(id) => a.with_id(id.clone()),
                        None => a,
                    })
                }
            };

            let mut plans = Vec::new();
            for factor in &settings.factors {
                plans.push(plan_interactions(
                    &settings.space,
                    factor,
                    settings.n,
                    m,
                    plan_seed(settings.seed, Strategy::Interactions, Some(factor)),
                    settings.allow_exhaustive,
                )?);
            }
            plans.push(plan_golden(
                &settings.space,
                settings.n * m,
                plan_seed(settings.seed, Strategy::Golden, None),
                settings.allow_exhaustive,
            )?);

            let combo_dir = settings.out_dir.join(format!("ablate_m{m}_eval{eval_cap}"));
            std::fs::create_dir_all(&combo_dir).map_err(|source| CliError::Io {
                path: combo_dir.display().to_string(),
                source,
            })?;
            let store = JsonlStore::open(combo_dir.join("records.jsonl"))?;
            let tally = execute_all(&plans, &adapter, settings, &store)?;
            let (status, report) =
                summarize_and_report(settings, &plans, &adapter, &store, &tally, &combo_dir)?;
            if status.code() > worst.code() {
                worst = status;
            }
            if let Some(report) = report {
                cells.push(AblationCell {
                    m,
                    eval_cap,
                    golden_mean: report.golden_mean,
                    golden_std: report.golden_std,
                    decompositions: report
                        .factors
                        .iter()
                        .map(|f| f.decomposition.clone())
                        .collect(),
                });
            }
        }
    }

    // long-format CSV plus a text grid with one column per combo
    let mut csv = String::from(
        "format_version,m,eval_cap,golden_mean,golden_std,factor,mean,std,c_std,m_std,importance\n",
    );
    for cell in &cells {
        for d in &cell.decompositions {
            csv.push_str(&format!(
                "1,{},{},{},{},{},{},{},{},{},{}\n",
                cell.m,
                cell.eval_cap,
                cell.golden_mean,
                cell.golden_std,
                d.factor,
                d.mean,
                d.std,
                d.c_std,
                d.m_std,
                d.importance
            ));
        }
    }
    let path = settings.out_dir.join("ablation.csv");
    std::fs::write(&path, &csv).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    print!("{}", format_ablation_text(&cells));
    Ok(worst)
}

/// Text grid shaped like the budget-reduction ablation table: one column
/// per (M, eval size) combination.
pub fn format_ablation_text(cells: &[AblationCell]) -> String {
    if cells.is_empty() {
        return "no ablation cells completed\n".to_string();
    }
    let mut out = String::new();
    out.push_str(&format!("{:<28}", "mitigation runs"));
    for c in cells {
        out.push_str(&format!(" {:>14}", c.m));
    }
    out.push('\n');
    out.push_str(&format!("{:<28}", "eval samples"));
    for c in cells {
        out.push_str(&format!(" {:>14}", c.eval_cap));
    }
    out.push('\n');
    out.push_str(&format!("{:<28}", "golden mean / std"));
    for c in cells {
        out.push_str(&format!(" {:>7.4}/{:<6.4}", c.golden_mean, c.golden_std));
    }
    out.push('\n');
    let factors: Vec<String> = cells[0]
        .decompositions
        .iter()
        .map(|d| d.factor.clone())
        .collect();
    for factor in &factors {
        for (label, pick) in [("c_std", 0usize), ("m_std", 1), ("importance", 2)] {
            out.push_str(&format!("{:<28}", format!("{factor} {label}")));
            for c in cells {
                if let Some(d) = c.decompositions.iter().find(|d| &d.factor == factor) {
                    let v = match pick {
                        0 => d.c_std,
                        1 => d.m_std,
                        _ => d.importance,
                    };
                    if pick == 2 {
                        out.push_str(&format!(" {:>14.2}", v));
                    } else {
                        out.push_str(&format!(" {:>14.4}", v));
                    }
                } else {
                    out.push_str(&format!(" {:>14}", "-"));
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Entry point used by the binary: resolves settings, dispatches the
/// subcommand, maps errors to exit codes.
pub fn run(cli: Cli) -> u8 {
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{e}");
                return 1;
            }
        },
        None => FileConfig::default(),
    };
    let settings = match resolve(file, &cli.overrides()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let result = match cli.cmd {
        Command::Investigate => cmd_investigate(&settings),
        Command::CompareStrategies => cmd_compare_strategies(&settings),
        Command::SelectParams => cmd_select_params(&settings),
        Command::Ablate => cmd_ablate(&settings),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("{e}");
            exit_code_of(&e)
        }
    }
}

/// Process exit code an error maps to.
pub fn exit_code_of(err: &CliError) -> u8 {
    match err {
        CliError::Exec(ExecError::NonDeterministicAdapter { .. }) => 3,
        CliError::Report(ReportError::IncompletePlan { .. }) => 2,
        _ => 1,
    }
}
