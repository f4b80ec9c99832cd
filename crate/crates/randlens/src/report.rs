//! Investigation outputs: joining run records back to plans, computing the
//! per-factor decompositions, and rendering the report tree
//! (`records.jsonl`, `summary.csv`, `comparison.csv`, `importance.svg`,
//! `report.json`).

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::executor::{run_id, RunRecord};
use crate::planner::{RunPlan, Strategy};
use crate::space::FactorSpace;
use crate::stats::{
    self, DecompositionResult, GridResult, Provenance, StatsError, StrategyComparison,
    StrategyObservation,
};
use crate::store::{RunStore, StoreError};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Default minimum fraction of planned cells that must have succeeded for a
/// plan to be summarized when missing runs are tolerated.
pub const DEFAULT_MIN_COMPLETENESS: f64 = 0.95;

/// Default baseline importance threshold (fraction of golden-model std).
pub const DEFAULT_BASELINE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no golden plan among the supplied plans")]
    MissingGolden,
    #[error("{strategy} plan{} incomplete: {ok} of {planned} cells succeeded ({missing} missing, {failed} failed); rerun or pass allow_missing", factor_label(.factor))]
    IncompletePlan {
        strategy: Strategy,
        factor: Option<String>,
        planned: usize,
        ok: usize,
        missing: usize,
        failed: usize,
    },
    #[error("{strategy} plan{} not analyzable: {reason}", factor_label(.factor))]
    NotAnalyzable {
        strategy: Strategy,
        factor: Option<String>,
        reason: String,
    },
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(String),
}

fn factor_label(factor: &Option<String>) -> String {
    match factor {
        Some(f) => format!(" for `{f}`"),
        None => String::new(),
    }
}

/// Recorded build/host information. Recorded for provenance, never enforced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvironmentFingerprint {
    pub os: String,
    pub arch: String,
    pub cpu: String,
    pub artifact_version: String,
    pub adapter_id: String,
}

pub fn environment_fingerprint(adapter_id: &str) -> EnvironmentFingerprint {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|v| v.trim().to_string())
        })
        .unwrap_or_else(|| "unknown".to_string());
    EnvironmentFingerprint {
        os: std::env::consts::OS.to_string(),
        arch: std::env::consts::ARCH.to_string(),
        cpu,
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        adapter_id: adapter_id.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub format_version: u32,
    pub experiment_id: String,
    pub metric_name: String,
    pub master_seed: u64,
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub space: FactorSpace,
    pub allow_missing: bool,
    /// The fixed baseline samples its single mitigated configuration
    /// independently per factor; recorded so readers know the convention.
    pub fixed_mitigation: String,
    pub created_unix: u64,
    pub environment: EnvironmentFingerprint,
}

/// Per-factor outcome: the decomposition plus bookkeeping about dropped data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorOutcome {
    pub decomposition: DecompositionResult,
    /// Rows dropped whole because one of their cells failed or is missing.
    pub dropped_rows: usize,
    pub failed_cells: usize,
    pub missing_cells: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvestigationReport {
    pub meta: ReportMetadata,
    pub golden_mean: f64,
    pub golden_std: f64,
    /// Golden runs that actually succeeded and entered the statistics.
    pub golden_runs: usize,
    pub factors: Vec<FactorOutcome>,
    pub comparison: Option<StrategyComparison>,
}

#[derive(Debug, Clone)]
pub struct SummarizeOptions {
    pub allow_missing: bool,
    pub min_completeness: f64,
    pub master_seed: u64,
    pub baseline_threshold: f64,
}

impl Default for SummarizeOptions {
    fn default() -> Self {
        Self {
            allow_missing: false,
            min_completeness: DEFAULT_MIN_COMPLETENESS,
            master_seed: 0,
            baseline_threshold: DEFAULT_BASELINE_THRESHOLD,
        }
    }
}

struct PlanJoin {
    /// One entry per plan cell, `None` when the record is absent.
    records: Vec<Option<RunRecord>>,
    ok: usize,
    missing: usize,
    failed: usize,
}

fn join_plan(store: &dyn RunStore, experiment_id: &str, plan: &RunPlan) -> PlanJoin {
    let mut records = Vec::with_capacity(plan.cells.len());
    let (mut ok, mut missing, mut failed) = (0usize, 0usize, 0usize);
    for cell in &plan.cells {
        match store.get(&run_id(experiment_id, plan, cell)) {
            Some(r) => {
                if r.is_ok() {
                    ok += 1;
                } else {
                    failed += 1;
                }
                records.push(Some(r));
            }
            None => {
                missing += 1;
                records.push(None);
            }
        }
    }
    PlanJoin {
        records,
        ok,
        missing,
        failed,
    }
}

fn check_completeness(
    plan: &RunPlan,
    join: &PlanJoin,
    options: &SummarizeOptions,
) -> Result<(), ReportError> {
    let planned = plan.cells.len();
    let complete = join.missing == 0 && join.failed == 0;
    if complete {
        return Ok(());
    }
    let enough = join.ok as f64 >= options.min_completeness * planned as f64;
    if options.allow_missing && enough {
        return Ok(());
    }
    Err(ReportError::IncompletePlan {
        strategy: plan.strategy,
        factor: plan.investigated_factor.clone(),
        planned,
        ok: join.ok,
        missing: join.missing,
        failed: join.failed,
    })
}

/// Flat list of successful metric values of a random/fixed/golden plan.
fn flat_values(join: &PlanJoin) -> Vec<f64> {
    join.records
        .iter()
        .flatten()
        .filter_map(|r| r.metric)
        .collect()
}

/// Joins run records to their plans, validates completeness, and computes
/// every statistic of the investigation. Rows with missing or failed cells
/// are dropped whole (partial rows would bias the partial stds).
pub fn summarize(
    store: &dyn RunStore,
    plans: &[RunPlan],
    experiment_id: &str,
    space: &FactorSpace,
    options: &SummarizeOptions,
) -> Result<InvestigationReport, ReportError> {
    let golden_plan = plans
        .iter()
        .find(|p| p.strategy == Strategy::Golden)
        .ok_or(ReportError::MissingGolden)?;
    let golden_join = join_plan(store, experiment_id, golden_plan);
    check_completeness(golden_plan, &golden_join, options)?;
    let golden_values = flat_values(&golden_join);
    if golden_values.len() < 2 {
        return Err(ReportError::NotAnalyzable {
            strategy: Strategy::Golden,
            factor: None,
            reason: format!("{} successful runs", golden_values.len()),
        });
    }
    let (golden_std, golden_mean) = stats::golden_std(&golden_values)?;

    let metric_name = golden_join
        .records
        .iter()
        .flatten()
        .next()
        .map(|r| r.metric_name.clone())
        .unwrap_or_default();

    let mut factors = Vec::new();
    let mut observations: Vec<StrategyObservation> = Vec::new();
    let mut any_baseline = false;
    let mut grid_n = 0usize;
    let mut grid_m = 0usize;

    for plan in plans
        .iter()
        .filter(|p| p.strategy == Strategy::Interactions)
    {
        let factor = plan
            .investigated_factor
            .clone()
            .expect("interactions plans always carry a factor");
        let join = join_plan(store, experiment_id, plan);
        check_completeness(plan, &join, options)?;

        // group by row; drop rows that lost any cell
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(plan.n_rows);
        let mut dropped_rows = 0usize;
        for row_idx in 0..plan.n_rows {
            let mut row = Vec::with_capacity(plan.n_cols);
            let mut intact = true;
            for (cell, record) in plan.cells.iter().zip(&join.records) {
                if cell.row != row_idx {
                    continue;
                }
                match record.as_ref().and_then(|r| r.metric) {
                    Some(v) => row.push(v),
                    None => {
                        intact = false;
                        break;
                    }
                }
            }
            if intact && row.len() == plan.n_cols {
                rows.push(row);
            } else {
                dropped_rows += 1;
            }
        }
        if rows.len() < 2 {
            return Err(ReportError::NotAnalyzable {
                strategy: plan.strategy,
                factor: Some(factor),
                reason: format!("only {} intact rows", rows.len()),
            });
        }
        let grid = GridResult::new(
            rows,
            metric_name.clone(),
            Provenance {
                strategy: plan.strategy,
                investigated_factor: Some(factor.clone()),
                seed: plan.seed,
            },
        )?;
        grid_n = grid.n_cols();
        grid_m = grid_m.max(plan.n_rows);
        let decomposition =
            DecompositionResult::from_grid(factor.clone(), &grid, golden_std, golden_values.len())?;
        factors.push(FactorOutcome {
            decomposition: decomposition.clone(),
            dropped_rows,
            failed_cells: join.failed,
            missing_cells: join.missing,
        });
        observations.push(StrategyObservation {
            factor,
            random_std: None,
            fixed_std: None,
            interactions: decomposition,
        });
    }

    if factors.is_empty() {
        return Err(ReportError::NotAnalyzable {
            strategy: Strategy::Interactions,
            factor: None,
            reason: "no interactions plans supplied".into(),
        });
    }

    for plan in plans
        .iter()
        .filter(|p| matches!(p.strategy, Strategy::Random | Strategy::Fixed))
    {
        let factor = plan
            .investigated_factor
            .clone()
            .expect("baseline plans always carry a factor");
        let join = join_plan(store, experiment_id, plan);
        check_completeness(plan, &join, options)?;
        let values = flat_values(&join);
        if values.len() < 2 {
            return Err(ReportError::NotAnalyzable {
                strategy: plan.strategy,
                factor: Some(factor),
                reason: format!("{} successful runs", values.len()),
            });
        }
        let std = stats::sample_std(&values)?;
        if let Some(obs) = observations.iter_mut().find(|o| o.factor == factor) {
            match plan.strategy {
                Strategy::Random => obs.random_std = Some(std),
                Strategy::Fixed => obs.fixed_std = Some(std),
                _ => unreachable!(),
            }
            any_baseline = true;
        } else {
            log::warn!(
                "{} plan for `{factor}` has no matching interactions plan; ignored",
                plan.strategy
            );
        }
    }

    let comparison = any_baseline
        .then(|| stats::compare_strategies(golden_std, options.baseline_threshold, &observations));

    let created_unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(InvestigationReport {
        meta: ReportMetadata {
            format_version: REPORT_FORMAT_VERSION,
            experiment_id: experiment_id.to_string(),
            metric_name,
            master_seed: options.master_seed,
            n: grid_n,
            m: grid_m,
            l: golden_plan.total_runs(),
            space: space.clone(),
            allow_missing: options.allow_missing,
            fixed_mitigation: "sampled independently per factor".to_string(),
            created_unix,
            environment: environment_fingerprint(experiment_id),
        },
        golden_mean,
        golden_std,
        golden_runs: golden_values.len(),
        factors,
        comparison,
    })
}

/// Renders the per-factor summary as CSV. Floats are written in shortest
/// round-trip form, so parsing the output reproduces them bit-exactly.
pub fn render_summary_csv(report: &InvestigationReport) -> String {
    let mut out = String::new();
    out.push_str("format_version,factor,mean,std,c_std,m_std,gm_std,importance,important,n,m,l,dropped_rows\n");
    for outcome in &report.factors {
        let d = &outcome.decomposition;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            REPORT_FORMAT_VERSION,
            d.factor,
            d.mean,
            d.std,
            d.c_std,
            d.m_std,
            d.gm_std,
            d.importance,
            d.important,
            d.n,
            d.m,
            d.l,
            outcome.dropped_rows,
        ));
    }
    out
}

/// Parses a summary CSV produced by [`render_summary_csv`].
pub fn parse_summary_csv(text: &str) -> Result<Vec<DecompositionResult>, ReportError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| ReportError::Csv(e.to_string()))?;
        let field = |i: usize| -> &str { row.get(i).unwrap_or("") };
        let num = |i: usize| -> Result<f64, ReportError> {
            field(i)
                .parse()
                .map_err(|e| ReportError::Csv(format!("bad float in column {i}: {e}")))
        };
        let int = |i: usize| -> Result<usize, ReportError> {
            field(i)
                .parse()
                .map_err(|e| ReportError::Csv(format!("bad integer in column {i}: {e}")))
        };
        out.push(DecompositionResult {
            factor: field(1).to_string(),
            mean: num(2)?,
            std: num(3)?,
            c_std: num(4)?,
            m_std: num(5)?,
            gm_std: num(6)?,
            importance: num(7)?,
            important: field(8) == "true",
            n: int(9)?,
            m: int(10)?,
            l: int(11)?,
        });
    }
    Ok(out)
}

/// Renders the strategy comparison as CSV, one row per factor. Baseline
/// columns carry the observed std and the 50%-of-golden-std verdict;
/// flags name the baselines that over/underestimate the interactions verdict.
pub fn render_comparison_csv(comparison: &StrategyComparison) -> String {
    let fmt_opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let fmt_verdict = |v: Option<bool>| v.map(|x| x.to_string()).unwrap_or_default();
    let fmt_flags = |flags: &[Strategy]| {
        flags
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(";")
    };
    let mut out = String::new();
    out.push_str("format_version,factor,golden_std,random_std,random_important,fixed_std,fixed_important,interactions_c_std,interactions_importance,interactions_important,overestimated_by,underestimated_by\n");
    for f in &comparison.factors {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            REPORT_FORMAT_VERSION,
            f.factor,
            comparison.gm_std,
            fmt_opt(f.random_std),
            fmt_verdict(f.random_important),
            fmt_opt(f.fixed_std),
            fmt_verdict(f.fixed_important),
            f.interactions_c_std,
            f.interactions_importance,
            f.interactions_important,
            fmt_flags(&f.overestimated_by),
            fmt_flags(&f.underestimated_by),
        ));
    }
    out
}

/// Human-facing comparison table: `(*)` marks factors a strategy considers
/// important, `!over`/`!under` flag disagreements with the interactions
/// verdict. Importance is rounded to two decimals here; machine outputs keep
/// full precision.
pub fn format_comparison_text(comparison: &StrategyComparison) -> String {
    let mark = |std: Option<f64>, important: Option<bool>| match (std, important) {
        (Some(s), Some(true)) => format!("(*) {s:.3}"),
        (Some(s), _) => format!("    {s:.3}"),
        (None, _) => "-".to_string(),
    };
    let mut out = String::new();
    out.push_str(&format!(
        "{:<20} {:>14} {:>14} {:>14} {:>12}  flags\n",
        "factor", "random", "fixed", "interactions", "importance"
    ));
    out.push_str(&format!(
        "{:<20} {:>14.3} {:>14.3} {:>14.3} {:>12}\n",
        "golden model", comparison.gm_std, comparison.gm_std, comparison.gm_std, ""
    ));
    for f in &comparison.factors {
        let ours = if f.interactions_important {
            format!("(*) {:.3}", f.interactions_c_std)
        } else {
            format!("    {:.3}", f.interactions_c_std)
        };
        let mut flags = Vec::new();
        for s in &f.overestimated_by {
            flags.push(format!("!over:{s}"));
        }
        for s in &f.underestimated_by {
            flags.push(format!("!under:{s}"));
        }
        out.push_str(&format!(
            "{:<20} {:>14} {:>14} {:>14} {:>12.2}  {}\n",
            f.factor,
            mark(f.random_std, f.random_important),
            mark(f.fixed_std, f.fixed_important),
            ours,
            f.interactions_importance,
            flags.join(" "),
        ));
    }
    out
}

/// Bar-chart geometry shared by the SVG renderer and its tests.
const CHART_WIDTH: f64 = 640.0;
const CHART_HEIGHT: f64 = 360.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 64.0;

/// Renders a grouped bar chart of per-factor importance scores as an SVG
/// document. One bar per (factor, series); the zero line is emphasized since
/// the importance-over-zero rule is the verdict. Deterministic byte output
/// for a fixed input.
pub fn render_importance_chart_series(series: &[(String, Vec<(String, f64)>)]) -> String {
    let mut min_v: f64 = 0.0;
    let mut max_v: f64 = 0.0;
    let mut factors: Vec<String> = Vec::new();
    for (_, entries) in series {
        for (factor, v) in entries {
            min_v = min_v.min(*v);
            max_v = max_v.max(*v);
            if !factors.contains(factor) {
                factors.push(factor.clone());
            }
        }
    }
    let pad = 0.1 * (max_v - min_v).max(0.5);
    let (lo, hi) = (min_v - pad, max_v + pad);
    let plot_w = CHART_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = CHART_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let y = |v: f64| MARGIN_TOP + (hi - v) / (hi - lo) * plot_h;

    let palette = ["#4878a8", "#b0703f", "#609060", "#9f6aa8", "#a84848"];
    let n_groups = factors.len().max(1);
    let n_series = series.len().max(1);
    let group_w = plot_w / n_groups as f64;
    let bar_w = (group_w * 0.8) / n_series as f64;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<!-- format_version: {REPORT_FORMAT_VERSION} -->\n"
    ));
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CHART_WIDTH}\" height=\"{CHART_HEIGHT}\" viewBox=\"0 0 {CHART_WIDTH} {CHART_HEIGHT}\">\n"
    ));
    svg.push_str("  <style>text { font-family: monospace; font-size: 12px; }</style>\n");
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\">randomness factor importance</text>\n",
        MARGIN_LEFT + plot_w / 2.0
    ));

    // horizontal gridlines and axis labels
    let n_ticks = 5;
    for t in 0..=n_ticks {
        let v = lo + (hi - lo) * t as f64 / n_ticks as f64;
        let ty = y(v);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{ty:.2}\" x2=\"{:.2}\" y2=\"{ty:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT,
            CHART_WIDTH - MARGIN_RIGHT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{v:.2}</text>\n",
            MARGIN_LEFT - 6.0,
            ty + 4.0
        ));
    }

    for (series_idx, (series_name, entries)) in series.iter().enumerate() {
        let color = palette[series_idx % palette.len()];
        for (factor, v) in entries {
            let Some(group_idx) = factors.iter().position(|f| f == factor) else {
                continue;
            };
            let x = MARGIN_LEFT
                + group_idx as f64 * group_w
                + group_w * 0.1
                + series_idx as f64 * bar_w;
            let (top, height) = if *v >= 0.0 {
                (y(*v), y(0.0) - y(*v))
            } else {
                (y(0.0), y(*v) - y(0.0))
            };
            svg.push_str(&format!(
                "  <rect x=\"{x:.2}\" y=\"{top:.2}\" width=\"{bar_w:.2}\" height=\"{height:.2}\" fill=\"{color}\"><title>{series_name} {factor}: {v:.4}</title></rect>\n"
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{v:.2}</text>\n",
                x + bar_w / 2.0,
                if *v >= 0.0 {
                    top - 4.0
                } else {
                    top + height + 14.0
                }
            ));
        }
    }

    // zero line on top of the bars: the importance > 0 rule is the verdict
    let zy = y(0.0);
    svg.push_str(&format!(
        "  <line x1=\"{:.2}\" y1=\"{zy:.2}\" x2=\"{:.2}\" y2=\"{zy:.2}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
        MARGIN_LEFT,
        CHART_WIDTH - MARGIN_RIGHT
    ));

    for (group_idx, factor) in factors.iter().enumerate() {
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{factor}</text>\n",
            MARGIN_LEFT + group_idx as f64 * group_w + group_w / 2.0,
            CHART_HEIGHT - MARGIN_BOTTOM + 20.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Chart of the report's interaction-aware importance scores.
pub fn render_importance_chart(report: &InvestigationReport) -> String {
    let entries: Vec<(String, f64)> = report
        .factors
        .iter()
        .map(|f| (f.decomposition.factor.clone(), f.decomposition.importance))
        .collect();
    render_importance_chart_series(&[("interactions".to_string(), entries)])
}

/// Writes `summary.csv`, `report.json`, `importance.svg` and (when a
/// comparison is present) `comparison.csv` under `dir`.
pub fn write_report_tree(dir: &Path, report: &InvestigationReport) -> Result<(), ReportError> {
    let write = |name: &str, contents: &str| -> Result<(), ReportError> {
        let path = dir.join(name);
        let mut file = std::fs::File::create(&path).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })?;
        file.write_all(contents.as_bytes())
            .map_err(|source| ReportError::Io {
                path: path.display().to_string(),
                source,
            })
    };
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    write("summary.csv", &render_summary_csv(report))?;
    write(
        "report.json",
        &serde_json::to_string_pretty(report).expect("reports always serialize"),
    )?;
    write("importance.svg", &render_importance_chart(report))?;
    if let Some(comparison) = &report.comparison {
        write("comparison.csv", &render_comparison_csv(comparison))?;
    }
    Ok(())
}
