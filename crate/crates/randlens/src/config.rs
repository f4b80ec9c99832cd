//! Configuration: a plain-text TOML file with `[space]`, `[experiment]`,
//! `[run]` and `[ablation]` sections, every key overridable by a CLI flag.
//!
//! ```toml
//! [space]
//! label_selection = "unbounded"
//! data_split = "unbounded"
//! model_init = "unbounded"
//! data_order = "unbounded"
//!
//! [experiment]
//! name = "toy_finetune"      # synthetic | toy_finetune | toy_icl | external
//!
//! [run]
//! n = 10
//! m = 20
//! seed = 7
//! out_dir = "out/demo"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::executor::ExperimentAdapter;
use crate::experiments::{
    EffectSpec, FactorEffect, SyntheticDatasetSpec, SyntheticOracle, SyntheticOracleSpec,
    ToyExperimentConfig, ToyFinetune, ToyIcl,
};
use crate::space::{Factor, FactorSpace, UNBOUNDED_CARDINALITY};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },
    #[error("UnknownExperiment: `{0}` (expected synthetic, toy_finetune, toy_icl or external)")]
    UnknownExperiment(String),
    #[error("{0}")]
    Invalid(String),
}

/// Cardinality in the `[space]` section: a count, or the keyword
/// `"unbounded"` for factors whose configuration set is not enumerable.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CardinalityValue {
    Count(u64),
    Keyword(String),
}

impl CardinalityValue {
    pub fn resolve(&self, factor: &str) -> Result<u64, ConfigError> {
        match self {
            CardinalityValue::Count(c) => Ok(*c),
            CardinalityValue::Keyword(k) if k == "unbounded" => Ok(UNBOUNDED_CARDINALITY),
            CardinalityValue::Keyword(k) => Err(ConfigError::Invalid(format!(
                "factor `{factor}`: expected a cardinality or \"unbounded\", got \"{k}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize, serde::Serialize)]
#[serde(default)]
pub struct ExperimentSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    // external adapters
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeout_secs: Option<u64>,
    // synthetic oracle
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interaction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface_seed: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub sigma: BTreeMap<String, f64>,
    // toy experiments
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feature_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covariance_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelled_pool: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub train_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eval_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epochs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exemplars_per_class: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_sensitivity: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub seed: Option<u64>,
    pub parallelism: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub factors: Option<Vec<String>>,
    pub allow_missing: Option<bool>,
    pub allow_exhaustive: Option<bool>,
    pub epsilon: Option<f64>,
    pub start_n: Option<usize>,
    pub budget: Option<usize>,
    pub fixed_full_budget: Option<bool>,
    pub baseline_threshold: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AblationSection {
    pub m_values: Option<Vec<usize>>,
    /// Values <= 1.0 are fractions of the test set; larger values are
    /// absolute sample counts.
    pub eval_sizes: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub space: toml::map::Map<String, toml::Value>,
    #[serde(default)]
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub ablation: AblationSection,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source: Box::new(source),
        })
    }

    /// Factor space from the `[space]` section, in file order.
    pub fn space(&self) -> Result<Option<FactorSpace>, ConfigError> {
        if self.space.is_empty() {
            return Ok(None);
        }
        let mut factors = Vec::new();
        for (name, value) in &self.space {
            let cardinality = match value {
                toml::Value::Integer(i) if *i > 0 => *i as u64,
                toml::Value::Integer(i) => {
                    return Err(ConfigError::Invalid(format!(
                        "factor `{name}`: cardinality must be positive, got {i}"
                    )))
                }
                toml::Value::String(s) => CardinalityValue::Keyword(s.clone()).resolve(name)?,
                other => {
                    return Err(ConfigError::Invalid(format!(
                        "factor `{name}`: expected an integer or \"unbounded\", got {other}"
                    )))
                }
            };
            factors.push(
                Factor::new(name.clone(), cardinality)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?,
            );
        }
        Ok(Some(
            FactorSpace::new(factors).map_err(|e| ConfigError::Invalid(e.to_string()))?,
        ))
    }
}

/// Which experiment backs the investigation.
#[derive(Debug, Clone)]
pub enum ExperimentSelection {
    Synthetic,
    ToyFinetune,
    ToyIcl,
    External,
}

impl ExperimentSelection {
    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        match name {
            "synthetic" => Ok(Self::Synthetic),
            "toy_finetune" => Ok(Self::ToyFinetune),
            "toy_icl" => Ok(Self::ToyIcl),
            "external" => Ok(Self::External),
            other => Err(ConfigError::UnknownExperiment(other.to_string())),
        }
    }
}

/// Fully resolved settings a command runs with: config file values with CLI
/// overrides applied and defaults filled in.
#[derive(Debug, Clone)]
pub struct Settings {
    pub space: FactorSpace,
    pub selection: ExperimentSelection,
    pub experiment: ExperimentSection,
    pub factors: Vec<String>,
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub seed: u64,
    pub parallelism: usize,
    pub out_dir: PathBuf,
    pub allow_missing: bool,
    pub allow_exhaustive: bool,
    pub epsilon: f64,
    pub start_n: usize,
    pub budget: usize,
    pub fixed_full_budget: bool,
    pub baseline_threshold: f64,
    pub ablation_m_values: Vec<usize>,
    pub ablation_eval_sizes: Vec<f64>,
    /// When set, re-execute this many sampled cells twice after an
    /// investigation and fail on any metric mismatch.
    pub verify_determinism: Option<usize>,
}

pub const DEFAULT_N: usize = 10;
pub const DEFAULT_M: usize = 20;
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_BUDGET: usize = 1000;

impl Settings {
    pub fn toy_config(&self) -> ToyExperimentConfig {
        let defaults = ToyExperimentConfig::default();
        let e = &self.experiment;
        let dataset = SyntheticDatasetSpec {
            n_classes: e.n_classes.unwrap_or(defaults.dataset.n_classes),
            n_samples: e.n_samples.unwrap_or(defaults.dataset.n_samples),
            feature_dim: e.feature_dim.unwrap_or(defaults.dataset.feature_dim),
            separation: e.separation.unwrap_or(defaults.dataset.separation),
            covariance_scale: e
                .covariance_scale
                .unwrap_or(defaults.dataset.covariance_scale),
            seed: e.dataset_seed.unwrap_or(defaults.dataset.seed),
        };
        ToyExperimentConfig {
            dataset,
            labelled_pool: e.labelled_pool.unwrap_or(defaults.labelled_pool),
            train_fraction: e.train_fraction.unwrap_or(defaults.train_fraction),
            eval_cap: e.eval_cap.unwrap_or(defaults.eval_cap),
            epochs: e.epochs.unwrap_or(defaults.epochs),
            learning_rate: e.learning_rate.unwrap_or(defaults.learning_rate),
            exemplars_per_class: e
                .exemplars_per_class
                .unwrap_or(defaults.exemplars_per_class),
            order_sensitivity: e.order_sensitivity.unwrap_or(defaults.order_sensitivity),
        }
    }

    /// Instantiates the configured adapter. External commands are built by
    /// the caller (they need the process machinery from the cli module).
    pub fn build_builtin_adapter(&self) -> Result<Arc<dyn ExperimentAdapter>, ConfigError> {
        match self.selection {
            ExperimentSelection::Synthetic => {
                for name in self.experiment.sigma.keys() {
                    if self.space.factor(name).is_none() {
                        return Err(ConfigError::Invalid(format!(
                            "sigma given for unknown factor `{name}`"
                        )));
                    }
                }
                let effects = self
                    .space
                    .factors()
                    .iter()
                    .map(|f| FactorEffect {
                        factor: f.name().to_string(),
                        effect: EffectSpec::Normal {
                            sigma: self.experiment.sigma.get(f.name()).copied().unwrap_or(1.0),
                        },
                    })
                    .collect();
                let spec = SyntheticOracleSpec {
                    base: self.experiment.base.unwrap_or(0.0),
                    effects,
                    interaction: self.experiment.interaction.unwrap_or(0.0),
                    noise: self.experiment.noise.unwrap_or(0.1),
                    seed: self.experiment.surface_seed.unwrap_or(0),
                };
                let oracle = SyntheticOracle::new(spec, self.space.clone())
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                let oracle = match &self.experiment.id {
                    Some(id) => oracle.with_id(id.clone()),
                    None => oracle,
                };
                Ok(Arc::new(oracle))
            }
            ExperimentSelection::ToyFinetune => {
                let adapter = ToyFinetune::new(self.toy_config())
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                let adapter = match &self.experiment.id {
                    Some(id) => adapter.with_id(id.clone()),
                    None => adapter,
                };
                Ok(Arc::new(adapter))
            }
            ExperimentSelection::ToyIcl => {
                let adapter = ToyIcl::new(self.toy_config())
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                let adapter = match &self.experiment.id {
                    Some(id) => adapter.with_id(id.clone()),
                    None => adapter,
                };
                Ok(Arc::new(adapter))
            }
            ExperimentSelection::External => Err(ConfigError::Invalid(
                "external adapters are constructed by the CLI layer".into(),
            )),
        }
    }
}

/// CLI-provided overrides, applied on top of the file config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub experiment: Option<String>,
    pub space: Option<String>,
    pub factors: Option<Vec<String>>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub seed: Option<u64>,
    pub parallelism: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub allow_missing: bool,
    pub allow_exhaustive: bool,
    pub epsilon: Option<f64>,
    pub start_n: Option<usize>,
    pub budget: Option<usize>,
    pub fixed_full_budget: bool,
    pub baseline_threshold: Option<f64>,
    pub m_values: Option<Vec<usize>>,
    pub eval_sizes: Option<Vec<f64>>,
    pub command: Option<String>,
    pub verify_determinism: Option<usize>,
}

/// Parses the `--space` mini-grammar: `name=cardinality,...` where the
/// cardinality is an integer or `unbounded`.
fn parse_space_flag(spec: &str) -> Result<FactorSpace, ConfigError> {
    let mut factors = Vec::new();
    for part in spec.split(',') {
        let (name, value) = part.split_once('=').ok_or_else(|| {
            ConfigError::Invalid(format!(
                "bad --space entry `{part}`; expected name=cardinality"
            ))
        })?;
        let cardinality = if value == "unbounded" {
            UNBOUNDED_CARDINALITY
        } else {
            value.parse::<u64>().map_err(|_| {
                ConfigError::Invalid(format!(
                    "bad cardinality `{value}` for factor `{name}` in --space"
                ))
            })?
        };
        factors.push(
            Factor::new(name.trim(), cardinality)
                .map_err(|e| ConfigError::Invalid(e.to_string()))?,
        );
    }
    FactorSpace::new(factors).map_err(|e| ConfigError::Invalid(e.to_string()))
}

/// Merges the file config and CLI overrides into runnable [`Settings`].
pub fn resolve(file: FileConfig, overrides: &Overrides) -> Result<Settings, ConfigError> {
    let mut experiment = file.experiment.clone();
    if let Some(cmd) = &overrides.command {
        experiment.command = Some(vec!["sh".into(), "-c".into(), cmd.clone()]);
        if experiment.name.is_none() {
            experiment.name = Some("external".into());
        }
    }
    let name = overrides
        .experiment
        .clone()
        .or_else(|| experiment.name.clone())
        .unwrap_or_else(|| "synthetic".to_string());
    let selection = ExperimentSelection::parse(&name)?;

    let n = overrides.n.or(file.run.n).unwrap_or(DEFAULT_N);
    let m = overrides.m.or(file.run.m).unwrap_or(DEFAULT_M);
    if n < 2 {
        return Err(ConfigError::Invalid(format!(
            "need at least 2 investigation runs per strategy, got n={n}"
        )));
    }
    let l = overrides.l.or(file.run.l).unwrap_or(n * m);

    // factor space: [space] section, --space flag, or a default derived from
    // the experiment's required factors
    let space = match (&overrides.space, file.space()?) {
        (Some(flag), _) => parse_space_flag(flag)?,
        (None, Some(space)) => space,
        (None, None) => {
            let names: Vec<String> = match selection {
                ExperimentSelection::ToyFinetune => ToyFinetune::required_factors()
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                ExperimentSelection::ToyIcl => ToyIcl::required_factors()
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                ExperimentSelection::Synthetic | ExperimentSelection::External => overrides
                    .factors
                    .clone()
                    .or_else(|| file.run.factors.clone())
                    .ok_or_else(|| {
                        ConfigError::Invalid(
                            "no factor space: declare [space] in the config, pass --space, or pass --factors".into(),
                        )
                    })?,
            };
            FactorSpace::new(names.into_iter().map(Factor::unbounded).collect::<Vec<_>>())
                .map_err(|e| ConfigError::Invalid(e.to_string()))?
        }
    };

    let factors = overrides
        .factors
        .clone()
        .or_else(|| file.run.factors.clone())
        .unwrap_or_else(|| {
            space
                .factors()
                .iter()
                .map(|f| f.name().to_string())
                .collect()
        });
    if factors.is_empty() {
        return Err(ConfigError::Invalid("no factors requested".into()));
    }
    for f in &factors {
        if space.factor(f).is_none() {
            return Err(ConfigError::Invalid(format!(
                "requested factor `{f}` is not in the space"
            )));
        }
    }

    let epsilon = overrides
        .epsilon
        .or(file.run.epsilon)
        .unwrap_or(DEFAULT_EPSILON);
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(ConfigError::Invalid(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let parallelism = overrides.parallelism.or(file.run.parallelism).unwrap_or(1);
    if parallelism < 1 {
        return Err(ConfigError::Invalid(
            "parallelism must be at least 1".into(),
        ));
    }

    Ok(Settings {
        space,
        selection,
        experiment,
        factors,
        n,
        m,
        l,
        seed: overrides.seed.or(file.run.seed).unwrap_or(0),
        parallelism,
        out_dir: overrides
            .out_dir
            .clone()
            .or(file.run.out_dir)
            .unwrap_or_else(|| PathBuf::from("out/randlens")),
        allow_missing: overrides.allow_missing || file.run.allow_missing.unwrap_or(false),
        allow_exhaustive: overrides.allow_exhaustive || file.run.allow_exhaustive.unwrap_or(false),
        epsilon,
        start_n: overrides.start_n.or(file.run.start_n).unwrap_or(n),
        budget: overrides
            .budget
            .or(file.run.budget)
            .unwrap_or(DEFAULT_BUDGET),
        fixed_full_budget: overrides.fixed_full_budget
            || file.run.fixed_full_budget.unwrap_or(false),
        baseline_threshold: overrides
            .baseline_threshold
            .or(file.run.baseline_threshold)
            .unwrap_or(0.5),
        ablation_m_values: overrides
            .m_values
            .clone()
            .or(file.ablation.m_values)
            .unwrap_or_else(|| vec![m]),
        ablation_eval_sizes: overrides
            .eval_sizes
            .clone()
            .or(file.ablation.eval_sizes)
            .unwrap_or_else(|| vec![1.0]),
        verify_determinism: overrides.verify_determinism,
    })
}
