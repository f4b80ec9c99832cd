//! Desk-scale experiment adapters: a fine-tuning analog (seeded SGD over a
//! softmax classifier) and an in-context-learning analog (weighted
//! nearest-exemplar prediction with a position-decay order-sensitivity
//! knob).
//!
//! Factor wiring, mirroring the factors the real pipelines expose:
//!
//! * `data_split` — permutation splitting the corpus into train/test.
//! * `label_selection` — which train samples count as labelled, and which
//!   capped subset of the test set is used for evaluation.
//! * `model_init` — initial classifier weights (fine-tuning analog only).
//! * `data_order` — per-epoch batch order (fine-tuning) or the exemplar
//!   permutation in the prompt (in-context analog).
//! * `sample_choice` — which labelled samples serve as exemplars
//!   (in-context analog only).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::executor::{AdapterError, ExperimentAdapter, SeedBundle};
use crate::hash::mix_seed;
use crate::space::Assignment;

use super::dataset::{dataset_cached, Dataset, SyntheticDatasetSpec};
use super::metrics::compute_f1_macro;

pub const FACTOR_LABEL_SELECTION: &str = "label_selection";
pub const FACTOR_DATA_SPLIT: &str = "data_split";
pub const FACTOR_MODEL_INIT: &str = "model_init";
pub const FACTOR_DATA_ORDER: &str = "data_order";
pub const FACTOR_SAMPLE_CHOICE: &str = "sample_choice";

/// Fraction of the labelled pool held out as a validation set.
const VALIDATION_FRACTION: f64 = 0.2;

/// Shared configuration of the toy experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyExperimentConfig {
    pub dataset: SyntheticDatasetSpec,
    /// Number of train samples treated as labelled.
    pub labelled_pool: usize,
    /// Outer train/test split fraction.
    pub train_fraction: f64,
    /// Maximum number of test samples used for evaluation.
    pub eval_cap: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    /// Exemplars per class in the in-context analog.
    pub exemplars_per_class: usize,
    /// Order-sensitivity weight λ: exemplar weights decay as (1-λ)^position.
    /// Zero makes the in-context predictor order-invariant by construction.
    pub order_sensitivity: f64,
}

impl Default for ToyExperimentConfig {
    fn default() -> Self {
        Self {
            dataset: SyntheticDatasetSpec::default(),
            labelled_pool: 120,
            train_fraction: 0.8,
            eval_cap: 200,
            epochs: 4,
            learning_rate: 0.35,
            exemplars_per_class: 2,
            order_sensitivity: 0.0,
        }
    }
}

impl ToyExperimentConfig {
    pub fn train_size(&self) -> usize {
        let n = self.dataset.n_samples;
        (((n as f64) * self.train_fraction).round() as usize).clamp(1, n - 1)
    }

    pub fn test_size(&self) -> usize {
        self.dataset.n_samples - self.train_size()
    }

    pub fn validate(&self) -> Result<(), AdapterError> {
        self.dataset.validate()?;
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(AdapterError::Config(format!(
                "train_fraction must be in (0, 1), got {}",
                self.train_fraction
            )));
        }
        if self.labelled_pool < 2 {
            return Err(AdapterError::Config(
                "labelled_pool must be at least 2".into(),
            ));
        }
        if self.labelled_pool > self.train_size() {
            return Err(AdapterError::Config(format!(
                "labelled pool ({}) exceeds the train split ({})",
                self.labelled_pool,
                self.train_size()
            )));
        }
        if self.eval_cap == 0 || self.eval_cap > self.test_size() {
            return Err(AdapterError::Config(format!(
                "eval_cap must be in [1, {}], got {}",
                self.test_size(),
                self.eval_cap
            )));
        }
        if self.epochs == 0 {
            return Err(AdapterError::Config("epochs must be at least 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(AdapterError::Config(
                "learning_rate must be positive".into(),
            ));
        }
        if self.exemplars_per_class == 0 {
            return Err(AdapterError::Config(
                "exemplars_per_class must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.order_sensitivity) {
            return Err(AdapterError::Config(format!(
                "order_sensitivity must be in [0, 1], got {}",
                self.order_sensitivity
            )));
        }
        Ok(())
    }
}

/// Corpus views derived from the split and label-selection seeds.
struct Prepared {
    data: Arc<Dataset>,
    /// Labelled samples used for fitting / exemplar selection.
    fit_pool: Vec<usize>,
    /// Labelled samples held out as validation.
    validation: Vec<usize>,
    /// Capped test subset used for evaluation.
    eval_set: Vec<usize>,
}

fn prepare(
    config: &ToyExperimentConfig,
    split_seed: u64,
    label_seed: u64,
) -> Result<Prepared, AdapterError> {
    let data = dataset_cached(&config.dataset, config.dataset.seed)?;
    let n = data.len();
    let train_n = config.train_size();

    let mut perm: Vec<usize> = (0..n).collect();
    let mut split_rng = ChaCha8Rng::seed_from_u64(split_seed);
    perm.shuffle(&mut split_rng);
    let (train, test) = perm.split_at(train_n);

    let mut label_rng = ChaCha8Rng::seed_from_u64(label_seed);
    let mut labelled = train.to_vec();
    labelled.shuffle(&mut label_rng);
    labelled.truncate(config.labelled_pool);
    let val_n = ((config.labelled_pool as f64) * VALIDATION_FRACTION).round() as usize;
    let val_n = val_n.clamp(1, config.labelled_pool - 1);
    let validation = labelled[..val_n].to_vec();
    let fit_pool = labelled[val_n..].to_vec();

    // capped evaluation subset: one half follows the split stream, the
    // other the label-selection stream, so either factor re-draws part of
    // the evaluation data (at full size this is the whole test set)
    let mut first = test.to_vec();
    let mut eval_split_rng = ChaCha8Rng::seed_from_u64(mix_seed(split_seed, "eval-subset"));
    first.shuffle(&mut eval_split_rng);
    first.truncate(config.eval_cap.div_ceil(2));
    let chosen: std::collections::HashSet<usize> = first.iter().copied().collect();
    let mut rest: Vec<usize> = test
        .iter()
        .copied()
        .filter(|i| !chosen.contains(i))
        .collect();
    let mut eval_label_rng = ChaCha8Rng::seed_from_u64(mix_seed(label_seed, "eval-subset"));
    rest.shuffle(&mut eval_label_rng);
    let mut eval_set = first;
    eval_set.extend(rest.into_iter().take(config.eval_cap - eval_set.len()));

    Ok(Prepared {
        data,
        fit_pool,
        validation,
        eval_set,
    })
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Multinomial logistic regression weights: one row per class over
/// (feature_dim + bias).
struct Softmax {
    weights: Vec<Vec<f64>>,
}

impl Softmax {
    fn init(n_classes: usize, dim: usize, rng: &mut ChaCha8Rng) -> Self {
        let weights = (0..n_classes)
            .map(|_| {
                (0..=dim)
                    .map(|_| {
                        let z: f64 = StandardNormal.sample(rng);
                        0.01 * z
                    })
                    .collect()
            })
            .collect();
        Self { weights }
    }

    fn logits(&self, x: &[f64]) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| {
                let mut z = w[w.len() - 1]; // bias
                for (wi, xi) in w[..w.len() - 1].iter().zip(x) {
                    z += wi * xi;
                }
                z
            })
            .collect()
    }

    fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        let logits = self.logits(x);
        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
        let sum: f64 = exps.iter().sum();
        exps.into_iter().map(|e| e / sum).collect()
    }

    fn predict(&self, x: &[f64]) -> usize {
        let logits = self.logits(x);
        logits
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap()
    }

    fn sgd_step(&mut self, x: &[f64], label: usize, lr: f64) {
        let probs = self.probabilities(x);
        for (c, w) in self.weights.iter_mut().enumerate() {
            let grad = probs[c] - if c == label { 1.0 } else { 0.0 };
            let dim = w.len() - 1;
            for (wi, xi) in w[..dim].iter_mut().zip(x) {
                *wi -= lr * grad * xi;
            }
            w[dim] -= lr * grad;
        }
    }

    fn accuracy(&self, data: &Dataset, indices: &[usize]) -> f64 {
        if indices.is_empty() {
            return 0.0;
        }
        let correct = indices
            .iter()
            .filter(|&&i| self.predict(&data.features[i]) == data.labels[i])
            .count();
        correct as f64 / indices.len() as f64
    }
}

/// Fine-tuning analog: a softmax classifier trained by per-sample SGD.
/// Consumes `label_selection`, `data_split`, `model_init` and `data_order`;
/// keeps the best epoch by validation accuracy.
#[derive(Debug, Clone)]
pub struct ToyFinetune {
    config: ToyExperimentConfig,
    experiment_id: String,
}

impl ToyFinetune {
    pub fn new(config: ToyExperimentConfig) -> Result<Self, AdapterError> {
        config.validate()?;
        Ok(Self {
            config,
            experiment_id: "toy_finetune".to_string(),
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.experiment_id = id.into();
        self
    }

    pub fn config(&self) -> &ToyExperimentConfig {
        &self.config
    }

    pub fn required_factors() -> [&'static str; 4] {
        [
            FACTOR_LABEL_SELECTION,
            FACTOR_DATA_SPLIT,
            FACTOR_MODEL_INIT,
            FACTOR_DATA_ORDER,
        ]
    }
}

impl ExperimentAdapter for ToyFinetune {
    fn experiment_id(&self) -> &str {
        &self.experiment_id
    }

    fn metric_name(&self) -> &str {
        "f1_macro"
    }

    fn metric_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn evaluate(&self, _assignment: &Assignment, seeds: &SeedBundle) -> Result<f64, AdapterError> {
        let split_seed = seeds.require(FACTOR_DATA_SPLIT)?;
        let label_seed = seeds.require(FACTOR_LABEL_SELECTION)?;
        let init_seed = seeds.require(FACTOR_MODEL_INIT)?;
        let order_seed = seeds.require(FACTOR_DATA_ORDER)?;
        let prepared = prepare(&self.config, split_seed, label_seed)?;
        let data = &prepared.data;

        let mut init_rng = ChaCha8Rng::seed_from_u64(init_seed);
        let mut model = Softmax::init(
            data.n_classes,
            self.config.dataset.feature_dim,
            &mut init_rng,
        );
        let mut order_rng = ChaCha8Rng::seed_from_u64(order_seed);

        let mut best_weights = model.weights.clone();
        let mut best_val = model.accuracy(data, &prepared.validation);
        let mut order = prepared.fit_pool.clone();
        for _ in 0..self.config.epochs {
            order.shuffle(&mut order_rng);
            for &i in &order {
                model.sgd_step(&data.features[i], data.labels[i], self.config.learning_rate);
            }
            let val = model.accuracy(data, &prepared.validation);
            if val > best_val {
                best_val = val;
                best_weights = model.weights.clone();
            }
        }
        model.weights = best_weights;

        let predictions: Vec<usize> = prepared
            .eval_set
            .iter()
            .map(|&i| model.predict(&data.features[i]))
            .collect();
        let labels: Vec<usize> = prepared.eval_set.iter().map(|&i| data.labels[i]).collect();
        compute_f1_macro(&predictions, &labels).map_err(|e| AdapterError::Failure(e.to_string()))
    }
}

/// In-context-learning analog: weighted nearest-exemplar prediction.
/// Consumes `label_selection`, `data_split`, `sample_choice` and
/// `data_order`. Exemplar weights decay with prompt position as
/// (1-λ)^position, so λ = 0 is order-invariant by construction and λ > 0
/// injects tunable order sensitivity.
#[derive(Debug, Clone)]
pub struct ToyIcl {
    config: ToyExperimentConfig,
    experiment_id: String,
}

impl ToyIcl {
    pub fn new(config: ToyExperimentConfig) -> Result<Self, AdapterError> {
        config.validate()?;
        Ok(Self {
            config,
            experiment_id: "toy_icl".to_string(),
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.experiment_id = id.into();
        self
    }

    pub fn config(&self) -> &ToyExperimentConfig {
        &self.config
    }

    pub fn required_factors() -> [&'static str; 4] {
        [
            FACTOR_LABEL_SELECTION,
            FACTOR_DATA_SPLIT,
            FACTOR_SAMPLE_CHOICE,
            FACTOR_DATA_ORDER,
        ]
    }
}

impl ExperimentAdapter for ToyIcl {
    fn experiment_id(&self) -> &str {
        &self.experiment_id
    }

    fn metric_name(&self) -> &str {
        "f1_macro"
    }

    fn metric_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn evaluate(&self, _assignment: &Assignment, seeds: &SeedBundle) -> Result<f64, AdapterError> {
        let split_seed = seeds.require(FACTOR_DATA_SPLIT)?;
        let label_seed = seeds.require(FACTOR_LABEL_SELECTION)?;
        let choice_seed = seeds.require(FACTOR_SAMPLE_CHOICE)?;
        let order_seed = seeds.require(FACTOR_DATA_ORDER)?;
        let prepared = prepare(&self.config, split_seed, label_seed)?;
        let data = &prepared.data;

        // pick k exemplars per class from the labelled pool
        let mut choice_rng = ChaCha8Rng::seed_from_u64(choice_seed);
        let mut exemplars: Vec<usize> = Vec::new();
        for class in 0..data.n_classes {
            let mut members: Vec<usize> = prepared
                .fit_pool
                .iter()
                .copied()
                .filter(|&i| data.labels[i] == class)
                .collect();
            members.shuffle(&mut choice_rng);
            members.truncate(self.config.exemplars_per_class);
            exemplars.extend(members);
        }
        if exemplars.is_empty() {
            return Err(AdapterError::Failure(
                "labelled pool contains no exemplar candidates".into(),
            ));
        }

        // prompt order, and the position-decay weights it induces
        let mut order_rng = ChaCha8Rng::seed_from_u64(order_seed);
        exemplars.shuffle(&mut order_rng);
        let lambda = self.config.order_sensitivity;
        let weights: Vec<f64> = (0..exemplars.len())
            .map(|p| (1.0 - lambda).powi(p as i32))
            .collect();

        let predictions: Vec<usize> = prepared
            .eval_set
            .iter()
            .map(|&i| {
                let x = &data.features[i];
                let best = exemplars
                    .iter()
                    .zip(&weights)
                    .map(|(&e, &w)| {
                        let d = squared_distance(x, &data.features[e]);
                        (e, w / (d + 1e-9))
                    })
                    .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .map(|(e, _)| e)
                    .unwrap();
                data.labels[best]
            })
            .collect();
        let labels: Vec<usize> = prepared.eval_set.iter().map(|&i| data.labels[i]).collect();
        compute_f1_macro(&predictions, &labels).map_err(|e| AdapterError::Failure(e.to_string()))
    }
}
