//! Deterministic Gaussian-blob datasets for the desk-scale experiments.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::executor::AdapterError;
use crate::hash::StableHasher;

/// Parameters of a synthetic multiclass dataset. Class priors are uniform;
/// class centers sit on (scaled) coordinate axes `separation` away from the
/// origin, with isotropic Gaussian spread `covariance_scale` around them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDatasetSpec {
    pub n_classes: usize,
    pub n_samples: usize,
    pub feature_dim: usize,
    pub separation: f64,
    pub covariance_scale: f64,
    /// Generator seed; the corpus is never persisted, only regenerated.
    pub seed: u64,
}

impl Default for SyntheticDatasetSpec {
    fn default() -> Self {
        Self {
            n_classes: 3,
            n_samples: 1200,
            feature_dim: 8,
            separation: 3.0,
            covariance_scale: 1.0,
            seed: 0,
        }
    }
}

impl SyntheticDatasetSpec {
    pub fn validate(&self) -> Result<(), AdapterError> {
        if self.n_classes < 2 {
            return Err(AdapterError::Config(format!(
                "need at least 2 classes, got {}",
                self.n_classes
            )));
        }
        if self.n_samples < self.n_classes * 4 {
            return Err(AdapterError::Config(format!(
                "need at least {} samples for {} classes, got {}",
                self.n_classes * 4,
                self.n_classes,
                self.n_samples
            )));
        }
        if self.feature_dim == 0 {
            return Err(AdapterError::Config("feature_dim must be positive".into()));
        }
        if self.separation < 0.0 || !self.separation.is_finite() {
            return Err(AdapterError::Config(
                "separation must be non-negative".into(),
            ));
        }
        if self.covariance_scale < 0.0 || !self.covariance_scale.is_finite() {
            return Err(AdapterError::Config(
                "covariance_scale must be non-negative".into(),
            ));
        }
        Ok(())
    }

    fn cache_key(&self, seed: u64) -> u64 {
        StableHasher::new()
            .write_usize(self.n_classes)
            .write_usize(self.n_samples)
            .write_usize(self.feature_dim)
            .write_u64(self.separation.to_bits())
            .write_u64(self.covariance_scale.to_bits())
            .write_u64(self.seed)
            .write_u64(seed)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub n_classes: usize,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn class_center(class: usize, dim: usize, separation: f64) -> Vec<f64> {
    // deterministic placement: one axis per class, wrapping with a growing
    // magnitude once classes outnumber dimensions
    let mut center = vec![0.0; dim];
    let axis = class % dim;
    let ring = (class / dim) as f64;
    center[axis] = separation * (1.0 + ring);
    center
}

/// Generates the dataset for `spec` under `seed`. Labels are assigned
/// round-robin so class counts are exactly balanced.
pub fn generate_dataset(spec: &SyntheticDatasetSpec, seed: u64) -> Result<Dataset, AdapterError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<f64>> = (0..spec.n_classes)
        .map(|c| class_center(c, spec.feature_dim, spec.separation))
        .collect();
    let mut features = Vec::with_capacity(spec.n_samples);
    let mut labels = Vec::with_capacity(spec.n_samples);
    for i in 0..spec.n_samples {
        let label = i % spec.n_classes;
        let center = &centers[label];
        let point: Vec<f64> = center
            .iter()
            .map(|&c| {
                let z: f64 = StandardNormal.sample(&mut rng);
                c + spec.covariance_scale * z
            })
            .collect();
        features.push(point);
        labels.push(label);
    }
    Ok(Dataset {
        features,
        labels,
        n_classes: spec.n_classes,
    })
}

static DATASET_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Dataset>>>> = OnceLock::new();

/// Memoized [`generate_dataset`], keyed by (spec, seed). Adapters call this
/// so concurrent runs share one corpus instead of regenerating it per run.
pub fn dataset_cached(
    spec: &SyntheticDatasetSpec,
    seed: u64,
) -> Result<Arc<Dataset>, AdapterError> {
    let cache = DATASET_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = spec.cache_key(seed);
    if let Some(found) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(found));
    }
    let built = Arc::new(generate_dataset(spec, seed)?);
    let mut guard = cache.lock().unwrap();
    let entry = guard.entry(key).or_insert_with(|| Arc::clone(&built));
    Ok(Arc::clone(entry))
}
