//! Built-in desk-scale experiments: the synthetic oracle with an exactly
//! enumerable response surface, a fine-tuning analog, an in-context-learning
//! analog, the shared dataset generator and the F1-macro metric.

pub mod dataset;
pub mod metrics;
pub mod oracle;
pub mod toy;

pub use dataset::{dataset_cached, generate_dataset, Dataset, SyntheticDatasetSpec};
pub use metrics::{compute_f1_macro, MetricError};
pub use oracle::{
    analytic_decomposition, EffectSpec, ExpectedDecomposition, FactorEffect, OracleError,
    SyntheticOracle, SyntheticOracleSpec, ENUMERATION_LIMIT,
};
pub use toy::{
    ToyExperimentConfig, ToyFinetune, ToyIcl, FACTOR_DATA_ORDER, FACTOR_DATA_SPLIT,
    FACTOR_LABEL_SELECTION, FACTOR_MODEL_INIT, FACTOR_SAMPLE_CHOICE,
};
