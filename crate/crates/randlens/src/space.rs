//! Randomness factors, their configuration sets, and assignments of
//! configurations to factors.
//!
//! A [`Factor`] is a named source of nondeterminism (data order, sample
//! choice, model initialisation, ...) with a finite set of configurations,
//! addressed by opaque 0-based indices. What index `k` means — which seed,
//! which permutation, which subset — is owned by the experiment adapter.
//! Cross-product sets are never materialized; membership is implied by
//! per-factor index bounds.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sentinel cardinality for factors whose configuration set is not
/// enumerable in practice (e.g. all permutations of a training set).
/// Sampling without replacement from a set this large degenerates to
/// sampling with negligible collision probability.
pub const UNBOUNDED_CARDINALITY: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("duplicate factor name `{0}`")]
    DuplicateFactorName(String),
    #[error("factor `{0}` must have at least one configuration")]
    ZeroCardinality(String),
    #[error("a factor space needs at least two factors, got {0}")]
    FewerThanTwoFactors(usize),
    #[error("unknown factor `{0}`")]
    UnknownFactor(String),
    #[error("configuration index {index} out of bounds for factor `{factor}` (cardinality {cardinality})")]
    IndexOutOfBounds {
        factor: String,
        index: u64,
        cardinality: u64,
    },
    #[error("assignment is missing factor `{0}`")]
    MissingFactor(String),
}

/// One randomness factor: a unique name plus the number of distinct
/// configurations it can take.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    name: String,
    cardinality: u64,
}

impl Factor {
    pub fn new(name: impl Into<String>, cardinality: u64) -> Result<Self, SpaceError> {
        let name = name.into();
        if cardinality == 0 {
            return Err(SpaceError::ZeroCardinality(name));
        }
        Ok(Self { name, cardinality })
    }

    /// A factor with the [`UNBOUNDED_CARDINALITY`] sentinel.
    pub fn unbounded(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cardinality: UNBOUNDED_CARDINALITY,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }
}

/// A count of configuration combinations that saturates at `u64::MAX`
/// instead of overflowing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSize {
    pub value: u64,
    pub saturated: bool,
}

impl SpaceSize {
    fn product(cardinalities: impl Iterator<Item = u64>) -> Self {
        let mut value: u64 = 1;
        let mut saturated = false;
        for c in cardinalities {
            match value.checked_mul(c) {
                Some(v) => value = v,
                None => {
                    value = u64::MAX;
                    saturated = true;
                }
            }
        }
        Self { value, saturated }
    }

    /// True when `count` distinct draws fit into this space.
    pub fn admits(&self, count: u64) -> bool {
        self.saturated || count <= self.value
    }
}

impl fmt::Display for SpaceSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.saturated {
            write!(f, ">= 2^64")
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// An ordered set of randomness factors. Immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpace {
    factors: Vec<Factor>,
}

impl FactorSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self, SpaceError> {
        if factors.len() < 2 {
            return Err(SpaceError::FewerThanTwoFactors(factors.len()));
        }
        for (i, f) in factors.iter().enumerate() {
            if factors[..i].iter().any(|g| g.name == f.name) {
                return Err(SpaceError::DuplicateFactorName(f.name.clone()));
            }
        }
        Ok(Self { factors })
    }

    /// Builds a space from `(name, cardinality)` pairs, in the given order.
    pub fn build<S: Into<String>>(
        specs: impl IntoIterator<Item = (S, u64)>,
    ) -> Result<Self, SpaceError> {
        let factors = specs
            .into_iter()
            .map(|(name, card)| Factor::new(name, card))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Number of factors (K).
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, name: &str) -> Option<&Factor> {
        self.factors.iter().find(|f| f.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&Factor, SpaceError> {
        self.factor(name)
            .ok_or_else(|| SpaceError::UnknownFactor(name.to_string()))
    }

    /// Size of the full cross product of all configuration sets.
    pub fn golden_space_size(&self) -> SpaceSize {
        SpaceSize::product(self.factors.iter().map(|f| f.cardinality))
    }

    /// Size of the cross product of all configuration sets except the
    /// investigated factor's.
    pub fn mitigated_space_size(&self, investigated: &str) -> Result<SpaceSize, SpaceError> {
        self.require(investigated)?;
        Ok(SpaceSize::product(
            self.factors
                .iter()
                .filter(|f| f.name != investigated)
                .map(|f| f.cardinality),
        ))
    }

    /// Draws an assignment: entries in `fixed` are preserved verbatim, every
    /// other factor's index is drawn uniformly from its configuration set.
    /// Deterministic given the RNG state; factors are consumed in space order.
    pub fn sample_assignment(
        &self,
        fixed: &BTreeMap<String, u64>,
        rng: &mut impl Rng,
    ) -> Result<Assignment, SpaceError> {
        for (name, &index) in fixed {
            let factor = self.require(name)?;
            if index >= factor.cardinality {
                return Err(SpaceError::IndexOutOfBounds {
                    factor: name.clone(),
                    index,
                    cardinality: factor.cardinality,
                });
            }
        }
        let mut entries = BTreeMap::new();
        for factor in &self.factors {
            let index = match fixed.get(&factor.name) {
                Some(&i) => i,
                None => rng.random_range(0..factor.cardinality),
            };
            entries.insert(factor.name.clone(), index);
        }
        Ok(Assignment { entries })
    }

    /// Checks that `assignment` has exactly one in-bounds entry per factor.
    pub fn validate_assignment(&self, assignment: &Assignment) -> Result<(), SpaceError> {
        for factor in &self.factors {
            match assignment.get(&factor.name) {
                None => return Err(SpaceError::MissingFactor(factor.name.clone())),
                Some(index) if index >= factor.cardinality => {
                    return Err(SpaceError::IndexOutOfBounds {
                        factor: factor.name.clone(),
                        index,
                        cardinality: factor.cardinality,
                    })
                }
                Some(_) => {}
            }
        }
        for name in assignment.entries.keys() {
            self.require(name)?;
        }
        Ok(())
    }
}

/// One configuration index per factor: the coordinates of a single
/// training/evaluation run. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    entries: BTreeMap<String, u64>,
}

impl Assignment {
    pub fn new(entries: BTreeMap<String, u64>) -> Self {
        Self { entries }
    }

    pub fn get(&self, factor: &str) -> Option<u64> {
        self.entries.get(factor).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns a copy with one factor's index replaced (or inserted).
    pub fn with(&self, factor: &str, index: u64) -> Self {
        let mut entries = self.entries.clone();
        entries.insert(factor.to_string(), index);
        Self { entries }
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        self.entries.clone()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (name, index)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={index}")?;
        }
        write!(f, "}}")
    }
}
