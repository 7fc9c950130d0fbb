use std::fmt;

use serde::{Serialize, Serializer};

use super::{Alternative, AlternativeSet, Scalar};
use crate::error::{Error, Result};
use crate::Rational;

/// A probability distribution over the alternative list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lottery<T = Rational> {
    probs: Vec<T>,
}

impl<T: Scalar> Lottery<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidLottery("no alternatives".into()));
        }
        if let Some(i) = probs.iter().position(|p| p.is_negative()) {
            return Err(Error::InvalidLottery(format!(
                "negative probability {} at position {i}",
                probs[i]
            )));
        }
        let total = probs.iter().fold(T::zero(), |acc, p| acc + p.clone());
        if !total.is_one() {
            return Err(Error::InvalidLottery(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Lottery { probs })
    }

    pub fn degenerate(len: usize, alt: Alternative) -> Self {
        assert!(alt.0 < len, "alternative out of range");
        let mut probs = vec![T::zero(); len];
        probs[alt.0] = T::one();
        Lottery { probs }
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len >= 1, "empty lottery");
        let share = T::one() / T::from_int(len as i64);
        Lottery {
            probs: vec![share; len],
        }
    }

    /// Uniform over `support` (which must be non-empty and in range).
    pub fn uniform_on(len: usize, support: &[usize]) -> Self {
        assert!(!support.is_empty(), "empty support");
        let share = T::one() / T::from_int(support.len() as i64);
        let mut probs = vec![T::zero(); len];
        for &x in support {
            probs[x] = probs[x].clone() + share.clone();
        }
        Lottery { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn prob(&self, alt: Alternative) -> &T {
        &self.probs[alt.0]
    }

    /// The alternative carrying all the mass, if any.
    pub fn degenerate_on(&self) -> Option<Alternative> {
        self.probs.iter().position(|p| p.is_one()).map(Alternative)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_on().is_some()
    }

    pub fn support(&self) -> Vec<Alternative> {
        (0..self.len())
            .filter(|&i| self.probs[i].is_positive())
            .map(Alternative)
            .collect()
    }

    /// `weight * self + (1 - weight) * other` for `weight` in `[0, 1]`.
    pub fn mix(&self, weight: &T, other: &Self) -> Result<Self> {
        self.check_len(other.len())?;
        if weight.is_negative() || *weight > T::one() {
            return Err(Error::InvalidLottery(format!(
                "mixing weight {weight} outside [0, 1]"
            )));
        }
        let rest = T::one() - weight.clone();
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| weight.clone() * p.clone() + rest.clone() * q.clone())
            .collect();
        Ok(Lottery { probs })
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// `"a: 1/3, b: 1/3, c: 1/3"`.
    pub fn display_with<'a>(&'a self, alternatives: &'a AlternativeSet) -> impl fmt::Display + 'a {
        LabelledLottery {
            lottery: self,
            alternatives,
        }
    }
}

struct LabelledLottery<'a, T> {
    lottery: &'a Lottery<T>,
    alternatives: &'a AlternativeSet,
}

impl<T: Scalar> fmt::Display for LabelledLottery<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.lottery.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", self.alternatives.labels()[i], p)?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Lottery<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Serialized as a list of exact `"num/den"` strings.
impl<T: Scalar> Serialize for Lottery<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.probs.iter().map(|p| p.to_string()))
    }
}
