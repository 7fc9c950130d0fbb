use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Alternative, AlternativeSet, Scalar, SsbMatrix, WeakOrder};
use crate::error::{Error, Result};
use crate::Rational;

/// One kind of voter: an ordinal preference or a raw SSB utility matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VoterType<T = Rational> {
    Ordinal(WeakOrder),
    Ssb(SsbMatrix<T>),
}

impl<T: Scalar> VoterType<T> {
    pub fn num_alternatives(&self) -> usize {
        match self {
            VoterType::Ordinal(o) => o.num_alternatives(),
            VoterType::Ssb(m) => m.size(),
        }
    }

    /// The voter's SSB matrix; canonical for ordinal types.
    pub fn utility(&self) -> SsbMatrix<T> {
        match self {
            VoterType::Ordinal(o) => SsbMatrix::canonical(o),
            VoterType::Ssb(m) => m.clone(),
        }
    }

    pub fn as_order(&self) -> Option<&WeakOrder> {
        match self {
            VoterType::Ordinal(o) => Some(o),
            VoterType::Ssb(_) => None,
        }
    }
}

impl<T> From<WeakOrder> for VoterType<T> {
    fn from(order: WeakOrder) -> Self {
        VoterType::Ordinal(order)
    }
}

/// An anonymous electorate: voter types with positive multiplicities.
///
/// Two profiles over the same alternative list are equal iff their type
/// multisets are equal, regardless of construction order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile<T = Rational> {
    alternatives: AlternativeSet,
    types: BTreeMap<VoterType<T>, u64>,
}

impl<T: Scalar> Profile<T> {
    pub fn new<I>(alternatives: AlternativeSet, types: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VoterType<T>, u64)>,
    {
        let mut map = BTreeMap::new();
        for (ty, count) in types {
            if count == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            if ty.num_alternatives() != alternatives.len() {
                return Err(Error::DimensionMismatch {
                    expected: alternatives.len(),
                    found: ty.num_alternatives(),
                });
            }
            *map.entry(ty).or_insert(0) += count;
        }
        if map.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Profile {
            alternatives,
            types: map,
        })
    }

    /// Ordinal profile from `(count, order)` pairs.
    pub fn from_orders<I>(alternatives: AlternativeSet, orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, WeakOrder)>,
    {
        Self::new(
            alternatives,
            orders.into_iter().map(|(c, o)| (VoterType::Ordinal(o), c)),
        )
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alternatives
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    /// Total number of voters.
    pub fn n(&self) -> u64 {
        self.types.values().sum()
    }

    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    /// Types with multiplicities, in canonical (sorted) order.
    pub fn types(&self) -> impl Iterator<Item = (&VoterType<T>, u64)> {
        self.types.iter().map(|(t, &c)| (t, c))
    }

    pub fn multiplicity(&self, ty: &VoterType<T>) -> u64 {
        self.types.get(ty).copied().unwrap_or(0)
    }

    pub fn is_ordinal(&self) -> bool {
        self.types.keys().all(|t| matches!(t, VoterType::Ordinal(_)))
    }

    /// `(count, order)` pairs, or `NonOrdinalProfile`.
    pub fn orders(&self) -> Result<Vec<(&WeakOrder, u64)>> {
        self.types
            .iter()
            .map(|(t, &c)| t.as_order().map(|o| (o, c)).ok_or(Error::NonOrdinalProfile))
            .collect()
    }

    /// Multiplicity-weighted sum of the voters' SSB matrices.
    pub fn aggregate(&self) -> SsbMatrix<T> {
        let size = self.num_alternatives();
        // ordinal voters contribute integer margins; sum those natively
        let mut margins = vec![0i64; size * size];
        let mut raw: Option<SsbMatrix<T>> = None;
        for (ty, &count) in &self.types {
            match ty {
                VoterType::Ordinal(order) => {
                    let count = count as i64;
                    for x in 0..size {
                        let rx = order.rank(Alternative(x));
                        for y in 0..size {
                            margins[x * size + y] += match rx.cmp(&order.rank(Alternative(y))) {
                                Ordering::Less => count,
                                Ordering::Greater => -count,
                                Ordering::Equal => 0,
                            };
                        }
                    }
                }
                VoterType::Ssb(m) => raw
                    .get_or_insert_with(|| SsbMatrix::zero(size))
                    .add_scaled(m, &T::from_int(count as i64)),
            }
        }
        let mut total = SsbMatrix::from_flat(size, margins.into_iter().map(T::from_int).collect())
            .expect("margins are skew-symmetric");
        if let Some(raw) = raw {
            total.add_scaled(&raw, &T::one());
        }
        total
    }

    /// Every multiplicity multiplied by `k`.
    pub fn replicate(&self, k: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidFactor { min: 1, got: k });
        }
        Ok(Profile {
            alternatives: self.alternatives.clone(),
            types: self
                .types
                .iter()
                .map(|(t, &c)| (t.clone(), c * k))
                .collect(),
        })
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_alternatives(other)?;
        let mut types = self.types.clone();
        for (t, &c) in &other.types {
            *types.entry(t.clone()).or_insert(0) += c;
        }
        Ok(Profile {
            alternatives: self.alternatives.clone(),
            types,
        })
    }

    pub fn with_voters(&self, ty: VoterType<T>, count: u64) -> Result<Self> {
        let extra = Profile::new(self.alternatives.clone(), [(ty, count)])?;
        self.union(&extra)
    }

    /// Multiset difference; `EmptyProfile` when nothing remains.
    pub fn difference(&self, sub: &Self) -> Result<Self> {
        self.check_alternatives(sub)?;
        let mut types = self.types.clone();
        for (t, &c) in &sub.types {
            match types.get_mut(t) {
                Some(have) if *have > c => *have -= c,
                Some(have) if *have == c => {
                    types.remove(t);
                }
                _ => return Err(Error::NotSubMultiset),
            }
        }
        if types.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Profile {
            alternatives: self.alternatives.clone(),
            types,
        })
    }

    /// Sub-multiset check.
    pub fn contains(&self, sub: &Self) -> bool {
        self.alternatives == sub.alternatives
            && sub.types.iter().all(|(t, &c)| self.multiplicity(t) >= c)
    }

    fn check_alternatives(&self, other: &Self) -> Result<()> {
        if self.alternatives.len() != other.alternatives.len() {
            return Err(Error::DimensionMismatch {
                expected: self.alternatives.len(),
                found: other.alternatives.len(),
            });
        }
        Ok(())
    }
}
