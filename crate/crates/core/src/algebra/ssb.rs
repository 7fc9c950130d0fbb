use std::fmt;
use std::ops::Add;

use super::{Alternative, Lottery, Scalar, WeakOrder};
use crate::error::{Error, Result};
use crate::Rational;

/// A skew-symmetric matrix `phi(x, y)` over the alternatives. Its bilinear
/// extension is an SSB utility function on lotteries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SsbMatrix<T = Rational> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SsbMatrix<T> {
    /// Checks skew-symmetry (and hence a zero diagonal).
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::from_flat(size, entries)
    }

    pub fn from_flat(size: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                found: entries.len(),
            });
        }
        for row in 0..size {
            for col in row..size {
                let a = &entries[row * size + col];
                let b = &entries[col * size + row];
                if *a != -b.clone() {
                    return Err(Error::NotSkewSymmetric { row, col });
                }
            }
        }
        Ok(SsbMatrix { size, entries })
    }

    pub fn zero(size: usize) -> Self {
        SsbMatrix {
            size,
            entries: vec![T::zero(); size * size],
        }
    }

    /// The canonical `{-1, 0, +1}` representation of an ordinal preference.
    pub fn canonical(order: &WeakOrder) -> Self {
        let size = order.num_alternatives();
        let mut entries = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let (rx, ry) = (order.rank(Alternative(x)), order.rank(Alternative(y)));
                entries.push(match rx.cmp(&ry) {
                    std::cmp::Ordering::Less => T::one(),
                    std::cmp::Ordering::Greater => -T::one(),
                    std::cmp::Ordering::Equal => T::zero(),
                });
            }
        }
        SsbMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: Alternative, y: Alternative) -> &T {
        &self.entries[x.0 * self.size + y.0]
    }

    pub fn entry(&self, x: usize, y: usize) -> &T {
        &self.entries[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[T] {
        &self.entries[x * self.size..(x + 1) * self.size]
    }

    pub fn negate(&self) -> Self {
        SsbMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        SsbMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.clone() * factor.clone()).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other.size)?;
        Ok(SsbMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// `self += factor * other`, for aggregation.
    pub(crate) fn add_scaled(&mut self, other: &Self, factor: &T) {
        debug_assert_eq!(self.size, other.size);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = a.clone() + b.clone() * factor.clone();
            }
        }
    }

    /// `phi(p, q) = sum_x sum_y p(x) q(y) phi(x, y)`.
    pub fn value(&self, p: &Lottery<T>, q: &Lottery<T>) -> Result<T> {
        p.check_len(self.size)?;
        q.check_len(self.size)?;
        let mut total = T::zero();
        for (x, px) in p.probs().iter().enumerate() {
            if px.is_zero() {
                continue;
            }
            let mut inner = T::zero();
            for (y, qy) in q.probs().iter().enumerate() {
                if !qy.is_zero() {
                    inner = inner + qy.clone() * self.entry(x, y).clone();
                }
            }
            total = total + px.clone() * inner;
        }
        Ok(total)
    }

    /// `phi(p, e_y)` for every alternative `y`.
    pub fn column_values(&self, p: &Lottery<T>) -> Result<Vec<T>> {
        p.check_len(self.size)?;
        Ok((0..self.size)
            .map(|y| {
                p.probs()
                    .iter()
                    .enumerate()
                    .filter(|(_, px)| !px.is_zero())
                    .fold(T::zero(), |acc, (x, px)| {
                        acc + px.clone() * self.entry(x, y).clone()
                    })
            })
            .collect())
    }

    /// True when every off-diagonal entry is in `{-1, 0, 1}` and the induced
    /// relation is a weak order, i.e. the matrix is `canonical(o)` for some `o`.
    pub fn is_canonical_ordinal(&self) -> bool {
        self.to_weak_order().is_some()
    }

    /// Recovers the weak order from the sign pattern of a canonical matrix.
    pub fn to_weak_order(&self) -> Option<WeakOrder> {
        let n = self.size;
        let unit = |v: &T| v.is_zero() || v.is_one() || (-v.clone()).is_one();
        if !self.entries.iter().all(unit) {
            return None;
        }
        // rank = number of alternatives strictly better
        let ranks: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| self.entry(y, x).is_one()).count())
            .collect();
        let order = WeakOrder::from_ranks(&ranks).ok()?;
        (SsbMatrix::canonical(&order) == *self).then_some(order)
    }

    pub(crate) fn check_size(&self, expected: usize) -> Result<()> {
        if self.size != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.size,
            });
        }
        Ok(())
    }
}

impl<T: Scalar> Add for &SsbMatrix<T> {
    type Output = SsbMatrix<T>;

    fn add(self, rhs: Self) -> SsbMatrix<T> {
        self.try_add(rhs).expect("matrix sizes differ")
    }
}

impl<T: Scalar> fmt::Display for SsbMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.size {
            if x > 0 {
                f.write_str("\n")?;
            }
            for (y, v) in self.row(x).iter().enumerate() {
                if y > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn canonical_strict_order() {
        let m: SsbMatrix = SsbMatrix::canonical(&WeakOrder::strict(&[0, 1, 2]).unwrap());
        assert_eq!(*m.entry(0, 1), int(1));
        assert_eq!(*m.entry(0, 2), int(1));
        assert_eq!(*m.entry(1, 2), int(1));
        assert_eq!(*m.entry(2, 0), int(-1));
        assert_eq!(*m.entry(1, 1), int(0));
    }

    #[test]
    fn canonical_with_ties() {
        let indiff: SsbMatrix = SsbMatrix::canonical(&WeakOrder::indifferent(3));
        assert_eq!(indiff, SsbMatrix::zero(3));
        let top: SsbMatrix = SsbMatrix::canonical(&WeakOrder::new(vec![vec![0], vec![1, 2]]).unwrap());
        assert_eq!(*top.entry(0, 1), int(1));
        assert_eq!(*top.entry(0, 2), int(1));
        assert_eq!(*top.entry(1, 2), int(0));
    }

    #[test]
    fn negation_reverses_canonical() {
        let o = WeakOrder::strict(&[0, 1, 2]).unwrap();
        let m: SsbMatrix = SsbMatrix::canonical(&o);
        assert_eq!(m.negate(), SsbMatrix::canonical(&o.reversed()));
        assert_eq!(m.negate().negate(), m);
        assert_eq!(SsbMatrix::<Rational>::zero(3).negate(), SsbMatrix::zero(3));
    }

    #[test]
    fn rejects_non_skew() {
        let err = SsbMatrix::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap_err();
        assert_eq!(err, Error::NotSkewSymmetric { row: 0, col: 1 });
        let diag = SsbMatrix::new(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap_err();
        assert_eq!(diag, Error::NotSkewSymmetric { row: 0, col: 0 });
    }

    #[test]
    fn value_expands_bilinear_form() {
        let m: SsbMatrix = SsbMatrix::canonical(&WeakOrder::strict(&[0, 1, 2]).unwrap());
        let p = Lottery::new(vec![Rational::ratio(1, 2), int(0), Rational::ratio(1, 2)]).unwrap();
        let q = Lottery::degenerate(3, Alternative(1));
        assert_eq!(m.value(&p, &q).unwrap(), int(0));
        assert_eq!(m.value(&p, &p).unwrap(), int(0));
        let ea = Lottery::degenerate(3, Alternative(0));
        let ec = Lottery::degenerate(3, Alternative(2));
        assert_eq!(m.value(&ea, &ec).unwrap(), int(1));
        assert!(m.value(&Lottery::uniform(2), &q).is_err());
    }

    #[test]
    fn recovers_weak_order_from_signs() {
        for o in WeakOrder::all_weak(3) {
            let m: SsbMatrix = SsbMatrix::canonical(&o);
            assert_eq!(m.to_weak_order(), Some(o));
        }
        // 3-cycle: entries in {-1,0,1} but not transitive
        let cyc = SsbMatrix::new(vec![
            vec![int(0), int(1), int(-1)],
            vec![int(-1), int(0), int(1)],
            vec![int(1), int(-1), int(0)],
        ])
        .unwrap();
        assert!(!cyc.is_canonical_ordinal());
    }
}
