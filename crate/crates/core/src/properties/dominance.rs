use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::{Lottery, Scalar, SsbMatrix, WeakOrder};
use crate::error::{Error, Result};

/// Stochastic-dominance relation of `p` to `q` under one weak order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SdResult {
    StrictlyDominates,
    StrictlyDominated,
    Equivalent,
    Incomparable,
}

impl SdResult {
    /// The relation with the arguments swapped.
    pub fn flip(self) -> Self {
        match self {
            SdResult::StrictlyDominates => SdResult::StrictlyDominated,
            SdResult::StrictlyDominated => SdResult::StrictlyDominates,
            other => other,
        }
    }
}

/// `p(U_k) - q(U_k)` for every upper contour set `U_k` (union of the first
/// `k` indifference classes).
pub fn contour_differences<T: Scalar>(order: &WeakOrder, p: &Lottery<T>, q: &Lottery<T>) -> Result<Vec<T>> {
    let n = order.num_alternatives();
    for l in [p, q] {
        if l.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: l.len(),
            });
        }
    }
    let mut acc = T::zero();
    Ok(order
        .classes()
        .iter()
        .map(|class| {
            for &x in class {
                acc = acc.clone() + p.probs()[x].clone() - q.probs()[x].clone();
            }
            acc.clone()
        })
        .collect())
}

pub fn sd_compare<T: Scalar>(order: &WeakOrder, p: &Lottery<T>, q: &Lottery<T>) -> Result<SdResult> {
    let diffs = contour_differences(order, p, q)?;
    let any_pos = diffs.iter().any(|d| d.is_positive());
    let any_neg = diffs.iter().any(|d| d.is_negative());
    Ok(match (any_pos, any_neg) {
        (true, false) => SdResult::StrictlyDominates,
        (false, true) => SdResult::StrictlyDominated,
        (false, false) => SdResult::Equivalent,
        (true, true) => SdResult::Incomparable,
    })
}

/// Exact PC value `phi(p, q)` under the canonical utility of `order`.
pub fn pc_value<T: Scalar>(order: &WeakOrder, p: &Lottery<T>, q: &Lottery<T>) -> Result<T> {
    SsbMatrix::canonical(order).value(p, q)
}

/// Sign of the PC comparison; `Greater` means `p` is PC-preferred to `q`.
pub fn pc_compare<T: Scalar>(order: &WeakOrder, p: &Lottery<T>, q: &Lottery<T>) -> Result<Ordering> {
    Ok(pc_value(order, p, q)?.cmp(&T::zero()))
}
