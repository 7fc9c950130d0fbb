use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field element.
///
/// Every quantity in this crate (probabilities, SSB values, LP tableau
/// entries) is a `Scalar`. Implementations must be exact: `Ord` is total and
/// `a + b - b == a` holds bit for bit, which rules out floating point.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Exact integer embedding.
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every exact scalar embeds the 64-bit integers")
    }

    /// `numer / denom`, exact.
    fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Parses `"3"`, `"-1/2"` and similar.
    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.contains('/') {
            Self::from_str_radix(text, 10).ok()
        } else {
            Self::from_str_radix(&format!("{text}/1"), 10).ok()
        }
    }
}

impl Scalar for Ratio<BigInt> {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}
