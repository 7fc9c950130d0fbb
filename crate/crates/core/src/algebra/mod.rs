//! Exact value types: alternatives, lotteries, weak orders, SSB matrices and
//! anonymous profiles, plus the free functions that combine them.

mod alternatives;
mod lottery;
mod order;
mod profile;
mod scalar;
mod ssb;

pub use alternatives::{Alternative, AlternativeSet};
pub use lottery::Lottery;
pub use order::WeakOrder;
pub use profile::{Profile, VoterType};
pub use scalar::Scalar;
pub use ssb::SsbMatrix;

use crate::error::{Error, Result};

/// Canonical `{-1, 0, +1}` utility of an ordinal preference.
pub fn canonical_ssb<T: Scalar>(order: &WeakOrder) -> SsbMatrix<T> {
    SsbMatrix::canonical(order)
}

pub fn negate<T: Scalar>(phi: &SsbMatrix<T>) -> SsbMatrix<T> {
    phi.negate()
}

/// `phi^N`, the sum of all voters' SSB matrices.
pub fn aggregate<T: Scalar>(profile: &Profile<T>) -> Result<SsbMatrix<T>> {
    if profile.n() == 0 {
        return Err(Error::EmptyProfile);
    }
    Ok(profile.aggregate())
}

pub fn ssb_value<T: Scalar>(phi: &SsbMatrix<T>, p: &Lottery<T>, q: &Lottery<T>) -> Result<T> {
    phi.value(p, q)
}

pub fn replicate<T: Scalar>(profile: &Profile<T>, k: u64) -> Result<Profile<T>> {
    profile.replicate(k)
}
