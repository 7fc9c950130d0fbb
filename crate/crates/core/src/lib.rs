//! # maxlot
//!
//! Exact maximal lotteries for skew-symmetric bilinear (SSB) utility
//! profiles, and machine checks of the axioms that characterize them:
//! participation, ordinal participation, cancellation, homogeneity,
//! Condorcet-consistency and ex post efficiency.
//!
//! All arithmetic is exact. The library is generic over any [`Scalar`]
//! (an exact ordered field); [`Rational`] (arbitrary precision) is the
//! default everywhere, and the `*64` aliases use machine-word rationals for
//! callers who know their instances stay small.
//!
//! ```
//! use maxlot::{profile_file, mechanisms::MechanismId, Mechanism};
//!
//! let profile: maxlot::Profile = profile_file::parse_profile(
//!     "alternatives: a,b,c\n1: a > b > c\n1: b > c > a\n1: c > a > b\n",
//! )
//! .unwrap();
//! let lottery = MechanismId::Ml.outcome(&profile).unwrap();
//! assert_eq!(lottery.to_string(), "(1/3, 1/3, 1/3)");
//! ```

pub mod algebra;
pub mod error;
pub mod mechanisms;
pub mod profile_file;
pub mod properties;
pub mod search;
pub mod solver;

pub use algebra::{
    Alternative, AlternativeSet, Lottery, Profile, Scalar, SsbMatrix, VoterType, WeakOrder,
};
pub use error::{Error, Result};
pub use mechanisms::{Mechanism, MechanismId};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;

/// Machine-word rational; arithmetic overflow panics in debug builds.
pub type Rational64 = num_rational::Rational64;

pub type Lottery64 = Lottery<Rational64>;
pub type SsbMatrix64 = SsbMatrix<Rational64>;
pub type Profile64 = Profile<Rational64>;

/// Tool version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
