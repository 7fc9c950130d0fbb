//! Ordinal mechanisms: profile in, lottery out.
//!
//! | id         | rule                                                          |
//! |------------|---------------------------------------------------------------|
//! | `ml`       | lexicographically first maximal lottery of the aggregate      |
//! | `cu`       | Condorcet winner if one exists, else uniform over everything  |
//! | `copeland` | top Copeland score (wins minus losses), first alternative on ties |
//! | `rd`       | random dictatorship; a voter's share is split over their top class |
//!
//! All four are anonymous and deterministic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::algebra::{Alternative, Lottery, Profile, Scalar, SsbMatrix};
use crate::error::{Error, Result};
use crate::solver;

/// A single-valued map from profiles to lotteries.
pub trait Mechanism<T: Scalar>: Sync {
    fn name(&self) -> String;

    fn outcome(&self, profile: &Profile<T>) -> Result<Lottery<T>>;

    /// True when the outcome depends on the profile only through its
    /// aggregate SSB matrix.
    fn aggregate_determined(&self) -> bool {
        false
    }
}

impl<T: Scalar, M: Mechanism<T> + ?Sized> Mechanism<T> for &M {
    fn name(&self) -> String {
        (**self).name()
    }

    fn outcome(&self, profile: &Profile<T>) -> Result<Lottery<T>> {
        (**self).outcome(profile)
    }

    fn aggregate_determined(&self) -> bool {
        (**self).aggregate_determined()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum MemoKey<T> {
    Aggregate(SsbMatrix<T>),
    Profile(Profile<T>),
}

/// Caches another mechanism's outcomes. Keys are aggregate matrices when the
/// inner mechanism is aggregate-determined, whole profiles otherwise.
pub struct Memoized<M, T> {
    inner: M,
    cache: Mutex<HashMap<MemoKey<T>, Lottery<T>>>,
    capacity: usize,
}

impl<M: Mechanism<T>, T: Scalar> Memoized<M, T> {
    pub fn new(inner: M) -> Self {
        Self::with_capacity(inner, 1 << 20)
    }

    /// The cache is flushed whenever it reaches `capacity` entries.
    pub fn with_capacity(inner: M, capacity: usize) -> Self {
        Memoized {
            inner,
            cache: Mutex::new(HashMap::new()),
            capacity,
        }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

impl<M: Mechanism<T>, T: Scalar> Mechanism<T> for Memoized<M, T> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn outcome(&self, profile: &Profile<T>) -> Result<Lottery<T>> {
        let key = if self.inner.aggregate_determined() {
            if profile.n() == 0 {
                return Err(Error::EmptyProfile);
            }
            MemoKey::Aggregate(profile.aggregate())
        } else {
            MemoKey::Profile(profile.clone())
        };
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let lottery = self.inner.outcome(profile)?;
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() >= self.capacity {
            cache.clear();
        }
        cache.insert(key, lottery.clone());
        Ok(lottery)
    }

    fn aggregate_determined(&self) -> bool {
        self.inner.aggregate_determined()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MechanismId {
    Ml,
    Cu,
    Copeland,
    Rd,
}

impl MechanismId {
    pub const ALL: [MechanismId; 4] = [
        MechanismId::Ml,
        MechanismId::Cu,
        MechanismId::Copeland,
        MechanismId::Rd,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MechanismId::Ml => "ml",
            MechanismId::Cu => "cu",
            MechanismId::Copeland => "copeland",
            MechanismId::Rd => "rd",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            MechanismId::Ml => "maximal lotteries with lexicographic selection",
            MechanismId::Cu => "Condorcet winner, otherwise the uniform lottery",
            MechanismId::Copeland => "Copeland winner with lexicographic tie-break",
            MechanismId::Rd => "random dictatorship with tied tops split equally",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismId::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| Error::UnknownMechanism(s.to_string()))
    }
}

impl<T: Scalar> Mechanism<T> for MechanismId {
    fn name(&self) -> String {
        self.id().to_string()
    }

    fn outcome(&self, profile: &Profile<T>) -> Result<Lottery<T>> {
        match self {
            MechanismId::Ml => ml_mechanism(profile),
            MechanismId::Cu => cu_mechanism(profile),
            MechanismId::Copeland => copeland_mechanism(profile),
            MechanismId::Rd => rd_mechanism(profile),
        }
    }

    fn aggregate_determined(&self) -> bool {
        !matches!(self, MechanismId::Rd)
    }
}

fn nonempty_aggregate<T: Scalar>(profile: &Profile<T>) -> Result<SsbMatrix<T>> {
    if profile.n() == 0 {
        return Err(Error::EmptyProfile);
    }
    Ok(profile.aggregate())
}

pub fn ml_mechanism<T: Scalar>(profile: &Profile<T>) -> Result<Lottery<T>> {
    solver::lex_maximal(&nonempty_aggregate(profile)?)
}

pub fn cu_mechanism<T: Scalar>(profile: &Profile<T>) -> Result<Lottery<T>> {
    let m = nonempty_aggregate(profile)?;
    Ok(match solver::condorcet_winner(&m) {
        Some(x) => Lottery::degenerate(m.size(), x),
        None => Lottery::uniform(m.size()),
    })
}

/// Wins minus losses in the pairwise majority relation.
pub fn copeland_scores<T: Scalar>(m: &SsbMatrix<T>) -> Vec<i64> {
    (0..m.size())
        .map(|x| {
            m.row(x)
                .iter()
                .map(|v| match v.signum() {
                    s if s.is_positive() => 1,
                    s if s.is_negative() => -1,
                    _ => 0,
                })
                .sum()
        })
        .collect()
}

pub fn copeland_mechanism<T: Scalar>(profile: &Profile<T>) -> Result<Lottery<T>> {
    let m = nonempty_aggregate(profile)?;
    let scores = copeland_scores(&m);
    let best = scores.iter().copied().max().expect("at least one alternative");
    let winner = scores.iter().position(|&s| s == best).expect("maximum exists");
    Ok(Lottery::degenerate(m.size(), Alternative(winner)))
}

pub fn rd_mechanism<T: Scalar>(profile: &Profile<T>) -> Result<Lottery<T>> {
    let orders = profile.orders()?;
    let n = profile.n();
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let mut probs = vec![T::zero(); profile.num_alternatives()];
    for (order, count) in orders {
        let top = order.top();
        let share = T::from_int(count as i64) / T::from_int((n as i64) * top.len() as i64);
        for &x in top {
            probs[x] = probs[x].clone() + share.clone();
        }
    }
    Lottery::new(probs)
}
