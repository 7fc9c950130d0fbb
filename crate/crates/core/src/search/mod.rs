//! Profile generators, counterexample search and audit campaigns.
//!
//! Profiles are anonymous multisets of orders drawn from a [`Domain`]. The
//! exhaustive generator lists every multiset of a given size; the random
//! generator draws profile `i` from its own ChaCha stream, so draw `i` does not
//! depend on how many draws were made before it.
//!
//! Searches walk an index space in chunks. Inside a chunk profiles may be
//! checked in parallel, but results are merged in index order and the
//! smallest witnessing index wins, so a parallel run reports exactly what a
//! sequential run reports.

mod campaign;
mod report;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use campaign::{audit_theorem, inefficiency_seed, Campaign};
pub use report::{Audit, AuditOutcome, AuditReport, AuditStats, Location, Scope, SideCheck, Stage, WitnessRecord};

use crate::algebra::{AlternativeSet, Profile, Scalar, VoterType, WeakOrder};
use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;
use crate::properties::{check_property, CheckOptions, Finding, PropertyId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Strict,
    Weak,
}

impl Domain {
    pub fn id(self) -> &'static str {
        match self {
            Domain::Strict => "strict",
            Domain::Weak => "weak",
        }
    }

    /// The voter types of the domain, in their canonical order.
    pub fn orders(self, alts: usize) -> Vec<WeakOrder> {
        match self {
            Domain::Strict => WeakOrder::all_strict(alts),
            Domain::Weak => WeakOrder::all_weak(alts),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Domain::Strict),
            "weak" => Ok(Domain::Weak),
            _ => Err(Error::UnknownDomain(s.to_string())),
        }
    }
}

/// Scope and randomness of one search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub alternatives: usize,
    pub max_voters: u64,
    pub domain: Domain,
    /// Upper bound on the number of profiles checked.
    pub max_profiles: u64,
    pub seed: u64,
    /// Check chunks on the rayon pool. Never changes the result.
    pub parallel: bool,
}

impl SearchBudget {
    pub fn new(alternatives: usize, max_voters: u64, domain: Domain, max_profiles: u64, seed: u64) -> Result<Self> {
        let budget = SearchBudget {
            alternatives,
            max_voters,
            domain,
            max_profiles,
            seed,
            parallel: true,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.alternatives == 0 {
            return Err(Error::InvalidBudget("alternatives must be positive".into()));
        }
        if self.alternatives > 8 {
            return Err(Error::InvalidBudget("at most 8 alternatives are supported".into()));
        }
        if self.max_voters == 0 {
            return Err(Error::InvalidBudget("max_voters must be positive".into()));
        }
        if self.max_profiles == 0 {
            return Err(Error::InvalidBudget("max_profiles must be positive".into()));
        }
        Ok(())
    }

    /// Number of profiles with `1..=max_voters` voters, saturating.
    pub fn space_size(&self) -> u64 {
        let types = self.domain.orders(self.alternatives).len() as u64;
        (1..=self.max_voters).fold(0u64, |acc, n| acc.saturating_add(multiset_count(types, n)))
    }
}

/// `C(types + n - 1, n)`, saturating at `u64::MAX`.
pub fn multiset_count(types: u64, n: u64) -> u64 {
    if types == 0 {
        return u64::from(n == 0);
    }
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (types as u128 + i - 1) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every profile with exactly `voters` voters over `domain`, each once.
///
/// A profile is a non-decreasing sequence of type indices into
/// `domain.orders(alts)`; sequences are produced in lexicographic order.
pub struct ProfileEnumeration<T> {
    alternatives: AlternativeSet,
    orders: Vec<WeakOrder>,
    indices: Option<Vec<usize>>,
    _scalar: std::marker::PhantomData<T>,
}

impl<T: Scalar> Iterator for ProfileEnumeration<T> {
    type Item = Profile<T>;

    fn next(&mut self) -> Option<Profile<T>> {
        let indices = self.indices.as_mut()?;
        let profile = multiset_profile(&self.alternatives, &self.orders, indices);
        let last = self.orders.len() - 1;
        match indices.iter().rposition(|&i| i < last) {
            Some(pos) => {
                let value = indices[pos] + 1;
                indices[pos..].fill(value);
            }
            None => self.indices = None,
        }
        Some(profile)
    }
}

fn multiset_profile<T: Scalar>(alts: &AlternativeSet, orders: &[WeakOrder], indices: &[usize]) -> Profile<T> {
    let mut counts = vec![0u64; orders.len()];
    for &i in indices {
        counts[i] += 1;
    }
    let types = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (VoterType::Ordinal(orders[i].clone()), c));
    Profile::new(alts.clone(), types).expect("at least one voter")
}

pub fn enumerate_profiles<T: Scalar>(alts: usize, voters: u64, domain: Domain) -> ProfileEnumeration<T> {
    let orders = domain.orders(alts);
    let indices = (alts > 0 && voters > 0).then(|| vec![0; voters as usize]);
    ProfileEnumeration {
        alternatives: AlternativeSet::standard(alts),
        orders,
        indices,
        _scalar: std::marker::PhantomData,
    }
}

/// All profiles with `1..=max_voters` voters, smaller electorates first.
pub fn enumerate_up_to<T: Scalar>(alts: usize, max_voters: u64, domain: Domain) -> impl Iterator<Item = Profile<T>> {
    (1..=max_voters).flat_map(move |n| enumerate_profiles(alts, n, domain))
}

/// Draw `index` of the seeded stream: voter count uniform in
/// `1..=max_voters`, types i.i.d. uniform over the domain.
pub fn random_profile<T: Scalar>(budget: &SearchBudget, index: u64) -> Profile<T> {
    let orders = budget.domain.orders(budget.alternatives);
    random_profile_from(&AlternativeSet::standard(budget.alternatives), &orders, budget, index)
}

fn random_profile_from<T: Scalar>(
    alts: &AlternativeSet,
    orders: &[WeakOrder],
    budget: &SearchBudget,
    index: u64,
) -> Profile<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    rng.set_stream(index);
    let n = rng.gen_range(1..=budget.max_voters);
    let indices: Vec<usize> = (0..n).map(|_| rng.gen_range(0..orders.len())).collect();
    multiset_profile(alts, orders, &indices)
}

const CHUNK: usize = 256;

/// Result of walking one index space.
pub(crate) struct Sweep<O> {
    pub checked: u64,
    pub work: u64,
    pub hit: Option<(u64, O)>,
}

/// Checks `items` in order, stopping after the chunk containing the first
/// hit. `checked` and `work` count only items up to and including the hit.
pub(crate) fn sweep<P, O, I, F>(items: I, parallel: bool, check: F) -> Result<Sweep<O>>
where
    I: Iterator<Item = P>,
    P: Send,
    O: Send,
    F: Fn(P) -> Result<(u64, Option<O>)> + Sync,
{
    let mut items = items.peekable();
    let mut sweep = Sweep {
        checked: 0,
        work: 0,
        hit: None,
    };
    while items.peek().is_some() {
        let chunk: Vec<P> = items.by_ref().take(CHUNK).collect();
        let results: Vec<Result<(u64, Option<O>)>> = if parallel {
            chunk.into_par_iter().map(&check).collect()
        } else {
            chunk.into_iter().map(&check).collect()
        };
        for result in results {
            let (work, found) = result?;
            sweep.checked += 1;
            sweep.work += work;
            if let Some(found) = found {
                sweep.hit = Some((sweep.checked - 1, found));
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

/// Exhaustive walk when the whole space fits in the budget, seeded random
/// draws otherwise.
pub(crate) fn search_space<T, F>(budget: &SearchBudget, check: F) -> Result<(Stage, Sweep<Finding<T>>)>
where
    T: Scalar,
    F: Fn(&Profile<T>) -> Result<(u64, Option<Finding<T>>)> + Sync,
{
    budget.validate()?;
    if budget.space_size() <= budget.max_profiles {
        let sweep = sweep(
            enumerate_up_to(budget.alternatives, budget.max_voters, budget.domain),
            budget.parallel,
            |p| check(&p),
        )?;
        Ok((Stage::Enumerated, sweep))
    } else {
        Ok((Stage::Sampled, sample(budget, 0, budget.max_profiles, &check)?))
    }
}

/// Random draws `first..first + count`.
pub(crate) fn sample<T, F>(budget: &SearchBudget, first: u64, count: u64, check: &F) -> Result<Sweep<Finding<T>>>
where
    T: Scalar,
    F: Fn(&Profile<T>) -> Result<(u64, Option<Finding<T>>)> + Sync,
{
    let alts = AlternativeSet::standard(budget.alternatives);
    let orders = budget.domain.orders(budget.alternatives);
    let mut sweep = sweep(first..first + count, budget.parallel, |i| {
        check(&random_profile_from(&alts, &orders, budget, i))
    })?;
    if let Some((offset, _)) = sweep.hit.as_mut() {
        *offset += first;
    }
    Ok(sweep)
}

/// Runs the `property` checker over the budget's profile space and returns
/// the minimum-index witness, re-verified by a second evaluation.
pub fn find_counterexample<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    property: PropertyId,
    budget: &SearchBudget,
) -> Result<Audit<T>> {
    find_counterexample_with(mechanism, property, budget, &CheckOptions::default())
}

pub fn find_counterexample_with<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    property: PropertyId,
    budget: &SearchBudget,
    options: &CheckOptions,
) -> Result<Audit<T>> {
    let (stage, sweep) = search_space(budget, |p| {
        let outcome = check_property(property, mechanism, p, options)?;
        Ok((outcome.work, outcome.finding))
    })?;
    let mut report = AuditReport::new("search", &mechanism.name(), property.id(), budget, false);
    report.record_sweep(stage, &sweep);
    let finding = match sweep.hit {
        Some((index, finding)) => {
            confirm(&finding, mechanism)?;
            report.set_witness(Location { stage, index }, WitnessRecord::from_finding(&mechanism.name(), &finding));
            Some(finding)
        }
        None => None,
    };
    Ok(Audit { report, finding })
}

/// Independent re-check of a witness before it is reported.
pub(crate) fn confirm<T: Scalar, M: Mechanism<T> + ?Sized>(finding: &Finding<T>, mechanism: &M) -> Result<()> {
    if finding.verify(mechanism)? {
        Ok(())
    } else {
        Err(Error::UnverifiedWitness(format!(
            "{} witness for {}",
            finding.property(),
            mechanism.name()
        )))
    }
}
