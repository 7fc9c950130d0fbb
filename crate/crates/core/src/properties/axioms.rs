//! Single-profile axiom checks.
//!
//! When several alternatives witness one violation, the reported one is the
//! last in the alternative order (for welfare: the last among the most
//! negative columns).

use crate::algebra::{Alternative, Lottery, Profile, Scalar, VoterType, WeakOrder};
use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;
use crate::solver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WelfareViolation<T> {
    pub outcome: Lottery<T>,
    /// `y` with `phi^N(outcome, e_y) < 0`.
    pub alternative: Alternative,
    pub value: T,
}

pub fn check_welfare_maximizing<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
) -> Result<Option<WelfareViolation<T>>> {
    let outcome = mechanism.outcome(profile)?;
    let m = profile.aggregate();
    Ok(solver::worst_column(&m, &outcome)?.map(|(alternative, value)| WelfareViolation {
        outcome,
        alternative,
        value,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationViolation<T> {
    pub order: WeakOrder,
    pub before: Lottery<T>,
    /// Outcome after adding `order` and its reverse.
    pub after: Lottery<T>,
}

pub fn check_cancellation<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
    order: &WeakOrder,
) -> Result<Option<CancellationViolation<T>>> {
    let before = mechanism.outcome(profile)?;
    let extended = profile
        .with_voters(VoterType::Ordinal(order.clone()), 1)?
        .with_voters(VoterType::Ordinal(order.reversed()), 1)?;
    let after = mechanism.outcome(&extended)?;
    Ok((before != after).then(|| CancellationViolation {
        order: order.clone(),
        before,
        after,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityViolation<T> {
    pub k: u64,
    pub base: Lottery<T>,
    pub replicated: Lottery<T>,
}

/// Compares `f(P)` with `f(kP)` for `k = 2..=k_max`.
pub fn check_homogeneity<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
    k_max: u64,
) -> Result<Option<HomogeneityViolation<T>>> {
    if k_max < 2 {
        return Err(Error::InvalidFactor { min: 2, got: k_max });
    }
    let base = mechanism.outcome(profile)?;
    for k in 2..=k_max {
        let replicated = mechanism.outcome(&profile.replicate(k)?)?;
        if replicated != base {
            return Ok(Some(HomogeneityViolation {
                k,
                base,
                replicated,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondorcetViolation<T> {
    pub winner: Alternative,
    pub outcome: Lottery<T>,
}

pub fn check_condorcet_consistency<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
) -> Result<Option<CondorcetViolation<T>>> {
    let outcome = mechanism.outcome(profile)?;
    let Some(winner) = solver::condorcet_winner(&profile.aggregate()) else {
        return Ok(None);
    };
    Ok((outcome.degenerate_on() != Some(winner)).then_some(CondorcetViolation { winner, outcome }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfficiencyViolation<T> {
    pub dominated: Alternative,
    pub dominator: Alternative,
    pub probability: T,
    pub outcome: Lottery<T>,
}

/// `x` Pareto-dominates `y`: every voter weakly prefers `x`, some strictly.
pub fn pareto_dominates<T: Scalar>(profile: &Profile<T>, x: Alternative, y: Alternative) -> Result<bool> {
    let orders = profile.orders()?;
    Ok(orders.iter().all(|(o, _)| o.weakly_prefers(x, y)) && orders.iter().any(|(o, _)| o.prefers(x, y)))
}

pub fn check_ex_post_efficiency<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
) -> Result<Option<EfficiencyViolation<T>>> {
    if !profile.is_ordinal() {
        return Err(Error::NonOrdinalProfile);
    }
    let outcome = mechanism.outcome(profile)?;
    let n = profile.num_alternatives();
    for y in (0..n).rev().map(Alternative) {
        if !outcome.prob(y).is_positive() {
            continue;
        }
        for x in (0..n).rev().map(Alternative) {
            if x != y && pareto_dominates(profile, x, y)? {
                return Ok(Some(EfficiencyViolation {
                    dominated: y,
                    dominator: x,
                    probability: outcome.prob(y).clone(),
                    outcome,
                }));
            }
        }
    }
    Ok(None)
}
