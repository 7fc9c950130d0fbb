//! Group abstention: participation and ordinal participation.
//!
//! A group is any non-empty strict sub-multiset `S` of the profile. Groups
//! are enumerated by their per-type removal counts `(r_1, .., r_k)`, in
//! lexicographic order over the profile's canonical type order, so the first
//! reported witness is well defined.

use serde::{Deserialize, Serialize};

use super::dominance::{sd_compare, SdResult};
use crate::algebra::{Lottery, Profile, Scalar, VoterType};
use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;

/// Iterator over `(abstainers, remaining)` for every non-empty strict
/// sub-multiset. Yields `prod(m_i + 1) - 2` items.
pub struct SubMultisets<'a, T> {
    profile: &'a Profile<T>,
    types: Vec<(&'a VoterType<T>, u64)>,
    removal: Vec<u64>,
    done: bool,
}

impl<'a, T: Scalar> SubMultisets<'a, T> {
    pub fn new(profile: &'a Profile<T>) -> Self {
        let types: Vec<_> = profile.types().collect();
        let removal = vec![0; types.len()];
        let mut it = SubMultisets {
            profile,
            types,
            removal,
            done: false,
        };
        it.advance(); // skip the empty group
        it
    }

    /// `prod(m_i + 1) - 2`.
    pub fn count(profile: &Profile<T>) -> u64 {
        profile.types().map(|(_, m)| m + 1).product::<u64>() - 2
    }

    fn advance(&mut self) {
        for i in (0..self.removal.len()).rev() {
            if self.removal[i] < self.types[i].1 {
                self.removal[i] += 1;
                return;
            }
            self.removal[i] = 0;
        }
        self.done = true;
    }

    fn is_full(&self) -> bool {
        self.removal.iter().zip(&self.types).all(|(r, (_, m))| r == m)
    }

    fn split(&self) -> (Profile<T>, Profile<T>) {
        let mut gone = Vec::new();
        let mut kept = Vec::new();
        for (&(ty, m), &r) in self.types.iter().zip(&self.removal) {
            if r > 0 {
                gone.push((ty.clone(), r));
            }
            if m > r {
                kept.push((ty.clone(), m - r));
            }
        }
        let alts = self.profile.alternatives().clone();
        (
            Profile::new(alts.clone(), gone).expect("group is non-empty"),
            Profile::new(alts, kept).expect("group is a strict subset"),
        )
    }
}

impl<T: Scalar> Iterator for SubMultisets<'_, T> {
    type Item = (Profile<T>, Profile<T>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.is_full() {
            return None;
        }
        let item = self.split();
        self.advance();
        Some(item)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbstentionKind {
    /// `sum_{i in S} phi_i(f(N), f(N \ S)) < 0`.
    Participation,
    /// Every member of `S` strictly SD-prefers `f(N \ S)` to `f(N)`.
    OrdinalParticipation,
}

impl AbstentionKind {
    pub fn inequality(self) -> &'static str {
        match self {
            AbstentionKind::Participation => "sum over S of phi_i(f(N), f(N minus S)) >= 0",
            AbstentionKind::OrdinalParticipation => {
                "not every member of S strictly SD-prefers f(N minus S) to f(N)"
            }
        }
    }
}

/// Evidence that a group gains by abstaining.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstentionWitness<T> {
    pub kind: AbstentionKind,
    pub full_profile: Profile<T>,
    pub abstainers: Profile<T>,
    pub outcome_present: Lottery<T>,
    pub outcome_absent: Lottery<T>,
    /// `sum_{i in S} phi_i(outcome_present, outcome_absent)`; negative.
    pub deficit: T,
}

impl<T: Scalar> AbstentionWitness<T> {
    /// Recomputes both outcomes and the deficit from scratch and checks
    /// that they match and still violate the named inequality.
    pub fn verify<M: Mechanism<T> + ?Sized>(&self, mechanism: &M) -> Result<bool> {
        if !self.full_profile.contains(&self.abstainers) || self.abstainers == self.full_profile {
            return Ok(false);
        }
        let remaining = self.full_profile.difference(&self.abstainers)?;
        let present = mechanism.outcome(&self.full_profile)?;
        let absent = mechanism.outcome(&remaining)?;
        if present != self.outcome_present || absent != self.outcome_absent {
            return Ok(false);
        }
        let deficit = self.abstainers.aggregate().value(&present, &absent)?;
        if deficit != self.deficit || !deficit.is_negative() {
            return Ok(false);
        }
        match self.kind {
            AbstentionKind::Participation => Ok(true),
            AbstentionKind::OrdinalParticipation => all_strictly_better(&self.abstainers, &absent, &present),
        }
    }
}

fn all_strictly_better<T: Scalar>(group: &Profile<T>, absent: &Lottery<T>, present: &Lottery<T>) -> Result<bool> {
    for (order, _) in group.orders()? {
        if sd_compare(order, absent, present)? != SdResult::StrictlyDominates {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of a full group-abstention scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstentionScan<T> {
    /// Groups examined before stopping (all of them when no witness).
    pub inspected: u64,
    pub witness: Option<AbstentionWitness<T>>,
}

pub fn scan_abstentions<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
    kind: AbstentionKind,
) -> Result<AbstentionScan<T>> {
    if kind == AbstentionKind::OrdinalParticipation && !profile.is_ordinal() {
        return Err(Error::NonOrdinalProfile);
    }
    let present = mechanism.outcome(profile)?;
    let mut inspected = 0;
    for (group, remaining) in SubMultisets::new(profile) {
        inspected += 1;
        let absent = mechanism.outcome(&remaining)?;
        let violated = match kind {
            AbstentionKind::Participation => {
                group.aggregate().value(&present, &absent)?.is_negative()
            }
            AbstentionKind::OrdinalParticipation => all_strictly_better(&group, &absent, &present)?,
        };
        if violated {
            let deficit = group.aggregate().value(&present, &absent)?;
            return Ok(AbstentionScan {
                inspected,
                witness: Some(AbstentionWitness {
                    kind,
                    full_profile: profile.clone(),
                    abstainers: group,
                    outcome_present: present,
                    outcome_absent: absent,
                    deficit,
                }),
            });
        }
    }
    Ok(AbstentionScan {
        inspected,
        witness: None,
    })
}

/// First group (in canonical order) whose abstention raises its summed SSB
/// welfare.
pub fn check_participation<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
) -> Result<Option<AbstentionWitness<T>>> {
    Ok(scan_abstentions(mechanism, profile, AbstentionKind::Participation)?.witness)
}

/// First group whose members are all strictly better off, by stochastic
/// dominance, after abstaining.
pub fn check_ordinal_participation<T: Scalar, M: Mechanism<T> + ?Sized>(
    mechanism: &M,
    profile: &Profile<T>,
) -> Result<Option<AbstentionWitness<T>>> {
    Ok(scan_abstentions(mechanism, profile, AbstentionKind::OrdinalParticipation)?.witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlternativeSet, WeakOrder};
    use crate::mechanisms::MechanismId;
    use crate::Rational;

    fn strict(alts: usize, orders: &[(u64, &[usize])]) -> Profile {
        Profile::from_orders(
            AlternativeSet::standard(alts),
            orders
                .iter()
                .map(|(c, r)| (*c, WeakOrder::strict(r).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn enumeration_count_and_order() {
        let p = strict(3, &[(2, &[0, 1, 2]), (1, &[2, 1, 0])]);
        let groups: Vec<_> = SubMultisets::new(&p).collect();
        assert_eq!(groups.len() as u64, SubMultisets::count(&p));
        assert_eq!(groups.len(), 3 * 2 - 2);
        // (0,1), (1,0), (1,1), (2,0)
        assert_eq!(groups[0].0.n(), 1);
        assert_eq!(groups[0].0.types().next().unwrap().0.as_order().unwrap().top(), &[2]);
        assert_eq!(groups[2].0.n(), 2);
        assert_eq!(groups[3].0.n(), 2);
        for (g, r) in &groups {
            assert_eq!(g.union(r).unwrap(), p);
        }
    }

    #[test]
    fn single_voter_is_vacuous() {
        let p = strict(3, &[(1, &[0, 1, 2])]);
        assert_eq!(SubMultisets::new(&p).count(), 0);
        for m in MechanismId::ALL {
            assert!(check_participation(&m, &p).unwrap().is_none());
            assert!(check_ordinal_participation(&m, &p).unwrap().is_none());
        }
    }

    #[test]
    fn ml_participates_on_small_profiles() {
        let p = strict(3, &[(2, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1])]);
        let scan = scan_abstentions(&MechanismId::Ml, &p, AbstentionKind::Participation).unwrap();
        assert_eq!(scan.inspected, 3 * 2 * 2 - 2);
        assert!(scan.witness.is_none());
    }

    #[test]
    fn tampered_witness_fails_verification() {
        // CU: {a>b>c, b>c>a, c>a>b} plus a voter who prefers the uniform lottery's alternatives
        let p = strict(3, &[(1, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1]), (1, &[1, 0, 2])]);
        let w = AbstentionWitness::<Rational> {
            kind: AbstentionKind::Participation,
            full_profile: p.clone(),
            abstainers: strict(3, &[(1, &[1, 0, 2])]),
            outcome_present: Lottery::uniform(3),
            outcome_absent: Lottery::uniform(3),
            deficit: Rational::from_int(-1),
        };
        assert!(!w.verify(&MechanismId::Cu).unwrap());
    }

    #[test]
    fn ordinal_check_rejects_matrices() {
        let p: Profile = Profile::new(
            AlternativeSet::standard(2),
            [(VoterType::Ssb(crate::SsbMatrix::zero(2)), 2)],
        )
        .unwrap();
        assert_eq!(
            check_ordinal_participation(&MechanismId::Ml, &p).unwrap_err(),
            Error::NonOrdinalProfile
        );
        assert!(check_participation(&MechanismId::Ml, &p).unwrap().is_none());
    }
}
