//! Named audit campaigns.
//!
//! | id                    | mechanism | looks for                                    | expects witness |
//! |-----------------------|-----------|----------------------------------------------|-----------------|
//! | `thm1`                | ml        | participation violation                      | no              |
//! | `cor1`                | ml        | ordinal-participation violation              | no              |
//! | `prop1`               | all four  | ordinal violation while participation holds  | no              |
//! | `lemma1`              | -         | sign matrix breaking the Condorcet/uniqueness equivalence | no |
//! | `cor2-contrapositive` | cu        | participation violation                      | yes             |
//! | `cor3-contrapositive` | cu        | participation violation                      | yes             |
//! | `moulin-contrast`     | copeland  | ordinal-participation violation              | yes             |
//! | `cu-inefficiency`     | cu        | ex post efficiency violation                 | yes             |
//!
//! `cor2-contrapositive` also records Condorcet-consistency and homogeneity
//! passes for cu, and `cor3-contrapositive` records cancellation and
//! homogeneity passes, on every profile of at most three voters (two for
//! large domains).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Audit, AuditOutcome, AuditReport, Location, SideCheck, Stage, WitnessRecord};
use super::{confirm, enumerate_up_to, sample, search_space, sweep, SearchBudget, Sweep};
use crate::algebra::{AlternativeSet, Profile, Scalar, SsbMatrix, WeakOrder};
use crate::error::{Error, Result};
use crate::mechanisms::{MechanismId, Memoized};
use crate::properties::{check_property, scan_abstentions, AbstentionKind, CheckOptions, Finding, PropertyId};
use crate::solver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Campaign {
    Thm1,
    Prop1,
    Cor1,
    Cor2Contrapositive,
    Cor3Contrapositive,
    Lemma1,
    MoulinContrast,
    CuInefficiency,
}

impl Campaign {
    pub const ALL: [Campaign; 8] = [
        Campaign::Thm1,
        Campaign::Prop1,
        Campaign::Cor1,
        Campaign::Cor2Contrapositive,
        Campaign::Cor3Contrapositive,
        Campaign::Lemma1,
        Campaign::MoulinContrast,
        Campaign::CuInefficiency,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Campaign::Thm1 => "thm1",
            Campaign::Prop1 => "prop1",
            Campaign::Cor1 => "cor1",
            Campaign::Cor2Contrapositive => "cor2-contrapositive",
            Campaign::Cor3Contrapositive => "cor3-contrapositive",
            Campaign::Lemma1 => "lemma1",
            Campaign::MoulinContrast => "moulin-contrast",
            Campaign::CuInefficiency => "cu-inefficiency",
        }
    }

    pub fn expects_witness(self) -> bool {
        matches!(
            self,
            Campaign::Cor2Contrapositive
                | Campaign::Cor3Contrapositive
                | Campaign::MoulinContrast
                | Campaign::CuInefficiency
        )
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownCampaign(s.to_string()))
    }
}

const MEMO_CAPACITY: usize = 1 << 15;
const SIDE_SCOPE_LIMIT: u64 = 10_000;

pub fn audit_theorem<T: Scalar>(campaign: Campaign, budget: &SearchBudget) -> Result<Audit<T>> {
    budget.validate()?;
    match campaign {
        Campaign::Thm1 => property_search(campaign, MechanismId::Ml, PropertyId::Participation, budget),
        Campaign::Cor1 => property_search(campaign, MechanismId::Ml, PropertyId::OrdinalParticipation, budget),
        Campaign::Prop1 => prop1(budget),
        Campaign::Lemma1 => lemma1(budget),
        Campaign::Cor2Contrapositive => {
            let mut audit = property_search(campaign, MechanismId::Cu, PropertyId::Participation, budget)?;
            for property in [PropertyId::Condorcet, PropertyId::Homogeneity] {
                audit.report.side_checks.push(side_check::<T>(MechanismId::Cu, property, budget)?);
            }
            Ok(audit)
        }
        Campaign::Cor3Contrapositive => {
            let mut audit = property_search(campaign, MechanismId::Cu, PropertyId::Participation, budget)?;
            for property in [PropertyId::Cancellation, PropertyId::Homogeneity] {
                audit.report.side_checks.push(side_check::<T>(MechanismId::Cu, property, budget)?);
            }
            Ok(audit)
        }
        Campaign::MoulinContrast => moulin(budget),
        Campaign::CuInefficiency => cu_inefficiency(budget),
    }
}

fn memo<T: Scalar>(mechanism: MechanismId) -> Memoized<MechanismId, T> {
    Memoized::with_capacity(mechanism, MEMO_CAPACITY)
}

/// Records a sweep and, on a hit, re-verifies the finding against the bare
/// (uncached) mechanism before attaching it.
fn conclude<T: Scalar>(
    report: &mut AuditReport,
    mechanism: MechanismId,
    stage: Stage,
    sweep: Sweep<Finding<T>>,
) -> Result<Option<Finding<T>>> {
    report.record_sweep(stage, &sweep);
    let Some((index, finding)) = sweep.hit else {
        return Ok(None);
    };
    confirm(&finding, &mechanism)?;
    report.set_witness(Location { stage, index }, WitnessRecord::from_finding(mechanism.id(), &finding));
    Ok(Some(finding))
}

fn property_search<T: Scalar>(
    campaign: Campaign,
    mechanism: MechanismId,
    property: PropertyId,
    budget: &SearchBudget,
) -> Result<Audit<T>> {
    let cached = memo(mechanism);
    let options = CheckOptions::default();
    let (stage, sweep) = search_space(budget, |p| {
        let outcome = check_property(property, &cached, p, &options)?;
        Ok((outcome.work, outcome.finding))
    })?;
    let mut report = AuditReport::new(campaign.id(), mechanism.id(), property.id(), budget, campaign.expects_witness());
    let finding = conclude(&mut report, mechanism, stage, sweep)?;
    Ok(Audit { report, finding })
}

/// Largest electorate `<= 3` whose cumulative profile count stays within
/// the side-check limit (at least 1).
fn side_scope(budget: &SearchBudget) -> u64 {
    let types = budget.domain.orders(budget.alternatives).len() as u64;
    let mut total = 0u64;
    let mut best = 1;
    for n in 1..=budget.max_voters.min(3) {
        total = total.saturating_add(super::multiset_count(types, n));
        if total > SIDE_SCOPE_LIMIT {
            break;
        }
        best = n;
    }
    best
}

fn side_check<T: Scalar>(mechanism: MechanismId, property: PropertyId, budget: &SearchBudget) -> Result<SideCheck> {
    let cached = memo::<T>(mechanism);
    let options = CheckOptions {
        k_max: 3,
        cancellation_orders: Some(budget.domain.orders(budget.alternatives)),
    };
    let profiles = enumerate_up_to::<T>(budget.alternatives, side_scope(budget), budget.domain);
    let result = sweep(profiles, budget.parallel, |p| {
        let outcome = check_property(property, &cached, &p, &options)?;
        Ok((outcome.work, outcome.finding))
    })?;
    if let Some((_, finding)) = &result.hit {
        confirm(finding, &mechanism)?;
    }
    Ok(SideCheck {
        mechanism: mechanism.id().to_string(),
        property: property.id().to_string(),
        outcome: if result.hit.is_some() {
            AuditOutcome::WitnessFound
        } else {
            AuditOutcome::PassExhaustive
        },
        profiles: result.checked,
    })
}

/// Ordinal participation may only fail where participation fails too.
fn prop1<T: Scalar>(budget: &SearchBudget) -> Result<Audit<T>> {
    let mut report = AuditReport::new(
        Campaign::Prop1.id(),
        "all",
        "participation => ordinal-participation",
        budget,
        false,
    );
    for mechanism in MechanismId::ALL {
        let cached = memo(mechanism);
        let (stage, sweep) = search_space(budget, |p: &Profile<T>| {
            let ordinal = scan_abstentions(&cached, p, AbstentionKind::OrdinalParticipation)?;
            let Some(witness) = ordinal.witness else {
                return Ok((ordinal.inspected, None));
            };
            let cardinal = scan_abstentions(&cached, p, AbstentionKind::Participation)?;
            let work = ordinal.inspected + cardinal.inspected;
            Ok((work, cardinal.witness.is_none().then_some(Finding::Abstention(witness))))
        })?;
        let checked = sweep.checked;
        let hit = conclude(&mut report, mechanism, stage, sweep)?;
        report.side_checks.push(SideCheck {
            mechanism: mechanism.id().to_string(),
            property: report.property.clone(),
            outcome: if hit.is_some() {
                AuditOutcome::WitnessFound
            } else if stage == Stage::Sampled {
                AuditOutcome::PassSampled
            } else {
                AuditOutcome::PassExhaustive
            },
            profiles: checked,
        });
        if hit.is_some() {
            return Ok(Audit { report, finding: hit });
        }
    }
    Ok(Audit { report, finding: None })
}

/// Sign matrix number `index`: base-3 digits over the pairs `x < y` in
/// lexicographic order, digit `d` giving entry `d - 1`.
pub(crate) fn sign_matrix<T: Scalar>(size: usize, mut index: u64) -> SsbMatrix<T> {
    let mut rows = vec![vec![T::zero(); size]; size];
    let mut pairs = Vec::new();
    for x in 0..size {
        for y in x + 1..size {
            pairs.push((x, y));
        }
    }
    for &(x, y) in pairs.iter().rev() {
        let sign = T::from_int((index % 3) as i64 - 1);
        index /= 3;
        rows[y][x] = -sign.clone();
        rows[x][y] = sign;
    }
    SsbMatrix::new(rows).expect("skew-symmetric by construction")
}

fn lemma1<T: Scalar>(budget: &SearchBudget) -> Result<Audit<T>> {
    let m = budget.alternatives;
    let pairs = (m * (m - 1) / 2) as u32;
    let total = 3u64.checked_pow(pairs).unwrap_or(u64::MAX);
    let exhaustive = total <= budget.max_profiles;
    let indices: Box<dyn Iterator<Item = u64>> = if exhaustive {
        Box::new(0..total)
    } else {
        Box::new(0..budget.max_profiles)
    };
    let seed = budget.seed;
    let result = sweep(indices, budget.parallel, |i| {
        let index = if exhaustive {
            i
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            rng.gen_range(0..total)
        };
        let matrix = sign_matrix::<T>(m, index);
        let check = solver::verify_lemma1(&matrix)?;
        Ok((1, (!check.holds()).then_some((matrix, check))))
    })?;
    let stage = if exhaustive { Stage::Enumerated } else { Stage::Sampled };
    let mut report = AuditReport::new(Campaign::Lemma1.id(), "ml", "condorcet-uniqueness", budget, false);
    report.record_sweep(stage, &result);
    if let Some((index, (matrix, check))) = &result.hit {
        report.set_witness(Location { stage, index: *index }, WitnessRecord::from_lemma1(matrix, check));
    }
    Ok(Audit { report, finding: None })
}

/// Exhaustive electorates while they fit in half the budget, then seeded
/// draws for the rest.
fn moulin<T: Scalar>(budget: &SearchBudget) -> Result<Audit<T>> {
    let mechanism = MechanismId::Copeland;
    let property = PropertyId::OrdinalParticipation;
    let cached = memo(mechanism);
    let options = CheckOptions::default();
    let check = |p: &Profile<T>| {
        let outcome = check_property(property, &cached, p, &options)?;
        Ok((outcome.work, outcome.finding))
    };
    let mut report = AuditReport::new(
        Campaign::MoulinContrast.id(),
        mechanism.id(),
        property.id(),
        budget,
        true,
    );
    let types = budget.domain.orders(budget.alternatives).len() as u64;
    let mut layers = 0;
    let mut enumerated = 0u64;
    for n in 1..=budget.max_voters {
        let next = enumerated.saturating_add(super::multiset_count(types, n));
        if next > budget.max_profiles / 2 {
            break;
        }
        enumerated = next;
        layers = n;
    }
    if layers > 0 {
        let profiles = enumerate_up_to::<T>(budget.alternatives, layers, budget.domain);
        let result = sweep(profiles, budget.parallel, |p| check(&p))?;
        if let Some(finding) = conclude(&mut report, mechanism, Stage::Enumerated, result)? {
            return Ok(Audit {
                report,
                finding: Some(finding),
            });
        }
    }
    let remaining = budget.max_profiles - enumerated;
    if layers < budget.max_voters && remaining > 0 {
        let result = sample(budget, 0, remaining, &check)?;
        let finding = conclude(&mut report, mechanism, Stage::Sampled, result)?;
        return Ok(Audit { report, finding });
    }
    Ok(Audit { report, finding: None })
}

/// A Condorcet cycle on the first three alternatives with every other
/// alternative ranked last, in header order, by all three voters.
pub fn inefficiency_seed<T: Scalar>(alts: usize) -> Option<Profile<T>> {
    if alts < 4 {
        return None;
    }
    let rest: Vec<usize> = (3..alts).collect();
    let orders = [[0, 1, 2], [1, 2, 0], [2, 0, 1]].map(|head| {
        let ranking: Vec<usize> = head.iter().copied().chain(rest.iter().copied()).collect();
        (1, WeakOrder::strict(&ranking).expect("a permutation"))
    });
    Some(Profile::from_orders(AlternativeSet::standard(alts), orders).expect("three voters"))
}

fn cu_inefficiency<T: Scalar>(budget: &SearchBudget) -> Result<Audit<T>> {
    let mechanism = MechanismId::Cu;
    let property = PropertyId::ExPostEfficiency;
    let options = CheckOptions::default();
    let mut report = AuditReport::new(
        Campaign::CuInefficiency.id(),
        mechanism.id(),
        property.id(),
        budget,
        true,
    );
    if let Some(seed) = inefficiency_seed::<T>(budget.alternatives) {
        let outcome = check_property(property, &mechanism, &seed, &options)?;
        let result = Sweep {
            checked: 1,
            work: outcome.work,
            hit: outcome.finding.map(|f| (0, f)),
        };
        if let Some(finding) = conclude(&mut report, mechanism, Stage::Seed, result)? {
            return Ok(Audit {
                report,
                finding: Some(finding),
            });
        }
    }
    let cached = memo(mechanism);
    let (stage, result) = search_space(budget, |p| {
        let outcome = check_property(property, &cached, p, &options)?;
        Ok((outcome.work, outcome.finding))
    })?;
    let finding = conclude(&mut report, mechanism, stage, result)?;
    Ok(Audit { report, finding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Domain;
    use crate::Rational;

    fn budget(alts: usize, voters: u64, max: u64) -> SearchBudget {
        SearchBudget::new(alts, voters, Domain::Strict, max, 42).unwrap()
    }

    #[test]
    fn campaign_ids_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.id().parse::<Campaign>().unwrap(), c);
        }
        assert!(matches!("thm9".parse::<Campaign>(), Err(Error::UnknownCampaign(_))));
    }

    #[test]
    fn sign_matrices_are_distinct() {
        let all: std::collections::BTreeSet<String> =
            (0..27).map(|i| sign_matrix::<Rational>(3, i).to_string()).collect();
        assert_eq!(all.len(), 27);
    }

    #[test]
    fn lemma1_small() {
        let audit = audit_theorem::<Rational>(Campaign::Lemma1, &budget(3, 1, 1000)).unwrap();
        assert_eq!(audit.report.outcome, AuditOutcome::PassExhaustive);
        assert_eq!(audit.report.scope.enumerated, 27);
        assert!(audit.report.succeeded());
    }

    #[test]
    fn seed_is_the_four_alternative_example() {
        let audit = audit_theorem::<Rational>(Campaign::CuInefficiency, &budget(4, 3, 100)).unwrap();
        assert_eq!(audit.report.found_at, Some(Location { stage: Stage::Seed, index: 0 }));
        match audit.report.witness.unwrap() {
            WitnessRecord::Efficiency {
                dominated,
                dominator,
                probability,
                ..
            } => assert_eq!((dominated.as_str(), dominator.as_str(), probability.as_str()), ("d", "c", "1/4")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cu_inefficiency_without_seed() {
        let audit = audit_theorem::<Rational>(Campaign::CuInefficiency, &budget(3, 2, 1000)).unwrap();
        assert_eq!(audit.report.outcome, AuditOutcome::WitnessFound);
        assert_eq!(audit.report.found_at.unwrap().stage, Stage::Enumerated);
        assert!(audit.report.witness.unwrap().verify::<Rational>().unwrap());
    }
}
