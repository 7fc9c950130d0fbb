//! Serializable audit reports.
//!
//! Everything numeric is an exact rational string and every profile is in
//! profile-file syntax, so a report can be stored, diffed byte for byte and
//! turned back into a checkable [`Finding`].

use serde::{Deserialize, Serialize};

use super::{Domain, SearchBudget, Sweep};
use crate::algebra::{Alternative, AlternativeSet, Lottery, Profile, Scalar, SsbMatrix};
use crate::error::{Error, Result};
use crate::mechanisms::MechanismId;
use crate::profile_file::{format_order, parse_order, parse_profile, serialize_profile};
use crate::properties::{
    AbstentionKind, AbstentionWitness, CancellationViolation, CondorcetViolation, EfficiencyViolation, Finding,
    HomogeneityViolation, WelfareViolation,
};
use crate::solver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditOutcome {
    PassExhaustive,
    PassSampled,
    WitnessFound,
}

impl AuditOutcome {
    pub fn id(self) -> &'static str {
        match self {
            AuditOutcome::PassExhaustive => "pass-exhaustive",
            AuditOutcome::PassSampled => "pass-sampled",
            AuditOutcome::WitnessFound => "witness-found",
        }
    }
}

/// Which generator produced a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// A fixed starting profile checked before any search.
    Seed,
    Enumerated,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Location {
    pub stage: Stage,
    /// Position within the stage's index space.
    pub index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub alternatives: usize,
    pub max_voters: u64,
    pub domain: Domain,
    pub max_profiles: u64,
    pub seed: u64,
    /// Items taken from exhaustive enumerations (profiles, or matrices for
    /// `lemma1`).
    pub enumerated: u64,
    /// Items taken from the seeded random stream.
    pub sampled: u64,
}

/// Deterministic work counters. Wall-clock time is deliberately absent so
/// that reports are reproducible byte for byte.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditStats {
    pub profiles_checked: u64,
    /// Abstaining groups, cancelling pairs, or one per single-profile check.
    pub sub_checks: u64,
}

/// An auxiliary pass recorded alongside a campaign's main search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub mechanism: String,
    pub property: String,
    pub outcome: AuditOutcome,
    pub profiles: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub campaign: String,
    pub mechanism: String,
    pub property: String,
    pub scope: Scope,
    pub outcome: AuditOutcome,
    /// Whether the campaign is meant to surface a witness.
    pub expects_witness: bool,
    pub found_at: Option<Location>,
    pub witness: Option<WitnessRecord>,
    pub side_checks: Vec<SideCheck>,
    pub stats: AuditStats,
}

impl AuditReport {
    pub(crate) fn new(campaign: &str, mechanism: &str, property: &str, budget: &SearchBudget, expects: bool) -> Self {
        AuditReport {
            campaign: campaign.to_string(),
            mechanism: mechanism.to_string(),
            property: property.to_string(),
            scope: Scope {
                alternatives: budget.alternatives,
                max_voters: budget.max_voters,
                domain: budget.domain,
                max_profiles: budget.max_profiles,
                seed: budget.seed,
                enumerated: 0,
                sampled: 0,
            },
            outcome: AuditOutcome::PassExhaustive,
            expects_witness: expects,
            found_at: None,
            witness: None,
            side_checks: Vec::new(),
            stats: AuditStats::default(),
        }
    }

    pub(crate) fn record_sweep<O>(&mut self, stage: Stage, sweep: &Sweep<O>) {
        self.record(stage, sweep.checked, sweep.work);
    }

    pub(crate) fn record(&mut self, stage: Stage, checked: u64, work: u64) {
        match stage {
            Stage::Sampled => self.scope.sampled += checked,
            Stage::Enumerated | Stage::Seed => self.scope.enumerated += checked,
        }
        self.stats.profiles_checked += checked;
        self.stats.sub_checks += work;
        self.refresh();
    }

    pub(crate) fn set_witness(&mut self, at: Location, witness: WitnessRecord) {
        self.found_at = Some(at);
        self.witness = Some(witness);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.outcome = if self.witness.is_some() {
            AuditOutcome::WitnessFound
        } else if self.scope.sampled > 0 {
            AuditOutcome::PassSampled
        } else {
            AuditOutcome::PassExhaustive
        };
    }

    /// The campaign met its expectation: a witness exactly when one is
    /// expected, and every side check passed.
    pub fn succeeded(&self) -> bool {
        self.witness.is_some() == self.expects_witness
            && self.side_checks.iter().all(|c| c.outcome != AuditOutcome::WitnessFound)
    }
}

/// Typed audit result: the report plus the finding it was rendered from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit<T> {
    pub report: AuditReport,
    pub finding: Option<Finding<T>>,
}

/// A witness in exact text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessRecord {
    Abstention {
        mechanism: String,
        property: String,
        profile: String,
        abstainers: String,
        outcome_present: Vec<String>,
        outcome_absent: Vec<String>,
        deficit: String,
    },
    Welfare {
        mechanism: String,
        profile: String,
        outcome: Vec<String>,
        alternative: String,
        value: String,
    },
    Cancellation {
        mechanism: String,
        profile: String,
        order: String,
        before: Vec<String>,
        after: Vec<String>,
    },
    Homogeneity {
        mechanism: String,
        profile: String,
        k: u64,
        base: Vec<String>,
        replicated: Vec<String>,
    },
    Condorcet {
        mechanism: String,
        profile: String,
        winner: String,
        outcome: Vec<String>,
    },
    Efficiency {
        mechanism: String,
        profile: String,
        dominated: String,
        dominator: String,
        probability: String,
        outcome: Vec<String>,
    },
    /// A sign matrix on which the Condorcet-winner characterization fails.
    Lemma1 {
        matrix: Vec<Vec<String>>,
        unique_degenerate: Option<String>,
        strict_row: Option<String>,
    },
}

fn probs<T: Scalar>(l: &Lottery<T>) -> Vec<String> {
    l.probs().iter().map(ToString::to_string).collect()
}

fn label(alts: &AlternativeSet, x: Alternative) -> String {
    alts.label(x).to_string()
}

fn scalar<T: Scalar>(text: &str) -> Result<T> {
    T::parse(text).ok_or_else(|| Error::InvalidWitness(format!("not a rational: `{text}`")))
}

fn lottery<T: Scalar>(texts: &[String]) -> Result<Lottery<T>> {
    Lottery::new(texts.iter().map(|t| scalar(t)).collect::<Result<_>>()?)
}

fn alternative(alts: &AlternativeSet, text: &str) -> Result<Alternative> {
    alts.find(text).ok_or_else(|| Error::UnknownAlternative(text.to_string()))
}

impl WitnessRecord {
    pub fn from_finding<T: Scalar>(mechanism: &str, finding: &Finding<T>) -> Self {
        let mechanism = mechanism.to_string();
        let alts = finding.profile().alternatives();
        let profile = serialize_profile(finding.profile());
        match finding {
            Finding::Abstention(w) => WitnessRecord::Abstention {
                mechanism,
                property: finding.property().id().to_string(),
                profile,
                abstainers: serialize_profile(&w.abstainers),
                outcome_present: probs(&w.outcome_present),
                outcome_absent: probs(&w.outcome_absent),
                deficit: w.deficit.to_string(),
            },
            Finding::Welfare { violation: v, .. } => WitnessRecord::Welfare {
                mechanism,
                profile,
                outcome: probs(&v.outcome),
                alternative: label(alts, v.alternative),
                value: v.value.to_string(),
            },
            Finding::Cancellation { violation: v, .. } => WitnessRecord::Cancellation {
                mechanism,
                profile,
                order: format_order(alts, &v.order),
                before: probs(&v.before),
                after: probs(&v.after),
            },
            Finding::Homogeneity { violation: v, .. } => WitnessRecord::Homogeneity {
                mechanism,
                profile,
                k: v.k,
                base: probs(&v.base),
                replicated: probs(&v.replicated),
            },
            Finding::Condorcet { violation: v, .. } => WitnessRecord::Condorcet {
                mechanism,
                profile,
                winner: label(alts, v.winner),
                outcome: probs(&v.outcome),
            },
            Finding::Efficiency { violation: v, .. } => WitnessRecord::Efficiency {
                mechanism,
                profile,
                dominated: label(alts, v.dominated),
                dominator: label(alts, v.dominator),
                probability: v.probability.to_string(),
                outcome: probs(&v.outcome),
            },
        }
    }

    pub(crate) fn from_lemma1<T: Scalar>(m: &SsbMatrix<T>, check: &solver::Lemma1Check) -> Self {
        let alts = AlternativeSet::standard(m.size());
        WitnessRecord::Lemma1 {
            matrix: (0..m.size())
                .map(|x| m.row(x).iter().map(ToString::to_string).collect())
                .collect(),
            unique_degenerate: check.unique_degenerate.map(|x| label(&alts, x)),
            strict_row: check.strict_row.map(|x| label(&alts, x)),
        }
    }

    /// Mechanism the witness was found for; `None` for matrix witnesses.
    pub fn mechanism(&self) -> Option<&str> {
        match self {
            WitnessRecord::Abstention { mechanism, .. }
            | WitnessRecord::Welfare { mechanism, .. }
            | WitnessRecord::Cancellation { mechanism, .. }
            | WitnessRecord::Homogeneity { mechanism, .. }
            | WitnessRecord::Condorcet { mechanism, .. }
            | WitnessRecord::Efficiency { mechanism, .. } => Some(mechanism),
            WitnessRecord::Lemma1 { .. } => None,
        }
    }

    /// Parses the record back into a typed finding.
    pub fn to_finding<T: Scalar>(&self) -> Result<Finding<T>> {
        let parse = |text: &str| -> Result<Profile<T>> { parse_profile(text) };
        Ok(match self {
            WitnessRecord::Abstention {
                property,
                profile,
                abstainers,
                outcome_present,
                outcome_absent,
                deficit,
                ..
            } => {
                let kind = match property.as_str() {
                    "participation" => AbstentionKind::Participation,
                    "ordinal-participation" => AbstentionKind::OrdinalParticipation,
                    other => return Err(Error::UnknownProperty(other.to_string())),
                };
                Finding::Abstention(AbstentionWitness {
                    kind,
                    full_profile: parse(profile)?,
                    abstainers: parse(abstainers)?,
                    outcome_present: lottery(outcome_present)?,
                    outcome_absent: lottery(outcome_absent)?,
                    deficit: scalar(deficit)?,
                })
            }
            WitnessRecord::Welfare {
                profile,
                outcome,
                alternative: alt,
                value,
                ..
            } => {
                let profile = parse(profile)?;
                let violation = WelfareViolation {
                    outcome: lottery(outcome)?,
                    alternative: alternative(profile.alternatives(), alt)?,
                    value: scalar(value)?,
                };
                Finding::Welfare { profile, violation }
            }
            WitnessRecord::Cancellation {
                profile,
                order,
                before,
                after,
                ..
            } => {
                let profile = parse(profile)?;
                let violation = CancellationViolation {
                    order: parse_order(profile.alternatives(), order)?,
                    before: lottery(before)?,
                    after: lottery(after)?,
                };
                Finding::Cancellation { profile, violation }
            }
            WitnessRecord::Homogeneity {
                profile,
                k,
                base,
                replicated,
                ..
            } => Finding::Homogeneity {
                profile: parse(profile)?,
                violation: HomogeneityViolation {
                    k: *k,
                    base: lottery(base)?,
                    replicated: lottery(replicated)?,
                },
            },
            WitnessRecord::Condorcet {
                profile,
                winner,
                outcome,
                ..
            } => {
                let profile = parse(profile)?;
                let violation = CondorcetViolation {
                    winner: alternative(profile.alternatives(), winner)?,
                    outcome: lottery(outcome)?,
                };
                Finding::Condorcet { profile, violation }
            }
            WitnessRecord::Efficiency {
                profile,
                dominated,
                dominator,
                probability,
                outcome,
                ..
            } => {
                let profile = parse(profile)?;
                let violation = EfficiencyViolation {
                    dominated: alternative(profile.alternatives(), dominated)?,
                    dominator: alternative(profile.alternatives(), dominator)?,
                    probability: scalar(probability)?,
                    outcome: lottery(outcome)?,
                };
                Finding::Efficiency { profile, violation }
            }
            WitnessRecord::Lemma1 { .. } => {
                return Err(Error::InvalidWitness("matrix witnesses carry no profile".into()))
            }
        })
    }

    /// Re-checks the record from its text alone, using the named mechanism.
    pub fn verify<T: Scalar>(&self) -> Result<bool> {
        match self {
            WitnessRecord::Lemma1 {
                matrix,
                unique_degenerate,
                strict_row,
            } => {
                let rows = matrix
                    .iter()
                    .map(|row| row.iter().map(|t| scalar(t)).collect::<Result<Vec<T>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = SsbMatrix::new(rows)?;
                let check = solver::verify_lemma1(&m)?;
                let alts = AlternativeSet::standard(m.size());
                let names = |x: Option<Alternative>| x.map(|x| label(&alts, x));
                Ok(!check.holds()
                    && names(check.unique_degenerate) == *unique_degenerate
                    && names(check.strict_row) == *strict_row)
            }
            _ => {
                let mechanism: MechanismId = self.mechanism().unwrap_or_default().parse()?;
                self.to_finding::<T>()?.verify(&mechanism)
            }
        }
    }
}
