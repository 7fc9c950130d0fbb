//! Exact checkers for the axioms: welfare maximization, participation,
//! ordinal participation, cancellation, homogeneity, Condorcet-consistency
//! and ex post efficiency, plus the SD and PC lottery comparisons they use.

mod axioms;
mod dominance;
mod participation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use axioms::{
    check_cancellation, check_condorcet_consistency, check_ex_post_efficiency, check_homogeneity,
    check_welfare_maximizing, pareto_dominates, CancellationViolation, CondorcetViolation,
    EfficiencyViolation, HomogeneityViolation, WelfareViolation,
};
pub use dominance::{contour_differences, pc_compare, pc_value, sd_compare, SdResult};
pub use participation::{
    check_ordinal_participation, check_participation, scan_abstentions, AbstentionKind,
    AbstentionScan, AbstentionWitness, SubMultisets,
};

use crate::algebra::{Profile, Scalar, WeakOrder};
use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    WelfareMax,
    Participation,
    OrdinalParticipation,
    Cancellation,
    Homogeneity,
    Condorcet,
    ExPostEfficiency,
}

impl PropertyId {
    pub const ALL: [PropertyId; 7] = [
        PropertyId::WelfareMax,
        PropertyId::Participation,
        PropertyId::OrdinalParticipation,
        PropertyId::Cancellation,
        PropertyId::Homogeneity,
        PropertyId::Condorcet,
        PropertyId::ExPostEfficiency,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PropertyId::WelfareMax => "welfare-max",
            PropertyId::Participation => "participation",
            PropertyId::OrdinalParticipation => "ordinal-participation",
            PropertyId::Cancellation => "cancellation",
            PropertyId::Homogeneity => "homogeneity",
            PropertyId::Condorcet => "condorcet",
            PropertyId::ExPostEfficiency => "ex-post-efficiency",
        }
    }

    /// Properties that interpret voter types as weak orders.
    pub fn requires_ordinal(self) -> bool {
        matches!(
            self,
            PropertyId::OrdinalParticipation | PropertyId::ExPostEfficiency
        )
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Knobs for the properties that take extra arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest replication factor for homogeneity.
    pub k_max: u64,
    /// Cancelling pairs to try; `None` means every weak order.
    pub cancellation_orders: Option<Vec<WeakOrder>>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            k_max: 3,
            cancellation_orders: None,
        }
    }
}

/// A re-checkable violation of one property on one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding<T> {
    Abstention(AbstentionWitness<T>),
    Welfare {
        profile: Profile<T>,
        violation: WelfareViolation<T>,
    },
    Cancellation {
        profile: Profile<T>,
        violation: CancellationViolation<T>,
    },
    Homogeneity {
        profile: Profile<T>,
        violation: HomogeneityViolation<T>,
    },
    Condorcet {
        profile: Profile<T>,
        violation: CondorcetViolation<T>,
    },
    Efficiency {
        profile: Profile<T>,
        violation: EfficiencyViolation<T>,
    },
}

impl<T: Scalar> Finding<T> {
    pub fn property(&self) -> PropertyId {
        match self {
            Finding::Abstention(w) => match w.kind {
                AbstentionKind::Participation => PropertyId::Participation,
                AbstentionKind::OrdinalParticipation => PropertyId::OrdinalParticipation,
            },
            Finding::Welfare { .. } => PropertyId::WelfareMax,
            Finding::Cancellation { .. } => PropertyId::Cancellation,
            Finding::Homogeneity { .. } => PropertyId::Homogeneity,
            Finding::Condorcet { .. } => PropertyId::Condorcet,
            Finding::Efficiency { .. } => PropertyId::ExPostEfficiency,
        }
    }

    pub fn profile(&self) -> &Profile<T> {
        match self {
            Finding::Abstention(w) => &w.full_profile,
            Finding::Welfare { profile, .. }
            | Finding::Cancellation { profile, .. }
            | Finding::Homogeneity { profile, .. }
            | Finding::Condorcet { profile, .. }
            | Finding::Efficiency { profile, .. } => profile,
        }
    }

    /// Re-derives the violation with a fresh checker call.
    pub fn verify<M: Mechanism<T> + ?Sized>(&self, mechanism: &M) -> Result<bool> {
        Ok(match self {
            Finding::Abstention(w) => w.verify(mechanism)?,
            Finding::Welfare { profile, violation } => {
                check_welfare_maximizing(mechanism, profile)?.as_ref() == Some(violation)
                    && violation.value.is_negative()
            }
            Finding::Cancellation { profile, violation } => {
                check_cancellation(mechanism, profile, &violation.order)?.as_ref() == Some(violation)
            }
            Finding::Homogeneity { profile, violation } => {
                check_homogeneity(mechanism, profile, violation.k)?.as_ref() == Some(violation)
            }
            Finding::Condorcet { profile, violation } => {
                check_condorcet_consistency(mechanism, profile)?.as_ref() == Some(violation)
            }
            Finding::Efficiency { profile, violation } => {
                check_ex_post_efficiency(mechanism, profile)?.as_ref() == Some(violation)
                    && pareto_dominates(profile, violation.dominator, violation.dominated)?
                    && violation.probability.is_positive()
            }
        })
    }
}

/// Result of one property check on one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome<T> {
    pub finding: Option<Finding<T>>,
    /// Sub-checks performed: abstaining groups, cancelling pairs, or 1.
    pub work: u64,
}

pub fn check_property<T: Scalar, M: Mechanism<T> + ?Sized>(
    property: PropertyId,
    mechanism: &M,
    profile: &Profile<T>,
    options: &CheckOptions,
) -> Result<CheckOutcome<T>> {
    if property.requires_ordinal() && !profile.is_ordinal() {
        return Err(Error::NonOrdinalProfile);
    }
    let single = |finding: Option<Finding<T>>| CheckOutcome { finding, work: 1 };
    Ok(match property {
        PropertyId::Participation | PropertyId::OrdinalParticipation => {
            let kind = if property == PropertyId::Participation {
                AbstentionKind::Participation
            } else {
                AbstentionKind::OrdinalParticipation
            };
            let scan = scan_abstentions(mechanism, profile, kind)?;
            CheckOutcome {
                finding: scan.witness.map(Finding::Abstention),
                work: scan.inspected,
            }
        }
        PropertyId::WelfareMax => single(check_welfare_maximizing(mechanism, profile)?.map(|violation| {
            Finding::Welfare {
                profile: profile.clone(),
                violation,
            }
        })),
        PropertyId::Cancellation => {
            let all;
            let orders = match &options.cancellation_orders {
                Some(orders) => orders,
                None => {
                    all = WeakOrder::all_weak(profile.num_alternatives());
                    &all
                }
            };
            let mut work = 0;
            for order in orders {
                work += 1;
                if let Some(violation) = check_cancellation(mechanism, profile, order)? {
                    return Ok(CheckOutcome {
                        finding: Some(Finding::Cancellation {
                            profile: profile.clone(),
                            violation,
                        }),
                        work,
                    });
                }
            }
            CheckOutcome { finding: None, work }
        }
        PropertyId::Homogeneity => single(check_homogeneity(mechanism, profile, options.k_max)?.map(|violation| {
            Finding::Homogeneity {
                profile: profile.clone(),
                violation,
            }
        })),
        PropertyId::Condorcet => single(check_condorcet_consistency(mechanism, profile)?.map(|violation| {
            Finding::Condorcet {
                profile: profile.clone(),
                violation,
            }
        })),
        PropertyId::ExPostEfficiency => single(check_ex_post_efficiency(mechanism, profile)?.map(|violation| {
            Finding::Efficiency {
                profile: profile.clone(),
                violation,
            }
        })),
    })
}
