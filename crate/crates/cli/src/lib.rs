//! Commands behind the `maxlot` binary.
//!
//! Each command returns a [`Run`]: the machine-readable [`ReportRecord`], the
//! text rendering, and the process exit code. Exit codes:
//!
//! | code | meaning                                                     |
//! |------|-------------------------------------------------------------|
//! | 0    | pass (or a campaign met its expectation)                    |
//! | 1    | witness found (or a campaign missed its expectation)        |
//! | 2    | unreadable input: parse errors, bad flags                   |
//! | 3    | unknown mechanism, property or campaign id                  |
//! | 4    | property or mechanism does not apply to the profile         |

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use maxlot::algebra::{AlternativeSet, Lottery};
use maxlot::mechanisms::{MechanismId, Memoized};
use maxlot::profile_file::{parse_order, parse_profile};
use maxlot::properties::{check_property, CheckOptions, PropertyId};
use maxlot::search::{
    audit_theorem, find_counterexample_with, AuditReport, AuditStats, Campaign, Location, Scope, SearchBudget,
    SideCheck, WitnessRecord,
};
use maxlot::solver;
use maxlot::{Error, Mechanism, Profile};

/// One record per invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub command: String,
    pub mechanism: Option<String>,
    pub property: Option<String>,
    pub campaign: Option<String>,
    pub scope: Option<Scope>,
    pub outcome: String,
    pub solution: Option<Solution>,
    pub found_at: Option<Location>,
    pub witness: Option<WitnessRecord>,
    #[serde(default)]
    pub side_checks: Vec<SideCheck>,
    pub stats: Option<AuditStats>,
    pub tool_version: String,
    pub seed: Option<u64>,
}

/// Output of `solve`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub alternatives: Vec<String>,
    pub lottery: Vec<String>,
    pub condorcet_winner: Option<String>,
    /// `ml` only.
    pub unique: Option<bool>,
    /// `ml` only: `[min, max]` probability per alternative over all
    /// welfare-maximizing lotteries.
    pub ranges: Option<Vec<[String; 2]>>,
}

impl ReportRecord {
    fn new(command: &str) -> Self {
        ReportRecord {
            command: command.to_string(),
            mechanism: None,
            property: None,
            campaign: None,
            scope: None,
            outcome: String::new(),
            solution: None,
            found_at: None,
            witness: None,
            side_checks: Vec::new(),
            stats: None,
            tool_version: maxlot::VERSION.to_string(),
            seed: None,
        }
    }

    fn from_audit(command: &str, report: AuditReport) -> Self {
        let mut record = ReportRecord::new(command);
        record.mechanism = Some(report.mechanism);
        record.property = Some(report.property);
        if command == "audit" {
            record.campaign = Some(report.campaign);
        }
        record.seed = Some(report.scope.seed);
        record.scope = Some(report.scope);
        record.outcome = report.outcome.id().to_string();
        record.found_at = report.found_at;
        record.witness = report.witness;
        record.side_checks = report.side_checks;
        record.stats = Some(report.stats);
        record
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize") + "\n"
    }
}

/// A finished command.
#[derive(Clone, Debug)]
pub struct Run {
    pub record: ReportRecord,
    pub text: String,
    pub exit_code: i32,
}

/// A failed command: message and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub exit_code: i32,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let exit_code = match &error {
            Error::UnknownMechanism(_) | Error::UnknownProperty(_) | Error::UnknownCampaign(_) => 3,
            Error::NonOrdinalProfile | Error::DimensionMismatch { .. } => 4,
            _ => 2,
        };
        Failure {
            message: error.to_string(),
            exit_code,
        }
    }
}

pub type CmdResult = std::result::Result<Run, Failure>;

fn read_profile(text: &str) -> Result<Profile, Failure> {
    parse_profile(text).map_err(|e| Failure {
        message: e.to_string(),
        exit_code: 2,
    })
}

/// Support only, e.g. `a: 1/2, c: 1/2`.
fn support_text(alts: &AlternativeSet, lottery: &Lottery) -> String {
    lottery
        .support()
        .into_iter()
        .map(|x| format!("{}: {}", alts.label(x), lottery.prob(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn cmd_solve(profile_text: &str, mechanism: &str) -> CmdResult {
    let mechanism: MechanismId = mechanism.parse()?;
    let profile = read_profile(profile_text)?;
    let alts = profile.alternatives().clone();
    let lottery = mechanism.outcome(&profile)?;
    let aggregate = profile.aggregate();
    let winner = solver::condorcet_winner(&aggregate).map(|x| alts.label(x).to_string());

    let mut solution = Solution {
        alternatives: alts.labels().to_vec(),
        lottery: lottery.probs().iter().map(ToString::to_string).collect(),
        condorcet_winner: winner.clone(),
        unique: None,
        ranges: None,
    };
    let mut text = String::new();
    if mechanism == MechanismId::Ml {
        let analysis = solver::uniqueness_analysis(&aggregate)?;
        let tag = if analysis.unique { "unique" } else { "not unique" };
        let _ = write!(text, "{} ({tag})", lottery.display_with(&alts));
        if let Some(w) = &winner {
            let _ = write!(text, " (Condorcet winner: {w})");
        }
        let ranges: Vec<String> = analysis
            .ranges
            .iter()
            .zip(alts.labels())
            .map(|((lo, hi), l)| format!("{l} in [{lo}, {hi}]"))
            .collect();
        let _ = write!(text, "\nranges: {}\n", ranges.join(", "));
        solution.unique = Some(analysis.unique);
        solution.ranges = Some(analysis.ranges.iter().map(|(lo, hi)| [lo.to_string(), hi.to_string()]).collect());
    } else {
        let _ = write!(text, "{}", support_text(&alts, &lottery));
        if let Some(w) = &winner {
            let _ = write!(text, " (Condorcet winner: {w})");
        }
        text.push('\n');
    }

    let mut record = ReportRecord::new("solve");
    record.mechanism = Some(mechanism.id().to_string());
    record.outcome = "solved".to_string();
    record.solution = Some(solution);
    Ok(Run {
        record,
        text,
        exit_code: 0,
    })
}

#[derive(Clone, Debug, Default)]
pub struct CheckFlags {
    pub k_max: Option<u64>,
    /// Cancelling orders in ranking syntax; all weak orders when empty.
    pub orders: Vec<String>,
}

pub fn cmd_check(profile_text: &str, mechanism: &str, property: &str, flags: &CheckFlags) -> CmdResult {
    let mechanism: MechanismId = mechanism.parse()?;
    let property: PropertyId = property.parse()?;
    let profile = read_profile(profile_text)?;
    let mut options = CheckOptions::default();
    if let Some(k) = flags.k_max {
        options.k_max = k;
    }
    if !flags.orders.is_empty() {
        let orders = flags
            .orders
            .iter()
            .map(|o| parse_order(profile.alternatives(), o))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure {
                message: format!("--order: {e}"),
                exit_code: 2,
            })?;
        options.cancellation_orders = Some(orders);
    }
    let outcome = check_property(property, &mechanism, &profile, &options)?;

    let mut record = ReportRecord::new("check");
    record.mechanism = Some(mechanism.id().to_string());
    record.property = Some(property.id().to_string());
    record.stats = Some(AuditStats {
        profiles_checked: 1,
        sub_checks: outcome.work,
    });
    let (text, exit_code) = match &outcome.finding {
        None => {
            record.outcome = "pass-exhaustive".to_string();
            (
                format!("pass: {mechanism} satisfies {property} on this profile ({} sub-checks)\n", outcome.work),
                0,
            )
        }
        Some(finding) => {
            let witness = WitnessRecord::from_finding(mechanism.id(), finding);
            let text = format!(
                "witness-found: {mechanism} violates {property}\n{}",
                render_witness(&witness)
            );
            record.outcome = "witness-found".to_string();
            record.witness = Some(witness);
            (text, 1)
        }
    };
    Ok(Run {
        record,
        text,
        exit_code,
    })
}

pub fn cmd_search(mechanism: &str, property: &str, budget: &SearchBudget, k_max: Option<u64>) -> CmdResult {
    let mechanism: MechanismId = mechanism.parse()?;
    let property: PropertyId = property.parse()?;
    let mut options = CheckOptions::default();
    if let Some(k) = k_max {
        options.k_max = k;
    }
    let cached = Memoized::new(mechanism);
    let audit = find_counterexample_with::<maxlot::Rational, _>(&cached, property, budget, &options)?;
    let exit_code = i32::from(audit.report.witness.is_some());
    let text = render_report(&audit.report);
    Ok(Run {
        record: ReportRecord::from_audit("search", audit.report),
        text,
        exit_code,
    })
}

pub fn cmd_audit(campaign: &str, budget: &SearchBudget) -> CmdResult {
    let campaign: Campaign = campaign.parse()?;
    let audit = audit_theorem::<maxlot::Rational>(campaign, budget)?;
    let exit_code = if audit.report.succeeded() { 0 } else { 1 };
    let text = render_report(&audit.report);
    Ok(Run {
        record: ReportRecord::from_audit("audit", audit.report),
        text,
        exit_code,
    })
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("    {l}\n")).collect()
}

fn vector(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

pub fn render_witness(w: &WitnessRecord) -> String {
    let mut out = String::new();
    match w {
        WitnessRecord::Abstention {
            profile,
            abstainers,
            outcome_present,
            outcome_absent,
            deficit,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = write!(out, "  abstaining group:\n{}", indent(abstainers));
            let _ = writeln!(out, "  outcome with group:    {}", vector(outcome_present));
            let _ = writeln!(out, "  outcome without group: {}", vector(outcome_absent));
            let _ = writeln!(out, "  group welfare of staying vs abstaining: {deficit}");
        }
        WitnessRecord::Welfare {
            profile,
            outcome,
            alternative,
            value,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = writeln!(out, "  outcome: {}", vector(outcome));
            let _ = writeln!(out, "  phi(outcome, {alternative}) = {value}");
        }
        WitnessRecord::Cancellation {
            profile,
            order,
            before,
            after,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = writeln!(out, "  added pair: {order} and its reverse");
            let _ = writeln!(out, "  before: {}", vector(before));
            let _ = writeln!(out, "  after:  {}", vector(after));
        }
        WitnessRecord::Homogeneity {
            profile,
            k,
            base,
            replicated,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = writeln!(out, "  outcome:          {}", vector(base));
            let _ = writeln!(out, "  outcome x{k} copies: {}", vector(replicated));
        }
        WitnessRecord::Condorcet {
            profile,
            winner,
            outcome,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = writeln!(out, "  Condorcet winner: {winner}");
            let _ = writeln!(out, "  outcome: {}", vector(outcome));
        }
        WitnessRecord::Efficiency {
            profile,
            dominated,
            dominator,
            probability,
            outcome,
            ..
        } => {
            let _ = write!(out, "  profile:\n{}", indent(profile));
            let _ = writeln!(out, "  outcome: {}", vector(outcome));
            let _ = writeln!(out, "  {dominated} gets {probability} but is Pareto-dominated by {dominator}");
        }
        WitnessRecord::Lemma1 {
            matrix,
            unique_degenerate,
            strict_row,
        } => {
            let _ = writeln!(out, "  matrix:");
            for row in matrix {
                let _ = writeln!(out, "    {}", row.join(" "));
            }
            let _ = writeln!(out, "  unique degenerate maximal lottery: {unique_degenerate:?}");
            let _ = writeln!(out, "  strictly positive row: {strict_row:?}");
        }
    }
    out
}

pub fn render_report(r: &AuditReport) -> String {
    let mut out = String::new();
    let s = &r.scope;
    let _ = writeln!(out, "{}: {} / {}", r.campaign, r.mechanism, r.property);
    let _ = writeln!(
        out,
        "scope: {} alternatives, up to {} voters, {} orders, budget {}, seed {}",
        s.alternatives, s.max_voters, s.domain, s.max_profiles, s.seed
    );
    let _ = writeln!(out, "checked: {} enumerated, {} sampled, {} sub-checks", s.enumerated, s.sampled, r.stats.sub_checks);
    let _ = writeln!(out, "outcome: {}", r.outcome.id());
    if let Some(at) = &r.found_at {
        let stage = match at.stage {
            maxlot::search::Stage::Seed => "seed",
            maxlot::search::Stage::Enumerated => "enumerated",
            maxlot::search::Stage::Sampled => "sampled",
        };
        let _ = writeln!(out, "found at: {stage} #{}", at.index);
    }
    if let Some(w) = &r.witness {
        out.push_str(&render_witness(w));
    }
    for c in &r.side_checks {
        let _ = writeln!(out, "side check: {} / {}: {} ({} profiles)", c.mechanism, c.property, c.outcome.id(), c.profiles);
    }
    if r.campaign != "search" {
        let verdict = if r.succeeded() { "as expected" } else { "NOT as expected" };
        let wanted = if r.expects_witness { "a witness" } else { "no witness" };
        let _ = writeln!(out, "verdict: {verdict} (expects {wanted})");
    }
    out
}
