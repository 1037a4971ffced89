//! Instance-level checkers for the comparative claims about stable outcomes
//! and the outcomes of the procedure.
//!
//! Every checker returns a [`PropertyReport`]. A report that fails carries
//! witnesses, and each witness can be replayed with [`Witness::replays`].
//! Checkers whose hypotheses are missing refuse to run and return
//! [`Error::PreconditionViolated`] instead of reporting on them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    enumerate_outcomes, require_feasible, AgentId, Allocation, EnumerationBudget, Instance, Outcome, Pair, Partition,
};
use crate::money::Money;
use crate::stability::{enumerate_core, is_stable_unchecked, pair_blocks};

/// Sweeps stop collecting witnesses past this many.
const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two contracts in one menu that break the pairwise efficiency
    /// biconditional.
    ContractPair { firm: AgentId, worker: AgentId, first: Allocation, second: Allocation },
    /// A payoff the firm can earn with two different workers.
    SharedYield { firm: AgentId, workers: [AgentId; 2], amount: Money },
    /// An outcome every firm strictly prefers to `under_test`.
    DominatingOutcome { outcome: Outcome, under_test: Outcome },
    /// A stable outcome paying `firm` more than the outcome under test.
    BetterStableOutcome { firm: AgentId, ours: Money, theirs: Money, outcome: Outcome },
    /// `a` and `b` are partners in `first`, `a` does strictly better in
    /// `first` than in `second`, and `b` does strictly better in `first` too.
    PartnersBothWorse { a: AgentId, b: AgentId, first: Outcome, second: Outcome },
    /// `b` is the stable partner of `a`, and does strictly better in the
    /// stable outcome than in `other`.
    PartnerGains { a: AgentId, b: AgentId, other: Outcome, stable: Outcome },
    /// Every firm does at least as well in `second` as in `first`, yet
    /// `worker` does strictly better in `second`.
    WorkerGainsToo { worker: AgentId, first: Outcome, second: Outcome },
    /// Two stable outcomes that employ different sets of agents on `side`.
    EmploymentDiffers { side: &'static str, first: Outcome, second: Outcome },
}

impl Witness {
    /// Re-derives the violation from the raw data.
    pub fn replays(&self, inst: &Instance) -> bool {
        match self {
            Witness::ContractPair { firm, worker, first, second } => {
                let menu_ok = Pair::new(*firm, *worker)
                    .and_then(|p| inst.menu(p))
                    .is_some_and(|m| m.contracts().contains(first) && m.contracts().contains(second));
                let (xf, yf) = (first.payoff(*firm).unwrap(), second.payoff(*firm).unwrap());
                let (xw, yw) = (first.payoff(*worker).unwrap(), second.payoff(*worker).unwrap());
                menu_ok && ((xf > yf) != (xw < yw) || (yf > xf) != (yw < xw))
            }
            Witness::SharedYield { firm, workers, amount } => {
                workers[0] != workers[1]
                    && workers.iter().all(|&w| {
                        Pair::new(*firm, w)
                            .and_then(|p| inst.menu(p))
                            .is_some_and(|m| m.contracts().iter().any(|c| c.payoff(*firm) == Some(*amount)))
                    })
            }
            Witness::DominatingOutcome { outcome, under_test } => {
                let Some(p) = inst.partition() else { return false };
                crate::model::outcome_is_feasible(inst, outcome) && dominates_for_firms(p, outcome, under_test)
            }
            Witness::BetterStableOutcome { firm, ours, theirs, outcome } => {
                is_stable_unchecked(inst, outcome) && outcome.payoff(*firm) == *theirs && theirs > ours
            }
            Witness::PartnersBothWorse { a, b, first, second } => {
                first.mate(*a) == Some(*b)
                    && first.payoff(*a) > second.payoff(*a)
                    && first.payoff(*b) > second.payoff(*b)
            }
            Witness::PartnerGains { a, b, other, stable } => {
                stable.mate(*a) == Some(*b) && stable.payoff(*b) > other.payoff(*b)
            }
            Witness::WorkerGainsToo { worker, first, second } => {
                let Some(p) = inst.partition() else { return false };
                p.firms().iter().all(|&f| second.payoff(f) >= first.payoff(f))
                    && second.payoff(*worker) > first.payoff(*worker)
            }
            Witness::EmploymentDiffers { side, first, second } => {
                let Some(p) = inst.partition() else { return false };
                let group = if *side == "firms" { p.firms() } else { p.workers() };
                employed(group, first) != employed(group, second)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    /// Verdict of the strict reading, where one is reported alongside.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_form_holds: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(property: &str) -> PropertyReport {
        PropertyReport {
            property: property.to_string(),
            holds: true,
            witnesses: Vec::new(),
            strict_form_holds: None,
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, w: Witness) {
        self.holds = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn absorb(&mut self, other: PropertyReport) {
        if !other.holds {
            self.holds = false;
        }
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        if let Some(s) = other.strict_form_holds {
            self.strict_form_holds = Some(self.strict_form_holds.unwrap_or(true) && s);
        }
    }
}

fn employed(group: &BTreeSet<AgentId>, o: &Outcome) -> BTreeSet<AgentId> {
    group.iter().copied().filter(|&a| o.payoff(a).is_positive()).collect()
}

fn cross_menus<'a>(
    inst: &'a Instance,
    partition: &'a Partition,
) -> impl Iterator<Item = (AgentId, AgentId, &'a [Allocation])> + 'a {
    inst.menus().map(|m| {
        let (f, w) = partition.orient(m.pair()).expect("validated two-sided menu");
        (f, w, m.contracts())
    })
}

/// Within every menu, the firm's share rises exactly when the worker's falls.
pub fn is_pairwise_efficient(inst: &Instance) -> Result<PropertyReport> {
    let partition = inst.require_two_sided()?;
    let mut report = PropertyReport::new("pairwise-efficiency");
    for (f, w, contracts) in cross_menus(inst, partition) {
        for (i, x) in contracts.iter().enumerate() {
            for y in &contracts[i + 1..] {
                let (xf, yf) = (x.payoff(f).unwrap(), y.payoff(f).unwrap());
                let (xw, yw) = (x.payoff(w).unwrap(), y.payoff(w).unwrap());
                if (xf > yf) != (xw < yw) || (yf > xf) != (yw < xw) {
                    report.fail(Witness::ContractPair { firm: f, worker: w, first: *x, second: *y });
                }
            }
        }
    }
    Ok(report)
}

/// No firm can earn the same payoff with two different workers.
pub fn has_disjoint_yields(inst: &Instance) -> Result<PropertyReport> {
    let partition = inst.require_two_sided()?;
    let mut report = PropertyReport::new("disjoint-yields");
    for &f in partition.firms() {
        let yields: Vec<(AgentId, BTreeSet<Money>)> = partition
            .workers()
            .iter()
            .filter_map(|&w| {
                let m = inst.menu(Pair::new(f, w)?)?;
                Some((w, m.contracts().iter().map(|c| c.payoff(f).unwrap()).collect()))
            })
            .collect();
        for (i, (w1, y1)) in yields.iter().enumerate() {
            for (w2, y2) in &yields[i + 1..] {
                for &amount in y1.intersection(y2) {
                    report.fail(Witness::SharedYield { firm: f, workers: [*w1, *w2], amount });
                }
            }
        }
    }
    Ok(report)
}

fn dominates_for_firms(partition: &Partition, better: &Outcome, base: &Outcome) -> bool {
    partition.firms().iter().all(|&f| better.payoff(f) > base.payoff(f))
}

/// No outcome gives every firm strictly more than `o`.
pub fn is_weakly_pareto_optimal_for_firms(
    inst: &Instance,
    o: &Outcome,
    budget: EnumerationBudget,
) -> Result<PropertyReport> {
    let partition = inst.require_two_sided()?;
    require_feasible(inst, o)?;
    let mut report = PropertyReport::new("prop1");
    if let Some(better) =
        enumerate_outcomes(inst, budget)?.into_iter().find(|alt| dominates_for_firms(partition, alt, o))
    {
        report.fail(Witness::DominatingOutcome { outcome: better, under_test: o.clone() });
    }
    Ok(report)
}

/// Like [`is_weakly_pareto_optimal_for_firms`], but only outcomes in which
/// every matched agent earns a strictly positive share may dominate.
///
/// Outcomes where a matched worker earns zero can pay a firm more than any
/// proposal a worker would ever accept, so they escape the procedure.
pub fn is_weakly_pareto_optimal_among_positive_outcomes(
    inst: &Instance,
    o: &Outcome,
    budget: EnumerationBudget,
) -> Result<PropertyReport> {
    let partition = inst.require_two_sided()?;
    require_feasible(inst, o)?;
    let mut report = PropertyReport::new("prop1-positive");
    let positive =
        |alt: &Outcome| alt.matching().pairs().iter().all(|p| p.members().iter().all(|&a| alt.payoff(a).is_positive()));
    if let Some(better) = enumerate_outcomes(inst, budget)?
        .into_iter()
        .find(|alt| positive(alt) && dominates_for_firms(partition, alt, o))
    {
        report.fail(Witness::DominatingOutcome { outcome: better, under_test: o.clone() });
    }
    Ok(report)
}

/// Every firm does at least as well under `o` as under every stable outcome.
pub fn check_firm_optimality(inst: &Instance, o: &Outcome, budget: EnumerationBudget) -> Result<PropertyReport> {
    let partition = inst.require_two_sided()?;
    require_feasible(inst, o)?;
    let mut report = PropertyReport::new("firm-optimality");
    for stable in enumerate_core(inst, budget)? {
        for &f in partition.firms() {
            if stable.payoff(f) > o.payoff(f) {
                report.fail(Witness::BetterStableOutcome {
                    firm: f,
                    ours: o.payoff(f),
                    theirs: stable.payoff(f),
                    outcome: stable.clone(),
                });
            }
        }
    }
    Ok(report)
}

fn require_stable(inst: &Instance, o: &Outcome, label: &str) -> Result<()> {
    require_feasible(inst, o)?;
    if is_stable_unchecked(inst, o) {
        Ok(())
    } else {
        Err(Error::UnstableInput(format!("{label} admits a blocking pair")))
    }
}

/// For partners `a`, `b` under `o1`: if `a` does strictly better in `o1` than
/// in `o2`, then `b` does at least as well in `o2` as in `o1`.
///
/// The verdict is the weak (`>=`) form. Whether `b` in fact does strictly
/// better is reported separately in `strict_form_holds`.
pub fn check_lemma1(inst: &Instance, o1: &Outcome, o2: &Outcome) -> Result<PropertyReport> {
    require_stable(inst, o1, "first outcome")?;
    require_stable(inst, o2, "second outcome")?;
    let mut report = PropertyReport::new("lemma1");
    let mut strict = true;
    for pair in o1.matching().pairs() {
        for (a, b) in [(pair.lo(), pair.hi()), (pair.hi(), pair.lo())] {
            if o1.payoff(a) > o2.payoff(a) {
                if o1.payoff(b) > o2.payoff(b) {
                    report.fail(Witness::PartnersBothWorse { a, b, first: o1.clone(), second: o2.clone() });
                }
                if o2.payoff(b) <= o1.payoff(b) {
                    strict = false;
                }
            }
        }
    }
    report.strict_form_holds = Some(strict);
    Ok(report)
}

/// Given a stable `o_stable` and a set `group` of agents who all do strictly
/// better there than in `o`, none of whom blocks `o` together with their
/// stable partner: every such partner does at least as well in `o`.
pub fn check_lemma2(
    inst: &Instance,
    o: &Outcome,
    o_stable: &Outcome,
    group: &BTreeSet<AgentId>,
) -> Result<PropertyReport> {
    require_feasible(inst, o)?;
    require_feasible(inst, o_stable)?;
    if !is_stable_unchecked(inst, o_stable) {
        return Err(Error::PreconditionViolated("the reference outcome is not stable".into()));
    }
    for &a in group {
        if !inst.agents().contains(&a) {
            return Err(Error::UnknownAgent(a));
        }
        if o_stable.payoff(a) <= o.payoff(a) {
            return Err(Error::PreconditionViolated(format!(
                "agent {a} does not strictly prefer the stable outcome ({} vs {})",
                o_stable.payoff(a),
                o.payoff(a)
            )));
        }
        let b = o_stable.mate(a).expect("agent in outcome");
        if let Some(pair) = Pair::new(a, b) {
            if pair_blocks(inst, o, pair) {
                return Err(Error::PreconditionViolated(format!(
                    "agent {a} and stable partner {b} block the other outcome"
                )));
            }
        }
    }
    let mut report = PropertyReport::new("lemma2");
    for &a in group {
        let b = o_stable.mate(a).expect("agent in outcome");
        if o_stable.payoff(b) > o.payoff(b) {
            report.fail(Witness::PartnerGains { a, b, other: o.clone(), stable: o_stable.clone() });
        }
    }
    Ok(report)
}

fn require_prop2_hypotheses(inst: &Instance) -> Result<()> {
    let pe = is_pairwise_efficient(inst)?;
    let dy = has_disjoint_yields(inst)?;
    match (pe.holds, dy.holds) {
        (true, true) => Ok(()),
        (false, _) => Err(Error::PreconditionViolated("instance is not pairwise efficient".into())),
        (_, false) => Err(Error::PreconditionViolated("instance does not have disjoint yields".into())),
    }
}

/// Across all stable outcomes, the set of firms with a positive payoff and the
/// set of workers with a positive payoff never change.
pub fn check_observation(inst: &Instance, budget: EnumerationBudget) -> Result<PropertyReport> {
    require_prop2_hypotheses(inst)?;
    let partition = inst.require_two_sided()?;
    let mut report = PropertyReport::new("observation");
    let core = enumerate_core(inst, budget)?;
    if let Some((first, rest)) = core.split_first() {
        for o in rest {
            for (side, group) in [("firms", partition.firms()), ("workers", partition.workers())] {
                if employed(group, first) != employed(group, o) {
                    report.fail(Witness::EmploymentDiffers { side, first: first.clone(), second: o.clone() });
                }
            }
        }
    }
    Ok(report)
}

/// For stable `o1`, `o2`: if every firm does at least as well in one as in
/// the other, every worker does at least as well in the other. Checked in
/// both directions.
pub fn check_note_after_prop1(inst: &Instance, o1: &Outcome, o2: &Outcome) -> Result<PropertyReport> {
    require_prop2_hypotheses(inst)?;
    require_stable(inst, o1, "first outcome")?;
    require_stable(inst, o2, "second outcome")?;
    let partition = inst.require_two_sided()?;
    let mut report = PropertyReport::new("note");
    for (v, v2) in [(o1, o2), (o2, o1)] {
        if partition.firms().iter().all(|&f| v2.payoff(f) >= v.payoff(f)) {
            for &w in partition.workers() {
                if v2.payoff(w) > v.payoff(w) {
                    report.fail(Witness::WorkerGainsToo { worker: w, first: v.clone(), second: v2.clone() });
                }
            }
        }
    }
    Ok(report)
}

/// [`check_lemma1`] over every ordered pair of stable outcomes.
pub fn sweep_lemma1(inst: &Instance, budget: EnumerationBudget) -> Result<(PropertyReport, usize)> {
    let core = enumerate_core(inst, budget)?;
    let mut report = PropertyReport::new("lemma1");
    report.strict_form_holds = Some(true);
    let mut samples = 0;
    for o1 in &core {
        for o2 in &core {
            report.absorb(check_lemma1(inst, o1, o2)?);
            samples += 1;
        }
    }
    Ok((report, samples))
}

/// [`check_lemma2`] for every outcome against every stable outcome, with the
/// group taken as all agents who do strictly better in the stable outcome,
/// minus those whose stable pair blocks the other outcome. Empty groups are
/// skipped.
pub fn sweep_lemma2(inst: &Instance, budget: EnumerationBudget) -> Result<(PropertyReport, usize)> {
    let all = enumerate_outcomes(inst, budget)?;
    let core: Vec<&Outcome> = all.iter().filter(|o| is_stable_unchecked(inst, o)).collect();
    let mut report = PropertyReport::new("lemma2");
    let mut samples = 0;
    for o in &all {
        for stable in &core {
            let group: BTreeSet<AgentId> = inst
                .agents()
                .iter()
                .copied()
                .filter(|&a| stable.payoff(a) > o.payoff(a))
                .filter(|&a| {
                    let b = stable.mate(a).expect("agent in outcome");
                    Pair::new(a, b).is_none_or(|p| !pair_blocks(inst, o, p))
                })
                .collect();
            if group.is_empty() {
                continue;
            }
            report.absorb(check_lemma2(inst, o, stable, &group)?);
            samples += 1;
        }
    }
    Ok((report, samples))
}

/// [`check_note_after_prop1`] over every pair of stable outcomes.
pub fn sweep_note(inst: &Instance, budget: EnumerationBudget) -> Result<(PropertyReport, usize)> {
    require_prop2_hypotheses(inst)?;
    let core = enumerate_core(inst, budget)?;
    let mut report = PropertyReport::new("note");
    let mut samples = 0;
    for (i, o1) in core.iter().enumerate() {
        for o2 in &core[i..] {
            report.absorb(check_note_after_prop1(inst, o1, o2)?);
            samples += 1;
        }
    }
    Ok((report, samples))
}
