//! Generalized firm-proposing deferred acceptance.
//!
//! Each firm ranks every `(worker, contract)` option by its own share and
//! proposes them one at a time, best first, so it may court the same worker
//! several times with different splits. A worker holds the best acceptable
//! proposal seen so far (including the one already held) and rejects the
//! rest. Acceptable means a strictly positive share on either side. The run
//! ends at the first stage with no proposers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AgentId, Allocation, EnumerationBudget, Instance, Outcome, Partition};
use crate::money::Money;

/// A firm offering a worker one contract from their menu.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Proposal {
    pub firm: AgentId,
    pub worker: AgentId,
    pub allocation: Allocation,
}

impl Proposal {
    pub fn firm_payoff(&self) -> Money {
        self.allocation.payoff(self.firm).expect("firm is in the pair")
    }

    pub fn worker_payoff(&self) -> Money {
        self.allocation.payoff(self.worker).expect("worker is in the pair")
    }

    pub fn acceptable_to_worker(&self) -> bool {
        self.worker_payoff().is_positive()
    }
}

impl fmt::Display for Proposal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} ({}, {})", self.firm, self.worker, self.firm_payoff(), self.worker_payoff())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdOrder {
    LowerFirst,
    HigherFirst,
}

impl IdOrder {
    fn cmp(self, a: AgentId, b: AgentId) -> Ordering {
        match self {
            IdOrder::LowerFirst => a.cmp(&b),
            IdOrder::HigherFirst => b.cmp(&a),
        }
    }
}

/// How payoff ties are resolved on each side.
///
/// Firms order equally good options by worker id and then by the smaller
/// allocation. Workers either keep the proposal they already hold on a tie,
/// or rank it together with the new ones; remaining ties go by firm id and
/// then by the smaller allocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TieBreakPolicy {
    pub firm_worker_order: IdOrder,
    pub worker_keeps_held: bool,
    pub worker_firm_order: IdOrder,
}

impl TieBreakPolicy {
    pub const DEFAULT: TieBreakPolicy = TieBreakPolicy {
        firm_worker_order: IdOrder::LowerFirst,
        worker_keeps_held: true,
        worker_firm_order: IdOrder::LowerFirst,
    };
    pub const REVERSE: TieBreakPolicy = TieBreakPolicy {
        firm_worker_order: IdOrder::HigherFirst,
        worker_keeps_held: true,
        worker_firm_order: IdOrder::HigherFirst,
    };
    pub const SWITCH: TieBreakPolicy = TieBreakPolicy {
        firm_worker_order: IdOrder::HigherFirst,
        worker_keeps_held: false,
        worker_firm_order: IdOrder::LowerFirst,
    };

    pub const PRESETS: [(&'static str, TieBreakPolicy); 3] =
        [("default", Self::DEFAULT), ("reverse", Self::REVERSE), ("switch", Self::SWITCH)];

    /// Firm-side order: higher own payoff first, then the tie rule.
    fn firm_cmp(&self, a: &Proposal, b: &Proposal) -> Ordering {
        b.firm_payoff()
            .cmp(&a.firm_payoff())
            .then_with(|| self.firm_worker_order.cmp(a.worker, b.worker))
            .then_with(|| a.allocation.cmp(&b.allocation))
    }

    /// Worker-side order among proposals with equal worker payoff.
    fn worker_tie_cmp(&self, a: &Candidate, b: &Candidate) -> Ordering {
        let held_first = if self.worker_keeps_held { b.held.cmp(&a.held) } else { Ordering::Equal };
        held_first
            .then_with(|| self.worker_firm_order.cmp(a.proposal.firm, b.proposal.firm))
            .then_with(|| a.proposal.allocation.cmp(&b.proposal.allocation))
    }
}

impl Default for TieBreakPolicy {
    fn default() -> Self {
        TieBreakPolicy::DEFAULT
    }
}

impl FromStr for TieBreakPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TieBreakPolicy::PRESETS.iter().find(|(name, _)| *name == s).map(|(_, p)| *p).ok_or_else(|| {
            Error::Parse(format!("unknown tie-break policy {s:?} (expected default, reverse or switch)"))
        })
    }
}

/// Every firm's acceptable options, best first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProposalSpace {
    lists: BTreeMap<AgentId, Vec<Proposal>>,
}

impl ProposalSpace {
    /// The ranked options of `firm`; empty for unknown agents.
    pub fn list(&self, firm: AgentId) -> &[Proposal] {
        self.lists.get(&firm).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn firms(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.lists.keys().copied()
    }

    pub fn total_len(&self) -> usize {
        self.lists.values().map(Vec::len).sum()
    }
}

pub fn build_proposal_space(inst: &Instance, policy: TieBreakPolicy) -> Result<ProposalSpace> {
    let partition = inst.require_two_sided()?;
    Ok(build_space(inst, partition, policy))
}

fn build_space(inst: &Instance, partition: &Partition, policy: TieBreakPolicy) -> ProposalSpace {
    let mut lists: BTreeMap<AgentId, Vec<Proposal>> = partition.firms().iter().map(|&f| (f, Vec::new())).collect();
    for menu in inst.menus() {
        let (firm, worker) = partition.orient(menu.pair()).expect("validated two-sided menu");
        let list = lists.get_mut(&firm).expect("firm listed");
        for &allocation in menu.contracts() {
            let p = Proposal { firm, worker, allocation };
            if p.firm_payoff().is_positive() {
                list.push(p);
            }
        }
    }
    for list in lists.values_mut() {
        list.sort_by(|a, b| policy.firm_cmp(a, b));
    }
    ProposalSpace { lists }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    proposal: Proposal,
    held: bool,
}

/// One stage of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub stage: usize,
    /// Firms proposing at this stage.
    pub proposers: Vec<AgentId>,
    pub proposals: Vec<Proposal>,
    /// Proposals each worker received at this stage.
    pub received: BTreeMap<AgentId, Vec<Proposal>>,
    /// The subset of `received` the worker finds acceptable.
    pub acceptable: BTreeMap<AgentId, Vec<Proposal>>,
    /// What every worker holds once the stage is over.
    pub held: BTreeMap<AgentId, Proposal>,
    /// New proposals turned down plus held proposals displaced at this stage.
    pub rejections: Vec<Proposal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// The stage with no proposers.
    pub fn terminal_stage(&self) -> usize {
        self.steps.len()
    }
}

/// Source of the arbitrary choices the procedure makes among tied options.
trait Chooser {
    /// `options` holds at least two entries, already in policy order.
    fn choose(&mut self, options: usize) -> usize;
}

struct FirstChoice;

impl Chooser for FirstChoice {
    fn choose(&mut self, _: usize) -> usize {
        0
    }
}

/// Replays a fixed prefix of choices, then always takes the first option,
/// recording the width of every choice point it meets.
struct Replay<'a> {
    prefix: &'a [usize],
    path: Vec<(usize, usize)>,
}

impl Chooser for Replay<'_> {
    fn choose(&mut self, options: usize) -> usize {
        let i = self.path.len();
        let pick = self.prefix.get(i).copied().unwrap_or(0);
        debug_assert!(pick < options);
        self.path.push((pick, options));
        pick
    }
}

fn run_engine(
    inst: &Instance,
    space: &ProposalSpace,
    policy: TieBreakPolicy,
    chooser: &mut dyn Chooser,
    record: bool,
) -> (Outcome, Trace) {
    let mut remaining: BTreeMap<AgentId, VecDeque<Proposal>> =
        space.lists.iter().map(|(&f, l)| (f, l.iter().copied().collect())).collect();
    let mut held: BTreeMap<AgentId, Proposal> = BTreeMap::new();
    let mut active: Vec<AgentId> = remaining.iter().filter(|(_, l)| !l.is_empty()).map(|(&f, _)| f).collect();
    let mut steps = Vec::new();
    let mut stage = 1;

    loop {
        if active.is_empty() {
            steps.push(TraceStep {
                stage,
                proposers: Vec::new(),
                proposals: Vec::new(),
                received: BTreeMap::new(),
                acceptable: BTreeMap::new(),
                held: held.clone(),
                rejections: Vec::new(),
            });
            break;
        }

        let mut proposals = Vec::with_capacity(active.len());
        for &f in &active {
            let list = remaining.get_mut(&f).expect("active firm has a list");
            let best = list[0].firm_payoff();
            let tied = list.iter().take_while(|p| p.firm_payoff() == best).count();
            let pick = if tied > 1 { chooser.choose(tied) } else { 0 };
            proposals.push(list.remove(pick).expect("pick in range"));
        }

        let mut received: BTreeMap<AgentId, Vec<Proposal>> = BTreeMap::new();
        for p in &proposals {
            received.entry(p.worker).or_default().push(*p);
        }
        let mut acceptable: BTreeMap<AgentId, Vec<Proposal>> = BTreeMap::new();
        let mut rejections = Vec::new();
        for (&w, incoming) in &received {
            let acc: Vec<Proposal> = incoming.iter().copied().filter(Proposal::acceptable_to_worker).collect();
            let mut candidates: Vec<Candidate> = held
                .get(&w)
                .map(|&p| Candidate { proposal: p, held: true })
                .into_iter()
                .chain(acc.iter().map(|&p| Candidate { proposal: p, held: false }))
                .collect();
            if candidates.is_empty() {
                rejections.extend(incoming.iter().copied());
                acceptable.insert(w, acc);
                continue;
            }
            let top = candidates.iter().map(|c| c.proposal.worker_payoff()).max().expect("non-empty");
            candidates.sort_by(|a, b| {
                b.proposal.worker_payoff().cmp(&a.proposal.worker_payoff()).then_with(|| policy.worker_tie_cmp(a, b))
            });
            let tied = candidates.iter().take_while(|c| c.proposal.worker_payoff() == top).count();
            let pick = if tied > 1 { chooser.choose(tied) } else { 0 };
            let keep = candidates[pick].proposal;
            if let Some(old) = held.insert(w, keep) {
                if old != keep {
                    rejections.push(old);
                }
            }
            rejections.extend(incoming.iter().copied().filter(|p| *p != keep));
            acceptable.insert(w, acc);
        }

        let rejected: BTreeSet<AgentId> = rejections.iter().map(|p| p.firm).collect();
        let next: Vec<AgentId> = rejected.into_iter().filter(|f| !remaining[f].is_empty()).collect();
        if record {
            steps.push(TraceStep {
                stage,
                proposers: std::mem::take(&mut active),
                proposals,
                received,
                acceptable,
                held: held.clone(),
                rejections,
            });
        }
        active = next;
        stage += 1;
    }

    let allocations: Vec<Allocation> = held.values().map(|p| p.allocation).collect();
    let outcome = Outcome::from_allocations(inst, &allocations).expect("held proposals are disjoint");
    (outcome, Trace { steps })
}

/// Runs the procedure once, resolving every tie by `policy`.
pub fn run_procedure(inst: &Instance, policy: TieBreakPolicy) -> Result<(Outcome, Trace)> {
    let space = build_proposal_space(inst, policy)?;
    Ok(run_engine(inst, &space, policy, &mut FirstChoice, true))
}

/// Every outcome the procedure can reach when each tie, on either side, may
/// be resolved any way. Runs are explored depth first with the first option
/// first, and outcomes are listed in order of discovery.
///
/// The budget caps the number of complete runs explored.
pub fn enumerate_procedure_outcomes(inst: &Instance, budget: EnumerationBudget) -> Result<Vec<Outcome>> {
    let policy = TieBreakPolicy::DEFAULT;
    let space = build_proposal_space(inst, policy)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut pending: Vec<Vec<usize>> = vec![Vec::new()];
    let mut runs = 0usize;

    while let Some(prefix) = pending.pop() {
        runs += 1;
        if runs > budget.max_outcomes {
            return Err(Error::BudgetExceeded(budget.max_outcomes));
        }
        let mut replay = Replay { prefix: &prefix, path: Vec::new() };
        let (outcome, _) = run_engine(inst, &space, policy, &mut replay, false);
        if seen.insert(outcome.clone()) {
            out.push(outcome);
        }
        // Push unexplored siblings of every choice made past the prefix,
        // deepest and highest-index first so the stack pops them in order.
        let path = replay.path;
        for depth in (prefix.len()..path.len()).rev() {
            for alt in (1..path[depth].1).rev() {
                let mut next: Vec<usize> = path[..depth].iter().map(|&(p, _)| p).collect();
                next.push(alt);
                pending.push(next);
            }
        }
    }
    Ok(out)
}

/// Textbook firm-proposing deferred acceptance for instances whose menus
/// hold a single contract each, so every agent's preference over partners
/// is read straight off the payoffs.
///
/// Ties, which cannot arise under strict preferences, go to the lower id.
pub fn classic_da(inst: &Instance) -> Result<Outcome> {
    let partition = inst.require_two_sided()?;
    let mut prefs: BTreeMap<AgentId, Vec<(AgentId, Money)>> = BTreeMap::new();
    let mut worker_value: BTreeMap<(AgentId, AgentId), Money> = BTreeMap::new();
    let mut contract: BTreeMap<(AgentId, AgentId), Allocation> = BTreeMap::new();
    for menu in inst.menus() {
        let [only] = menu.contracts() else {
            return Err(Error::NotSingletonMenus(menu.pair()));
        };
        let (f, w) = partition.orient(menu.pair()).expect("validated two-sided menu");
        let fv = only.payoff(f).unwrap();
        let wv = only.payoff(w).unwrap();
        if fv.is_positive() {
            prefs.entry(f).or_default().push((w, fv));
        }
        worker_value.insert((w, f), wv);
        contract.insert((f, w), *only);
    }
    for list in prefs.values_mut() {
        list.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    }

    let mut next_choice: BTreeMap<AgentId, usize> = BTreeMap::new();
    let mut engaged_to: BTreeMap<AgentId, AgentId> = BTreeMap::new();
    let mut free: VecDeque<AgentId> = prefs.keys().copied().collect();
    // (payoff, reversed id) so that a larger key is strictly preferred.
    let rank = |w: AgentId, f: AgentId| (worker_value[&(w, f)], std::cmp::Reverse(f));

    while let Some(f) = free.pop_front() {
        let list = &prefs[&f];
        let i = next_choice.entry(f).or_insert(0);
        let Some(&(w, _)) = list.get(*i) else { continue };
        *i += 1;
        if !worker_value[&(w, f)].is_positive() {
            free.push_back(f);
            continue;
        }
        match engaged_to.get(&w).copied() {
            None => {
                engaged_to.insert(w, f);
            }
            Some(current) if rank(w, f) > rank(w, current) => {
                engaged_to.insert(w, f);
                free.push_back(current);
            }
            Some(_) => free.push_back(f),
        }
    }

    let allocations: Vec<Allocation> = engaged_to.iter().map(|(&w, &f)| contract[&(f, w)]).collect();
    Outcome::from_allocations(inst, &allocations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::builtin;
    use crate::model::{validate_instance, RawInstance};
    use crate::stability::is_stable;

    fn id(n: u32) -> AgentId {
        AgentId(n)
    }

    fn alloc(a: u32, x: i64, b: u32, y: i64) -> Allocation {
        Allocation::between(id(a), Money::from_int(x), id(b), Money::from_int(y)).unwrap()
    }

    fn inst(json: &str) -> Instance {
        validate_instance(&serde_json::from_str::<RawInstance>(json).unwrap()).unwrap()
    }

    fn payoffs(o: &Outcome) -> Vec<i64> {
        o.payoffs().values().map(|m| m.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn firm_one_list_in_illustration() {
        let space = build_proposal_space(&builtin("illustration").unwrap(), TieBreakPolicy::DEFAULT).unwrap();
        let got: Vec<(u32, Allocation)> = space.list(id(1)).iter().map(|p| (p.worker.0, p.allocation)).collect();
        assert_eq!(
            got,
            vec![(4, alloc(1, 4, 4, 1)), (3, alloc(1, 3, 3, 1)), (3, alloc(1, 1, 3, 3)), (4, alloc(1, 1, 4, 4))]
        );
    }

    #[test]
    fn zero_yield_firm_has_empty_list() {
        let i = inst(
            r#"{"agents":[1,2],"firms":[1],"workers":[2],
            "menus":[{"pair":[1,2],"contracts":[{"1":0,"2":5}]}]}"#,
        );
        let space = build_proposal_space(&i, TieBreakPolicy::DEFAULT).unwrap();
        assert!(space.list(id(1)).is_empty());
        let (o, trace) = run_procedure(&i, TieBreakPolicy::DEFAULT).unwrap();
        assert_eq!(o, Outcome::all_singles(&i));
        assert_eq!(trace.terminal_stage(), 1);
    }

    #[test]
    fn roommates_instance_is_rejected() {
        let gs = builtin("gale-shapley-4").unwrap();
        assert_eq!(build_proposal_space(&gs, TieBreakPolicy::DEFAULT), Err(Error::NotTwoSided));
        assert_eq!(run_procedure(&gs, TieBreakPolicy::DEFAULT).unwrap_err(), Error::NotTwoSided);
        assert_eq!(enumerate_procedure_outcomes(&gs, EnumerationBudget::DEFAULT).unwrap_err(), Error::NotTwoSided);
        assert_eq!(classic_da(&gs).unwrap_err(), Error::NotTwoSided);
    }

    #[test]
    fn illustration_run() {
        let ill = builtin("illustration").unwrap();
        let (o, trace) = run_procedure(&ill, TieBreakPolicy::DEFAULT).unwrap();
        assert_eq!(o.mate(id(1)), Some(id(3)));
        assert_eq!(o.mate(id(2)), Some(id(4)));
        assert_eq!(payoffs(&o), vec![3, 4, 1, 2]);

        let first = &trace.steps[0];
        assert_eq!(first.proposers, vec![id(1), id(2)]);
        assert!(first.proposals.iter().all(|p| p.worker == id(4)));
        assert_eq!(first.rejections.len(), 1);
        assert_eq!(first.rejections[0].firm, id(1));
        assert_eq!(first.held[&id(4)].firm, id(2));

        let second = &trace.steps[1];
        assert_eq!(second.proposers, vec![id(1)]);
        assert_eq!(second.proposals[0].allocation, alloc(1, 3, 3, 1));
        assert_eq!(trace.terminal_stage(), 3);
        assert!(trace.steps[2].proposers.is_empty());
    }

    #[test]
    fn empty_instance_terminates_at_stage_one() {
        let i = inst(r#"{"agents":[1,2],"firms":[1],"workers":[2]}"#);
        let (o, trace) = run_procedure(&i, TieBreakPolicy::DEFAULT).unwrap();
        assert_eq!(o, Outcome::all_singles(&i));
        assert_eq!(trace.terminal_stage(), 1);
        assert!(trace.steps[0].proposers.is_empty());
        assert_eq!(enumerate_procedure_outcomes(&i, EnumerationBudget::DEFAULT).unwrap(), vec![o]);
    }

    #[test]
    fn modified_illustration_depends_on_firm_tie_rule() {
        let m = builtin("illustration-modified").unwrap();
        let (low, _) = run_procedure(&m, TieBreakPolicy::DEFAULT).unwrap();
        assert_eq!(low.mate(id(1)), Some(id(3)));
        assert_eq!(payoffs(&low), vec![3, 4, 1, 2]);

        let high_worker = TieBreakPolicy { firm_worker_order: IdOrder::HigherFirst, ..TieBreakPolicy::DEFAULT };
        let (high, trace) = run_procedure(&m, high_worker).unwrap();
        assert_eq!(high.mate(id(1)), Some(id(4)));
        assert_eq!(payoffs(&high), vec![3, 3, 2, 3]);
        assert_eq!(trace.steps[1].proposals[0].allocation, alloc(1, 3, 4, 3));
        assert!(is_stable(&m, &high).unwrap());
    }

    #[test]
    fn tie_enumeration() {
        let ill = builtin("illustration").unwrap();
        let o = enumerate_procedure_outcomes(&ill, EnumerationBudget::DEFAULT).unwrap();
        assert_eq!(o.len(), 1);

        let m = builtin("illustration-modified").unwrap();
        let all = enumerate_procedure_outcomes(&m, EnumerationBudget::DEFAULT).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(payoffs(&all[0]), vec![3, 4, 1, 2]);
        assert_eq!(payoffs(&all[1]), vec![3, 3, 2, 3]);
        assert_eq!(enumerate_procedure_outcomes(&m, EnumerationBudget::new(1)), Err(Error::BudgetExceeded(1)));
    }

    #[test]
    fn worker_ties_branch_too() {
        // Both firms offer worker 3 the same share.
        let i = inst(
            r#"{"agents":[1,2,3],"firms":[1,2],"workers":[3],"menus":[
            {"pair":[1,3],"contracts":[{"1":3,"3":2}]},
            {"pair":[2,3],"contracts":[{"2":4,"3":2}]}]}"#,
        );
        let all = enumerate_procedure_outcomes(&i, EnumerationBudget::DEFAULT).unwrap();
        assert_eq!(all.len(), 2);
        let (o, _) = run_procedure(&i, TieBreakPolicy::DEFAULT).unwrap();
        assert_eq!(o.mate(id(3)), Some(id(1)));
        let (o, _) = run_procedure(&i, TieBreakPolicy::REVERSE).unwrap();
        assert_eq!(o.mate(id(3)), Some(id(2)));
    }

    #[test]
    fn held_proposal_tie_rule() {
        // Firm 2 is turned down by worker 4 (zero share), then matches worker
        // 3's current offer from firm 1.
        let i = inst(
            r#"{"agents":[1,2,3,4],"firms":[1,2],"workers":[3,4],"menus":[
            {"pair":[1,3],"contracts":[{"1":3,"3":2}]},
            {"pair":[2,4],"contracts":[{"2":5,"4":0}]},
            {"pair":[2,3],"contracts":[{"2":4,"3":2}]}]}"#,
        );
        let keep = TieBreakPolicy { worker_firm_order: IdOrder::HigherFirst, ..TieBreakPolicy::DEFAULT };
        let (o, trace) = run_procedure(&i, keep).unwrap();
        assert_eq!(o.mate(id(3)), Some(id(1)));
        assert_eq!(trace.steps[1].rejections[0].firm, id(2));

        let compete = TieBreakPolicy { worker_keeps_held: false, ..keep };
        let (o, trace) = run_procedure(&i, compete).unwrap();
        assert_eq!(o.mate(id(3)), Some(id(2)));
        assert_eq!(trace.steps[1].rejections[0].firm, id(1));
        assert!(is_stable(&i, &o).unwrap());
    }

    #[test]
    fn classic_da_cases() {
        let one = inst(
            r#"{"agents":[1,2],"firms":[1],"workers":[2],
            "menus":[{"pair":[1,2],"contracts":[{"1":2,"2":1}]}]}"#,
        );
        assert_eq!(classic_da(&one).unwrap().mate(id(1)), Some(id(2)));

        let unwilling = inst(
            r#"{"agents":[1,2],"firms":[1],"workers":[2],
            "menus":[{"pair":[1,2],"contracts":[{"1":2,"2":0}]}]}"#,
        );
        assert_eq!(classic_da(&unwilling).unwrap(), Outcome::all_singles(&unwilling));

        assert!(matches!(classic_da(&builtin("illustration").unwrap()), Err(Error::NotSingletonMenus(_))));
    }

    #[test]
    fn classic_da_matches_on_firm_best_projection() {
        // Keep only each pair's firm-best contract from the illustration.
        let i = inst(
            r#"{"agents":[1,2,3,4],"firms":[1,2],"workers":[3,4],"menus":[
            {"pair":[1,3],"contracts":[{"1":3,"3":1}]},
            {"pair":[1,4],"contracts":[{"1":4,"4":1}]},
            {"pair":[2,3],"contracts":[{"2":3,"3":2}]},
            {"pair":[2,4],"contracts":[{"2":4,"4":2}]}]}"#,
        );
        let (o, _) = run_procedure(&i, TieBreakPolicy::DEFAULT).unwrap();
        let da = classic_da(&i).unwrap();
        assert_eq!(o.matching(), da.matching());
        assert_eq!(o.mate(id(1)), Some(id(3)));
    }

    #[test]
    fn policy_presets_parse() {
        for (name, p) in TieBreakPolicy::PRESETS {
            assert_eq!(name.parse::<TieBreakPolicy>().unwrap(), p);
        }
        assert!("sideways".parse::<TieBreakPolicy>().is_err());
    }
}
