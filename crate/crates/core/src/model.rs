//! Instances, outcomes and the brute-force outcome enumerator.
//!
//! An [`Instance`] is a generalized room-mates contract choice problem:
//! every agent can stay single for zero, and every unordered pair may carry a
//! finite menu of money splits. Larger coalitions never have feasible
//! allocations, so they are not represented at all. An optional firm/worker
//! partition turns the instance into a two-sided problem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub u32);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An unordered pair of distinct agents, stored as `(low id, high id)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: AgentId,
    hi: AgentId,
}

impl Pair {
    /// Returns `None` when `a == b`.
    pub fn new(a: AgentId, b: AgentId) -> Option<Pair> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Pair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(Pair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> AgentId {
        self.lo
    }

    pub fn hi(self) -> AgentId {
        self.hi
    }

    pub fn contains(self, a: AgentId) -> bool {
        self.lo == a || self.hi == a
    }

    /// The member that is not `a`. `a` must be a member.
    pub fn other(self, a: AgentId) -> AgentId {
        debug_assert!(self.contains(a));
        if self.lo == a {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn members(self) -> [AgentId; 2] {
        [self.lo, self.hi]
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[AgentId; 2]>::deserialize(d)?;
        Pair::new(a, b).ok_or_else(|| serde::de::Error::custom(format!("pair [{a},{b}] repeats an agent")))
    }
}

/// One feasible split of money within a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Allocation {
    pair: Pair,
    lo: Money,
    hi: Money,
}

impl Allocation {
    pub fn new(pair: Pair, lo: Money, hi: Money) -> Allocation {
        Allocation { pair, lo, hi }
    }

    /// Builds the allocation paying `x` to `a` and `y` to `b`.
    pub fn between(a: AgentId, x: Money, b: AgentId, y: Money) -> Option<Allocation> {
        let pair = Pair::new(a, b)?;
        Some(if pair.lo == a { Allocation::new(pair, x, y) } else { Allocation::new(pair, y, x) })
    }

    pub fn pair(&self) -> Pair {
        self.pair
    }

    /// Payment to `a`, or `None` if `a` is not in the pair.
    pub fn payoff(&self, a: AgentId) -> Option<Money> {
        if a == self.pair.lo {
            Some(self.lo)
        } else if a == self.pair.hi {
            Some(self.hi)
        } else {
            None
        }
    }

    /// Payments in canonical member order.
    pub fn payments(&self) -> [Money; 2] {
        [self.lo, self.hi]
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative() && !self.hi.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}: {}, {}: {}}}", self.pair.lo, self.lo, self.pair.hi, self.hi)
    }
}

impl Serialize for Allocation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<AgentId, Money> = [(self.pair.lo, self.lo), (self.pair.hi, self.hi)].into();
        map.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractMenu {
    pair: Pair,
    contracts: Vec<Allocation>,
}

impl ContractMenu {
    pub fn pair(&self) -> Pair {
        self.pair
    }

    pub fn contracts(&self) -> &[Allocation] {
        &self.contracts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Firm,
    Worker,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    firms: BTreeSet<AgentId>,
    workers: BTreeSet<AgentId>,
}

impl Partition {
    pub fn firms(&self) -> &BTreeSet<AgentId> {
        &self.firms
    }

    pub fn workers(&self) -> &BTreeSet<AgentId> {
        &self.workers
    }

    pub fn side(&self, a: AgentId) -> Option<Side> {
        if self.firms.contains(&a) {
            Some(Side::Firm)
        } else if self.workers.contains(&a) {
            Some(Side::Worker)
        } else {
            None
        }
    }

    /// Splits a cross-side pair into `(firm, worker)`.
    pub fn orient(&self, pair: Pair) -> Option<(AgentId, AgentId)> {
        match (self.side(pair.lo)?, self.side(pair.hi)?) {
            (Side::Firm, Side::Worker) => Some((pair.lo, pair.hi)),
            (Side::Worker, Side::Firm) => Some((pair.hi, pair.lo)),
            _ => None,
        }
    }
}

/// Interchange form of an instance, as read from and written to JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub agents: Vec<AgentId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firms: Option<Vec<AgentId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<Vec<AgentId>>,
    #[serde(default)]
    pub menus: Vec<RawMenu>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMenu {
    pub pair: [AgentId; 2],
    pub contracts: Vec<BTreeMap<AgentId, Money>>,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    agents: BTreeSet<AgentId>,
    menus: BTreeMap<Pair, ContractMenu>,
    partition: Option<Partition>,
}

impl Instance {
    pub fn agents(&self) -> &BTreeSet<AgentId> {
        &self.agents
    }

    /// Menus in canonical pair order.
    pub fn menus(&self) -> impl Iterator<Item = &ContractMenu> {
        self.menus.values()
    }

    pub fn menu(&self, pair: Pair) -> Option<&ContractMenu> {
        self.menus.get(&pair)
    }

    pub fn menu_count(&self) -> usize {
        self.menus.len()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn require_two_sided(&self) -> Result<&Partition> {
        self.partition.as_ref().ok_or(Error::NotTwoSided)
    }

    /// Contracts with a negative component. They are legal in a menu but can
    /// never be part of an outcome.
    pub fn negative_contracts(&self) -> Vec<(Pair, Allocation)> {
        self.menus()
            .flat_map(|m| m.contracts.iter().filter(|c| !c.is_nonnegative()).map(move |c| (m.pair, *c)))
            .collect()
    }

    /// Menus that hold at least one outcome-compatible contract.
    fn usable_pairs(&self) -> Vec<(Pair, Vec<Allocation>)> {
        self.menus()
            .filter_map(|m| {
                let ok: Vec<Allocation> = m.contracts.iter().copied().filter(Allocation::is_nonnegative).collect();
                (!ok.is_empty()).then_some((m.pair, ok))
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            agents: self.agents.iter().copied().collect(),
            firms: self.partition.as_ref().map(|p| p.firms.iter().copied().collect()),
            workers: self.partition.as_ref().map(|p| p.workers.iter().copied().collect()),
            menus: self
                .menus()
                .map(|m| RawMenu {
                    pair: m.pair.members(),
                    contracts: m.contracts.iter().map(|c| [(m.pair.lo, c.lo), (m.pair.hi, c.hi)].into()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        validate_instance(&raw)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("instance serializes")
    }
}

/// Checks every instance invariant and returns the canonical instance.
///
/// Pair keys are normalized to `(low, high)`. Repeated contracts inside a menu
/// collapse to their first occurrence, since a menu is a set.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance> {
    if raw.agents.is_empty() {
        return Err(Error::InvalidAgents("agent set is empty".into()));
    }
    let mut agents = BTreeSet::new();
    for &a in &raw.agents {
        if a.0 == 0 {
            return Err(Error::InvalidAgents("agent ids must be positive".into()));
        }
        if !agents.insert(a) {
            return Err(Error::InvalidAgents(format!("agent {a} listed twice")));
        }
    }

    let partition = match (&raw.firms, &raw.workers) {
        (None, None) => None,
        (Some(_), None) | (None, Some(_)) => {
            return Err(Error::InvalidPartition("firms and workers must be given together".into()))
        }
        (Some(f), Some(w)) => Some(validate_partition(&agents, f, w)?),
    };

    let mut menus = BTreeMap::new();
    for rm in &raw.menus {
        for a in rm.pair {
            if !agents.contains(&a) {
                return Err(Error::UnknownAgent(a));
            }
        }
        let pair = Pair::new(rm.pair[0], rm.pair[1])
            .ok_or_else(|| Error::InvalidAgents(format!("menu pair [{0},{0}] repeats an agent", rm.pair[0])))?;
        if menus.contains_key(&pair) {
            return Err(Error::DuplicateMenu(pair));
        }
        if let Some(p) = &partition {
            if p.orient(pair).is_none() {
                return Err(Error::SameSideMenu(pair));
            }
        }
        if rm.contracts.is_empty() {
            return Err(Error::EmptyContractSet(pair));
        }
        let mut contracts: Vec<Allocation> = Vec::with_capacity(rm.contracts.len());
        for payments in &rm.contracts {
            let keys: Vec<AgentId> = payments.keys().copied().collect();
            if keys != pair.members() {
                let shown: Vec<String> = keys.iter().map(ToString::to_string).collect();
                return Err(Error::ContractDomain { pair, detail: format!("got payments for [{}]", shown.join(",")) });
            }
            let c = Allocation::new(pair, payments[&pair.lo], payments[&pair.hi]);
            if !contracts.contains(&c) {
                contracts.push(c);
            }
        }
        menus.insert(pair, ContractMenu { pair, contracts });
    }

    Ok(Instance { agents, menus, partition })
}

fn validate_partition(agents: &BTreeSet<AgentId>, firms: &[AgentId], workers: &[AgentId]) -> Result<Partition> {
    let mut fs = BTreeSet::new();
    let mut ws = BTreeSet::new();
    for &a in firms.iter().chain(workers) {
        if !agents.contains(&a) {
            return Err(Error::UnknownAgent(a));
        }
    }
    for &f in firms {
        if !fs.insert(f) {
            return Err(Error::InvalidPartition(format!("firm {f} listed twice")));
        }
    }
    for &w in workers {
        if fs.contains(&w) {
            return Err(Error::InvalidPartition(format!("agent {w} is both a firm and a worker")));
        }
        if !ws.insert(w) {
            return Err(Error::InvalidPartition(format!("worker {w} listed twice")));
        }
    }
    if fs.is_empty() || ws.is_empty() {
        return Err(Error::InvalidPartition("firms and workers must both be non-empty".into()));
    }
    if let Some(a) = agents.iter().find(|a| !fs.contains(a) && !ws.contains(a)) {
        return Err(Error::InvalidPartition(format!("agent {a} is neither a firm nor a worker")));
    }
    Ok(Partition { firms: fs, workers: ws })
}

/// True iff every menu offers the all-zero split.
///
/// With only singletons and pairs, the only non-trivial super-additivity
/// requirement is that two singles (each at zero) can join any pair that has
/// a menu without changing their payoffs.
pub fn is_superadditive(inst: &Instance) -> bool {
    inst.menus().all(|m| m.contracts.iter().any(Allocation::is_zero))
}

/// An involution on the agent set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: BTreeMap<AgentId, AgentId>,
}

impl Matching {
    /// Everyone single.
    pub fn singles(agents: &BTreeSet<AgentId>) -> Matching {
        Matching { mate: agents.iter().map(|&a| (a, a)).collect() }
    }

    /// Builds a matching from disjoint pairs; agents not mentioned are single.
    pub fn from_pairs(agents: &BTreeSet<AgentId>, pairs: &[Pair]) -> Result<Matching> {
        let mut m = Matching::singles(agents);
        for &p in pairs {
            for a in p.members() {
                match m.mate.get(&a) {
                    None => return Err(Error::UnknownAgent(a)),
                    Some(&b) if b != a => return Err(Error::InfeasibleOutcome(format!("agent {a} is matched twice"))),
                    _ => {}
                }
            }
            m.mate.insert(p.lo, p.hi);
            m.mate.insert(p.hi, p.lo);
        }
        Ok(m)
    }

    pub fn mate(&self, a: AgentId) -> Option<AgentId> {
        self.mate.get(&a).copied()
    }

    /// Matched pairs in canonical order.
    pub fn pairs(&self) -> Vec<Pair> {
        self.mate.iter().filter(|(a, b)| a < b).map(|(&a, &b)| Pair { lo: a, hi: b }).collect()
    }

    pub fn single_agents(&self) -> Vec<AgentId> {
        self.mate.iter().filter(|(a, b)| a == b).map(|(&a, _)| a).collect()
    }

    pub fn is_involution(&self) -> bool {
        self.mate.iter().all(|(a, b)| self.mate.get(b) == Some(a))
    }
}

/// A matching together with a payoff for every agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    matching: Matching,
    payoff: BTreeMap<AgentId, Money>,
}

/// Interchange form of an outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutcome {
    pub matches: Vec<[AgentId; 2]>,
    pub singles: Vec<AgentId>,
    pub payoffs: BTreeMap<AgentId, Money>,
}

impl Serialize for Outcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl Outcome {
    /// Everyone single at zero.
    pub fn all_singles(inst: &Instance) -> Outcome {
        Outcome {
            matching: Matching::singles(&inst.agents),
            payoff: inst.agents.iter().map(|&a| (a, Money::ZERO)).collect(),
        }
    }

    /// Matches each pair at the given allocation; everyone else is single at zero.
    ///
    /// Only the structure is checked here. Use [`outcome_is_feasible`] to
    /// check menu membership and signs.
    pub fn from_allocations(inst: &Instance, allocations: &[Allocation]) -> Result<Outcome> {
        let pairs: Vec<Pair> = allocations.iter().map(Allocation::pair).collect();
        let matching = Matching::from_pairs(&inst.agents, &pairs)?;
        let mut payoff: BTreeMap<AgentId, Money> = inst.agents.iter().map(|&a| (a, Money::ZERO)).collect();
        for c in allocations {
            payoff.insert(c.pair.lo, c.lo);
            payoff.insert(c.pair.hi, c.hi);
        }
        Ok(Outcome { matching, payoff })
    }

    pub fn from_raw(inst: &Instance, raw: &RawOutcome) -> Result<Outcome> {
        let pairs = raw
            .matches
            .iter()
            .map(|&[a, b]| Pair::new(a, b).ok_or_else(|| Error::Parse(format!("match [{a},{b}] repeats an agent"))))
            .collect::<Result<Vec<_>>>()?;
        let matching = Matching::from_pairs(&inst.agents, &pairs)?;
        let mut listed: BTreeSet<AgentId> = pairs.iter().flat_map(|p| p.members()).collect();
        for &s in &raw.singles {
            if !inst.agents.contains(&s) {
                return Err(Error::UnknownAgent(s));
            }
            if !listed.insert(s) {
                return Err(Error::Parse(format!("agent {s} appears twice in the outcome")));
            }
        }
        if let Some(a) = inst.agents.iter().find(|a| !listed.contains(a)) {
            return Err(Error::Parse(format!("agent {a} is neither matched nor single")));
        }
        for a in raw.payoffs.keys() {
            if !inst.agents.contains(a) {
                return Err(Error::UnknownAgent(*a));
            }
        }
        if let Some(a) = inst.agents.iter().find(|a| !raw.payoffs.contains_key(a)) {
            return Err(Error::Parse(format!("no payoff given for agent {a}")));
        }
        Ok(Outcome { matching, payoff: raw.payoffs.clone() })
    }

    pub fn to_raw(&self) -> RawOutcome {
        RawOutcome {
            matches: self.matching.pairs().into_iter().map(Pair::members).collect(),
            singles: self.matching.single_agents(),
            payoffs: self.payoff.clone(),
        }
    }

    pub fn from_json(inst: &Instance, text: &str) -> Result<Outcome> {
        let raw: RawOutcome = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Outcome::from_raw(inst, &raw)
    }

    /// Single-line JSON in the outcome file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("outcome serializes")
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn mate(&self, a: AgentId) -> Option<AgentId> {
        self.matching.mate(a)
    }

    /// Payoff of `a`; zero for agents outside the instance.
    pub fn payoff(&self, a: AgentId) -> Money {
        self.payoff.get(&a).copied().unwrap_or(Money::ZERO)
    }

    pub fn payoffs(&self) -> &BTreeMap<AgentId, Money> {
        &self.payoff
    }

    /// The allocation each matched pair is using, in canonical pair order.
    pub fn allocations(&self) -> Vec<Allocation> {
        self.matching.pairs().into_iter().map(|p| Allocation::new(p, self.payoff(p.lo), self.payoff(p.hi))).collect()
    }
}

/// Reason `o` is not an outcome of `inst`, or `None` if it is one.
pub fn feasibility_violation(inst: &Instance, o: &Outcome) -> Option<String> {
    if o.matching.mate.keys().ne(inst.agents.iter()) || o.payoff.keys().ne(inst.agents.iter()) {
        return Some("outcome does not cover exactly the instance's agents".into());
    }
    if !o.matching.is_involution() {
        return Some("matching is not an involution".into());
    }
    for (&a, &v) in &o.payoff {
        if v.is_negative() {
            return Some(format!("agent {a} has negative payoff {v}"));
        }
        if o.mate(a) == Some(a) && !v.is_zero() {
            return Some(format!("single agent {a} has nonzero payoff {v}"));
        }
    }
    for c in o.allocations() {
        match inst.menu(c.pair) {
            None => return Some(format!("pair {} has no menu", c.pair)),
            Some(m) if !m.contracts.contains(&c) => {
                return Some(format!("allocation {c} is not in the menu of {}", c.pair))
            }
            _ => {}
        }
    }
    None
}

pub fn outcome_is_feasible(inst: &Instance, o: &Outcome) -> bool {
    feasibility_violation(inst, o).is_none()
}

pub(crate) fn require_feasible(inst: &Instance, o: &Outcome) -> Result<()> {
    match feasibility_violation(inst, o) {
        None => Ok(()),
        Some(why) => Err(Error::InfeasibleOutcome(why)),
    }
}

/// Cap on the number of outcomes an enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_outcomes: usize,
}

impl EnumerationBudget {
    pub const DEFAULT: EnumerationBudget = EnumerationBudget { max_outcomes: 1_000_000 };

    pub fn new(max_outcomes: usize) -> EnumerationBudget {
        EnumerationBudget { max_outcomes: max_outcomes.max(1) }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget::DEFAULT
    }
}

/// Every matching that uses only the given pairs, as sorted pair lists in
/// lexicographic order. Fails once more than `cap` matchings exist.
fn matchings_over(agents: &[AgentId], pairs: &[Pair], cap: usize) -> Result<Vec<Vec<Pair>>> {
    fn go(
        idx: usize,
        agents: &[AgentId],
        partners: &BTreeMap<AgentId, Vec<Pair>>,
        used: &mut BTreeSet<AgentId>,
        current: &mut Vec<Pair>,
        out: &mut Vec<Vec<Pair>>,
        cap: usize,
    ) -> Result<()> {
        let Some(pos) = (idx..agents.len()).find(|&i| !used.contains(&agents[i])) else {
            if out.len() == cap {
                return Err(Error::BudgetExceeded(cap));
            }
            let mut m = current.clone();
            m.sort();
            out.push(m);
            return Ok(());
        };
        let a = agents[pos];
        used.insert(a);
        go(pos + 1, agents, partners, used, current, out, cap)?;
        for &p in partners.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
            let b = p.other(a);
            if used.contains(&b) {
                continue;
            }
            used.insert(b);
            current.push(p);
            go(pos + 1, agents, partners, used, current, out, cap)?;
            current.pop();
            used.remove(&b);
        }
        used.remove(&a);
        Ok(())
    }

    let mut partners: BTreeMap<AgentId, Vec<Pair>> = BTreeMap::new();
    for &p in pairs {
        // Each pair is attached to its lower member, which is always visited first.
        partners.entry(p.lo).or_default().push(p);
    }
    let mut out = Vec::new();
    go(0, agents, &partners, &mut BTreeSet::new(), &mut Vec::new(), &mut out, cap)?;
    out.sort();
    Ok(out)
}

/// Every outcome of `inst`, each exactly once.
///
/// Matchings come in lexicographic order of their sorted pair lists (the
/// all-singles matching first); within a matching, allocations vary in menu
/// order with the first pair varying slowest.
pub fn enumerate_outcomes(inst: &Instance, budget: EnumerationBudget) -> Result<Vec<Outcome>> {
    let cap = budget.max_outcomes;
    let usable: BTreeMap<Pair, Vec<Allocation>> = inst.usable_pairs().into_iter().collect();
    let agents: Vec<AgentId> = inst.agents.iter().copied().collect();
    let pairs: Vec<Pair> = usable.keys().copied().collect();
    // Every usable matching yields at least one outcome, so `cap` bounds both.
    let matchings = matchings_over(&agents, &pairs, cap)?;

    let mut out = Vec::new();
    for pairs in matchings {
        let menus: Vec<&[Allocation]> = pairs.iter().map(|p| usable[p].as_slice()).collect();
        let mut digits = vec![0usize; menus.len()];
        loop {
            if out.len() == cap {
                return Err(Error::BudgetExceeded(cap));
            }
            let chosen: Vec<Allocation> = digits.iter().zip(&menus).map(|(&d, m)| m[d]).collect();
            out.push(Outcome::from_allocations(inst, &chosen).expect("pairs are disjoint"));

            // Odometer: last pair varies fastest.
            let mut i = digits.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < menus[i].len() {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(out)
}
