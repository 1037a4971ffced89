//! Blocking pairs and the core.

use serde::Serialize;

use crate::error::Result;
use crate::model::{enumerate_outcomes, require_feasible, Allocation, EnumerationBudget, Instance, Outcome, Pair};

/// A pair together with a menu contract that pays both members strictly
/// more than the challenged outcome does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCertificate {
    pub coalition: Pair,
    pub allocation: Allocation,
}

impl BlockingCertificate {
    /// Re-checks the certificate against `inst` and `o`.
    pub fn replays(&self, inst: &Instance, o: &Outcome) -> bool {
        inst.menu(self.coalition).is_some_and(|m| m.contracts().contains(&self.allocation))
            && self.coalition.members().iter().all(|&a| self.allocation.payoff(a).is_some_and(|x| x > o.payoff(a)))
    }
}

/// Every blocking (pair, contract), in canonical pair order then menu order.
///
/// Singletons cannot block: their only option pays 0 and outcomes are
/// nonnegative.
pub fn blocking_coalitions(inst: &Instance, o: &Outcome) -> Result<Vec<BlockingCertificate>> {
    require_feasible(inst, o)?;
    let mut out = Vec::new();
    for m in inst.menus() {
        let pair = m.pair();
        let (va, vb) = (o.payoff(pair.lo()), o.payoff(pair.hi()));
        for &c in m.contracts() {
            let [xa, xb] = c.payments();
            if xa > va && xb > vb {
                out.push(BlockingCertificate { coalition: pair, allocation: c });
            }
        }
    }
    Ok(out)
}

pub fn is_stable(inst: &Instance, o: &Outcome) -> Result<bool> {
    require_feasible(inst, o)?;
    Ok(is_stable_unchecked(inst, o))
}

pub(crate) fn is_stable_unchecked(inst: &Instance, o: &Outcome) -> bool {
    inst.menus().all(|m| {
        let pair = m.pair();
        let (va, vb) = (o.payoff(pair.lo()), o.payoff(pair.hi()));
        m.contracts().iter().all(|c| {
            let [xa, xb] = c.payments();
            !(xa > va && xb > vb)
        })
    })
}

/// Whether `pair` has a contract paying both members strictly more than `o`.
pub fn pair_blocks(inst: &Instance, o: &Outcome, pair: Pair) -> bool {
    inst.menu(pair).is_some_and(|m| {
        m.contracts().iter().any(|c| {
            let [xa, xb] = c.payments();
            xa > o.payoff(pair.lo()) && xb > o.payoff(pair.hi())
        })
    })
}

/// All stable outcomes, in enumeration order.
pub fn enumerate_core(inst: &Instance, budget: EnumerationBudget) -> Result<Vec<Outcome>> {
    Ok(enumerate_outcomes(inst, budget)?.into_iter().filter(|o| is_stable_unchecked(inst, o)).collect())
}
