use thiserror::Error;

use crate::model::{AgentId, Pair};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("pair {0} has more than one menu")]
    DuplicateMenu(Pair),

    #[error("menu {0} joins two agents on the same side of the market")]
    SameSideMenu(Pair),

    #[error("unknown agent {0}")]
    UnknownAgent(AgentId),

    #[error("menu {0} has no contracts")]
    EmptyContractSet(Pair),

    #[error("contract in menu {pair} must pay exactly the two members: {detail}")]
    ContractDomain { pair: Pair, detail: String },

    #[error("invalid agent set: {0}")]
    InvalidAgents(String),

    #[error("invalid firm/worker partition: {0}")]
    InvalidPartition(String),

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("outcome is not feasible: {0}")]
    InfeasibleOutcome(String),

    #[error("instance has no firm/worker partition")]
    NotTwoSided,

    #[error("menu {0} does not hold exactly one contract")]
    NotSingletonMenus(Pair),

    #[error("outcome is not stable: {0}")]
    UnstableInput(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unknown builtin instance {0:?}")]
    UnknownName(String),

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
}
