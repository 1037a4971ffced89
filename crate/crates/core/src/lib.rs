//! Stable outcomes for two-sided contract choice problems.
//!
//! A contract choice problem gives every pair of agents a finite menu of ways
//! to split money, and lets every agent stay single for nothing. An outcome
//! pairs agents up and picks one contract per pair; it is stable when no pair
//! has a contract paying both strictly more.
//!
//! * [`model`]: instances, outcomes, file formats, and brute-force outcome
//!   enumeration.
//! * [`stability`]: blocking pairs and the core.
//! * [`procedure`]: generalized firm-proposing deferred acceptance, with full
//!   traces, tie enumeration, and a textbook deferred acceptance used as a
//!   reference.
//! * [`verify`]: checkers for comparative claims about stable outcomes.
//! * [`generator`]: builtin fixtures and seeded random instances.

pub mod error;
pub mod generator;
pub mod model;
pub mod money;
pub mod procedure;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use generator::{builtin, gen_random, GenParams, BUILTIN_NAMES};
pub use model::{
    enumerate_outcomes, is_superadditive, outcome_is_feasible, validate_instance, AgentId, Allocation, ContractMenu,
    EnumerationBudget, Instance, Matching, Outcome, Pair, Partition, RawInstance, RawMenu, RawOutcome, Side,
};
pub use money::Money;
pub use procedure::{
    build_proposal_space, classic_da, enumerate_procedure_outcomes, run_procedure, Proposal, ProposalSpace,
    TieBreakPolicy, Trace, TraceStep,
};
pub use stability::{blocking_coalitions, enumerate_core, is_stable, BlockingCertificate};
pub use verify::PropertyReport;
