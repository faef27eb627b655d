//! Error types shared by the query engines, compilers and reductions.

use num::BigUint;
use thiserror::Error;

/// Failures raised by query operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("dimension mismatch: model expects {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("instance is not a completion of the partial instance")]
    NotACompletion,

    /// The enumeration needed to answer exceeds the caller's budget.
    /// `required` is the exact count of work items that would be needed.
    #[error("budget exceeded: {required} enumerations required, limit {limit}")]
    BudgetExceeded { required: BigUint, limit: u64 },

    #[error("weights and bias must be integers for the knapsack transform")]
    NonIntegerWeights,

    /// The knapsack transform is defined only when at least one positive
    /// completion exists (otherwise the bound would be negative).
    #[error("no positive completion exists; knapsack bound would be negative")]
    NoPositiveInstance,
}

/// Failures raised by the model compilers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    /// Node replication in the step-conversion would exceed the budget.
    /// `replication` is the per-node copy count `S` that was computed.
    #[error("step conversion needs {replication} copies per node ({total} total), budget {budget}")]
    ReplicationBudget {
        replication: BigUint,
        total: BigUint,
        budget: u64,
    },

    #[error("model is not in restricted form: {0}")]
    NotRestricted(String),
}

/// Failures raised by the reduction generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("input graph contains a cycle")]
    CyclicInput,

    #[error("bound k = {k} must be smaller than the core size {core}")]
    CoreTooSmall { k: usize, core: usize },

    #[error("circuit depth {depth} exceeds the enumeration budget {budget}")]
    DepthBudgetExceeded { depth: usize, budget: usize },

    #[error("circuit weft {weft} exceeds the declared bound {bound}")]
    WeftTooLarge { weft: usize, bound: usize },

    #[error(transparent)]
    Query(#[from] QueryError),
}
