//! The four queries over FBDDs.
//!
//! Minimum change, sufficient-reason checking and completion counting run
//! in polynomial time by bottom-up passes over the DAG; minimum
//! sufficient reason has no polynomial algorithm and is answered by a
//! budgeted size-ascending search that uses the polynomial check as its
//! certificate test.

use num::{BigUint, One, Zero};

use crate::combinatorics::{ball_size, for_each_subset};
use crate::error::QueryError;
use crate::fbdd::{Fbdd, FbddNode, NodeId};
use crate::instance::{Instance, PartialInstance};
use crate::rational::{to_count, Rational};
use crate::verdict::Verdict;

fn check_dims(m: &Fbdd, actual: usize) -> Result<(), QueryError> {
    if m.dim() != actual {
        return Err(QueryError::DimensionMismatch {
            expected: m.dim(),
            actual,
        });
    }
    Ok(())
}

/// Is there an instance within Hamming distance `k` of `x` that the model
/// classifies differently? Computed bottom-up: for every node the least
/// number of flips that changes the classification using only features
/// tested below that node; infinity when no such instance exists. The
/// witness is rebuilt by backtracking the minimizing edges, ties broken
/// toward the 0-child.
pub fn mcr_fbdd(m: &Fbdd, x: &Instance, k: usize) -> Result<Verdict<Instance>, QueryError> {
    check_dims(m, x.dim())?;
    let class = m.eval(x)?;
    let order = m.topological_order();
    let mut cost: Vec<Option<u64>> = vec![None; m.nodes().len()];
    for &id in order.iter().rev() {
        cost[id] = match m.node(id) {
            FbddNode::Leaf(b) => (*b != class).then_some(0),
            FbddNode::Inner { var, lo, hi } => {
                let lo_cost = cost[*lo].map(|c| c + u64::from(x.bit(*var)));
                let hi_cost = cost[*hi].map(|c| c + u64::from(!x.bit(*var)));
                match (lo_cost, hi_cost) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                }
            }
        };
    }
    match cost[m.root()] {
        Some(c) if c <= k as u64 => {
            let mut witness = x.clone();
            let mut id = m.root();
            let mut remaining = c;
            while let FbddNode::Inner { var, lo, hi } = m.node(id) {
                let lo_cost = cost[*lo].map(|c| c + u64::from(x.bit(*var)));
                if lo_cost == Some(remaining) {
                    witness.set(*var, false);
                    remaining -= u64::from(x.bit(*var));
                    id = *lo;
                } else {
                    witness.set(*var, true);
                    remaining -= u64::from(!x.bit(*var));
                    id = *hi;
                }
            }
            debug_assert_eq!(m.eval(&witness)?, !class);
            debug_assert!(witness.hamming(x) as u64 <= k as u64);
            Ok(Verdict::Yes(witness))
        }
        _ => Ok(Verdict::No),
    }
}

/// Is `y` a sufficient reason for `x`? Every edge contradicting a defined
/// cell of `y` is pruned; `y` is sufficient iff all leaves still
/// reachable from the root carry the same label.
pub fn csr_fbdd(m: &Fbdd, x: &Instance, y: &PartialInstance) -> Result<bool, QueryError> {
    check_dims(m, x.dim())?;
    check_dims(m, y.dim())?;
    if !y.is_completion(x) {
        return Err(QueryError::NotACompletion);
    }
    let mut seen = vec![false; m.nodes().len()];
    let mut stack = vec![m.root()];
    seen[m.root()] = true;
    let (mut saw_true, mut saw_false) = (false, false);
    while let Some(id) = stack.pop() {
        match m.node(id) {
            FbddNode::Leaf(true) => saw_true = true,
            FbddNode::Leaf(false) => saw_false = true,
            FbddNode::Inner { var, lo, hi } => {
                let keep_lo = y.cell(*var) != Some(true);
                let keep_hi = y.cell(*var) != Some(false);
                for (keep, child) in [(keep_lo, *lo), (keep_hi, *hi)] {
                    if keep && !seen[child] {
                        seen[child] = true;
                        stack.push(child);
                    }
                }
            }
        }
        if saw_true && saw_false {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of completions of `y` that the model accepts. Bottom-up
/// acceptance probability per node, exact over rationals with power-of-two
/// denominators; freeness makes `q(root) * 2^free` an integer.
pub fn cc_fbdd(m: &Fbdd, y: &PartialInstance) -> Result<BigUint, QueryError> {
    check_dims(m, y.dim())?;
    let order = m.topological_order();
    let mut q: Vec<Rational> = vec![Rational::zero(); m.nodes().len()];
    let half = Rational::new(1.into(), 2.into());
    for &id in order.iter().rev() {
        q[id] = match m.node(id) {
            FbddNode::Leaf(b) => {
                if *b {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            FbddNode::Inner { var, lo, hi } => match y.cell(*var) {
                Some(false) => q[*lo].clone(),
                Some(true) => q[*hi].clone(),
                None => (&q[*lo] + &q[*hi]) * &half,
            },
        };
    }
    let two = Rational::from_integer(2.into());
    let total = &q[m.root()] * num::pow::pow(two, y.free_count());
    Ok(to_count(&total))
}

/// Is there a sufficient reason for `x` of size at most `k`? Searches
/// subsets of the features the model actually tests, ascending by size,
/// with the edge-pruning check as certificate; the first witness found is
/// therefore of minimum size. Features never tested cannot help, so
/// omitting them preserves the answer. The budget bounds the number of
/// candidate subsets.
pub fn msr_fbdd(
    m: &Fbdd,
    x: &Instance,
    k: usize,
    limit: u64,
) -> Result<Verdict<PartialInstance>, QueryError> {
    check_dims(m, x.dim())?;
    let tested = m.tested_features();
    let k_eff = k.min(tested.len());
    let required = ball_size(tested.len(), k_eff);
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    for size in 0..=k_eff {
        let mut witness = None;
        for_each_subset(tested.len(), size, &mut |subset| {
            let positions: Vec<usize> = subset.iter().map(|&i| tested[i]).collect();
            let y = x.restrict(&positions);
            if csr_fbdd(m, x, &y).expect("dimensions and completion hold by construction") {
                witness = Some(y);
                false
            } else {
                true
            }
        });
        if let Some(y) = witness {
            return Ok(Verdict::Yes(y));
        }
    }
    Ok(Verdict::No)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbdd::fixtures::or2;
    use crate::fbdd::FbddNode;

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    fn y(s: &str) -> PartialInstance {
        s.parse().unwrap()
    }

    #[test]
    fn mcr_finds_a_closest_flip() {
        let m = or2();
        // class of 00 is 0; one flip reaches a positive instance
        match mcr_fbdd(&m, &x("00"), 1).unwrap() {
            Verdict::Yes(w) => {
                assert_eq!(w.hamming(&x("00")), 1);
                assert!(m.eval(&w).unwrap());
            }
            Verdict::No => panic!("expected yes"),
        }
        // k = 0 permits only y = x
        assert_eq!(mcr_fbdd(&m, &x("11"), 0).unwrap(), Verdict::No);
    }

    #[test]
    fn mcr_on_constant_model_is_no() {
        let m = Fbdd::constant(true, 3);
        assert_eq!(mcr_fbdd(&m, &x("010"), 3).unwrap(), Verdict::No);
        assert_eq!(mcr_fbdd(&m, &x("111"), 3).unwrap(), Verdict::No);
    }

    #[test]
    fn mcr_needs_two_flips_on_and() {
        // x1 and x2 as a tree
        let m = Fbdd::new(
            vec![
                FbddNode::Inner { var: 0, lo: 3, hi: 1 },
                FbddNode::Inner { var: 1, lo: 3, hi: 2 },
                FbddNode::Leaf(true),
                FbddNode::Leaf(false),
            ],
            0,
            2,
        );
        assert_eq!(mcr_fbdd(&m, &x("00"), 1).unwrap(), Verdict::No);
        assert!(mcr_fbdd(&m, &x("00"), 2).unwrap().is_yes());
    }

    #[test]
    fn csr_prunes_contradicting_edges() {
        let m = or2();
        assert_eq!(csr_fbdd(&m, &x("10"), &y("1*")).unwrap(), true);
        assert_eq!(csr_fbdd(&m, &x("00"), &y("*0")).unwrap(), false);
        // an instance is always a sufficient reason for itself
        for s in ["00", "01", "10", "11"] {
            let xi = x(s);
            assert_eq!(
                csr_fbdd(&m, &xi, &PartialInstance::from_instance(&xi)).unwrap(),
                true
            );
        }
    }

    #[test]
    fn csr_rejects_non_completions() {
        let m = or2();
        assert!(matches!(
            csr_fbdd(&m, &x("10"), &y("01")),
            Err(QueryError::NotACompletion)
        ));
    }

    #[test]
    fn cc_counts_or_completions() {
        let m = or2();
        assert_eq!(cc_fbdd(&m, &y("**")).unwrap(), BigUint::from(3u32));
        assert_eq!(cc_fbdd(&m, &y("1*")).unwrap(), BigUint::from(2u32));
        assert_eq!(cc_fbdd(&m, &y("00")).unwrap(), BigUint::ZERO);
    }

    #[test]
    fn cc_on_fully_defined_matches_eval() {
        let m = or2();
        for s in ["00", "01", "10", "11"] {
            let count = cc_fbdd(&m, &PartialInstance::from_instance(&x(s))).unwrap();
            let expect = if m.eval(&x(s)).unwrap() { 1u32 } else { 0u32 };
            assert_eq!(count, BigUint::from(expect));
        }
    }

    #[test]
    fn msr_finds_smallest_witness() {
        let m = or2();
        match msr_fbdd(&m, &x("11"), 1, 1 << 20).unwrap() {
            Verdict::Yes(w) => {
                assert_eq!(w.to_string(), "1*");
                assert!(csr_fbdd(&m, &x("11"), &w).unwrap());
            }
            Verdict::No => panic!("expected yes"),
        }
        assert_eq!(msr_fbdd(&m, &x("00"), 1, 1 << 20).unwrap(), Verdict::No);
    }

    #[test]
    fn msr_budget_counts_subsets() {
        let m = or2();
        match msr_fbdd(&m, &x("11"), 2, 2) {
            Err(QueryError::BudgetExceeded { required, limit: 2 }) => {
                assert_eq!(required, BigUint::from(4u32));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
