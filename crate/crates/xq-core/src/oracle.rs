//! Brute-force reference implementation of all four queries.
//!
//! This module is the single ground truth used by the property tests. It
//! evaluates the query definitions literally, sees the model only through
//! its evaluation function, and shares no enumeration helpers with the
//! engines it is used to check.

use num::BigUint;

use crate::error::QueryError;
use crate::fbdd::Fbdd;
use crate::instance::{Instance, PartialInstance};
use crate::mlp::Mlp;
use crate::perceptron::Perceptron;
use crate::verdict::Verdict;

/// A model under oracle scrutiny.
#[derive(Clone, Copy)]
pub enum OracleModel<'a> {
    Fbdd(&'a Fbdd),
    Perceptron(&'a Perceptron),
    Mlp(&'a Mlp),
}

impl OracleModel<'_> {
    pub fn dim(&self) -> usize {
        match self {
            OracleModel::Fbdd(m) => m.dim(),
            OracleModel::Perceptron(m) => m.dim(),
            OracleModel::Mlp(m) => m.input_dim(),
        }
    }

    pub fn eval(&self, x: &Instance) -> Result<bool, QueryError> {
        match self {
            OracleModel::Fbdd(m) => m.eval(x),
            OracleModel::Perceptron(m) => m.eval(x),
            OracleModel::Mlp(m) => m.eval(x),
        }
    }
}

#[derive(Debug, Clone)]
pub enum OracleQuery {
    Mcr { x: Instance, k: usize },
    Msr { x: Instance, k: usize },
    Csr { x: Instance, y: PartialInstance },
    Cc { y: PartialInstance },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Mcr(Verdict<Instance>),
    Msr(Verdict<PartialInstance>),
    Csr(bool),
    Count(BigUint),
}

/// Answers `query` on `model` by literal enumeration of the definition.
pub fn oracle_query(
    model: OracleModel<'_>,
    query: &OracleQuery,
    limit: u64,
) -> Result<OracleAnswer, QueryError> {
    let dim = model.dim();
    let eval = |x: &Instance| model.eval(x).expect("oracle evaluates matching dimensions");
    match query {
        OracleQuery::Mcr { x, k } => Ok(OracleAnswer::Mcr(oracle_mcr(&eval, dim, x, *k, limit)?)),
        OracleQuery::Msr { x, k } => Ok(OracleAnswer::Msr(oracle_msr(&eval, dim, x, *k, limit)?)),
        OracleQuery::Csr { x, y } => Ok(OracleAnswer::Csr(oracle_csr(&eval, dim, x, y, limit)?)),
        OracleQuery::Cc { y } => Ok(OracleAnswer::Count(oracle_cc(&eval, dim, y, limit)?)),
    }
}

fn check_dim(dim: usize, actual: usize) -> Result<(), QueryError> {
    if dim != actual {
        return Err(QueryError::DimensionMismatch { expected: dim, actual });
    }
    Ok(())
}

// Local counting helpers; the engines keep their own.

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn pow2(e: usize) -> BigUint {
    BigUint::from(1u32) << e
}

/// Enumerates all size-`size` position subsets recursively, calling
/// `visit`; stops once `visit` returns true and reports whether it did.
fn visit_subsets(
    dim: usize,
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if current.len() == size {
        return visit(current);
    }
    let remaining = size - current.len();
    for p in start..=dim.saturating_sub(remaining) {
        current.push(p);
        if visit_subsets(dim, size, p + 1, current, visit) {
            return true;
        }
        current.pop();
    }
    false
}

/// Enumerates the completions of `y` recursively; stops early when
/// `visit` returns true and reports whether it did.
fn visit_completions(y: &PartialInstance, visit: &mut dyn FnMut(&Instance) -> bool) -> bool {
    fn go(
        cells: &[Option<bool>],
        pos: usize,
        acc: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Instance) -> bool,
    ) -> bool {
        if pos == cells.len() {
            return visit(&Instance::new(acc.clone()));
        }
        match cells[pos] {
            Some(b) => {
                acc.push(b);
                let stop = go(cells, pos + 1, acc, visit);
                acc.pop();
                stop
            }
            None => {
                for b in [false, true] {
                    acc.push(b);
                    if go(cells, pos + 1, acc, visit) {
                        acc.pop();
                        return true;
                    }
                    acc.pop();
                }
                false
            }
        }
    }
    let mut acc = Vec::with_capacity(y.dim());
    go(y.cells(), 0, &mut acc, visit)
}

/// Minimum change required, by scanning every instance within Hamming
/// distance `k` of `x` in ascending distance order.
pub fn oracle_mcr(
    eval: &dyn Fn(&Instance) -> bool,
    dim: usize,
    x: &Instance,
    k: usize,
    limit: u64,
) -> Result<Verdict<Instance>, QueryError> {
    check_dim(dim, x.dim())?;
    let k = k.min(dim);
    let required: BigUint = (0..=k).map(|s| choose(dim, s)).sum();
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    let class = eval(x);
    for size in 0..=k {
        let mut found = None;
        visit_subsets(dim, size, 0, &mut Vec::new(), &mut |subset| {
            let mut y = x.clone();
            for &p in subset {
                y.set(p, !y.bit(p));
            }
            if eval(&y) != class {
                found = Some(y);
                true
            } else {
                false
            }
        });
        if let Some(y) = found {
            return Ok(Verdict::Yes(y));
        }
    }
    Ok(Verdict::No)
}

/// Minimum sufficient reason, by scanning every sub-partial-instance of
/// `x` in ascending size order and checking all of its completions.
pub fn oracle_msr(
    eval: &dyn Fn(&Instance) -> bool,
    dim: usize,
    x: &Instance,
    k: usize,
    limit: u64,
) -> Result<Verdict<PartialInstance>, QueryError> {
    check_dim(dim, x.dim())?;
    let k = k.min(dim);
    let required: BigUint = (0..=k).map(|s| choose(dim, s) * pow2(dim - s)).sum();
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    let class = eval(x);
    for size in 0..=k {
        let mut found = None;
        visit_subsets(dim, size, 0, &mut Vec::new(), &mut |subset| {
            let y = x.restrict(subset);
            let mut all_same = true;
            visit_completions(&y, &mut |z| {
                if eval(z) != class {
                    all_same = false;
                    true
                } else {
                    false
                }
            });
            if all_same {
                found = Some(y);
                true
            } else {
                false
            }
        });
        if let Some(y) = found {
            return Ok(Verdict::Yes(y));
        }
    }
    Ok(Verdict::No)
}

/// Checks a sufficient reason by scanning all completions of `y`.
pub fn oracle_csr(
    eval: &dyn Fn(&Instance) -> bool,
    dim: usize,
    x: &Instance,
    y: &PartialInstance,
    limit: u64,
) -> Result<bool, QueryError> {
    check_dim(dim, x.dim())?;
    check_dim(dim, y.dim())?;
    if !y.is_completion(x) {
        return Err(QueryError::NotACompletion);
    }
    let required = pow2(y.free_count());
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    let class = eval(x);
    let mut all_same = true;
    visit_completions(y, &mut |z| {
        if eval(z) != class {
            all_same = false;
            true
        } else {
            false
        }
    });
    Ok(all_same)
}

/// Counts positive completions by scanning all of them.
pub fn oracle_cc(
    eval: &dyn Fn(&Instance) -> bool,
    dim: usize,
    y: &PartialInstance,
    limit: u64,
) -> Result<BigUint, QueryError> {
    check_dim(dim, y.dim())?;
    let required = pow2(y.free_count());
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    let mut count = BigUint::ZERO;
    visit_completions(y, &mut |z| {
        if eval(z) {
            count += 1u32;
        }
        false
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbdd::fixtures::or2;
    use crate::perceptron::fixtures::p1;

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    fn y(s: &str) -> PartialInstance {
        s.parse().unwrap()
    }

    const LIMIT: u64 = 1 << 20;

    #[test]
    fn counts_positive_completions_of_or() {
        let m = or2();
        let ans = oracle_query(OracleModel::Fbdd(&m), &OracleQuery::Cc { y: y("**") }, LIMIT).unwrap();
        assert_eq!(ans, OracleAnswer::Count(3u32.into()));
    }

    #[test]
    fn finds_minimum_change_for_perceptron() {
        let m = p1();
        let ans = oracle_query(
            OracleModel::Perceptron(&m),
            &OracleQuery::Mcr { x: x("101"), k: 1 },
            LIMIT,
        )
        .unwrap();
        match ans {
            OracleAnswer::Mcr(Verdict::Yes(w)) => {
                assert_eq!(w.hamming(&x("101")), 1);
                assert_ne!(m.eval(&w).unwrap(), m.eval(&x("101")).unwrap());
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn an_instance_is_its_own_sufficient_reason() {
        let m = or2();
        for s in ["00", "01", "10", "11"] {
            let ans = oracle_query(
                OracleModel::Fbdd(&m),
                &OracleQuery::Csr {
                    x: x(s),
                    y: PartialInstance::from_instance(&x(s)),
                },
                LIMIT,
            )
            .unwrap();
            assert_eq!(ans, OracleAnswer::Csr(true));
        }
    }

    #[test]
    fn csr_requires_a_completion() {
        let m = or2();
        assert!(matches!(
            oracle_csr(&|z| m.eval(z).unwrap(), 2, &x("10"), &y("01"), LIMIT),
            Err(QueryError::NotACompletion)
        ));
    }

    #[test]
    fn budget_errors_carry_the_required_count() {
        let m = or2();
        match oracle_cc(&|z| m.eval(z).unwrap(), 2, &y("**"), 3) {
            Err(QueryError::BudgetExceeded { required, limit: 3 }) => {
                assert_eq!(required, BigUint::from(4u32));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn msr_scans_by_ascending_size() {
        let m = or2();
        let ans = oracle_msr(&|z| m.eval(z).unwrap(), 2, &x("11"), 2, LIMIT).unwrap();
        match ans {
            Verdict::Yes(w) => assert_eq!(w.defined_count(), 1),
            Verdict::No => panic!("expected yes"),
        }
    }
}
