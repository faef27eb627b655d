//! Gate DAGs: And/Or/Not circuits and majority circuits.
//!
//! Majority circuits allow parallel edges, stored as per-edge
//! multiplicities rather than duplicated gates; a gate's fan-in counts
//! multiplicities. A majority gate fires iff its weighted true inputs
//! strictly exceed half its fan-in. And/Or gates are "large" above fan-in
//! 2, majority gates above fan-in 3.

use num::BigUint;

use crate::combinatorics::{binomial, for_each_subset};
use crate::error::QueryError;
use crate::instance::Instance;

pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolGate {
    Input(usize),
    Not(GateId),
    And(Vec<GateId>),
    Or(Vec<GateId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolCircuit {
    pub gates: Vec<BoolGate>,
    pub output: GateId,
    pub var_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MajGate {
    Input(usize),
    /// Children with positive edge multiplicities.
    Maj(Vec<(GateId, u64)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajCircuit {
    pub gates: Vec<MajGate>,
    pub output: GateId,
    pub var_count: usize,
}

/// Shared view of a circuit's wiring, enough for evaluation and for the
/// depth/weft metrics.
pub trait Circuit {
    fn var_count(&self) -> usize;
    fn gate_count(&self) -> usize;
    fn output(&self) -> GateId;
    /// Children of gate `id`, multiplicities flattened away.
    fn children(&self, id: GateId) -> Vec<GateId>;
    /// Input variable tested by gate `id`, when it is an input gate.
    fn input_var(&self, id: GateId) -> Option<usize>;
    fn is_large(&self, id: GateId) -> bool;
    fn eval_gates(&self, x: &Instance) -> Vec<bool>;

    fn eval(&self, x: &Instance) -> Result<bool, QueryError> {
        if x.dim() != self.var_count() {
            return Err(QueryError::DimensionMismatch {
                expected: self.var_count(),
                actual: x.dim(),
            });
        }
        Ok(self.eval_gates(x)[self.output()])
    }
}

impl BoolCircuit {
    /// Gate ids in dependency order (children before parents). Panics on a
    /// cyclic gate table; use [`BoolCircuit::is_acyclic`] to check first.
    pub fn topological_order(&self) -> Vec<GateId> {
        topological_order(self).expect("circuit contains a cycle")
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_some()
    }
}

impl MajCircuit {
    pub fn topological_order(&self) -> Vec<GateId> {
        topological_order(self).expect("circuit contains a cycle")
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_some()
    }

    /// Fan-in of a gate, multiplicities included.
    pub fn fan_in(&self, id: GateId) -> u64 {
        match &self.gates[id] {
            MajGate::Input(_) => 0,
            MajGate::Maj(children) => children.iter().map(|(_, m)| *m).sum(),
        }
    }
}

impl Circuit for BoolCircuit {
    fn var_count(&self) -> usize {
        self.var_count
    }

    fn gate_count(&self) -> usize {
        self.gates.len()
    }

    fn output(&self) -> GateId {
        self.output
    }

    fn children(&self, id: GateId) -> Vec<GateId> {
        match &self.gates[id] {
            BoolGate::Input(_) => vec![],
            BoolGate::Not(c) => vec![*c],
            BoolGate::And(cs) | BoolGate::Or(cs) => cs.clone(),
        }
    }

    fn input_var(&self, id: GateId) -> Option<usize> {
        match &self.gates[id] {
            BoolGate::Input(v) => Some(*v),
            _ => None,
        }
    }

    fn is_large(&self, id: GateId) -> bool {
        match &self.gates[id] {
            BoolGate::Input(_) | BoolGate::Not(_) => false,
            BoolGate::And(cs) | BoolGate::Or(cs) => cs.len() > 2,
        }
    }

    fn eval_gates(&self, x: &Instance) -> Vec<bool> {
        let mut value = vec![false; self.gates.len()];
        for id in self.topological_order() {
            value[id] = match &self.gates[id] {
                BoolGate::Input(v) => x.bit(*v),
                BoolGate::Not(c) => !value[*c],
                BoolGate::And(cs) => cs.iter().all(|c| value[*c]),
                BoolGate::Or(cs) => cs.iter().any(|c| value[*c]),
            };
        }
        value
    }
}

impl Circuit for MajCircuit {
    fn var_count(&self) -> usize {
        self.var_count
    }

    fn gate_count(&self) -> usize {
        self.gates.len()
    }

    fn output(&self) -> GateId {
        self.output
    }

    fn children(&self, id: GateId) -> Vec<GateId> {
        match &self.gates[id] {
            MajGate::Input(_) => vec![],
            MajGate::Maj(children) => children.iter().map(|(c, _)| *c).collect(),
        }
    }

    fn input_var(&self, id: GateId) -> Option<usize> {
        match &self.gates[id] {
            MajGate::Input(v) => Some(*v),
            _ => None,
        }
    }

    fn is_large(&self, id: GateId) -> bool {
        match &self.gates[id] {
            MajGate::Input(_) => false,
            MajGate::Maj(_) => self.fan_in(id) > 3,
        }
    }

    fn eval_gates(&self, x: &Instance) -> Vec<bool> {
        let mut value = vec![false; self.gates.len()];
        for id in self.topological_order() {
            value[id] = match &self.gates[id] {
                MajGate::Input(v) => x.bit(*v),
                MajGate::Maj(children) => {
                    let total: u64 = children.iter().map(|(_, m)| *m).sum();
                    let fired: u64 = children
                        .iter()
                        .filter(|(c, _)| value[*c])
                        .map(|(_, m)| *m)
                        .sum();
                    // strict majority
                    2 * fired > total
                }
            };
        }
        value
    }
}

fn topological_order<C: Circuit + ?Sized>(c: &C) -> Option<Vec<GateId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; c.gate_count()];
    let mut order = Vec::with_capacity(c.gate_count());
    for start in 0..c.gate_count() {
        if color[start] != Color::White {
            continue;
        }
        let mut stack: Vec<(GateId, usize)> = vec![(start, 0)];
        color[start] = Color::Gray;
        while let Some((id, child_idx)) = stack.pop() {
            let children = c.children(id);
            if child_idx >= children.len() {
                color[id] = Color::Black;
                order.push(id);
                continue;
            }
            stack.push((id, child_idx + 1));
            let child = children[child_idx];
            match color[child] {
                Color::Gray => return None,
                Color::White => {
                    color[child] = Color::Gray;
                    stack.push((child, 0));
                }
                Color::Black => {}
            }
        }
    }
    Some(order)
}

/// Depth (longest input-to-output path, in edges) and weft (maximum
/// number of large gates on any such path). Only gates that can reach the
/// output are considered.
pub fn depth_and_weft<C: Circuit + ?Sized>(c: &C) -> (usize, usize) {
    let order = topological_order(c).expect("circuit contains a cycle");
    let mut reaches_output = vec![false; c.gate_count()];
    reaches_output[c.output()] = true;
    for &id in order.iter().rev() {
        if reaches_output[id] {
            for child in c.children(id) {
                reaches_output[child] = true;
            }
        }
    }
    let mut depth = vec![0usize; c.gate_count()];
    let mut weft = vec![0usize; c.gate_count()];
    for &id in &order {
        if !reaches_output[id] {
            continue;
        }
        let children = c.children(id);
        let large = c.is_large(id) as usize;
        if children.is_empty() {
            weft[id] = large;
            continue;
        }
        depth[id] = 1 + children.iter().map(|&ch| depth[ch]).max().unwrap();
        weft[id] = large + children.iter().map(|&ch| weft[ch]).max().unwrap();
    }
    (depth[c.output()], weft[c.output()])
}

/// Weighted circuit satisfiability by exhaustive enumeration: is there a
/// satisfying assignment with exactly `k` inputs set to 1? The weight
/// counts input variables, not gate occurrences. Errors out when the
/// number of candidate assignments `C(n, k)` exceeds `limit`.
pub fn wcs_brute<C: Circuit + ?Sized>(
    c: &C,
    k: usize,
    limit: u64,
) -> Result<Option<Instance>, QueryError> {
    let n = c.var_count();
    if k > n {
        return Ok(None);
    }
    let required = binomial(n, k);
    if required > BigUint::from(limit) {
        return Err(QueryError::BudgetExceeded { required, limit });
    }
    let mut found = None;
    for_each_subset(n, k, &mut |subset| {
        let mut x = Instance::zeros(n);
        for &i in subset {
            x.set(i, true);
        }
        if c.eval(&x).expect("dimension fixed by construction") {
            found = Some(x);
            return false;
        }
        true
    });
    Ok(found)
}
