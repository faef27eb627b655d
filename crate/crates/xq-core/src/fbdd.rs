//! Free binary decision diagrams.
//!
//! An FBDD is a rooted DAG whose internal nodes test features and whose
//! leaves carry the classification. Freeness means no root-to-leaf path
//! tests the same feature twice; decision trees are the tree-shaped
//! special case. Constant models (the root is a leaf) are legal, and the
//! dimension may exceed the set of features actually tested.

use crate::error::QueryError;
use crate::instance::Instance;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FbddNode {
    Leaf(bool),
    /// Tests feature `var` (0-based); `lo` is taken when the feature is 0,
    /// `hi` when it is 1.
    Inner { var: usize, lo: NodeId, hi: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fbdd {
    nodes: Vec<FbddNode>,
    root: NodeId,
    dim: usize,
}

/// Structural violations reported by [`Fbdd::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FbddViolation {
    RootOutOfRange { root: NodeId },
    ChildOutOfRange { node: NodeId, child: NodeId },
    LabelOutOfRange { node: NodeId, var: usize },
    Cycle { node: NodeId },
    /// Node `ancestor` and some node reachable from it test the same feature.
    Freeness { ancestor: NodeId, descendant: NodeId, var: usize },
}

impl Fbdd {
    pub fn new(nodes: Vec<FbddNode>, root: NodeId, dim: usize) -> Self {
        Fbdd { nodes, root, dim }
    }

    /// A constant model deciding `value` for every input.
    pub fn constant(value: bool, dim: usize) -> Self {
        Fbdd {
            nodes: vec![FbddNode::Leaf(value)],
            root: 0,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &[FbddNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &FbddNode {
        &self.nodes[id]
    }

    /// Model size: the number of edges.
    pub fn size(&self) -> usize {
        2 * self
            .nodes
            .iter()
            .filter(|n| matches!(n, FbddNode::Inner { .. }))
            .count()
    }

    /// Features tested by at least one node, ascending.
    pub fn tested_features(&self) -> Vec<usize> {
        let mut seen = vec![false; self.dim];
        for n in &self.nodes {
            if let FbddNode::Inner { var, .. } = n {
                if *var < self.dim {
                    seen[*var] = true;
                }
            }
        }
        (0..self.dim).filter(|i| seen[*i]).collect()
    }

    /// Follows the unique path selected by `x` and returns the leaf label.
    pub fn eval(&self, x: &Instance) -> Result<bool, QueryError> {
        if x.dim() != self.dim {
            return Err(QueryError::DimensionMismatch {
                expected: self.dim,
                actual: x.dim(),
            });
        }
        let mut id = self.root;
        // A validated FBDD cannot revisit a node along a path.
        for _ in 0..=self.nodes.len() {
            match &self.nodes[id] {
                FbddNode::Leaf(b) => return Ok(*b),
                FbddNode::Inner { var, lo, hi } => {
                    id = if x.bit(*var) { *hi } else { *lo };
                }
            }
        }
        panic!("cycle encountered during evaluation; validate the FBDD first");
    }

    /// Structural validation: children and labels in range, acyclicity,
    /// and freeness. Freeness is checked per label by reverse
    /// reachability, O(dim * size) overall, rather than by enumerating
    /// paths.
    pub fn validate(&self) -> Vec<FbddViolation> {
        let mut out = Vec::new();
        if self.root >= self.nodes.len() {
            out.push(FbddViolation::RootOutOfRange { root: self.root });
            return out;
        }
        for (id, n) in self.nodes.iter().enumerate() {
            if let FbddNode::Inner { var, lo, hi } = n {
                if *var >= self.dim {
                    out.push(FbddViolation::LabelOutOfRange { node: id, var: *var });
                }
                for child in [*lo, *hi] {
                    if child >= self.nodes.len() {
                        out.push(FbddViolation::ChildOutOfRange { node: id, child });
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        // Cycle check by iterative three-color DFS from the root.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; self.nodes.len()];
        let mut stack: Vec<(NodeId, usize)> = vec![(self.root, 0)];
        color[self.root] = Color::Gray;
        while let Some((id, child_idx)) = stack.pop() {
            let children: [NodeId; 2] = match &self.nodes[id] {
                FbddNode::Leaf(_) => {
                    color[id] = Color::Black;
                    continue;
                }
                FbddNode::Inner { lo, hi, .. } => [*lo, *hi],
            };
            if child_idx >= 2 {
                color[id] = Color::Black;
                continue;
            }
            stack.push((id, child_idx + 1));
            let c = children[child_idx];
            match color[c] {
                Color::Gray => {
                    out.push(FbddViolation::Cycle { node: c });
                    return out;
                }
                Color::White => {
                    color[c] = Color::Gray;
                    stack.push((c, 0));
                }
                Color::Black => {}
            }
        }

        // Freeness: for each tested label v, a node labeled v must not
        // reach another node labeled v through at least one edge.
        for v in self.tested_features() {
            // reaches[id] = Some(descendant) when a v-labeled node is
            // reachable from id via one or more edges.
            let mut reaches: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
            let order = self.topological_order();
            for &id in order.iter().rev() {
                if let FbddNode::Inner { lo, hi, .. } = &self.nodes[id] {
                    for child in [*lo, *hi] {
                        let hit = match &self.nodes[child] {
                            FbddNode::Inner { var, .. } if *var == v => Some(child),
                            _ => reaches[child],
                        };
                        if reaches[id].is_none() {
                            reaches[id] = hit;
                        }
                    }
                }
            }
            for (id, n) in self.nodes.iter().enumerate() {
                if let FbddNode::Inner { var, .. } = n {
                    if *var == v {
                        if let Some(descendant) = reaches[id] {
                            out.push(FbddViolation::Freeness {
                                ancestor: id,
                                descendant,
                                var: v,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Node ids reachable from the root, parents before children.
    /// Requires an acyclic graph.
    pub fn topological_order(&self) -> Vec<NodeId> {
        let mut visited = vec![false; self.nodes.len()];
        let mut order = Vec::new();
        let mut stack: Vec<(NodeId, bool)> = vec![(self.root, false)];
        while let Some((id, processed)) = stack.pop() {
            if processed {
                order.push(id);
                continue;
            }
            if visited[id] {
                continue;
            }
            visited[id] = true;
            stack.push((id, true));
            if let FbddNode::Inner { lo, hi, .. } = &self.nodes[id] {
                stack.push((*lo, false));
                stack.push((*hi, false));
            }
        }
        order.reverse();
        order
    }

    /// A copy with every leaf label negated; computes the complement.
    pub fn negated(&self) -> Fbdd {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                FbddNode::Leaf(b) => FbddNode::Leaf(!*b),
                inner => inner.clone(),
            })
            .collect();
        Fbdd {
            nodes,
            root: self.root,
            dim: self.dim,
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Two-node FBDD computing `x1 or x2`: the root tests feature 1,
    /// hi to True, lo to a node testing feature 2 (hi True, lo False).
    pub fn or2() -> Fbdd {
        Fbdd::new(
            vec![
                FbddNode::Inner { var: 0, lo: 1, hi: 2 },
                FbddNode::Inner { var: 1, lo: 3, hi: 2 },
                FbddNode::Leaf(true),
                FbddNode::Leaf(false),
            ],
            0,
            2,
        )
    }
}
