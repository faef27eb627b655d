//! Instances, partial instances and completion enumeration.

use std::fmt;
use std::str::FromStr;

/// A fully defined input: a fixed-length vector over {0,1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    bits: Vec<bool>,
}

impl Instance {
    pub fn new(bits: Vec<bool>) -> Self {
        Instance { bits }
    }

    /// The all-zero instance of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Instance { bits: vec![false; dim] }
    }

    /// The all-one instance of dimension `dim`.
    pub fn ones(dim: usize) -> Self {
        Instance { bits: vec![true; dim] }
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    /// Returns a copy with feature `i` flipped.
    pub fn flipped(&self, i: usize) -> Instance {
        let mut out = self.clone();
        out.bits[i] = !out.bits[i];
        out
    }

    /// Hamming distance. Panics on dimension mismatch.
    pub fn hamming(&self, other: &Instance) -> usize {
        assert_eq!(self.dim(), other.dim());
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// The partial instance defined exactly on `positions`, with this
    /// instance's values there and undefined elsewhere.
    pub fn restrict(&self, positions: &[usize]) -> PartialInstance {
        let mut cells = vec![None; self.dim()];
        for &p in positions {
            cells[p] = Some(self.bits[p]);
        }
        PartialInstance::new(cells)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(format!("invalid instance character {c:?}")),
            }
        }
        Ok(Instance { bits })
    }
}

/// A partially defined input: a fixed-length vector over {0,1,undefined}.
/// Undefined cells are written `*` in the text form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInstance {
    cells: Vec<Option<bool>>,
}

impl PartialInstance {
    pub fn new(cells: Vec<Option<bool>>) -> Self {
        PartialInstance { cells }
    }

    /// The fully undefined partial instance of dimension `dim`.
    pub fn undefined(dim: usize) -> Self {
        PartialInstance { cells: vec![None; dim] }
    }

    /// The fully defined partial instance matching `x`.
    pub fn from_instance(x: &Instance) -> Self {
        PartialInstance {
            cells: x.bits().iter().map(|b| Some(*b)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, i: usize) -> Option<bool> {
        self.cells[i]
    }

    pub fn cells(&self) -> &[Option<bool>] {
        &self.cells
    }

    pub fn set(&mut self, i: usize, v: Option<bool>) {
        self.cells[i] = v;
    }

    /// Number of defined cells.
    pub fn defined_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Number of undefined cells.
    pub fn free_count(&self) -> usize {
        self.dim() - self.defined_count()
    }

    /// Positions of the undefined cells, ascending.
    pub fn free_positions(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.is_none().then_some(i))
            .collect()
    }

    /// True iff `x` agrees with every defined cell.
    pub fn is_completion(&self, x: &Instance) -> bool {
        self.dim() == x.dim()
            && self
                .cells
                .iter()
                .zip(x.bits())
                .all(|(c, b)| c.is_none() || *c == Some(*b))
    }

    /// Enumerates all completions in lexicographic order of the free cells
    /// (the first free position is the most significant). Yields exactly
    /// `2^free_count` instances; the caller guards against explosion.
    pub fn completions(&self) -> Completions<'_> {
        Completions {
            partial: self,
            free: self.free_positions(),
            next: Some(vec![false; self.free_count()]),
        }
    }
}

impl fmt::Display for PartialInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            let ch = match c {
                Some(true) => '1',
                Some(false) => '0',
                None => '*',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl FromStr for PartialInstance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cells = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => cells.push(Some(false)),
                '1' => cells.push(Some(true)),
                '*' => cells.push(None),
                _ => return Err(format!("invalid partial-instance character {c:?}")),
            }
        }
        Ok(PartialInstance { cells })
    }
}

/// Iterator over the completions of a partial instance.
pub struct Completions<'a> {
    partial: &'a PartialInstance,
    free: Vec<usize>,
    next: Option<Vec<bool>>,
}

impl Iterator for Completions<'_> {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        let assignment = self.next.take()?;
        let mut bits: Vec<bool> = self
            .partial
            .cells()
            .iter()
            .map(|c| c.unwrap_or(false))
            .collect();
        for (pos, v) in self.free.iter().zip(&assignment) {
            bits[*pos] = *v;
        }
        // Binary increment, least significant last so the first free cell
        // varies slowest (lexicographic order).
        let mut carry = assignment;
        for i in (0..carry.len()).rev() {
            if !carry[i] {
                carry[i] = true;
                self.next = Some(carry);
                return Some(Instance::new(bits));
            }
            carry[i] = false;
        }
        self.next = None;
        Some(Instance::new(bits))
    }
}
