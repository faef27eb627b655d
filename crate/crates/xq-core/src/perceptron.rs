//! Linear threshold models.

use num::Zero;

use crate::error::QueryError;
use crate::instance::Instance;
use crate::rational::Rational;

/// A perceptron `(w, b)` classifies `x` as positive iff
/// `<x, w> + b >= 0`; the boundary is inclusive and decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perceptron {
    weights: Vec<Rational>,
    bias: Rational,
}

impl Perceptron {
    pub fn new(weights: Vec<Rational>, bias: Rational) -> Self {
        Perceptron { weights, bias }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn bias(&self) -> &Rational {
        &self.bias
    }

    /// The exact pre-activation `<x, w> + b`.
    pub fn margin(&self, x: &Instance) -> Result<Rational, QueryError> {
        if x.dim() != self.dim() {
            return Err(QueryError::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        let mut acc = self.bias.clone();
        for (w, bit) in self.weights.iter().zip(x.bits()) {
            if *bit && !w.is_zero() {
                acc += w;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Instance) -> Result<bool, QueryError> {
        Ok(!self.margin(x)?.is_negative())
    }
}

trait IsNegative {
    fn is_negative(&self) -> bool;
}

impl IsNegative for Rational {
    fn is_negative(&self) -> bool {
        use num::Signed;
        Signed::is_negative(self)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rational::rat;

    /// w = (3, -5, -2), b = 1.
    pub fn p1() -> Perceptron {
        Perceptron::new(vec![rat(3), rat(-5), rat(-2)], rat(1))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::p1;
    use super::*;
    use crate::rational::rat;

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    #[test]
    fn threshold_is_inclusive() {
        let m = p1();
        // 3 - 2 + 1 = 2 >= 0
        assert_eq!(m.eval(&x("101")).unwrap(), true);
        // -5 + 1 = -4 < 0
        assert_eq!(m.eval(&x("010")).unwrap(), false);
        // boundary: 3 - 5 + 2... pick w sum hitting exactly -b
        let m = Perceptron::new(vec![rat(1)], rat(-1));
        assert_eq!(m.eval(&x("1")).unwrap(), true);
        assert_eq!(m.eval(&x("0")).unwrap(), false);
    }

    #[test]
    fn empty_sum_is_zero() {
        let m = Perceptron::new(vec![], rat(0));
        assert_eq!(m.eval(&Instance::zeros(0)).unwrap(), true);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(p1().eval(&x("10")).is_err());
    }
}
