//! Multilayer perceptrons with exact rational arithmetic.

use num::{Signed, Zero};

use crate::error::QueryError;
use crate::instance::Instance;
use crate::perceptron::Perceptron;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Step,
}

impl Activation {
    fn apply(self, v: Rational) -> Rational {
        match self {
            Activation::Relu => {
                if v.is_negative() {
                    Rational::zero()
                } else {
                    v
                }
            }
            Activation::Step => {
                if v.is_negative() {
                    Rational::zero()
                } else {
                    Rational::from_integer(1.into())
                }
            }
        }
    }
}

/// One layer: `weights[i][j]` connects input `i` to neuron `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub weights: Vec<Vec<Rational>>,
    pub biases: Vec<Rational>,
    pub activation: Activation,
}

impl Layer {
    pub fn input_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn output_dim(&self) -> usize {
        self.biases.len()
    }
}

/// A layered model alternating affine maps and activations. In the
/// standard form every internal layer uses relu and the single-output
/// final layer uses the inclusive step; the step-only models produced by
/// the activation-lowering compiler are also representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mlp {
    input_dim: usize,
    layers: Vec<Layer>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MlpViolation {
    NoLayers,
    ShapeMismatch { layer: usize, expected_inputs: usize, actual: usize },
    RaggedWeights { layer: usize },
    OutputDimNotOne { actual: usize },
    LastActivationNotStep,
    InternalStep { layer: usize },
}

impl Mlp {
    pub fn new(input_dim: usize, layers: Vec<Layer>) -> Self {
        Mlp { input_dim, layers }
    }

    /// A single-layer model equivalent to the perceptron.
    pub fn from_perceptron(p: &Perceptron) -> Self {
        Mlp {
            input_dim: p.dim(),
            layers: vec![Layer {
                weights: p.weights().iter().map(|w| vec![w.clone()]).collect(),
                biases: vec![p.bias().clone()],
                activation: Activation::Step,
            }],
        }
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Layer] {
        &mut self.layers
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Layer widths `d_0, d_1, ..., d_k`.
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![self.input_dim];
        out.extend(self.layers.iter().map(|l| l.output_dim()));
        out
    }

    /// Total neuron count (graph size), inputs included.
    pub fn graph_size(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Maximum layer width, inputs included.
    pub fn width(&self) -> usize {
        self.dims().into_iter().max().unwrap_or(0)
    }

    /// All weights and biases.
    pub fn parameters(&self) -> impl Iterator<Item = &Rational> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().flatten().chain(l.biases.iter()))
    }

    /// Shape validation plus, when `standard_form`, the relu/step
    /// activation pattern with a single output neuron.
    pub fn validate(&self, standard_form: bool) -> Vec<MlpViolation> {
        let mut out = Vec::new();
        if self.layers.is_empty() {
            out.push(MlpViolation::NoLayers);
            return out;
        }
        let mut prev = self.input_dim;
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.input_dim() != prev {
                out.push(MlpViolation::ShapeMismatch {
                    layer: i,
                    expected_inputs: prev,
                    actual: layer.input_dim(),
                });
            }
            if layer.weights.iter().any(|row| row.len() != layer.output_dim()) {
                out.push(MlpViolation::RaggedWeights { layer: i });
            }
            prev = layer.output_dim();
        }
        if prev != 1 {
            out.push(MlpViolation::OutputDimNotOne { actual: prev });
        }
        let last = self.layers.len() - 1;
        if self.layers[last].activation != Activation::Step {
            out.push(MlpViolation::LastActivationNotStep);
        }
        if standard_form {
            for (i, layer) in self.layers.iter().enumerate() {
                if i != last && layer.activation == Activation::Step {
                    out.push(MlpViolation::InternalStep { layer: i });
                }
            }
        }
        out
    }

    /// Forward pass returning every layer's activation vector, the input
    /// excluded. Zero weights and zero activations are skipped, which
    /// matters for the sparse models produced by the circuit compilers.
    pub fn eval_layers(&self, x: &Instance) -> Result<Vec<Vec<Rational>>, QueryError> {
        if x.dim() != self.input_dim {
            return Err(QueryError::DimensionMismatch {
                expected: self.input_dim,
                actual: x.dim(),
            });
        }
        let one = Rational::from_integer(1.into());
        let mut h: Vec<Rational> = x
            .bits()
            .iter()
            .map(|b| if *b { one.clone() } else { Rational::zero() })
            .collect();
        let mut trace = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let mut next = layer.biases.clone();
            for (i, hi) in h.iter().enumerate() {
                if hi.is_zero() {
                    continue;
                }
                for (j, w) in layer.weights[i].iter().enumerate() {
                    if !w.is_zero() {
                        next[j] += hi * w;
                    }
                }
            }
            for v in &mut next {
                *v = layer.activation.apply(std::mem::take(v));
            }
            trace.push(next.clone());
            h = next;
        }
        Ok(trace)
    }

    pub fn eval(&self, x: &Instance) -> Result<bool, QueryError> {
        let trace = self.eval_layers(x)?;
        let out = trace
            .last()
            .and_then(|l| l.first())
            .expect("validated model has one output neuron");
        Ok(!out.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    /// NOT as relu(-x + 1) under step(2h - 1).
    fn not_mlp() -> Mlp {
        Mlp::new(
            1,
            vec![
                Layer {
                    weights: vec![vec![rat(-1)]],
                    biases: vec![rat(1)],
                    activation: Activation::Relu,
                },
                Layer {
                    weights: vec![vec![rat(2)]],
                    biases: vec![rat(-1)],
                    activation: Activation::Step,
                },
            ],
        )
    }

    /// 3-input AND as relu(sum - 2) under step(2h - 1).
    fn and3_mlp() -> Mlp {
        Mlp::new(
            3,
            vec![
                Layer {
                    weights: vec![vec![rat(1)], vec![rat(1)], vec![rat(1)]],
                    biases: vec![rat(-2)],
                    activation: Activation::Relu,
                },
                Layer {
                    weights: vec![vec![rat(2)]],
                    biases: vec![rat(-1)],
                    activation: Activation::Step,
                },
            ],
        )
    }

    #[test]
    fn relu_gates_compute_not_and_and() {
        let not = not_mlp();
        assert_eq!(not.eval(&x("0")).unwrap(), true);
        assert_eq!(not.eval(&x("1")).unwrap(), false);

        let and = and3_mlp();
        assert_eq!(and.eval(&x("110")).unwrap(), false);
        assert_eq!(and.eval(&x("111")).unwrap(), true);
    }

    #[test]
    fn single_layer_matches_perceptron() {
        let p = crate::perceptron::fixtures::p1();
        let m = Mlp::from_perceptron(&p);
        assert!(m.validate(true).is_empty());
        for s in ["000", "001", "010", "011", "100", "101", "110", "111"] {
            assert_eq!(m.eval(&x(s)).unwrap(), p.eval(&x(s)).unwrap(), "at {s}");
        }
    }

    #[test]
    fn validate_catches_shape_errors() {
        let bad = Mlp::new(
            2,
            vec![Layer {
                weights: vec![vec![rat(1)]],
                biases: vec![rat(0)],
                activation: Activation::Step,
            }],
        );
        assert!(!bad.validate(true).is_empty());

        let two_outputs = Mlp::new(
            1,
            vec![Layer {
                weights: vec![vec![rat(1), rat(1)]],
                biases: vec![rat(0), rat(0)],
                activation: Activation::Step,
            }],
        );
        assert!(two_outputs
            .validate(false)
            .iter()
            .any(|v| matches!(v, MlpViolation::OutputDimNotOne { actual: 2 })));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(not_mlp().eval(&x("01")).is_err());
    }
}
