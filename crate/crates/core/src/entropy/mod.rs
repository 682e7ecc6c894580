//! Chromatic entropy, graph entropy, conditional graph entropy and the
//! finite-n sequence bounding complementary graph entropy.

mod chromatic;
mod complementary;
mod conditional;
mod graph;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphalg::Coloring;
use crate::graphs::Graph;
use crate::model::Rational;

pub use chromatic::chromatic_entropy;
pub use complementary::{and_union_min_rate, complementary_entropy_sequence, ComplementarySequence, MinRate};
pub use conditional::conditional_graph_entropy;
pub use graph::{graph_entropy, entropy_by_components, ComponentEntropy, ComponentSplit};

/// A graph with a pmf on its vertices; zero-mass vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilisticGraph {
    pub graph: Graph,
    pub mass: Vec<Rational>,
}

impl ProbabilisticGraph {
    pub fn new(graph: Graph, mass: Vec<Rational>) -> Result<Self> {
        if mass.len() != graph.n() {
            return Err(Error::InvalidDistribution(format!(
                "{} masses for {} vertices",
                mass.len(),
                graph.n()
            )));
        }
        if mass.iter().any(|m| *m < Rational::zero()) {
            return Err(Error::InvalidDistribution("negative vertex mass".into()));
        }
        let total: Rational = mass.iter().copied().sum();
        if total != Rational::one() {
            return Err(Error::InvalidDistribution(format!("vertex masses sum to {total}")));
        }
        Ok(ProbabilisticGraph { graph, mass })
    }

    /// Uniform mass on every vertex.
    pub fn uniform(graph: Graph) -> Self {
        let n = graph.n() as i128;
        let mass = alloc::vec![Rational::new(1, n); graph.n()];
        ProbabilisticGraph { graph, mass }
    }

    /// Vertices with positive mass, ascending.
    pub fn positive(&self) -> Vec<usize> {
        (0..self.mass.len()).filter(|&v| !self.mass[v].is_zero()).collect()
    }
}

/// Conditional distribution `p(w | x)` over a list of independent sets.
#[derive(Debug, Clone, PartialEq)]
pub struct SetChannel {
    /// Independent sets, as vertex indices of the input graph.
    pub sets: Vec<Vec<usize>>,
    /// `cond[x][w]`; rows of zero-mass vertices are all zero.
    pub cond: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Coloring(Coloring),
    Channel(SetChannel),
}

/// Iterative-solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub iterations: usize,
    /// Certified bound on `value - optimum` in bits.
    pub gap: f64,
    pub converged: bool,
    /// Final values of every restart, in seed order.
    pub restarts: Vec<f64>,
    pub spread: f64,
    /// Restart spread exceeded the configured tolerance.
    pub spread_flag: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyResult {
    pub value: f64,
    pub witness: Option<Witness>,
    pub convergence: Option<Convergence>,
}

impl EntropyResult {
    pub(crate) fn exact(value: f64, witness: Option<Witness>) -> Self {
        EntropyResult {
            value,
            witness,
            convergence: None,
        }
    }

    /// Certified lower end of the result (equal to `value` for exact results).
    pub fn lower(&self) -> f64 {
        match &self.convergence {
            Some(c) => (self.value - c.gap).max(0.0),
            None => self.value,
        }
    }
}

pub(crate) fn rational_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(|&r| crate::model::to_f64(r)).collect()
}
