use alloc::vec::Vec;

use num_traits::One;

use super::{chromatic_entropy, entropy_by_components, ProbabilisticGraph};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graphalg::is_perfect;
use crate::graphs::{and_power, Graph};
use crate::model::{entropy, Blocks, Rational};

/// Finite prefix of `a_n = H_χ(G^∧n, X^n) / n` with the bounds it implies on
/// complementary graph entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementarySequence {
    /// `(n, a_n)` for `n = 1, 2, ...` until `n_max` or the first guard hit.
    pub terms: Vec<(usize, f64)>,
    /// Why the sequence stopped before `n_max`.
    pub truncated: Option<Error>,
    /// `None` when the perfection sweep exceeded its guard.
    pub perfect: Option<bool>,
    /// Exact limit (the graph entropy) for perfect graphs.
    pub limit: Option<f64>,
    /// `max(0, H(X) - H_χ(complement, X))`, valid at every `n`.
    pub lower: f64,
    /// `min a_n`; every term bounds the limit from above.
    pub upper: f64,
    /// Computed terms are non-increasing.
    pub monotone: bool,
}

fn power_mass(mass: &[Rational], n: usize) -> Vec<Rational> {
    let b = Blocks::new(mass.len(), n);
    (0..b.count().unwrap())
        .map(|i| b.decode(i).iter().fold(Rational::one(), |acc, &d| acc * mass[d]))
        .collect()
}

pub fn complementary_entropy_sequence(pg: &ProbabilisticGraph, n_max: usize, cfg: &Config) -> Result<ComplementarySequence> {
    let mut terms = Vec::new();
    let mut truncated = None;
    for n in 1..=n_max {
        let step = and_power(&pg.graph, n, cfg.limits.product_vertices).and_then(|g| {
            let pgn = ProbabilisticGraph {
                graph: g,
                mass: power_mass(&pg.mass, n),
            };
            chromatic_entropy(&pgn, cfg.limits.chromatic_entropy_vertices)
        });
        match step {
            Ok(r) => terms.push((n, r.value / n as f64)),
            Err(e @ (Error::GuardExceeded { .. } | Error::CapExceeded { .. })) => {
                truncated = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let perfect = match is_perfect(&pg.graph, cfg.limits.perfect_vertices) {
        Ok(b) => Some(b),
        Err(Error::GuardExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let limit = match perfect {
        Some(true) => Some(entropy_by_components(pg, cfg)?.value),
        _ => None,
    };
    let complement = ProbabilisticGraph {
        graph: pg.graph.complement(),
        mass: pg.mass.clone(),
    };
    let lower = match chromatic_entropy(&complement, cfg.limits.chromatic_entropy_vertices) {
        Ok(r) => (entropy(&pg.mass) - r.value).max(0.0),
        Err(_) => 0.0,
    };
    let lower = limit.unwrap_or(lower);
    let upper = terms
        .iter()
        .map(|t| t.1)
        .fold(limit.unwrap_or(f64::INFINITY), f64::min);
    let monotone = terms.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    Ok(ComplementarySequence {
        terms,
        truncated,
        perfect,
        limit,
        lower,
        upper,
        monotone,
    })
}

/// Minimum rate for a family of graphs on one vertex set, `max_i` of their
/// complementary graph entropies.
#[derive(Debug, Clone, PartialEq)]
pub struct MinRate {
    pub lower: f64,
    pub upper: f64,
    /// Present when every graph is perfect.
    pub exact: Option<f64>,
    pub per_graph: Vec<ComplementarySequence>,
}

pub fn and_union_min_rate(graphs: &[Graph], mass: &[Rational], n_max: usize, cfg: &Config) -> Result<MinRate> {
    let mut per_graph = Vec::with_capacity(graphs.len());
    for g in graphs {
        let pg = ProbabilisticGraph::new(g.clone(), mass.to_vec())?;
        per_graph.push(complementary_entropy_sequence(&pg, n_max, cfg)?);
    }
    let lower = per_graph.iter().map(|s| s.lower).fold(0.0, f64::max);
    let upper = per_graph.iter().map(|s| s.upper).fold(0.0, f64::max);
    let exact = per_graph
        .iter()
        .map(|s| s.limit)
        .collect::<Option<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max));
    Ok(MinRate {
        lower,
        upper,
        exact,
        per_graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_sequence() {
        let pg = ProbabilisticGraph::uniform(Graph::cycle(5));
        let s = complementary_entropy_sequence(&pg, 3, &Config::default()).unwrap();
        assert_eq!(s.terms.len(), 2);
        assert!(s.truncated.is_some());
        assert!((s.terms[1].1 - 0.5 * libm::log2(5.0)).abs() < 1e-12);
        assert_eq!(s.perfect, Some(false));
        assert!(s.monotone);
        // the complement of C5 is C5: H(X) - H_χ = 0.8
        assert!((s.lower - 0.8).abs() < 1e-12);
        assert!(s.lower <= s.upper);
    }

    #[test]
    fn empty_graph_sequence_is_zero() {
        let pg = ProbabilisticGraph::uniform(Graph::empty(3));
        let s = complementary_entropy_sequence(&pg, 2, &Config::default()).unwrap();
        assert!(s.terms.iter().all(|t| t.1 == 0.0));
        assert_eq!(s.limit, Some(0.0));
    }
}
