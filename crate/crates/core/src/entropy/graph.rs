use alloc::vec::Vec;

use num_traits::Zero;

use super::{rational_f64, Convergence, EntropyResult, ProbabilisticGraph, SetChannel, Witness};
use crate::config::Config;
use crate::error::Result;
use crate::graphalg::{connected_components, maximal_independent_sets};
use crate::model::{entropy, Rational};

const LN2: f64 = core::f64::consts::LN_2;

/// Graph entropy `min I(W; X)` over `X ∈ W ∈ Γ(G)`.
///
/// Edgeless and complete positive parts are answered in closed form.
/// Otherwise the minimization runs over the maximal independent sets of the
/// positive-mass subgraph as a Blahut–Arimoto iteration on the mixture
/// `q(w)`; `value` is attained by the returned channel and `gap` bounds its
/// distance to the optimum.
pub fn graph_entropy(pg: &ProbabilisticGraph, cfg: &Config) -> Result<EntropyResult> {
    let pos = pg.positive();
    let sub = pg.graph.induced(&pos);
    let k = pos.len();
    let n = pg.graph.n();
    if sub.edge_count() == 0 {
        let cond = (0..n)
            .map(|v| alloc::vec![if pg.mass[v].is_zero() { 0.0 } else { 1.0 }])
            .collect();
        let ch = SetChannel { sets: alloc::vec![pos], cond };
        return Ok(EntropyResult::exact(0.0, Some(Witness::Channel(ch))));
    }
    if sub.edge_count() == k * (k - 1) / 2 {
        let cond = (0..n)
            .map(|v| {
                let mut row = alloc::vec![0.0; k];
                if let Some(i) = pos.iter().position(|&u| u == v) {
                    row[i] = 1.0;
                }
                row
            })
            .collect();
        let sets = pos.iter().map(|&v| alloc::vec![v]).collect();
        let value = entropy(&pg.mass);
        return Ok(EntropyResult::exact(value, Some(Witness::Channel(SetChannel { sets, cond }))));
    }

    let sets = maximal_independent_sets(&sub, cfg.limits.exact_vertices)?.sets;
    let p = rational_f64(&pos.iter().map(|&v| pg.mass[v]).collect::<Vec<_>>());
    let members: Vec<Vec<usize>> = (0..k)
        .map(|x| (0..sets.len()).filter(|&w| sets[w].contains(&x)).collect())
        .collect();
    let m = sets.len();
    let mut q = alloc::vec![1.0 / m as f64; m];
    let mut a = alloc::vec![0.0; k];
    let mut s = alloc::vec![0.0; m];
    let mut prev = f64::INFINITY;
    let mut value;
    let mut gap;
    let mut iterations = 0;
    let mut converged = false;
    loop {
        for x in 0..k {
            a[x] = members[x].iter().map(|&w| q[w]).sum();
        }
        value = -(0..k).map(|x| p[x] * libm::log2(a[x])).sum::<f64>();
        for (w, set) in sets.iter().enumerate() {
            s[w] = set.iter().map(|&x| p[x] / a[x]).sum();
        }
        let smax = s.iter().copied().fold(f64::MIN, f64::max);
        gap = ((smax - 1.0) / LN2).max(0.0);
        if gap <= cfg.solver.value_tol || (prev - value).abs() < cfg.solver.value_tol * 1e-2 {
            converged = true;
            break;
        }
        if iterations >= cfg.solver.max_iter {
            break;
        }
        prev = value;
        for w in 0..m {
            q[w] *= s[w];
        }
        iterations += 1;
    }

    let mut cond = alloc::vec![Vec::new(); n];
    for v in 0..n {
        cond[v] = alloc::vec![0.0; m];
    }
    for x in 0..k {
        for &w in &members[x] {
            cond[pos[x]][w] = q[w] / a[x];
        }
    }
    let sets = sets
        .into_iter()
        .map(|set| set.into_iter().map(|x| pos[x]).collect())
        .collect();
    Ok(EntropyResult {
        value: value.max(0.0),
        witness: Some(Witness::Channel(SetChannel { sets, cond })),
        convergence: Some(Convergence {
            iterations,
            gap,
            converged,
            restarts: Vec::new(),
            spread: 0.0,
            spread_flag: false,
        }),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentEntropy {
    pub vertices: Vec<usize>,
    pub mass: Rational,
    /// Graph entropy of the component under the renormalized mass.
    pub value: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSplit {
    pub value: f64,
    pub components: Vec<ComponentEntropy>,
}

/// Graph entropy as `Σ Pr(G_i) H_{G_i}` over connected components with the
/// mass renormalized inside each component.
pub fn entropy_by_components(pg: &ProbabilisticGraph, cfg: &Config) -> Result<ComponentSplit> {
    let mut out = Vec::new();
    let mut value = 0.0;
    for comp in connected_components(&pg.graph, Some(&pg.mass)) {
        let mass = comp.mass.unwrap();
        if mass.is_zero() {
            continue;
        }
        let local = comp.vertices.iter().map(|&v| pg.mass[v] / mass).collect();
        let sub = ProbabilisticGraph::new(comp.graph, local)?;
        let r = graph_entropy(&sub, cfg)?;
        let gap = r.convergence.as_ref().map_or(0.0, |c| c.gap);
        value += crate::model::to_f64(mass) * r.value;
        out.push(ComponentEntropy {
            vertices: comp.vertices,
            mass,
            value: r.value,
            gap,
        });
    }
    Ok(ComponentSplit {
        value,
        components: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{confusability, single_decoder_graph, Graph, Side};
    use crate::model::fixture;

    #[test]
    fn threshold_confusability() {
        let g = confusability(&fixture("THRESHOLD").unwrap(), Side::A);
        let r = graph_entropy(&ProbabilisticGraph::uniform(g), &Config::default()).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn trivial_cases() {
        let cfg = Config::default();
        let e = graph_entropy(&ProbabilisticGraph::uniform(Graph::empty(3)), &cfg).unwrap();
        assert_eq!(e.value, 0.0);
        let k = graph_entropy(&ProbabilisticGraph::uniform(Graph::complete(4)), &cfg).unwrap();
        assert!((k.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn c5_uniform_is_log_five_halves() {
        let r = graph_entropy(&ProbabilisticGraph::uniform(Graph::cycle(5)), &Config::default()).unwrap();
        assert!((r.value - libm::log2(2.5)).abs() < 1e-8, "{}", r.value);
        assert!(r.convergence.unwrap().gap < 1e-8);
    }

    #[test]
    fn witness_is_supported_on_containing_sets() {
        let r = graph_entropy(&ProbabilisticGraph::uniform(Graph::cycle(7)), &Config::default()).unwrap();
        let Some(Witness::Channel(ch)) = r.witness else { panic!() };
        for (x, row) in ch.cond.iter().enumerate() {
            for (w, &p) in row.iter().enumerate() {
                assert!(p == 0.0 || ch.sets[w].contains(&x));
            }
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn component_split_pentagon_single_decoder() {
        let inst = fixture("PENTAGON").unwrap();
        let g = single_decoder_graph(&inst);
        let mass = inst.pmf.support().iter().map(|&(x, y)| inst.p(x, y)).collect();
        let pg = ProbabilisticGraph::new(g, mass).unwrap();
        let cfg = Config::default();
        let ku = entropy_by_components(&pg, &cfg).unwrap();
        assert!((ku.value - 1.0).abs() < 1e-12);
        assert_eq!(ku.components.len(), 5);
        let direct = graph_entropy(&pg, &cfg).unwrap();
        assert!((direct.value - 1.0).abs() < 1e-6);
    }
}
