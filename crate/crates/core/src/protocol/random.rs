use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::cover::{scheme_from_color_cover, side_conflicts, ColorCover};
use super::scheme::Scheme;
use crate::error::Result;
use crate::graphs::Graph;
use crate::model::ProblemInstance;

fn below(rng: &mut impl RngCore, k: usize) -> usize {
    (rng.next_u64() % k as u64) as usize
}

/// Random partition of `0..k` into conflict-free classes: vertices in random
/// order, each joining a uniformly chosen admissible class or a new one.
fn random_proper(rng: &mut impl RngCore, conflict: &[Vec<bool>]) -> Vec<usize> {
    let k = conflict.len();
    let mut order: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        order.swap(i, below(rng, i + 1));
    }
    let mut label = vec![usize::MAX; k];
    let mut classes = 0;
    for &v in &order {
        let ok: Vec<usize> = (0..classes)
            .filter(|&c| (0..k).all(|u| label[u] != c || !conflict[u][v]))
            .collect();
        let pick = below(rng, ok.len() + 1);
        label[v] = if pick < ok.len() {
            ok[pick]
        } else {
            classes += 1;
            classes - 1
        };
    }
    label
}

fn random_map(rng: &mut impl RngCore, k: usize) -> Vec<usize> {
    let range = 1 + below(rng, k.max(1));
    (0..k).map(|_| below(rng, range)).collect()
}

/// Random cover of the n-instance graph `graph`: random proper `c_a`, `c_b`
/// and a random proper partition of the color pairs for `theta`.
pub fn random_color_cover(inst: &ProblemInstance, n: usize, graph: &Graph, rng: &mut impl RngCore) -> ColorCover {
    let cy = y_blocks(graph, inst, n);
    let cx = graph.n() / cy;
    let (gx, gy) = side_conflicts(graph, cx, cy);
    let c_a = random_proper(rng, &gx);
    let c_b = random_proper(rng, &gy);
    let theta = pair_coloring(graph, &c_a, &c_b, cy, |conflict| random_proper(rng, conflict));
    ColorCover::from_theta(n, c_a, c_b, theta)
}

fn y_blocks(graph: &Graph, inst: &ProblemInstance, n: usize) -> usize {
    let cx = crate::model::Blocks::new(inst.nx(), n).count().unwrap_or(1);
    debug_assert_eq!(graph.n() % cx, 0);
    graph.n() / cx
}

/// `theta` from a partition of the used color pairs that is proper on the
/// quotient of `graph`.
fn pair_coloring(
    graph: &Graph,
    c_a: &[usize],
    c_b: &[usize],
    cy: usize,
    partition: impl FnOnce(&[Vec<bool>]) -> Vec<usize>,
) -> BTreeMap<(usize, usize), usize> {
    let ka = c_a.iter().max().map_or(0, |m| m + 1);
    let kb = c_b.iter().max().map_or(0, |m| m + 1);
    let mut conflict = vec![vec![false; ka * kb]; ka * kb];
    for (u, v) in graph.edges() {
        let pu = c_a[u / cy] * kb + c_b[u % cy];
        let pv = c_a[v / cy] * kb + c_b[v % cy];
        conflict[pu][pv] = true;
        conflict[pv][pu] = true;
    }
    let labels = partition(&conflict);
    (0..ka * kb).map(|p| ((p / kb, p % kb), labels[p])).collect()
}

/// Seeded random scheme over `graph`, mixing three styles: arbitrary maps,
/// maps from a random proper cover, and a proper cover with two relay
/// classes merged.
pub fn random_scheme(inst: &ProblemInstance, n: usize, graph: &Graph, rng: &mut impl RngCore) -> Result<Scheme> {
    let cy = y_blocks(graph, inst, n);
    let cx = graph.n() / cy;
    match below(rng, 3) {
        0 => {
            let a = random_map(rng, cx);
            let b = random_map(rng, cy);
            let ka = a.iter().max().map_or(1, |m| m + 1);
            let kb = b.iter().max().map_or(1, |m| m + 1);
            let kc = 1 + below(rng, ka * kb);
            let table: Vec<usize> = (0..ka * kb).map(|_| below(rng, kc)).collect();
            Scheme::from_maps(inst, n, &a, &b, |x, y| table[x * kb + y])
        }
        style => {
            let cover = random_color_cover(inst, n, graph, rng);
            let mut theta = cover.theta.clone();
            if style == 2 {
                let k = theta.values().max().map_or(0, |m| m + 1);
                if k >= 2 {
                    let (from, to) = (below(rng, k), below(rng, k));
                    for c in theta.values_mut() {
                        if *c == from {
                            *c = to;
                        }
                    }
                }
            }
            let kb = cover.c_b.iter().max().map_or(1, |m| m + 1);
            let flat: BTreeMap<usize, usize> = theta.iter().map(|(&(a, b), &c)| (a * kb + b, c)).collect();
            Scheme::from_maps(inst, n, &cover.c_a, &cover.c_b, |x, y| flat[&(x * kb + y)])
        }
    }
}

/// Random zero-error scheme: a random cover of `graph`, Huffman coded.
pub fn zero_error_scheme(inst: &ProblemInstance, n: usize, graph: &Graph, rng: &mut impl RngCore) -> Result<(ColorCover, Scheme)> {
    let cover = random_color_cover(inst, n, graph, rng);
    let scheme = scheme_from_color_cover(&cover, inst)?;
    Ok((cover, scheme))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{n_instance_graph, Mode};
    use crate::model::fixture;
    use crate::protocol::{coloring_equivalence_on, relay_computability, verify_zero_error};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_covers_are_valid_and_decodable() {
        let inst = fixture("THRESHOLD").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for mode in [Mode::Restricted, Mode::Unrestricted] {
            let g = n_instance_graph(&inst, 2, mode, 5000).unwrap();
            for _ in 0..20 {
                let (cover, s) = zero_error_scheme(&inst, 2, &g, &mut rng).unwrap();
                cover.validate_on(&g).unwrap();
                assert!(verify_zero_error(&s, &inst, mode).zero_error());
            }
        }
    }

    #[test]
    fn random_schemes_agree_with_coloring() {
        let inst = fixture("PENTAGON").unwrap();
        let g = n_instance_graph(&inst, 1, Mode::Restricted, 5000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut decodable = 0;
        for _ in 0..200 {
            let s = random_scheme(&inst, 1, &g, &mut rng).unwrap();
            let e = coloring_equivalence_on(&s, &inst, Mode::Restricted, &g);
            assert!(e.agree());
            decodable += usize::from(e.decodable);
        }
        assert!(decodable > 0 && decodable < 200);
    }

    #[test]
    fn full_support_zero_error_implies_relay() {
        let inst = fixture("DSBS_AND(1/3)").unwrap();
        let g = n_instance_graph(&inst, 2, Mode::Restricted, 5000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (_, s) = zero_error_scheme(&inst, 2, &g, &mut rng).unwrap();
            assert!(relay_computability(&s, &inst).computable);
        }
    }
}
