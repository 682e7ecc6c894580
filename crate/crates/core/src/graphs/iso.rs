use alloc::vec::Vec;

use super::Graph;
use crate::error::{Error, Result};

/// Exact isomorphism test by backtracking. Returns a witness `perm` with
/// `u ~ v` in `g1` iff `perm[u] ~ perm[v]` in `g2`.
pub fn isomorphic(g1: &Graph, g2: &Graph, guard: usize) -> Result<Option<Vec<usize>>> {
    let n = g1.n().max(g2.n());
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "isomorphism",
            size: n,
            guard,
        });
    }
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }

    // Map high-degree vertices first, preferring ones adjacent to mapped vertices.
    let mut order: Vec<usize> = Vec::with_capacity(g1.n());
    let mut placed = alloc::vec![false; g1.n()];
    while order.len() < g1.n() {
        let next = (0..g1.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = g1.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, g1.degree(v), usize::MAX - v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut perm = alloc::vec![usize::MAX; g1.n()];
    let mut used = alloc::vec![false; g2.n()];
    if extend(g1, g2, &order, 0, &mut perm, &mut used) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

fn extend(g1: &Graph, g2: &Graph, order: &[usize], depth: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for c in 0..g2.n() {
        if used[c] || g2.degree(c) != g1.degree(u) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g1.has_edge(u, w) == g2.has_edge(c, perm[w]));
        if !consistent {
            continue;
        }
        perm[u] = c;
        used[c] = true;
        if extend(g1, g2, order, depth + 1, perm, used) {
            return true;
        }
        used[c] = false;
    }
    perm[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycle_is_found() {
        let g = Graph::cycle(6);
        let h = Graph::new(Graph::numbered(6), [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        let perm = isomorphic(&g, &h, 16).unwrap().unwrap();
        assert!(g.maps_onto(&h, &perm));
    }

    #[test]
    fn same_degrees_different_graphs() {
        // C6 vs two triangles: both 2-regular
        let two_triangles = Graph::new(Graph::numbered(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(isomorphic(&Graph::cycle(6), &two_triangles, 16).unwrap(), None);
    }

    #[test]
    fn guard() {
        assert!(isomorphic(&Graph::empty(17), &Graph::empty(17), 16).is_err());
    }
}
