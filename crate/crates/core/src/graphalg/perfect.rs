
use super::connected_components;
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Perfection by definition: every induced subgraph has `ω = χ`.
///
/// Components are swept separately, since a disjoint union is perfect iff
/// each part is; complete components are accepted without a sweep. The
/// guard bounds the size of any other component.
pub fn is_perfect(g: &Graph, guard: usize) -> Result<bool> {
    for comp in connected_components(g, None) {
        let k = comp.vertices.len();
        if comp.graph.edge_count() == k * (k - 1) / 2 {
            continue;
        }
        if k > guard.min(24) {
            return Err(Error::GuardExceeded {
                what: "perfection sweep",
                size: k,
                guard,
            });
        }
        if !sweep(&comp.graph) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ω(S)` and `χ(S)` for every vertex subset `S`, by dynamic programming over
/// subsets in increasing order.
fn sweep(g: &Graph) -> bool {
    let n = g.n();
    let adj = g.masks().unwrap();
    let size = 1usize << n;
    let mut omega = alloc::vec![0u8; size];
    let mut indep = alloc::vec![false; size];
    indep[0] = true;
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        omega[s] = omega[rest].max(1 + omega[rest & adj[v] as usize]);
        indep[s] = indep[rest] && (adj[v] as usize & rest) == 0;
    }
    let mut chi = alloc::vec![0u8; size];
    for s in 1..size {
        // the class holding the lowest vertex of S ranges over independent
        // subsets of S that contain it
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        let mut best = u8::MAX;
        let mut sub = rest;
        loop {
            let class = sub | 1 << v;
            if indep[class] {
                best = best.min(1 + chi[s & !class]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        chi[s] = best;
        if chi[s] != omega[s] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{f_rook_graph, single_decoder_graph};
    use crate::model::fixture;

    #[test]
    fn examples() {
        assert!(!is_perfect(&Graph::cycle(5), 14).unwrap());
        assert!(is_perfect(&Graph::cycle(6), 14).unwrap());
        assert!(!is_perfect(&Graph::cycle(7).complement(), 14).unwrap());
        assert!(is_perfect(&f_rook_graph(&fixture("PENTAGON").unwrap()), 14).unwrap());
        assert!(is_perfect(&single_decoder_graph(&fixture("HANKOB").unwrap()), 14).unwrap());
        assert!(is_perfect(&Graph::complete(40), 14).unwrap());
    }

    #[test]
    fn guard_applies_per_component() {
        assert!(is_perfect(&Graph::cycle(20), 14).is_err());
    }
}
