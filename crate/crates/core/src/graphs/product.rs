use alloc::vec::Vec;

use super::{Graph, Label};
use crate::error::Result;
use crate::model::{checked_power, Blocks};

fn power_labels(g: &Graph, b: Blocks, count: usize) -> Vec<Label> {
    (0..count)
        .map(|i| Label::Tuple(b.decode(i).into_iter().map(|d| g.label(d).clone()).collect()))
        .collect()
}

/// n-fold AND (strong) product: distinct tuples that are equal or adjacent
/// in every coordinate. Vertex `(v_1, ..., v_n)` sits at its mixed-radix
/// index with `v_1` most significant.
pub fn and_power(g: &Graph, n: usize, cap: usize) -> Result<Graph> {
    let count = checked_power("AND power vertices", g.n(), n, cap)?;
    if n == 1 {
        return Ok(g.clone());
    }
    let b = Blocks::new(g.n(), n);
    let closed: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            let mut l = g.neighbors(v).to_vec();
            l.push(v);
            l.sort_unstable();
            l
        })
        .collect();
    let mut adj = Vec::with_capacity(count);
    for v in 0..count {
        let digits = b.decode(v);
        let mut acc: Vec<usize> = alloc::vec![0];
        for &d in &digits {
            let mut next = Vec::with_capacity(acc.len() * closed[d].len());
            for &a in &acc {
                next.extend(closed[d].iter().map(|&w| a * g.n() + w));
            }
            acc = next;
        }
        acc.retain(|&w| w != v);
        acc.sort_unstable();
        adj.push(acc);
    }
    Ok(Graph::from_sorted_adjacency(power_labels(g, b, count), adj))
}

/// n-fold OR (co-normal) product: adjacent in some coordinate.
pub fn or_power(g: &Graph, n: usize, cap: usize) -> Result<Graph> {
    let count = checked_power("OR power vertices", g.n(), n, cap)?;
    if n == 1 {
        return Ok(g.clone());
    }
    let b = Blocks::new(g.n(), n);
    let digits: Vec<Vec<usize>> = (0..count).map(|i| b.decode(i)).collect();
    Ok(Graph::from_fn(power_labels(g, b, count), |u, v| {
        digits[u]
            .iter()
            .zip(&digits[v])
            .any(|(&a, &c)| g.has_edge(a, c))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn independence_number(g: &Graph) -> usize {
        fn rec(g: &Graph, cand: &[usize], size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            match cand.split_first() {
                None => *best = size,
                Some((&v, rest)) => {
                    let keep: Vec<usize> = rest.iter().copied().filter(|&w| !g.has_edge(v, w)).collect();
                    rec(g, &keep, size + 1, best);
                    rec(g, rest, size, best);
                }
            }
        }
        let mut best = 0;
        let all: Vec<usize> = (0..g.n()).collect();
        rec(g, &all, 0, &mut best);
        best
    }

    #[test]
    fn first_power_is_identity() {
        let g = Graph::cycle(5);
        assert_eq!(and_power(&g, 1, 100).unwrap(), g);
        assert_eq!(or_power(&g, 1, 100).unwrap(), g);
    }

    #[test]
    fn c5_strong_square() {
        let g2 = and_power(&Graph::cycle(5), 2, 5000).unwrap();
        assert_eq!(g2.n(), 25);
        assert!((0..25).all(|v| g2.degree(v) == 8));
        assert_eq!(independence_number(&g2), 5);
        assert_eq!(g2.label(7).to_string(), "(1,2)");
    }

    #[test]
    fn complement_duality() {
        let graphs = [
            Graph::cycle(5),
            Graph::new(Graph::numbered(4), [(0, 1), (1, 2)]).unwrap(),
            Graph::empty(3),
            Graph::complete(3),
        ];
        for g in &graphs {
            for n in 1..=2 {
                let lhs = or_power(g, n, 5000).unwrap().complement();
                let rhs = and_power(&g.complement(), n, 5000).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(and_power(&Graph::cycle(5), 6, 5000).is_err());
    }
}
