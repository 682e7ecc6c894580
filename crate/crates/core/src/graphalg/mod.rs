//! Exact combinatorics on small graphs: maximal independent sets, clique and
//! chromatic numbers, perfection, connected components.
//!
//! Everything except [`connected_components`] works on 64-bit adjacency masks
//! and is guarded by a vertex count.

mod perfect;

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graphs::{Graph, IndepSetFamily};
use crate::model::Rational;

pub use perfect::is_perfect;

fn guarded_masks(g: &Graph, what: &'static str, guard: usize) -> Result<Vec<u64>> {
    let guard = guard.min(64);
    if g.n() > guard {
        return Err(Error::GuardExceeded {
            what,
            size: g.n(),
            guard,
        });
    }
    Ok(g.masks().unwrap())
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Proper coloring: `color[v]` in `0..classes.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub color: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Coloring {
    /// Validates properness; colors are renumbered by first appearance.
    pub fn new(g: &Graph, color: &[usize]) -> Result<Self> {
        if color.len() != g.n() {
            return Err(Error::InvalidGraph(alloc::format!(
                "coloring has {} entries for {} vertices",
                color.len(),
                g.n()
            )));
        }
        if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| color[u] == color[v]) {
            return Err(Error::InvalidGraph(alloc::format!(
                "vertices {} and {} are adjacent but share a color",
                g.label(u),
                g.label(v)
            )));
        }
        Ok(Self::normalized(color))
    }

    pub(crate) fn normalized(color: &[usize]) -> Self {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::with_capacity(color.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, &c) in color.iter().enumerate() {
            let k = match map.iter().find(|m| m.0 == c) {
                Some(m) => m.1,
                None => {
                    map.push((c, classes.len()));
                    classes.push(Vec::new());
                    classes.len() - 1
                }
            };
            classes[k].push(v);
            out.push(k);
        }
        Coloring {
            color: out,
            classes,
        }
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.color.len() == g.n() && g.edges().into_iter().all(|(u, v)| self.color[u] != self.color[v])
    }

    /// Total mass of each class.
    pub fn class_masses(&self, mass: &[Rational]) -> Vec<Rational> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&v| mass[v]).sum())
            .collect()
    }
}

/// All maximal independent sets, each sorted, listed in lexicographic order.
pub fn maximal_independent_sets(g: &Graph, guard: usize) -> Result<IndepSetFamily> {
    let adj = guarded_masks(g, "maximal independent sets", guard)?;
    let n = g.n();
    let all = full(n);
    // Maximal cliques of the complement.
    let co: Vec<u64> = (0..n).map(|v| !adj[v] & all & !(1 << v)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    bron_kerbosch(&co, 0, all, 0, &mut out);
    out.sort();
    Ok(IndepSetFamily { sets: out })
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<Vec<usize>>) {
    if p == 0 {
        if x == 0 {
            out.push(bits(r).collect());
        }
        return;
    }
    let pivot = bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).unwrap();
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Maximum clique size with a witness clique.
pub fn clique_number(g: &Graph, guard: usize) -> Result<(usize, Vec<usize>)> {
    let adj = guarded_masks(g, "clique number", guard)?;
    let mut best = 0u64;
    max_clique(&adj, 0, full(g.n()), &mut best);
    Ok((best.count_ones() as usize, bits(best).collect()))
}

fn max_clique(adj: &[u64], r: u64, mut p: u64, best: &mut u64) {
    if p == 0 {
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    // Greedy coloring of P bounds the clique still attainable.
    let mut order: Vec<(usize, u32)> = Vec::new();
    let mut uncolored = p;
    let mut color = 0u32;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            order.push((v, color));
        }
    }
    for &(v, c) in order.iter().rev() {
        if r.count_ones() + c <= best.count_ones() {
            return;
        }
        max_clique(adj, r | 1 << v, p & adj[v], best);
        p &= !(1 << v);
    }
}

/// Independence number via the complement.
pub fn independence_number(g: &Graph, guard: usize) -> Result<usize> {
    Ok(clique_number(&g.complement(), guard)?.0)
}

/// Exact chromatic number with a witness coloring using exactly that many colors.
pub fn chromatic_number(g: &Graph, guard: usize) -> Result<(usize, Coloring)> {
    let adj = guarded_masks(g, "chromatic number", guard)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Coloring::normalized(&[])));
    }
    let omega = clique_number(g, guard)?.0;
    let alpha = independence_number(g, guard)?;
    let lower = omega.max(n.div_ceil(alpha));

    let mut s = Dsatur {
        adj: &adj,
        color: alloc::vec![usize::MAX; n],
        sat: alloc::vec![0u64; n],
        best: n + 1,
        best_color: (0..n).collect(),
        lower,
    };
    s.search(0, 0);
    let k = s.best;
    Ok((k, Coloring::normalized(&s.best_color)))
}

struct Dsatur<'a> {
    adj: &'a [u64],
    color: Vec<usize>,
    sat: Vec<u64>,
    best: usize,
    best_color: Vec<usize>,
    lower: usize,
}

impl Dsatur<'_> {
    /// Returns true once an optimal coloring is certified.
    fn search(&mut self, colored: usize, used: usize) -> bool {
        let n = self.color.len();
        if colored == n {
            if used < self.best {
                self.best = used;
                self.best_color = self.color.clone();
            }
            return self.best <= self.lower;
        }
        let uncolored: u64 = (0..n)
            .filter(|&v| self.color[v] == usize::MAX)
            .fold(0, |m, v| m | 1 << v);
        let v = bits(uncolored)
            .max_by_key(|&v| {
                (
                    self.sat[v].count_ones(),
                    (self.adj[v] & uncolored).count_ones(),
                    usize::MAX - v,
                )
            })
            .unwrap();
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.sat[v] >> c & 1 == 1 {
                continue;
            }
            self.color[v] = c;
            let mut touched = 0u64;
            for w in bits(self.adj[v] & uncolored) {
                if self.sat[w] >> c & 1 == 0 {
                    self.sat[w] |= 1 << c;
                    touched |= 1 << w;
                }
            }
            let done = self.search(colored + 1, used.max(c + 1));
            for w in bits(touched) {
                self.sat[w] &= !(1 << c);
            }
            self.color[v] = usize::MAX;
            if done {
                return true;
            }
        }
        false
    }
}

/// One connected component of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Vertices of the parent graph, ascending.
    pub vertices: Vec<usize>,
    pub graph: Graph,
    /// Total attached mass, when a vertex mass was supplied.
    pub mass: Option<Rational>,
}

/// Connected components ordered by smallest vertex.
pub fn connected_components(g: &Graph, mass: Option<&[Rational]>) -> Vec<Component> {
    let n = g.n();
    let mut comp = alloc::vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut verts = Vec::new();
        let mut stack = alloc::vec![s];
        comp[s] = id;
        while let Some(v) = stack.pop() {
            verts.push(v);
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        verts.sort_unstable();
        let m = mass.map(|m| verts.iter().map(|&v| m[v]).fold(Rational::zero(), |a, b| a + b));
        out.push(Component {
            graph: g.induced(&verts),
            vertices: verts,
            mass: m,
        });
    }
    out
}
