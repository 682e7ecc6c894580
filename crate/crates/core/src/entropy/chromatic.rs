use alloc::vec::Vec;

use super::{EntropyResult, ProbabilisticGraph, Witness};
use crate::error::{Error, Result};
use crate::graphalg::{chromatic_number, Coloring};
use crate::model::{entropy, to_f64};

fn h(masses: impl Iterator<Item = f64>) -> f64 {
    masses.filter(|&p| p > 0.0).map(|p| -p * libm::log2(p)).sum()
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

/// Minimum entropy `H(c(X))` over proper colorings `c`, found by
/// branch-and-bound over partitions of the positive-mass vertices into
/// independent sets. Zero-mass vertices are colored greedily afterwards.
/// The guard bounds the number of positive-mass vertices.
pub fn chromatic_entropy(pg: &ProbabilisticGraph, guard: usize) -> Result<EntropyResult> {
    let g = &pg.graph;
    let mut pos = pg.positive();
    let guard = guard.min(64);
    if pos.len() > guard {
        return Err(Error::GuardExceeded {
            what: "chromatic entropy",
            size: pos.len(),
            guard,
        });
    }
    pos.sort_by(|&a, &b| pg.mass[b].cmp(&pg.mass[a]).then(a.cmp(&b)));
    let k = pos.len();
    let w: Vec<f64> = pos.iter().map(|&v| to_f64(pg.mass[v])).collect();
    let adj: Vec<u64> = pos
        .iter()
        .map(|&u| {
            pos.iter()
                .enumerate()
                .filter(|&(_, &v)| g.has_edge(u, v))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();

    let mut s = Search {
        w: &w,
        adj: &adj,
        suffix: (0..=k).map(|i| w[i..].iter().sum()).collect(),
        m_global: max_weight_independent(&w, &adj),
        class_mass: Vec::new(),
        class_adj: Vec::new(),
        assign: alloc::vec![0; k],
        best: f64::INFINITY,
        best_assign: Vec::new(),
    };
    for cand in [incumbent_chi(pg, &pos), incumbent_peel(&w, &adj)] {
        let v = assignment_entropy(&w, &cand);
        if v < s.best {
            s.best = v;
            s.best_assign = cand;
        }
    }
    s.search(0);

    // Lift to the whole graph.
    let mut color = alloc::vec![usize::MAX; g.n()];
    for (i, &v) in pos.iter().enumerate() {
        color[v] = s.best_assign[i];
    }
    let mut n_colors = s.best_assign.iter().map(|&c| c + 1).max().unwrap_or(0);
    for v in 0..g.n() {
        if color[v] != usize::MAX {
            continue;
        }
        let c = (0..n_colors)
            .find(|&c| g.neighbors(v).iter().all(|&u| color[u] != c))
            .unwrap_or_else(|| {
                n_colors += 1;
                n_colors - 1
            });
        color[v] = c;
    }
    let coloring = Coloring::new(g, &color)?;
    let value = entropy(&coloring.class_masses(&pg.mass));
    Ok(EntropyResult::exact(value, Some(Witness::Coloring(coloring))))
}

fn assignment_entropy(w: &[f64], assign: &[usize]) -> f64 {
    let n = assign.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut m = alloc::vec![0.0; n];
    for (i, &c) in assign.iter().enumerate() {
        m[c] += w[i];
    }
    h(m.into_iter())
}

/// Optimal-χ coloring of the positive part, reindexed to the search order.
fn incumbent_chi(pg: &ProbabilisticGraph, pos: &[usize]) -> Vec<usize> {
    let sub = pg.graph.induced(pos);
    match chromatic_number(&sub, 64) {
        Ok((_, c)) => c.color,
        Err(_) => (0..pos.len()).collect(),
    }
}

/// Repeatedly strip a maximum-weight independent set.
fn incumbent_peel(w: &[f64], adj: &[u64]) -> Vec<usize> {
    let k = w.len();
    let mut assign = alloc::vec![usize::MAX; k];
    let mut left: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut color = 0;
    while left != 0 {
        let set = best_independent_within(w, adj, left);
        for v in bits(set) {
            assign[v] = color;
        }
        left &= !set;
        color += 1;
    }
    assign
}

fn max_weight_independent(w: &[f64], adj: &[u64]) -> f64 {
    let all = if w.len() == 64 { u64::MAX } else { (1u64 << w.len()) - 1 };
    bits(best_independent_within(w, adj, all)).map(|v| w[v]).sum()
}

fn best_independent_within(w: &[f64], adj: &[u64], within: u64) -> u64 {
    fn rec(w: &[f64], adj: &[u64], cand: u64, cur: u64, cur_w: f64, best: &mut (u64, f64)) {
        if cand == 0 {
            if cur_w > best.1 {
                *best = (cur, cur_w);
            }
            return;
        }
        let bound: f64 = bits(cand).map(|v| w[v]).sum();
        if cur_w + bound <= best.1 {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        rec(w, adj, cand & !(1 << v) & !adj[v], cur | 1 << v, cur_w + w[v], best);
        rec(w, adj, cand & !(1 << v), cur, cur_w, best);
    }
    let mut best = (0u64, -1.0);
    rec(w, adj, within, 0, 0.0, &mut best);
    best.0
}

struct Search<'a> {
    w: &'a [f64],
    adj: &'a [u64],
    suffix: Vec<f64>,
    m_global: f64,
    class_mass: Vec<f64>,
    class_adj: Vec<u64>,
    assign: Vec<usize>,
    best: f64,
    best_assign: Vec<usize>,
}

impl Search<'_> {
    fn lower_bound(&self, i: usize) -> f64 {
        let r = self.suffix[i];
        // Majorization: every completion is majorized by pouring the rest
        // into the heaviest class.
        let (imax, _) = self
            .class_mass
            .iter()
            .enumerate()
            .fold((usize::MAX, -1.0), |acc, (j, &m)| if m > acc.1 { (j, m) } else { acc });
        let a = if imax == usize::MAX {
            h(core::iter::once(r))
        } else {
            h(self
                .class_mass
                .iter()
                .enumerate()
                .map(|(j, &m)| if j == imax { m + r } else { m }))
        };
        // Min-entropy: no class can end heavier than its cap.
        let rest: u64 = if i >= 64 { 0 } else { !0u64 << i };
        let mut cap = r.min(self.m_global);
        for (j, &m) in self.class_mass.iter().enumerate() {
            let compat: f64 = bits(rest & !self.class_adj[j])
                .filter(|&v| v < self.w.len())
                .map(|v| self.w[v])
                .sum();
            cap = cap.max((m + compat).min(self.m_global));
        }
        let b = if cap > 0.0 { -libm::log2(cap) } else { 0.0 };
        a.max(b)
    }

    fn search(&mut self, i: usize) {
        let k = self.w.len();
        if i == k {
            let v = h(self.class_mass.iter().copied());
            if v < self.best - 1e-12 {
                self.best = v;
                self.best_assign = self.assign.clone();
            }
            return;
        }
        if self.lower_bound(i) >= self.best - 1e-12 {
            return;
        }
        let mut order: Vec<usize> = (0..self.class_mass.len())
            .filter(|&c| self.class_adj[c] >> i & 1 == 0)
            .collect();
        order.sort_by(|&a, &b| self.class_mass[b].total_cmp(&self.class_mass[a]).then(a.cmp(&b)));
        for c in order {
            self.assign[i] = c;
            self.class_mass[c] += self.w[i];
            let saved = self.class_adj[c];
            self.class_adj[c] |= self.adj[i];
            self.search(i + 1);
            self.class_adj[c] = saved;
            self.class_mass[c] -= self.w[i];
        }
        let c = self.class_mass.len();
        self.assign[i] = c;
        self.class_mass.push(self.w[i]);
        self.class_adj.push(self.adj[i]);
        self.search(i + 1);
        self.class_mass.pop();
        self.class_adj.pop();
    }
}
