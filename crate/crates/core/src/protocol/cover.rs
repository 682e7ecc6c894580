use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::huffman::huffman_code;
use super::scheme::Scheme;
use super::verify::Domain;
use crate::error::{Error, Result};
use crate::graphs::{n_instance_graph, Graph, Mode};
use crate::model::{entropy, Blocks, ProblemInstance, RateTriple, Rational};
use crate::regions::Region3;

/// Colorings `c_a` of `X^n`, `c_b` of `Y^n` and `c_c` of `X^n × Y^n`
/// (indexed `ix * |Y|^n + iy`) with `c_c = theta ∘ (c_a × c_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorCover {
    pub n: usize,
    pub c_a: Vec<usize>,
    pub c_b: Vec<usize>,
    pub c_c: Vec<usize>,
    pub theta: BTreeMap<(usize, usize), usize>,
}

impl ColorCover {
    /// Cover with `c_c` read off `theta`; pairs missing from `theta` get color 0.
    pub fn from_theta(n: usize, c_a: Vec<usize>, c_b: Vec<usize>, theta: BTreeMap<(usize, usize), usize>) -> Self {
        let c_c = c_a
            .iter()
            .flat_map(|&a| c_b.iter().map(move |&b| (a, b)))
            .map(|p| theta.get(&p).copied().unwrap_or(0))
            .collect();
        ColorCover {
            n,
            c_a,
            c_b,
            c_c,
            theta,
        }
    }

    /// Checks sizes, refinement and properness against the n-instance graph.
    pub fn validate_on(&self, graph: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCover(m));
        let (cx, cy) = (self.c_a.len(), self.c_b.len());
        if self.c_c.len() != cx * cy || graph.n() != cx * cy {
            return bad(format!(
                "c_c has {} entries, c_a × c_b spans {}, graph has {} vertices",
                self.c_c.len(),
                cx * cy,
                graph.n()
            ));
        }
        for ix in 0..cx {
            for iy in 0..cy {
                let pair = (self.c_a[ix], self.c_b[iy]);
                match self.theta.get(&pair) {
                    Some(&c) if c == self.c_c[ix * cy + iy] => {}
                    Some(_) => return bad(format!("theta disagrees with c_c at block ({ix}, {iy})")),
                    None => return bad(format!("theta undefined on color pair {pair:?}")),
                }
            }
        }
        for (u, v) in graph.edges() {
            if (self.c_a[u / cy], self.c_b[u % cy]) == (self.c_a[v / cy], self.c_b[v % cy]) {
                return bad(format!("c_a × c_b is not proper on edge ({u}, {v})"));
            }
            if self.c_c[u] == self.c_c[v] {
                return bad(format!("c_c is not proper on edge ({u}, {v})"));
            }
        }
        Ok(())
    }

    pub fn validate(&self, inst: &ProblemInstance, mode: Mode, cap: usize) -> Result<()> {
        self.validate_on(&n_instance_graph(inst, self.n, mode, cap)?)
    }

    /// Masses of the color classes of `c_a`, `c_b`, `c_c`, keyed by color.
    pub fn class_masses(&self, inst: &ProblemInstance) -> [BTreeMap<usize, Rational>; 3] {
        let dom = Domain::new(inst, self.n);
        let cy = self.c_b.len();
        let mut out: [BTreeMap<usize, Rational>; 3] = Default::default();
        for ix in 0..dom.cx() {
            for iy in 0..cy {
                let p = dom.mass[ix][iy];
                for (slot, c) in [self.c_a[ix], self.c_b[iy], self.c_c[ix * cy + iy]].into_iter().enumerate() {
                    *out[slot].entry(c).or_insert_with(Rational::zero) += p;
                }
            }
        }
        out
    }

    /// `(H(c_A(X^n)), H(c_B(Y^n)), H(c_C(X^n, Y^n))) / n`.
    pub fn rates(&self, inst: &ProblemInstance) -> RateTriple {
        let m = self.class_masses(inst);
        let h = |t: &BTreeMap<usize, Rational>| entropy(&t.values().copied().collect::<Vec<_>>()) / self.n as f64;
        RateTriple::new(h(&m[0]), h(&m[1]), h(&m[2]))
    }
}

/// Huffman-codes the three colorings by their induced distributions; the
/// relay maps a pair of source codewords to the codeword of `theta` of the
/// decoded colors.
pub fn scheme_from_color_cover(cover: &ColorCover, inst: &ProblemInstance) -> Result<Scheme> {
    let bx = Blocks::new(inst.nx(), cover.n).count();
    let by = Blocks::new(inst.ny(), cover.n).count();
    if bx != Some(cover.c_a.len()) || by != Some(cover.c_b.len()) || cover.c_c.len() != cover.c_a.len() * cover.c_b.len() {
        return Err(Error::InvalidCover("coloring sizes do not match the block alphabets".into()));
    }
    let masses = cover.class_masses(inst);
    let code = |m: &BTreeMap<usize, Rational>| -> BTreeMap<usize, String> {
        let w: Vec<Rational> = m.values().copied().collect();
        m.keys().copied().zip(huffman_code(&w)).collect()
    };
    let (ka, kb, kc) = (code(&masses[0]), code(&masses[1]), code(&masses[2]));
    let mut phi_c = BTreeMap::new();
    for &a in ka.keys() {
        for &b in kb.keys() {
            let c = cover
                .theta
                .get(&(a, b))
                .ok_or_else(|| Error::InvalidCover(format!("theta undefined on color pair {:?}", (a, b))))?;
            let w = kc
                .get(c)
                .ok_or_else(|| Error::InvalidCover(format!("theta maps {:?} to unused color {c}", (a, b))))?;
            phi_c.insert((ka[&a].clone(), kb[&b].clone()), w.clone());
        }
    }
    Scheme::new(
        inst,
        cover.n,
        cover.c_a.iter().map(|c| ka[c].clone()).collect(),
        cover.c_b.iter().map(|c| kb[c].clone()).collect(),
        phi_c,
    )
}

/// Conflict relations that `c_a` and `c_b` must respect for `c_a × c_b` to
/// be proper: `x ~ x'` when some edge joins `(x, y)` and `(x', y)`.
pub(crate) fn side_conflicts(graph: &Graph, cx: usize, cy: usize) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let mut gx = vec![vec![false; cx]; cx];
    let mut gy = vec![vec![false; cy]; cy];
    for (u, v) in graph.edges() {
        let (ux, uy, vx, vy) = (u / cy, u % cy, v / cy, v % cy);
        if uy == vy {
            gx[ux][vx] = true;
            gx[vx][ux] = true;
        }
        if ux == vx {
            gy[uy][vy] = true;
            gy[vy][uy] = true;
        }
    }
    (gx, gy)
}

/// Visits every partition of `0..k` into classes with no conflicting pair,
/// as restricted growth strings. Stops when `visit` returns `false`;
/// returns whether the enumeration ran to completion.
pub(crate) fn proper_partitions(conflict: &[Vec<bool>], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(i: usize, conflict: &[Vec<bool>], labels: &mut Vec<usize>, classes: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if i == conflict.len() {
            return visit(labels);
        }
        for c in 0..=classes {
            if c < classes && (0..i).any(|j| labels[j] == c && conflict[i][j]) {
                continue;
            }
            labels.push(c);
            let go = rec(i + 1, conflict, labels, classes.max(c + 1), visit);
            labels.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, conflict, &mut Vec::with_capacity(conflict.len()), 0, visit)
}

/// Sorted positive class masses of `c_A`, `c_B`, `c_C`: the entropies of a
/// cover depend on nothing else.
pub type CoverKey = [Vec<Rational>; 3];

fn key_part(masses: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut v: Vec<Rational> = masses.into_iter().filter(|m| !m.is_zero()).collect();
    v.sort();
    v
}

fn grouped(labels: &[usize], mass: &[Rational]) -> Vec<Rational> {
    let k = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut out = vec![Rational::zero(); k];
    for (&l, &m) in labels.iter().zip(mass) {
        out[l] += m;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverCloud {
    /// Pruned corners `key entropies / n`.
    pub region: Region3,
    pub keys: BTreeSet<CoverKey>,
    /// Covers visited, up to the budget.
    pub visited: usize,
    pub complete: bool,
}

/// Corner cloud of the chromatic entropy region of the n-instance graph.
///
/// `c_a` and `c_b` range over all proper partitions of the side conflict
/// graphs. Given them, `c_c` ranges over partitions of the positive-mass
/// color pairs into classes with no edge between them; zero-mass pairs take
/// fresh classes, which leaves every entropy unchanged.
pub fn enumerate_color_covers(inst: &ProblemInstance, n: usize, mode: Mode, budget: usize, cap: usize) -> Result<CoverCloud> {
    let graph = n_instance_graph(inst, n, mode, cap)?;
    let dom = Domain::new(inst, n);
    let (cx, cy) = (dom.cx(), dom.cy());
    let (gx, gy) = side_conflicts(&graph, cx, cy);
    let mx: Vec<Rational> = dom.mass.iter().map(|row| row.iter().copied().sum()).collect();
    let my: Vec<Rational> = (0..cy).map(|iy| dom.mass.iter().map(|row| row[iy]).sum()).collect();
    let edges = graph.edges();

    let mut parts_b = Vec::new();
    proper_partitions(&gy, &mut |l| {
        parts_b.push(l.to_vec());
        parts_b.len() <= budget
    });

    let mut keys = BTreeSet::new();
    let mut visited = 0usize;
    let complete = proper_partitions(&gx, &mut |la| {
        let ka = la.iter().max().map_or(0, |m| m + 1);
        let key_a = key_part(grouped(la, &mx));
        for lb in &parts_b {
            let kb = lb.iter().max().map_or(0, |m| m + 1);
            let key_b = key_part(grouped(lb, &my));
            let mut pair_mass = vec![Rational::zero(); ka * kb];
            for ix in 0..cx {
                for iy in 0..cy {
                    pair_mass[la[ix] * kb + lb[iy]] += dom.mass[ix][iy];
                }
            }
            let positive: Vec<usize> = (0..ka * kb).filter(|&p| !pair_mass[p].is_zero()).collect();
            let mut slot = vec![usize::MAX; ka * kb];
            for (i, &p) in positive.iter().enumerate() {
                slot[p] = i;
            }
            let mut conflict = vec![vec![false; positive.len()]; positive.len()];
            for &(u, v) in &edges {
                let pu = slot[la[u / cy] * kb + lb[u % cy]];
                let pv = slot[la[v / cy] * kb + lb[v % cy]];
                if pu != usize::MAX && pv != usize::MAX {
                    conflict[pu][pv] = true;
                    conflict[pv][pu] = true;
                }
            }
            let pm: Vec<Rational> = positive.iter().map(|&p| pair_mass[p]).collect();
            let go = proper_partitions(&conflict, &mut |lc| {
                visited += 1;
                keys.insert([key_a.clone(), key_b.clone(), key_part(grouped(lc, &pm))]);
                visited < budget
            });
            if !go {
                return false;
            }
        }
        true
    }) && parts_b.len() <= budget;

    let nn = n as f64;
    let corners = keys
        .iter()
        .map(|k| RateTriple::new(entropy(&k[0]) / nn, entropy(&k[1]) / nn, entropy(&k[2]) / nn))
        .collect();
    let mut region = Region3::new(corners).pruned(1e-12);
    if !complete {
        region.warnings.push(format!("color cover budget {budget} exhausted; cloud is partial"));
    }
    Ok(CoverCloud {
        region,
        keys,
        visited,
        complete,
    })
}
