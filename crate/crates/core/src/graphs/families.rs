use alloc::vec::Vec;

use super::{Graph, Label};
use crate::error::Result;
use crate::model::{checked_power, Alphabet, Blocks, ProblemInstance};

/// Which receiver's confusability graph: `A` holds `X` and decodes with the
/// relay message, so its graph lives on `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Whether decoders must be right only on positive-probability blocks
/// (`Restricted`) or on every support coordinate of every block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Restricted,
    Unrestricted,
}

fn pair_labels(xa: &Alphabet, ya: &Alphabet) -> Vec<Label> {
    let mut out = Vec::with_capacity(xa.len() * ya.len());
    for x in xa.symbols() {
        for y in ya.symbols() {
            out.push(Label::pair(Label::sym(x.as_str()), Label::sym(y.as_str())));
        }
    }
    out
}

/// Rook's graph on `X × Y`: same row or same column.
pub fn rook_graph(xa: &Alphabet, ya: &Alphabet) -> Graph {
    let ny = ya.len();
    Graph::from_fn(pair_labels(xa, ya), |u, v| u / ny == v / ny || u % ny == v % ny)
}

/// f-modified rook's graph: rook-adjacent support cells with different `f`.
/// Off-support cells stay as isolated vertices.
pub fn f_rook_graph(inst: &ProblemInstance) -> Graph {
    let ny = inst.ny();
    Graph::from_fn(pair_labels(&inst.pmf.x_alpha, &inst.pmf.y_alpha), |u, v| {
        let (x1, y1, x2, y2) = (u / ny, u % ny, v / ny, v % ny);
        (x1 == x2 || y1 == y2)
            && inst.in_support(x1, y1)
            && inst.in_support(x2, y2)
            && inst.f(x1, y1) != inst.f(x2, y2)
    })
}

/// `G_{X|Y}` for side `A`, `G_{Y|X}` for side `B`.
pub fn confusability(inst: &ProblemInstance, side: Side) -> Graph {
    let labels = |a: &Alphabet| a.symbols().iter().map(|s| Label::sym(s.as_str())).collect();
    match side {
        Side::A => Graph::from_fn(labels(&inst.pmf.x_alpha), |x, x2| {
            (0..inst.ny()).any(|y| {
                inst.in_support(x, y) && inst.in_support(x2, y) && inst.f(x, y) != inst.f(x2, y)
            })
        }),
        Side::B => Graph::from_fn(labels(&inst.pmf.y_alpha), |y, y2| {
            (0..inst.nx()).any(|x| {
                inst.in_support(x, y) && inst.in_support(x, y2) && inst.f(x, y) != inst.f(x, y2)
            })
        }),
    }
}

/// Graph on `X^n × Y^n`; vertex `(x^n, y^n)` sits at `ix * |Y|^n + iy` with
/// blocks indexed by [`Blocks`]. Edges join blocks sharing `x^n` or `y^n`
/// that a decoder must separate under `mode`.
pub fn n_instance_graph(inst: &ProblemInstance, n: usize, mode: Mode, cap: usize) -> Result<Graph> {
    let count = checked_power("n-instance graph vertices", inst.nx() * inst.ny(), n, cap)?;
    let bx = Blocks::new(inst.nx(), n);
    let by = Blocks::new(inst.ny(), n);
    let (cx, cy) = (bx.count().unwrap(), by.count().unwrap());
    let xs: Vec<Vec<usize>> = (0..cx).map(|i| bx.decode(i)).collect();
    let ys: Vec<Vec<usize>> = (0..cy).map(|i| by.decode(i)).collect();

    let positive = |ix: usize, iy: usize| xs[ix].iter().zip(&ys[iy]).all(|(&x, &y)| inst.in_support(x, y));
    let pos: Vec<bool> = (0..count).map(|v| positive(v / cy, v % cy)).collect();
    let separated = |a: usize, b: usize| -> bool {
        let (xa, ya, xb, yb) = (&xs[a / cy], &ys[a % cy], &xs[b / cy], &ys[b % cy]);
        match mode {
            Mode::Restricted => {
                pos[a] && pos[b] && (0..n).any(|i| inst.f(xa[i], ya[i]) != inst.f(xb[i], yb[i]))
            }
            Mode::Unrestricted => (0..n).any(|i| {
                inst.in_support(xa[i], ya[i])
                    && inst.in_support(xb[i], yb[i])
                    && inst.f(xa[i], ya[i]) != inst.f(xb[i], yb[i])
            }),
        }
    };

    let mut adj = alloc::vec![Vec::new(); count];
    for ix in 0..cx {
        for iy in 0..cy {
            for iy2 in iy + 1..cy {
                let (a, b) = (ix * cy + iy, ix * cy + iy2);
                if separated(a, b) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
    }
    for iy in 0..cy {
        for ix in 0..cx {
            for ix2 in ix + 1..cx {
                let (a, b) = (ix * cy + iy, ix2 * cy + iy);
                if separated(a, b) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let labels = (0..count)
        .map(|v| {
            Label::pair(
                block_sym(&inst.pmf.x_alpha, &xs[v / cy]),
                block_sym(&inst.pmf.y_alpha, &ys[v % cy]),
            )
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(labels, adj))
}

fn block_sym(alpha: &Alphabet, digits: &[usize]) -> Label {
    if digits.len() == 1 {
        Label::sym(alpha.symbol(digits[0]))
    } else {
        Label::Tuple(digits.iter().map(|&d| Label::sym(alpha.symbol(d))).collect())
    }
}

/// Graph on `S_XY` for a receiver that knows `X` and must recover `Y`:
/// `(x, y) ~ (x', y')` iff `x = x'` and `y ≠ y'`. Vertices follow
/// [`JointPmf::support`](crate::model::JointPmf::support).
pub fn single_decoder_graph(inst: &ProblemInstance) -> Graph {
    let support = inst.pmf.support();
    let labels = support
        .iter()
        .map(|&(x, y)| {
            Label::pair(
                Label::sym(inst.pmf.x_alpha.symbol(x)),
                Label::sym(inst.pmf.y_alpha.symbol(y)),
            )
        })
        .collect();
    Graph::from_fn(labels, |u, v| support[u].0 == support[v].0)
}

/// n-instance version of [`single_decoder_graph`] on the positive-mass
/// blocks `(x^n, y^n)`, ordered by `(x^n, y^n)` block index.
pub fn single_decoder_n_instance(inst: &ProblemInstance, n: usize, cap: usize) -> Result<Graph> {
    checked_power("single-decoder graph vertices", inst.nx() * inst.ny(), n, cap)?;
    let bx = Blocks::new(inst.nx(), n);
    let by = Blocks::new(inst.ny(), n);
    let mut verts: Vec<(usize, usize)> = Vec::new();
    let mut labels = Vec::new();
    for ix in 0..bx.count().unwrap() {
        let xs = bx.decode(ix);
        for iy in 0..by.count().unwrap() {
            let ys = by.decode(iy);
            if xs.iter().zip(&ys).all(|(&x, &y)| inst.in_support(x, y)) {
                verts.push((ix, iy));
                labels.push(Label::pair(
                    block_sym(&inst.pmf.x_alpha, &xs),
                    block_sym(&inst.pmf.y_alpha, &ys),
                ));
            }
        }
    }
    Ok(Graph::from_fn(labels, |u, v| verts[u].0 == verts[v].0))
}
