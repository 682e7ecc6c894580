use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::scheme::{is_prefix_free, Scheme};
use crate::error::{Error, Result};
use crate::graphs::{n_instance_graph, Graph, Mode};
use crate::model::{Blocks, ProblemInstance, Rational};

/// Two blocks `(ix, iy)` that a node cannot tell apart although `f` differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub decodable_at_a: bool,
    pub decodable_at_b: bool,
    pub witness_a: Option<Conflict>,
    pub witness_b: Option<Conflict>,
    /// Exact block error probability of the canonical decoders
    /// (restricted mode only).
    pub error_prob: Option<Rational>,
}

impl VerificationReport {
    pub fn zero_error(&self) -> bool {
        self.decodable_at_a && self.decodable_at_b
    }
}

/// Blocks of `X^n × Y^n` with their masses and function blocks.
pub(crate) struct Domain<'a> {
    inst: &'a ProblemInstance,
    pub n: usize,
    pub xs: Vec<Vec<usize>>,
    pub ys: Vec<Vec<usize>>,
    pub mass: Vec<Vec<Rational>>,
    /// Function block of `(ix, iy)` encoded over `Z^n`.
    pub fblock: Vec<Vec<usize>>,
}

impl<'a> Domain<'a> {
    pub fn new(inst: &'a ProblemInstance, n: usize) -> Self {
        let bx = Blocks::new(inst.nx(), n);
        let by = Blocks::new(inst.ny(), n);
        let bz = Blocks::new(inst.f.z_alpha.len().max(1), n);
        let xs: Vec<Vec<usize>> = (0..bx.count().unwrap()).map(|i| bx.decode(i)).collect();
        let ys: Vec<Vec<usize>> = (0..by.count().unwrap()).map(|i| by.decode(i)).collect();
        let mass = xs
            .iter()
            .map(|xb| {
                ys.iter()
                    .map(|yb| xb.iter().zip(yb).map(|(&x, &y)| inst.p(x, y)).product())
                    .collect()
            })
            .collect();
        let fblock = xs
            .iter()
            .map(|xb| {
                ys.iter()
                    .map(|yb| {
                        let z: Vec<usize> = xb.iter().zip(yb).map(|(&x, &y)| inst.f(x, y)).collect();
                        bz.encode(&z)
                    })
                    .collect()
            })
            .collect();
        Domain {
            inst,
            n,
            xs,
            ys,
            mass,
            fblock,
        }
    }

    pub fn cx(&self) -> usize {
        self.xs.len()
    }

    pub fn cy(&self) -> usize {
        self.ys.len()
    }

    fn in_support(&self, ix: usize, iy: usize, i: usize) -> bool {
        self.inst.in_support(self.xs[ix][i], self.ys[iy][i])
    }

    fn f(&self, ix: usize, iy: usize, i: usize) -> usize {
        self.inst.f(self.xs[ix][i], self.ys[iy][i])
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    A,
    B,
}

struct NodeCheck {
    conflict: Option<Conflict>,
    /// Restricted mode: decoded function block for each `(own block, message)`.
    decision: BTreeMap<(usize, usize), usize>,
}

fn check_node(dom: &Domain, msg: &[Vec<usize>], node: Node, mode: Mode) -> NodeCheck {
    let (own, other) = match node {
        Node::A => (dom.cx(), dom.cy()),
        Node::B => (dom.cy(), dom.cx()),
    };
    let at = |o: usize, t: usize| match node {
        Node::A => (o, t),
        Node::B => (t, o),
    };
    let mut conflict = None;
    let mut decision = BTreeMap::new();
    for o in 0..own {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in 0..other {
            let (ix, iy) = at(o, t);
            groups.entry(msg[ix][iy]).or_default().push(t);
        }
        for (m, members) in groups {
            match mode {
                Mode::Restricted => {
                    let mut by_f: Vec<(usize, Rational, usize)> = Vec::new();
                    for &t in &members {
                        let (ix, iy) = at(o, t);
                        let p = dom.mass[ix][iy];
                        if p.is_zero() {
                            continue;
                        }
                        let fb = dom.fblock[ix][iy];
                        match by_f.iter_mut().find(|e| e.0 == fb) {
                            Some(e) => e.1 += p,
                            None => by_f.push((fb, p, t)),
                        }
                    }
                    if by_f.len() > 1 && conflict.is_none() {
                        conflict = Some(Conflict {
                            first: at(o, by_f[0].2),
                            second: at(o, by_f[1].2),
                        });
                    }
                    if let Some(best) = by_f.iter().reduce(|a, b| if b.1 > a.1 { b } else { a }) {
                        decision.insert((o, m), best.0);
                    }
                }
                Mode::Unrestricted => {
                    if conflict.is_some() {
                        continue;
                    }
                    'coords: for i in 0..dom.n {
                        let mut seen: Option<(usize, usize)> = None;
                        for &t in &members {
                            let (ix, iy) = at(o, t);
                            if !dom.in_support(ix, iy, i) {
                                continue;
                            }
                            let z = dom.f(ix, iy, i);
                            match seen {
                                None => seen = Some((z, t)),
                                Some((z0, t0)) if z0 != z => {
                                    conflict = Some(Conflict {
                                        first: at(o, t0),
                                        second: at(o, t),
                                    });
                                    break 'coords;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
    }
    NodeCheck { conflict, decision }
}

pub(crate) fn verify_messages(dom: &Domain, msg: &[Vec<usize>], mode: Mode) -> VerificationReport {
    let a = check_node(dom, msg, Node::A, mode);
    let b = check_node(dom, msg, Node::B, mode);
    let error_prob = (mode == Mode::Restricted).then(|| {
        let mut pe = Rational::zero();
        for ix in 0..dom.cx() {
            for iy in 0..dom.cy() {
                let p = dom.mass[ix][iy];
                if p.is_zero() {
                    continue;
                }
                let m = msg[ix][iy];
                let f = dom.fblock[ix][iy];
                if a.decision[&(ix, m)] != f || b.decision[&(iy, m)] != f {
                    pe += p;
                }
            }
        }
        pe
    });
    VerificationReport {
        decodable_at_a: a.conflict.is_none(),
        decodable_at_b: b.conflict.is_none(),
        witness_a: a.conflict,
        witness_b: b.conflict,
        error_prob,
    }
}

/// Exhaustive zero-error check with the canonical consistent-set decoders.
/// In restricted mode the decoders pick the heaviest consistent function
/// block, which gives the exact block error probability.
pub fn verify_zero_error(scheme: &Scheme, inst: &ProblemInstance, mode: Mode) -> VerificationReport {
    let dom = Domain::new(inst, scheme.n);
    verify_messages(&dom, &scheme.relay_ids(), mode)
}

/// Both sides of the coloring characterization of decodability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equivalence {
    /// `verify_zero_error` passes at both nodes.
    pub decodable: bool,
    /// `phi_C ∘ (phi_A × phi_B)` is a proper coloring of the n-instance graph.
    pub proper: bool,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.decodable == self.proper
    }
}

/// As [`coloring_equivalence`] with a prebuilt n-instance graph.
pub fn coloring_equivalence_on(scheme: &Scheme, inst: &ProblemInstance, mode: Mode, graph: &Graph) -> Equivalence {
    let msg = scheme.relay_ids();
    let cy = scheme.phi_b.len();
    let proper = graph
        .edges()
        .into_iter()
        .all(|(u, v)| msg[u / cy][u % cy] != msg[v / cy][v % cy]);
    Equivalence {
        decodable: verify_zero_error(scheme, inst, mode).zero_error(),
        proper,
    }
}

pub fn coloring_equivalence(scheme: &Scheme, inst: &ProblemInstance, mode: Mode, cap: usize) -> Result<Equivalence> {
    let g = n_instance_graph(inst, scheme.n, mode, cap)?;
    Ok(coloring_equivalence_on(scheme, inst, mode, &g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelayReport {
    pub computable: bool,
    /// Positive-mass blocks with equal `(phi_A, phi_B)` and different `f`.
    pub witness: Option<Conflict>,
}

/// Whether the function block is determined by `(phi_A(x^n), phi_B(y^n))`
/// on positive-mass blocks.
pub fn relay_computability(scheme: &Scheme, inst: &ProblemInstance) -> RelayReport {
    let dom = Domain::new(inst, scheme.n);
    let mut seen: BTreeMap<(&str, &str), (usize, (usize, usize))> = BTreeMap::new();
    for ix in 0..dom.cx() {
        for iy in 0..dom.cy() {
            if dom.mass[ix][iy].is_zero() {
                continue;
            }
            let key = (scheme.phi_a[ix].as_str(), scheme.phi_b[iy].as_str());
            let f = dom.fblock[ix][iy];
            match seen.get(&key) {
                Some(&(f0, at)) if f0 != f => {
                    return RelayReport {
                        computable: false,
                        witness: Some(Conflict {
                            first: at,
                            second: (ix, iy),
                        }),
                    };
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (f, (ix, iy)));
                }
            }
        }
    }
    RelayReport {
        computable: true,
        witness: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfnReport {
    pub report: VerificationReport,
    /// `(1/n) Σ p(x^n, y^n) |phi_C(x^n, y^n)|`.
    pub rate: Rational,
}

/// Broadcast with complementary side information: one encoder sees both
/// blocks, receiver A holds `x^n`, receiver B holds `y^n`. `phi_c` is
/// indexed by `ix * |Y|^n + iy`.
pub fn bfn_verify(phi_c: &[String], n: usize, inst: &ProblemInstance) -> Result<BfnReport> {
    let dom = Domain::new(inst, n);
    let (cx, cy) = (dom.cx(), dom.cy());
    if phi_c.len() != cx * cy {
        return Err(Error::InvalidScheme(format!("phi_C has {} entries, X^n × Y^n has {}", phi_c.len(), cx * cy)));
    }
    if let Some(w) = phi_c.iter().find(|w| !w.bytes().all(|b| b == b'0' || b == b'1')) {
        return Err(Error::InvalidScheme(format!("codeword `{w}` is not a bit string")));
    }
    if !is_prefix_free(phi_c.iter()) {
        return Err(Error::InvalidScheme("phi_C codebook is not prefix-free".into()));
    }
    let mut ids: BTreeMap<&String, usize> = BTreeMap::new();
    let msg: Vec<Vec<usize>> = (0..cx)
        .map(|ix| {
            (0..cy)
                .map(|iy| {
                    let next = ids.len();
                    *ids.entry(&phi_c[ix * cy + iy]).or_insert(next)
                })
                .collect()
        })
        .collect();
    let mut total = Rational::zero();
    for ix in 0..cx {
        for iy in 0..cy {
            total += dom.mass[ix][iy] * Rational::from_integer(phi_c[ix * cy + iy].len() as i128);
        }
    }
    Ok(BfnReport {
        report: verify_messages(&dom, &msg, Mode::Restricted),
        rate: total / Rational::from_integer(n as i128),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixture;

    fn counterexample(inst: &ProblemInstance) -> Scheme {
        let ind = [1, 0, 0];
        Scheme::from_maps(inst, 1, &ind, &ind, |a, b| usize::from(a == b)).unwrap()
    }

    #[test]
    fn threshold_counterexample() {
        let inst = fixture("THRESHOLD").unwrap();
        let s = counterexample(&inst);
        let r = verify_zero_error(&s, &inst, Mode::Restricted);
        assert!(r.zero_error());
        assert_eq!(r.error_prob, Some(Rational::zero()));
        let rel = relay_computability(&s, &inst);
        assert!(!rel.computable);
        let w = rel.witness.unwrap();
        let mut pair = [w.first, w.second];
        pair.sort();
        assert_eq!(pair, [(1, 2), (2, 1)]);
    }

    #[test]
    fn constant_relay_fails_with_witness() {
        let inst = fixture("DSBS_AND(1/4)").unwrap();
        let s = Scheme::from_maps(&inst, 1, &[0, 1], &[0, 1], |_, _| 0).unwrap();
        let r = verify_zero_error(&s, &inst, Mode::Restricted);
        assert!(!r.decodable_at_a);
        let w = r.witness_a.unwrap();
        assert_eq!(w.first.0, w.second.0);
        assert!(r.error_prob.unwrap() > Rational::zero());
        assert!(!coloring_equivalence(&s, &inst, Mode::Restricted, 5000).unwrap().proper);
    }

    #[test]
    fn xor_broadcast_bit() {
        let inst = fixture("DSBS_XOR(1/4)").unwrap();
        let phi: Vec<String> = (0..4).map(|v| String::from(if (v / 2) ^ (v % 2) == 1 { "1" } else { "0" })).collect();
        let r = bfn_verify(&phi, 1, &inst).unwrap();
        assert!(r.report.zero_error());
        assert_eq!(r.rate, Rational::from_integer(1));
        let flat = alloc::vec![String::from("0"); 4];
        assert!(!bfn_verify(&flat, 1, &inst).unwrap().report.zero_error());
    }
}
