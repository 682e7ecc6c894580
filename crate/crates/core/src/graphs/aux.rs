use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{confusability, Graph, IndepSetFamily, Label, Side};
use crate::error::{AuxCondition, Error, Result};
use crate::model::{ProblemInstance, Rational};

/// A family of independent sets together with a test channel `p(u | v)`
/// from the graph's vertices onto the family, `cond[v][u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndepSetChannel {
    pub family: IndepSetFamily,
    pub cond: Vec<Vec<Rational>>,
    pub names: Vec<String>,
}

impl IndepSetChannel {
    /// Checks that every set is independent in `g`, every row of `cond` is a
    /// distribution, and `p(u | v) > 0` only when `v ∈ u`. Failures are
    /// reported against `which`.
    pub fn new(g: &Graph, sets: Vec<Vec<usize>>, cond: Vec<Vec<Rational>>, which: AuxCondition) -> Result<Self> {
        let fail = |detail: String| Error::AuxChoice {
            condition: which,
            detail,
        };
        let family = IndepSetFamily::new(g, sets).map_err(|e| fail(format!("{e}")))?;
        if cond.len() != g.n() {
            return Err(fail(format!("{} conditional rows for {} vertices", cond.len(), g.n())));
        }
        for (v, row) in cond.iter().enumerate() {
            if row.len() != family.len() {
                return Err(fail(format!("row {} has {} entries for {} sets", g.label(v), row.len(), family.len())));
            }
            if row.iter().any(|p| *p < Rational::zero()) {
                return Err(fail(format!("row {} has a negative entry", g.label(v))));
            }
            let total: Rational = row.iter().copied().sum();
            if total != Rational::one() {
                return Err(fail(format!("row {} sums to {total}", g.label(v))));
            }
            for (u, p) in row.iter().enumerate() {
                if *p > Rational::zero() && !family.contains(u, v) {
                    return Err(fail(format!(
                        "p({}|{}) > 0 but {} is not in the set",
                        family.set_label(g, u),
                        g.label(v),
                        g.label(v)
                    )));
                }
            }
        }
        let names = (0..family.len()).map(|u| family.set_label(g, u)).collect();
        Ok(IndepSetChannel { family, cond, names })
    }

    /// Deterministic channel sending vertex `v` to set `assign[v]`.
    pub fn deterministic(g: &Graph, sets: Vec<Vec<usize>>, assign: &[usize], which: AuxCondition) -> Result<Self> {
        let k = sets.len();
        let cond = assign
            .iter()
            .map(|&u| {
                (0..k)
                    .map(|j| if j == u { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(g, sets, cond, which)
    }

    /// Every vertex mapped to its own singleton.
    pub fn singletons(g: &Graph, which: AuxCondition) -> Result<Self> {
        let sets = (0..g.n()).map(|v| alloc::vec![v]).collect();
        let assign: Vec<usize> = (0..g.n()).collect();
        Self::deterministic(g, sets, &assign, which)
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        for (slot, n) in self.names.iter_mut().zip(names) {
            *slot = String::from(*n);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// True when every row puts all its mass on one set.
    pub fn is_deterministic(&self) -> bool {
        self.cond
            .iter()
            .all(|row| row.iter().filter(|p| !p.is_zero()).count() == 1)
    }
}

/// Joint mass `p(x, y) p(u1|x) p(u2|y)` grouped by auxiliary vertex
/// `(u1, u2)` at index `u1 * |U2| + u2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxActivity {
    pub n_u1: usize,
    pub n_u2: usize,
    /// Positive-mass `(x, y, mass)` triples of each auxiliary vertex.
    pub cells: Vec<Vec<(usize, usize, Rational)>>,
}

impl AuxActivity {
    pub fn new(inst: &ProblemInstance, u1: &IndepSetChannel, u2: &IndepSetChannel) -> Self {
        let (n1, n2) = (u1.len(), u2.len());
        let mut cells = alloc::vec![Vec::new(); n1 * n2];
        for (x, y) in inst.pmf.support() {
            let p = inst.p(x, y);
            for a in 0..n1 {
                let pa = u1.cond[x][a];
                if pa.is_zero() {
                    continue;
                }
                for b in 0..n2 {
                    let pb = u2.cond[y][b];
                    if !pb.is_zero() {
                        cells[a * n2 + b].push((x, y, p * pa * pb));
                    }
                }
            }
        }
        AuxActivity {
            n_u1: n1,
            n_u2: n2,
            cells,
        }
    }

    pub fn vertex_mass(&self, v: usize) -> Rational {
        self.cells[v].iter().map(|c| c.2).sum()
    }
}

fn check_side(inst: &ProblemInstance, ch: &IndepSetChannel, side: Side) -> Result<()> {
    let (which, n) = match side {
        Side::A => (AuxCondition::U1, inst.nx()),
        Side::B => (AuxCondition::U2, inst.ny()),
    };
    let g = confusability(inst, side);
    if ch.cond.len() != n {
        return Err(Error::AuxChoice {
            condition: which,
            detail: format!("{} conditional rows for an alphabet of {n}", ch.cond.len()),
        });
    }
    for s in &ch.family.sets {
        if !g.is_independent(s) {
            let parts: Vec<String> = s.iter().map(|&v| format!("{}", g.label(v))).collect();
            return Err(Error::AuxChoice {
                condition: which,
                detail: format!("{{{}}} is not independent in the confusability graph", parts.join(",")),
            });
        }
    }
    Ok(())
}

/// Graph on `U1 × U2` joining auxiliary pairs that share a row `(x, u1)` or
/// a column `(y, u2)` across which `f` changes, both with positive mass.
pub fn aux_graph(inst: &ProblemInstance, u1: &IndepSetChannel, u2: &IndepSetChannel) -> Result<Graph> {
    check_side(inst, u1, Side::A)?;
    check_side(inst, u2, Side::B)?;
    let act = AuxActivity::new(inst, u1, u2);
    let n2 = act.n_u2;
    let labels = (0..act.cells.len())
        .map(|v| Label::pair(Label::sym(u1.names[v / n2].as_str()), Label::sym(u2.names[v % n2].as_str())))
        .collect();
    Ok(Graph::from_fn(labels, |a, b| {
        let (a1, a2, b1, b2) = (a / n2, a % n2, b / n2, b % n2);
        let row = a1 == b1;
        let col = a2 == b2;
        if !row && !col {
            return false;
        }
        act.cells[a].iter().any(|&(x, y, _)| {
            act.cells[b].iter().any(|&(x2, y2, _)| {
                inst.f(x, y) != inst.f(x2, y2) && ((row && x == x2) || (col && y == y2))
            })
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::graphs::f_rook_graph;
    use crate::model::fixture;

    fn half(g: &Graph, which: AuxCondition) -> IndepSetChannel {
        let h = Rational::new(1, 2);
        let (o, z) = (Rational::one(), Rational::zero());
        IndepSetChannel::new(g, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2]], alloc::vec![alloc::vec![o, z], alloc::vec![h, h], alloc::vec![z, o]], which).unwrap()
    }

    #[test]
    fn threshold_square() {
        let inst = fixture("THRESHOLD").unwrap();
        let u1 = half(&confusability(&inst, Side::A), AuxCondition::U1).with_names(&["a", "b"]);
        let u2 = half(&confusability(&inst, Side::B), AuxCondition::U2).with_names(&["c", "d"]);
        let g = aux_graph(&inst, &u1, &u2).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert_eq!(g.label(1).to_string(), "(a,d)");
        // (a,c) and (b,d) are opposite corners
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 2));
    }

    #[test]
    fn pentagon_singletons_recover_f_rook() {
        let inst = fixture("PENTAGON").unwrap();
        let u1 = IndepSetChannel::singletons(&confusability(&inst, Side::A), AuxCondition::U1).unwrap();
        let u2 = IndepSetChannel::singletons(&confusability(&inst, Side::B), AuxCondition::U2).unwrap();
        let g = aux_graph(&inst, &u1, &u2).unwrap();
        let f = f_rook_graph(&inst);
        assert!(g.maps_onto(&f, &(0..25).collect::<Vec<_>>()));
    }

    #[test]
    fn channel_outside_its_set_is_rejected() {
        let inst = fixture("THRESHOLD").unwrap();
        let g = confusability(&inst, Side::A);
        let (o, z) = (Rational::one(), Rational::zero());
        let err = IndepSetChannel::new(&g, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2]], alloc::vec![alloc::vec![z, o], alloc::vec![o, z], alloc::vec![z, o]], AuxCondition::U1);
        assert!(matches!(err, Err(Error::AuxChoice { condition: AuxCondition::U1, .. })));
    }

    #[test]
    fn non_independent_family_names_condition() {
        let inst = fixture("THRESHOLD").unwrap();
        let empty = Graph::empty(3);
        let o = Rational::one();
        let bad = IndepSetChannel::new(&empty, alloc::vec![alloc::vec![0, 1, 2]], alloc::vec![alloc::vec![o], alloc::vec![o], alloc::vec![o]], AuxCondition::U1).unwrap();
        let ok = IndepSetChannel::singletons(&confusability(&inst, Side::B), AuxCondition::U2).unwrap();
        let err = aux_graph(&inst, &bad, &ok).unwrap_err();
        assert!(matches!(err, Error::AuxChoice { condition: AuxCondition::U1, .. }));
    }
}
