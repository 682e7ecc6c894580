use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphs::{f_rook_graph, isomorphic};
use crate::model::ProblemInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `E(G^{f1}) ⊊ E(G^{f2})`: every rate region of `f1` contains that of `f2`.
    Subset,
    /// `E(G^{f2}) ⊊ E(G^{f1})`.
    Superset,
    /// Isomorphic f-modified rook's graphs (identical when `identical`): equal regions.
    Isomorphic { identical: bool },
    Incomparable,
    /// No edge containment and the isomorphism search exceeded its guard.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    /// For an edge containment `E(f_a) ⊆ E(f_b)`: whether `f_a` is a
    /// function of `(f_b, X)` and of `(f_b, Y)` on the support.
    pub determined: Option<bool>,
}

/// Whether `fa` is determined by `(fb, X)` and by `(fb, Y)` on the support.
fn determined_by(a: &ProblemInstance, b: &ProblemInstance) -> bool {
    let mut by_x = BTreeMap::new();
    let mut by_y = BTreeMap::new();
    a.pmf.support().into_iter().all(|(x, y)| {
        let (za, zb) = (a.f(x, y), b.f(x, y));
        *by_x.entry((x, zb)).or_insert(za) == za && *by_y.entry((y, zb)).or_insert(za) == za
    })
}

/// Orders two functions of the same source by their f-modified rook's graphs.
pub fn compare_functions(f1: &ProblemInstance, f2: &ProblemInstance, iso_guard: usize) -> Result<Comparison> {
    if f1.pmf != f2.pmf {
        return Err(Error::SourceMismatch);
    }
    let (g1, g2) = (f_rook_graph(f1), f_rook_graph(f2));
    let sub12 = g1.edge_subset(&g2)?;
    let sub21 = g2.edge_subset(&g1)?;
    let (verdict, determined) = match (sub12, sub21) {
        (true, true) => (Verdict::Isomorphic { identical: true }, Some(determined_by(f1, f2) && determined_by(f2, f1))),
        (true, false) => (Verdict::Subset, Some(determined_by(f1, f2))),
        (false, true) => (Verdict::Superset, Some(determined_by(f2, f1))),
        (false, false) => match isomorphic(&g1, &g2, iso_guard) {
            Ok(Some(_)) => (Verdict::Isomorphic { identical: false }, None),
            Ok(None) => (Verdict::Incomparable, None),
            Err(Error::GuardExceeded { .. }) => (Verdict::Undetermined, None),
            Err(e) => return Err(e),
        },
    };
    Ok(Comparison { verdict, determined })
}
