//! Three-dimensional rate regions `(R_A, R_B, R_C)` for the relay network:
//! multiletter corner clouds, single-letter inner bounds, the cutset outer
//! bound and the function-comparison order.

mod bounds;
mod compare;
mod inner;
mod lp;

use alloc::string::String;
use alloc::vec::Vec;

use crate::model::RateTriple;

pub use bounds::{
    bfn_general_bounds, bfn_xor_perfect_route, bfn_xor_rate, cutset_outer, eps_inner_ri2, exchange_eps_region,
    relay_xor_zero_region, zero_inner_ri2, BfnBounds,
};
pub use compare::{compare_functions, Comparison, Verdict};
pub use inner::{
    eval_eps_ri1, eval_zero_ri1, search_ri1, AuxChoice, AuxComponent, EpsEval, SearchConfig,
    SearchResult, ZeroEval, side_rate,
};

/// Up-closed convex hull of finitely many corner points.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Region3 {
    pub generators: Vec<RateTriple>,
    /// Solver diagnostics and truncation notices attached while building.
    pub warnings: Vec<String>,
}

impl Region3 {
    pub fn new(generators: Vec<RateTriple>) -> Self {
        Region3 {
            generators,
            warnings: Vec::new(),
        }
    }

    pub fn corner(r: RateTriple) -> Self {
        Self::new(alloc::vec![r])
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `point` dominates some convex combination of the generators, up to
    /// `tol` per coordinate.
    pub fn member(&self, point: &RateTriple, tol: f64) -> bool {
        let p = point.as_array();
        if self.generators.is_empty() || p.iter().any(|&c| c < -tol) {
            return false;
        }
        if self
            .generators
            .iter()
            .any(|g| g.as_array().iter().zip(&p).all(|(a, b)| *a <= b + tol))
        {
            return true;
        }
        let gens: Vec<[f64; 3]> = self.generators.iter().map(RateTriple::as_array).collect();
        lp::dominates_hull(&gens, [p[0] + tol, p[1] + tol, p[2] + tol])
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains(&self, other: &Region3, tol: f64) -> bool {
        other.generators.iter().all(|g| self.member(g, tol))
    }

    /// Convex hull of the union.
    pub fn hull_union(&self, other: &Region3) -> Region3 {
        let mut out = self.clone();
        out.generators.extend(other.generators.iter().copied());
        out.warnings.extend(other.warnings.iter().cloned());
        out
    }

    /// Drops generators dominated by another generator, keeping the first
    /// of equal points.
    pub fn pruned(&self, tol: f64) -> Region3 {
        let g = &self.generators;
        let keep = (0..g.len())
            .filter(|&i| {
                !(0..g.len()).any(|j| {
                    j != i && g[i].dominates(&g[j], tol) && (!g[j].dominates(&g[i], tol) || j < i)
                })
            })
            .map(|i| g[i])
            .collect();
        Region3 {
            generators: keep,
            warnings: self.warnings.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: f64, b: f64, c: f64) -> RateTriple {
        RateTriple::new(a, b, c)
    }

    #[test]
    fn generator_and_below() {
        let r = Region3::new(alloc::vec![t(1.0, 0.0, 2.0), t(0.0, 1.0, 2.0)]);
        assert!(r.member(&t(1.0, 0.0, 2.0), 1e-12));
        assert!(!r.member(&t(1.0, 0.0, 1.9), 1e-12));
        assert!(r.member(&t(0.5, 0.5, 2.0), 1e-12));
        assert!(!r.member(&t(0.4, 0.5, 2.0), 1e-9));
    }

    #[test]
    fn pruning_keeps_frontier() {
        let r = Region3::new(alloc::vec![t(1.0, 1.0, 1.0), t(2.0, 2.0, 2.0), t(1.0, 1.0, 1.0), t(0.0, 3.0, 1.0)]);
        let p = r.pruned(1e-12);
        assert_eq!(p.generators, alloc::vec![t(1.0, 1.0, 1.0), t(0.0, 3.0, 1.0)]);
    }
}
