use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Region3;
use crate::config::Config;
use crate::entropy::{
    and_union_min_rate, conditional_graph_entropy, graph_entropy, EntropyResult, MinRate, ProbabilisticGraph,
};
use crate::error::{Error, Result};
use crate::graphs::{confusability, f_rook_graph, single_decoder_graph, Graph, Side};
use crate::model::{ProblemInstance, RateTriple, Rational, X, Y, Z};

/// Optimal zero-error broadcast rate when the relay knows `(X, Y)` and both
/// receivers need the other's symbol: `max{H(Y|X), H(X|Y)}`.
pub fn bfn_xor_rate(inst: &ProblemInstance) -> f64 {
    let t = inst.xyz();
    t.cond_entropy(&[Y], &[X]).max(t.cond_entropy(&[X], &[Y]))
}

/// Zero-error broadcast rate bounds for a general function.
#[derive(Debug, Clone, PartialEq)]
pub struct BfnBounds {
    /// `max{H(Z|X), H(Z|Y)}`.
    pub lower: f64,
    /// Graph entropy of the f-modified rook's graph under `p_XY`.
    pub upper: f64,
    pub upper_gap: f64,
}

pub fn bfn_general_bounds(inst: &ProblemInstance, cfg: &Config) -> Result<BfnBounds> {
    let t = inst.xyz();
    let lower = t.cond_entropy(&[Z], &[X]).max(t.cond_entropy(&[Z], &[Y]));
    let pg = ProbabilisticGraph::new(f_rook_graph(inst), inst.pmf.mass.clone())?;
    let r = graph_entropy(&pg, cfg)?;
    Ok(BfnBounds {
        lower,
        upper: r.value,
        upper_gap: r.convergence.map_or(0.0, |c| c.gap),
    })
}

/// The same broadcast rate through the AND-union of the two single-decoder
/// graphs on `S_XY`; both are disjoint unions of cliques, hence perfect, so
/// the minimum rate is exact.
pub fn bfn_xor_perfect_route(inst: &ProblemInstance, cfg: &Config) -> Result<MinRate> {
    let support = inst.pmf.support();
    let g1 = single_decoder_graph(inst);
    let g2 = Graph::from_fn(g1.labels().to_vec(), |u, v| {
        support[u].1 == support[v].1 && support[u].0 != support[v].0
    });
    let mass: Vec<Rational> = support.iter().map(|&(x, y)| inst.p(x, y)).collect();
    and_union_min_rate(&[g1, g2], &mass, 1, cfg)
}

/// Zero-error region for exchanging `X` and `Y` through the relay on a
/// full-support source: `(H(X), H(Y), max{H(Y|X), H(X|Y)})`.
pub fn relay_xor_zero_region(inst: &ProblemInstance) -> Result<Region3> {
    if !inst.pmf.is_full_support() {
        return Err(Error::NotFullSupport);
    }
    let t = inst.xyz();
    Ok(Region3::corner(RateTriple::new(t.entropy(&[X]), t.entropy(&[Y]), bfn_xor_rate(inst))))
}

/// ε-error region for exchanging `X` and `Y`:
/// `(H(X|Y), H(Y|X), max{H(Y|X), H(X|Y)})`.
pub fn exchange_eps_region(inst: &ProblemInstance) -> Region3 {
    let t = inst.xyz();
    let a = t.cond_entropy(&[X], &[Y]);
    let b = t.cond_entropy(&[Y], &[X]);
    Region3::corner(RateTriple::new(a, b, a.max(b)))
}

/// `joint[v][w]` with `v` on the side's own alphabet.
fn joint_rows(inst: &ProblemInstance, side: Side) -> Vec<Vec<Rational>> {
    match side {
        Side::A => (0..inst.nx()).map(|x| (0..inst.ny()).map(|y| inst.p(x, y)).collect()).collect(),
        Side::B => (0..inst.ny()).map(|y| (0..inst.nx()).map(|x| inst.p(x, y)).collect()).collect(),
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::A => "G_X|Y",
        Side::B => "G_Y|X",
    }
}

fn note(warnings: &mut Vec<String>, what: &str, r: &EntropyResult) {
    if let Some(c) = &r.convergence {
        if !c.converged {
            warnings.push(format!("{what}: not converged after {} iterations (gap {:.3e})", c.iterations, c.gap));
        }
        if c.spread_flag {
            warnings.push(format!("{what}: restart spread {:.3e}", c.spread));
        }
    }
}

fn conditional(inst: &ProblemInstance, side: Side, cfg: &Config, warnings: &mut Vec<String>) -> Result<EntropyResult> {
    let r = conditional_graph_entropy(&confusability(inst, side), &joint_rows(inst, side), cfg)?;
    note(warnings, &format!("H_{}(·|·)", side_name(side)), &r);
    Ok(r)
}

fn unconditional(inst: &ProblemInstance, side: Side, cfg: &Config, warnings: &mut Vec<String>) -> Result<EntropyResult> {
    let mass = match side {
        Side::A => inst.pmf.marginal_x(),
        Side::B => inst.pmf.marginal_y(),
    };
    let r = graph_entropy(&ProbabilisticGraph::new(confusability(inst, side), mass)?, cfg)?;
    note(warnings, &format!("H_{}(·)", side_name(side)), &r);
    Ok(r)
}

/// Cutset outer bound
/// `(H_{G_X|Y}(X|Y), H_{G_Y|X}(Y|X), max{H(Z|X), H(Z|Y)})`. Iterative
/// entropies enter through their certified lower ends.
pub fn cutset_outer(inst: &ProblemInstance, cfg: &Config) -> Result<Region3> {
    let mut warnings = Vec::new();
    let a = conditional(inst, Side::A, cfg, &mut warnings)?.lower();
    let b = conditional(inst, Side::B, cfg, &mut warnings)?.lower();
    let t = inst.xyz();
    let c = t.cond_entropy(&[Z], &[X]).max(t.cond_entropy(&[Z], &[Y]));
    Ok(Region3 {
        generators: alloc::vec![RateTriple::new(a, b, c)],
        warnings,
    })
}

/// Zero-error inner bound from the two confusability graph entropies.
pub fn zero_inner_ri2(inst: &ProblemInstance, cfg: &Config) -> Result<Region3> {
    let mut warnings = Vec::new();
    let a = unconditional(inst, Side::A, cfg, &mut warnings)?.value;
    let b = unconditional(inst, Side::B, cfg, &mut warnings)?.value;
    Ok(Region3 {
        generators: alloc::vec![RateTriple::new(a, b, a.max(b))],
        warnings,
    })
}

/// ε-error inner bound from the two conditional graph entropies.
pub fn eps_inner_ri2(inst: &ProblemInstance, cfg: &Config) -> Result<Region3> {
    let mut warnings = Vec::new();
    let a = conditional(inst, Side::A, cfg, &mut warnings)?.value;
    let b = conditional(inst, Side::B, cfg, &mut warnings)?.value;
    Ok(Region3 {
        generators: alloc::vec![RateTriple::new(a, b, a.max(b))],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{binary_entropy, fixture};

    #[test]
    fn dsbs_xor_rates() {
        let inst = fixture("DSBS_XOR(1/4)").unwrap();
        let h = binary_entropy(0.25);
        assert!((bfn_xor_rate(&inst) - h).abs() < 1e-12);
        let z = relay_xor_zero_region(&inst).unwrap().generators[0];
        assert!((z.r_a - 1.0).abs() < 1e-12 && (z.r_b - 1.0).abs() < 1e-12 && (z.r_c - h).abs() < 1e-12);
        let e = exchange_eps_region(&inst).generators[0];
        assert!(e.as_array().iter().all(|v| (v - h).abs() < 1e-12));
    }

    #[test]
    fn pentagon_is_not_full_support() {
        assert_eq!(relay_xor_zero_region(&fixture("PENTAGON").unwrap()), Err(Error::NotFullSupport));
    }

    #[test]
    fn threshold_zero_corner() {
        let r = zero_inner_ri2(&fixture("THRESHOLD").unwrap(), &Config::default()).unwrap();
        assert!(r.generators[0].as_array().iter().all(|v| (v - 2.0 / 3.0).abs() < 1e-9));
    }

    #[test]
    fn and_cutset_corner() {
        let r = cutset_outer(&fixture("DSBS_AND(1/4)").unwrap(), &Config::default()).unwrap();
        let h = binary_entropy(0.25);
        let g = r.generators[0];
        assert!((g.r_a - h).abs() < 1e-12 && (g.r_b - h).abs() < 1e-12 && (g.r_c - h / 2.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_route_matches_xor_rate() {
        let inst = fixture("DSBS_XOR(1/3)").unwrap();
        let m = bfn_xor_perfect_route(&inst, &Config::default()).unwrap();
        assert!((m.exact.unwrap() - bfn_xor_rate(&inst)).abs() < 1e-12);
    }
}
