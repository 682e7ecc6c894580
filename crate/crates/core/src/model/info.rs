//! Shannon quantities in bits over exact rational tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::Rational;

/// Column of `X` in [`ProblemInstance::xyz`](super::ProblemInstance::xyz).
pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `log2(r)` for `r > 0`; exactly `0.0` when `r == 1`.
pub fn log2_ratio(r: Rational) -> f64 {
    if r == Rational::from_integer(1) {
        return 0.0;
    }
    libm::log2(*r.numer() as f64) - libm::log2(*r.denom() as f64)
}

/// `log2(r)` when `r` is an integral power of two.
pub fn exact_log2(r: Rational) -> Option<i128> {
    let (n, d) = (*r.numer(), *r.denom());
    if n <= 0 {
        return None;
    }
    match (n.count_ones(), d.count_ones()) {
        (1, 1) => Some(n.trailing_zeros() as i128 - d.trailing_zeros() as i128),
        _ => None,
    }
}

/// Entropy of a (possibly unnormalized) rational distribution, normalized first.
pub fn entropy(dist: &[Rational]) -> f64 {
    let total: Rational = dist.iter().copied().sum();
    if total.is_zero() {
        return 0.0;
    }
    dist.iter()
        .filter(|p| !p.is_zero())
        .map(|&p| to_f64(p / total) * log2_ratio(total / p))
        .sum()
}

/// Entropy of a floating-point distribution; zero entries are skipped.
pub fn entropy_f64(dist: &[f64]) -> f64 {
    dist.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log2(p))
        .sum()
}

/// `H(p) = -p log p - (1-p) log(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_f64(&[p, 1.0 - p])
}

/// Joint distribution over tuples of small integers. Only positive cells are
/// stored; repeated outcomes accumulate.
#[derive(Debug, Clone, Default)]
pub struct JointTable {
    arity: usize,
    cells: BTreeMap<Vec<usize>, Rational>,
}

impl JointTable {
    pub fn new(arity: usize) -> Self {
        JointTable {
            arity,
            cells: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn push(&mut self, outcome: Vec<usize>, mass: Rational) {
        debug_assert_eq!(outcome.len(), self.arity);
        if mass.is_zero() {
            return;
        }
        *self.cells.entry(outcome).or_insert_with(Rational::zero) += mass;
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.cells.iter()
    }

    pub fn total(&self) -> Rational {
        self.cells.values().copied().sum()
    }

    pub fn marginal(&self, cols: &[usize]) -> BTreeMap<Vec<usize>, Rational> {
        let mut out = BTreeMap::new();
        for (k, m) in &self.cells {
            let key: Vec<usize> = cols.iter().map(|&c| k[c]).collect();
            *out.entry(key).or_insert_with(Rational::zero) += *m;
        }
        out
    }

    pub fn entropy(&self, cols: &[usize]) -> f64 {
        let m: Vec<Rational> = self.marginal(cols).into_values().collect();
        entropy(&m)
    }

    /// `H(target | given)`, each term evaluated from an exact ratio.
    pub fn cond_entropy(&self, target: &[usize], given: &[usize]) -> f64 {
        let total = self.total();
        let g = self.marginal(given);
        let both: Vec<usize> = given.iter().chain(target).copied().collect();
        let tg = self.marginal(&both);
        let h: f64 = tg
            .iter()
            .map(|(k, &m)| {
                let pg = g[&k[..given.len()]];
                to_f64(m / total) * log2_ratio(pg / m)
            })
            .sum();
        h.max(0.0)
    }

    /// `I(a; b | given)`, each term evaluated from an exact ratio so that
    /// conditional independence gives exactly zero.
    pub fn mutual_info(&self, a: &[usize], b: &[usize], given: &[usize]) -> f64 {
        let total = self.total();
        let cat = |xs: &[&[usize]]| -> Vec<usize> { xs.iter().flat_map(|s| s.iter().copied()).collect() };
        let pg = self.marginal(given);
        let pag = self.marginal(&cat(&[given, a]));
        let pbg = self.marginal(&cat(&[given, b]));
        let pabg = self.marginal(&cat(&[given, a, b]));
        let (lg, la) = (given.len(), a.len());
        let v: f64 = pabg
            .iter()
            .map(|(k, &m)| {
                let g = &k[..lg];
                let ka: Vec<usize> = k[..lg + la].to_vec();
                let kb: Vec<usize> = g.iter().chain(&k[lg + la..]).copied().collect();
                let ratio = m * pg[g] / (pag[&ka] * pbg[&kb]);
                to_f64(m / total) * log2_ratio(ratio)
            })
            .sum();
        v.max(0.0)
    }

    /// `I(a; b | given)` as an exact rational when every log-ratio is an
    /// integral power of two.
    pub fn mutual_info_exact(&self, a: &[usize], b: &[usize], given: &[usize]) -> Option<Rational> {
        let total = self.total();
        let cat = |xs: &[&[usize]]| -> Vec<usize> { xs.iter().flat_map(|s| s.iter().copied()).collect() };
        let pg = self.marginal(given);
        let pag = self.marginal(&cat(&[given, a]));
        let pbg = self.marginal(&cat(&[given, b]));
        let pabg = self.marginal(&cat(&[given, a, b]));
        let (lg, la) = (given.len(), a.len());
        let mut acc = Rational::zero();
        for (k, &m) in &pabg {
            let g = &k[..lg];
            let kb: Vec<usize> = g.iter().chain(&k[lg + la..]).copied().collect();
            let e = exact_log2(m * pg[g] / (pag[&k[..lg + la]] * pbg[&kb]))?;
            acc += m / total * Rational::from_integer(e);
        }
        Some(acc)
    }

    /// `H(target | given)` as an exact rational when every log-ratio is an
    /// integral power of two.
    pub fn cond_entropy_exact(&self, target: &[usize], given: &[usize]) -> Option<Rational> {
        let total = self.total();
        let g = self.marginal(given);
        let both: Vec<usize> = given.iter().chain(target).copied().collect();
        let mut acc = Rational::zero();
        for (k, &m) in &self.marginal(&both) {
            acc += m / total * Rational::from_integer(exact_log2(g[&k[..given.len()]] / m)?);
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixture;

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log2(Rational::new(8, 1)), Some(3));
        assert_eq!(exact_log2(Rational::new(1, 4)), Some(-2));
        assert_eq!(exact_log2(Rational::new(3, 4)), None);
        let t = fixture("HANKOB").unwrap().xyz();
        assert_eq!(t.cond_entropy_exact(&[Z], &[Y]), Some(Rational::new(2, 3)));
        assert_eq!(t.cond_entropy_exact(&[Z], &[X]), None);
        assert_eq!(t.mutual_info_exact(&[X], &[Y], &[]), Some(Rational::zero()));
    }

    #[test]
    fn hankob_conditionals() {
        let t = fixture("HANKOB").unwrap().xyz();
        assert!((t.cond_entropy(&[Z], &[Y]) - 2.0 / 3.0).abs() < 1e-15);
        let h13 = binary_entropy(1.0 / 3.0);
        assert!((t.cond_entropy(&[Z], &[X]) - h13).abs() < 1e-15);
        assert_eq!(t.mutual_info(&[X], &[Y], &[]), 0.0);
    }

    #[test]
    fn and_max_conditional_is_half_hp() {
        for p in ["0.1", "0.25", "0.4"] {
            let inst = fixture(&alloc::format!("DSBS_AND({p})")).unwrap();
            let t = inst.xyz();
            let v = t.cond_entropy(&[Z], &[X]).max(t.cond_entropy(&[Z], &[Y]));
            let hp = binary_entropy(to_f64(crate::model::parse_probability(p).unwrap()));
            assert!((v - hp / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_rule_on_fixtures() {
        for name in ["PENTAGON", "THRESHOLD", "DSBS_XOR(0.25)", "DSBS_F2(0.1)", "HANKOB"] {
            let t = fixture(name).unwrap().xyz();
            let hxy = t.entropy(&[X, Y]);
            let a = t.entropy(&[X]) + t.cond_entropy(&[Y], &[X]);
            let b = t.entropy(&[Y]) + t.cond_entropy(&[X], &[Y]);
            assert!((hxy - a).abs() < 1e-12 && (hxy - b).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn uniform_entropy() {
        let u: Vec<Rational> = (0..5).map(|_| Rational::new(1, 5)).collect();
        assert!((entropy(&u) - libm::log2(5.0)).abs() < 1e-15);
        assert_eq!(entropy(&[Rational::new(1, 1)]), 0.0);
    }
}
