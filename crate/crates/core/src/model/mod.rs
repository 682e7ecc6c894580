//! Finite joint sources, function tables and the problem instance every
//! construction downstream is parameterized by.

mod fixtures;
mod info;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use fixtures::{fixture, parse_probability, Fixture};
pub use info::{
    binary_entropy, entropy, entropy_f64, exact_log2, log2_ratio, to_f64, JointTable, X, Y, Z,
};

/// Exact probabilities.
pub type Rational = num_rational::Ratio<i128>;

/// Ordered list of distinct symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alphabet = Self::unchecked(symbols);
        if let Some(v) = alphabet.violations("alphabet").into_iter().next() {
            return Err(Error::InvalidInstance(v.to_string()));
        }
        Ok(alphabet)
    }

    /// Builds an alphabet without checking its invariants; see
    /// [`validate_instance`].
    pub fn unchecked<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet {
            symbols: symbols.into_iter().map(Into::into).collect(),
        }
    }

    /// `{"0", "1", ..., "k-1"}`.
    pub fn range(k: usize) -> Self {
        Self::unchecked((0..k).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    fn violations(&self, which: &'static str) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.symbols.is_empty() {
            out.push(Violation::EmptyAlphabet(which));
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if self.symbols[..i].contains(s) {
                out.push(Violation::DuplicateSymbol {
                    alphabet: which,
                    symbol: s.clone(),
                });
            }
        }
        out
    }
}

/// Joint pmf `p_XY` stored row-major: cell `(x, y)` lives at `x * |Y| + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointPmf {
    pub x_alpha: Alphabet,
    pub y_alpha: Alphabet,
    pub mass: Vec<Rational>,
}

impl JointPmf {
    pub fn new(x_alpha: Alphabet, y_alpha: Alphabet, mass: Vec<Rational>) -> Result<Self> {
        let pmf = JointPmf {
            x_alpha,
            y_alpha,
            mass,
        };
        let v = pmf.violations();
        if !v.is_empty() {
            return Err(Error::InvalidDistribution(join(&v)));
        }
        Ok(pmf)
    }

    pub fn nx(&self) -> usize {
        self.x_alpha.len()
    }

    pub fn ny(&self) -> usize {
        self.y_alpha.len()
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize) -> Rational {
        self.mass[x * self.ny() + y]
    }

    #[inline]
    pub fn in_support(&self, x: usize, y: usize) -> bool {
        self.p(x, y) > Rational::zero()
    }

    /// `S_XY` in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let ny = self.ny();
        (0..self.mass.len())
            .filter(|&i| self.mass[i] > Rational::zero())
            .map(|i| (i / ny, i % ny))
            .collect()
    }

    pub fn is_full_support(&self) -> bool {
        self.mass.iter().all(|m| *m > Rational::zero())
    }

    pub fn marginal_x(&self) -> Vec<Rational> {
        (0..self.nx())
            .map(|x| (0..self.ny()).map(|y| self.p(x, y)).sum())
            .collect()
    }

    pub fn marginal_y(&self) -> Vec<Rational> {
        (0..self.ny())
            .map(|y| (0..self.nx()).map(|x| self.p(x, y)).sum())
            .collect()
    }

    fn violations(&self) -> Vec<Violation> {
        let mut out = self.x_alpha.violations("x_alphabet");
        out.extend(self.y_alpha.violations("y_alphabet"));
        let cells = self.nx() * self.ny();
        if self.mass.len() != cells {
            out.push(Violation::Shape {
                table: "pmf",
                expected: cells,
                found: self.mass.len(),
            });
            return out;
        }
        let ny = self.ny().max(1);
        for (i, m) in self.mass.iter().enumerate() {
            if *m < Rational::zero() {
                out.push(Violation::NegativeMass {
                    x: i / ny,
                    y: i % ny,
                    mass: *m,
                });
            }
        }
        let total: Rational = self.mass.iter().copied().sum();
        if total != Rational::one() {
            out.push(Violation::MassSum(total));
        }
        if self.mass.iter().all(|m| *m <= Rational::zero()) {
            out.push(Violation::EmptySupport);
        }
        out
    }
}

/// `z = f(x, y)` given on all of `X × Y` as indices into `z_alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    pub z_alpha: Alphabet,
    pub values: Vec<usize>,
}

/// The triple `(f, X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub pmf: JointPmf,
    pub f: FunctionTable,
    pub name: Option<String>,
}

impl ProblemInstance {
    /// Builds and validates an instance.
    pub fn new(pmf: JointPmf, f: FunctionTable, name: Option<String>) -> Result<Self> {
        let inst = ProblemInstance { pmf, f, name };
        let report = validate_instance(&inst);
        if !report.is_valid() {
            return Err(Error::InvalidInstance(join(&report.violations)));
        }
        Ok(inst)
    }

    pub fn nx(&self) -> usize {
        self.pmf.nx()
    }

    pub fn ny(&self) -> usize {
        self.pmf.ny()
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize) -> Rational {
        self.pmf.p(x, y)
    }

    #[inline]
    pub fn f(&self, x: usize, y: usize) -> usize {
        self.f.values[x * self.ny() + y]
    }

    #[inline]
    pub fn in_support(&self, x: usize, y: usize) -> bool {
        self.pmf.in_support(x, y)
    }

    /// Same instance with a different function table on the same source.
    pub fn with_function(&self, z_alpha: Alphabet, values: Vec<usize>, name: Option<String>) -> Result<Self> {
        Self::new(self.pmf.clone(), FunctionTable { z_alpha, values }, name)
    }

    /// Joint table over `(X, Y, Z)` restricted to `S_XY`; columns [`X`], [`Y`], [`Z`].
    pub fn xyz(&self) -> JointTable {
        let mut t = JointTable::new(3);
        for (x, y) in self.pmf.support() {
            t.push(alloc::vec![x, y, self.f(x, y)], self.p(x, y));
        }
        t
    }

    /// `f` is constant on `S_XY`.
    pub fn is_constant_on_support(&self) -> bool {
        let mut vals = self.pmf.support().into_iter().map(|(x, y)| self.f(x, y));
        match vals.next() {
            Some(v) => vals.all(|w| w == v),
            None => true,
        }
    }
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet(&'static str),
    DuplicateSymbol { alphabet: &'static str, symbol: String },
    Shape { table: &'static str, expected: usize, found: usize },
    NegativeMass { x: usize, y: usize, mass: Rational },
    MassSum(Rational),
    EmptySupport,
    FunctionValue { x: usize, y: usize, value: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAlphabet(a) => write!(f, "{a} is empty"),
            Violation::DuplicateSymbol { alphabet, symbol } => {
                write!(f, "{alphabet} repeats symbol `{symbol}`")
            }
            Violation::Shape {
                table,
                expected,
                found,
            } => write!(f, "{table} has {found} cells, expected {expected}"),
            Violation::NegativeMass { x, y, mass } => {
                write!(f, "pmf cell ({x},{y}) is negative ({mass})")
            }
            Violation::MassSum(s) => write!(f, "pmf sums to {s}, not 1"),
            Violation::EmptySupport => f.write_str("pmf has empty support"),
            Violation::FunctionValue { x, y, value } => {
                write!(f, "f({x},{y}) = {value} is outside z_alphabet")
            }
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `S_XY = X × Y`.
    pub full_support: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every type invariant of an instance and reports the full-support flag.
pub fn validate_instance(inst: &ProblemInstance) -> ValidationReport {
    let mut violations = inst.pmf.violations();
    violations.extend(inst.f.z_alpha.violations("z_alphabet"));
    let cells = inst.nx() * inst.ny();
    if inst.f.values.len() != cells {
        violations.push(Violation::Shape {
            table: "f",
            expected: cells,
            found: inst.f.values.len(),
        });
    } else {
        let ny = inst.ny().max(1);
        for (i, &v) in inst.f.values.iter().enumerate() {
            if v >= inst.f.z_alpha.len() {
                violations.push(Violation::FunctionValue {
                    x: i / ny,
                    y: i % ny,
                    value: v,
                });
            }
        }
    }
    let full_support =
        inst.pmf.mass.len() == cells && inst.pmf.mass.iter().all(|m| *m > Rational::zero());
    ValidationReport {
        violations,
        full_support,
    }
}

/// Rate triple in bits per source symbol.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateTriple {
    pub r_a: f64,
    pub r_b: f64,
    pub r_c: f64,
}

impl RateTriple {
    pub const ZERO: RateTriple = RateTriple {
        r_a: 0.0,
        r_b: 0.0,
        r_c: 0.0,
    };

    /// Negative round-off below `1e-12` is clamped to zero.
    pub fn new(r_a: f64, r_b: f64, r_c: f64) -> Self {
        let c = |v: f64| if v < 0.0 && v > -1e-12 { 0.0 } else { v };
        RateTriple {
            r_a: c(r_a),
            r_b: c(r_b),
            r_c: c(r_c),
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.r_a, self.r_b, self.r_c]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        RateTriple::new(a[0], a[1], a[2])
    }

    pub fn is_valid(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite() && *v >= 0.0)
    }

    /// Coordinatewise `self >= other - tol`.
    pub fn dominates(&self, other: &RateTriple, tol: f64) -> bool {
        self.r_a >= other.r_a - tol && self.r_b >= other.r_b - tol && self.r_c >= other.r_c - tol
    }
}

impl fmt::Display for RateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6}, {:.6})", self.r_a, self.r_b, self.r_c)
    }
}

/// Mixed-radix indexing of blocks in `A^n`; the first coordinate is the most
/// significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Blocks {
    pub base: usize,
    pub n: usize,
}

impl Blocks {
    pub fn new(base: usize, n: usize) -> Self {
        Blocks { base, n }
    }

    /// `base^n`, or `None` on overflow.
    pub fn count(&self) -> Option<usize> {
        self.base.checked_pow(self.n as u32)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.base;
            idx /= self.base;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// Guarded `|X × Y|^n`.
pub(crate) fn checked_power(what: &'static str, base: usize, n: usize, cap: usize) -> Result<usize> {
    match base.checked_pow(n as u32) {
        Some(v) if v <= cap => Ok(v),
        Some(v) => Err(Error::CapExceeded {
            what,
            needed: v,
            cap,
        }),
        None => Err(Error::CapExceeded {
            what,
            needed: usize::MAX,
            cap,
        }),
    }
}

/// Label of the block `(a_1, ..., a_n)` over `alpha`: the bare symbol when
/// `n = 1`, otherwise `(a_1,...,a_n)`.
pub fn block_label(alpha: &Alphabet, digits: &[usize]) -> String {
    if digits.len() == 1 {
        return alpha.symbol(digits[0]).into();
    }
    let parts: Vec<&str> = digits.iter().map(|&d| alpha.symbol(d)).collect();
    format!("({})", parts.join(","))
}

/// I.i.d. extension `p_XY^n` over `X^n × Y^n`.
pub fn product_pmf(pmf: &JointPmf, n: usize, cap: usize) -> Result<JointPmf> {
    if n == 0 {
        return Err(Error::InvalidDistribution("block length must be at least 1".into()));
    }
    checked_power("product pmf cells", pmf.nx() * pmf.ny(), n, cap)?;
    if n == 1 {
        return Ok(pmf.clone());
    }
    let bx = Blocks::new(pmf.nx(), n);
    let by = Blocks::new(pmf.ny(), n);
    let (cx, cy) = (bx.count().unwrap(), by.count().unwrap());
    let x_alpha = Alphabet::unchecked((0..cx).map(|i| block_label(&pmf.x_alpha, &bx.decode(i))));
    let y_alpha = Alphabet::unchecked((0..cy).map(|i| block_label(&pmf.y_alpha, &by.decode(i))));
    let mut mass = Vec::with_capacity(cx * cy);
    for xi in 0..cx {
        let xs = bx.decode(xi);
        for yi in 0..cy {
            let ys = by.decode(yi);
            let m = xs
                .iter()
                .zip(&ys)
                .fold(Rational::one(), |acc, (&x, &y)| acc * pmf.p(x, y));
            mass.push(m);
        }
    }
    Ok(JointPmf {
        x_alpha,
        y_alpha,
        mass,
    })
}

/// Robust typicality: `|N(a|seq)/n − p(a)| ≤ eps · p(a)` for every symbol `a`.
/// A symbol with `p(a) = 0` may not occur at all.
pub fn is_robustly_typical(seq: &[usize], dist: &[Rational], eps: f64) -> bool {
    if seq.iter().any(|&s| s >= dist.len()) {
        return false;
    }
    let n = seq.len();
    if n == 0 {
        return false;
    }
    let mut counts = alloc::vec![0usize; dist.len()];
    for &s in seq {
        counts[s] += 1;
    }
    dist.iter().zip(&counts).all(|(p, &c)| {
        if p.is_zero() {
            return c == 0;
        }
        let freq = Rational::new(c as i128, n as i128);
        let dev = to_f64(if freq > *p { freq - p } else { p - freq });
        dev <= eps * to_f64(*p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn mass_sum_violation_is_reported() {
        let mut inst = fixture("DSBS_XOR(0.25)").unwrap();
        inst.pmf.mass[0] -= r(1, 1000);
        let report = validate_instance(&inst);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::MassSum(s) if *s == r(999, 1000))));
    }

    #[test]
    fn fixture_validation_flags() {
        let p = validate_instance(&fixture("PENTAGON").unwrap());
        assert!(p.is_valid() && !p.full_support);
        let d = validate_instance(&fixture("DSBS_XOR(0.25)").unwrap());
        assert!(d.is_valid() && d.full_support);
    }

    #[test]
    fn bad_function_cell_is_named() {
        let mut inst = fixture("THRESHOLD").unwrap();
        inst.f.values[4] = 7;
        let report = validate_instance(&inst);
        assert_eq!(
            report.violations,
            vec![Violation::FunctionValue { x: 1, y: 1, value: 7 }]
        );
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(Alphabet::new(["a", "b", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn robust_typicality_examples() {
        assert!(is_robustly_typical(&[1, 1, 1], &[r(0, 1), r(1, 1)], 1e-9));
        assert!(!is_robustly_typical(&[0, 1], &[r(0, 1), r(1, 1)], 10.0));
        let seq = [0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        assert!(is_robustly_typical(&seq, &[r(1, 2), r(1, 2)], 0.1));
        let skewed = [0, 0, 0, 0, 0, 0, 1, 1, 1, 1];
        // |0.6 - 0.5| = 0.1 > 0.1 * 0.5
        assert!(!is_robustly_typical(&skewed, &[r(1, 2), r(1, 2)], 0.1));
        assert!(is_robustly_typical(&skewed, &[r(1, 2), r(1, 2)], 0.2));
    }

    #[test]
    fn product_pmf_examples() {
        let pent = fixture("PENTAGON").unwrap();
        let p2 = product_pmf(&pent.pmf, 2, 5000).unwrap();
        assert_eq!(p2.support().len(), 100);
        assert_eq!(product_pmf(&pent.pmf, 1, 5000).unwrap(), pent.pmf);
        let thr = fixture("THRESHOLD").unwrap();
        let t2 = product_pmf(&thr.pmf, 2, 5000).unwrap();
        assert!(t2.support().iter().all(|&(x, y)| t2.p(x, y) == r(1, 36)));
        assert_eq!(t2.x_alpha.symbol(5), "(2,3)");
        assert!(matches!(
            product_pmf(&pent.pmf, 3, 5000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn blocks_roundtrip() {
        let b = Blocks::new(3, 4);
        for i in 0..b.count().unwrap() {
            assert_eq!(b.encode(&b.decode(i)), i);
        }
        assert_eq!(b.decode(5), vec![0, 0, 1, 2]);
    }
}
