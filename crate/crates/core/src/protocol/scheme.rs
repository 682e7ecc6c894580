use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Blocks, ProblemInstance, RateTriple, Rational};

/// Block code for the relay network: `phi_a` on `X^n`, `phi_b` on `Y^n`
/// (indexed by [`Blocks`]) and `phi_c` on pairs of their codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    pub n: usize,
    pub phi_a: Vec<String>,
    pub phi_b: Vec<String>,
    pub phi_c: BTreeMap<(String, String), String>,
}

fn is_bits(s: &str) -> bool {
    s.bytes().all(|b| b == b'0' || b == b'1')
}

/// No codeword is a proper prefix of another; repeats are allowed.
pub fn is_prefix_free<'a>(words: impl IntoIterator<Item = &'a String>) -> bool {
    let set: BTreeSet<&String> = words.into_iter().collect();
    let sorted: Vec<&String> = set.into_iter().collect();
    sorted.windows(2).all(|w| !w[1].starts_with(w[0].as_str()))
}

/// Fixed-length binary codewords for `k` symbols; one symbol gets the empty word.
pub fn fixed_length_code(k: usize) -> Vec<String> {
    let width = if k <= 1 { 0 } else { (usize::BITS - (k - 1).leading_zeros()) as usize };
    (0..k)
        .map(|i| (0..width).rev().map(|b| if i >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

impl Scheme {
    /// Checks table sizes, bit strings, prefix-freeness of each codebook and
    /// that `phi_c` covers every pair of used `phi_a`, `phi_b` codewords.
    pub fn new(
        inst: &ProblemInstance,
        n: usize,
        phi_a: Vec<String>,
        phi_b: Vec<String>,
        phi_c: BTreeMap<(String, String), String>,
    ) -> Result<Self> {
        let bad = |m: String| Error::InvalidScheme(m);
        if n == 0 {
            return Err(bad("block length must be positive".into()));
        }
        let cx = Blocks::new(inst.nx(), n).count().ok_or_else(|| bad("X^n overflows".into()))?;
        let cy = Blocks::new(inst.ny(), n).count().ok_or_else(|| bad("Y^n overflows".into()))?;
        if phi_a.len() != cx {
            return Err(bad(format!("phi_A has {} entries, X^n has {cx}", phi_a.len())));
        }
        if phi_b.len() != cy {
            return Err(bad(format!("phi_B has {} entries, Y^n has {cy}", phi_b.len())));
        }
        for (name, book) in [("phi_A", &phi_a), ("phi_B", &phi_b)] {
            if let Some(w) = book.iter().find(|w| !is_bits(w)) {
                return Err(bad(format!("{name} codeword `{w}` is not a bit string")));
            }
            if !is_prefix_free(book.iter()) {
                return Err(bad(format!("{name} codebook is not prefix-free")));
            }
        }
        if let Some(w) = phi_c.values().find(|w| !is_bits(w)) {
            return Err(bad(format!("phi_C codeword `{w}` is not a bit string")));
        }
        if !is_prefix_free(phi_c.values()) {
            return Err(bad("phi_C codebook is not prefix-free".into()));
        }
        let used_a: BTreeSet<&String> = phi_a.iter().collect();
        let used_b: BTreeSet<&String> = phi_b.iter().collect();
        for a in &used_a {
            for b in &used_b {
                if !phi_c.contains_key(&((*a).clone(), (*b).clone())) {
                    return Err(bad(format!("phi_C undefined on (`{a}`, `{b}`)")));
                }
            }
        }
        Ok(Scheme { n, phi_a, phi_b, phi_c })
    }

    /// Scheme from symbol maps, each encoded with a fixed-length code over
    /// its symbol range.
    pub fn from_maps(
        inst: &ProblemInstance,
        n: usize,
        a: &[usize],
        b: &[usize],
        c: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let ka = a.iter().map(|&s| s + 1).max().unwrap_or(0);
        let kb = b.iter().map(|&s| s + 1).max().unwrap_or(0);
        let (code_a, code_b) = (fixed_length_code(ka), fixed_length_code(kb));
        let used_a: BTreeSet<usize> = a.iter().copied().collect();
        let used_b: BTreeSet<usize> = b.iter().copied().collect();
        let mut relay = BTreeMap::new();
        for &sa in &used_a {
            for &sb in &used_b {
                relay.insert((sa, sb), c(sa, sb));
            }
        }
        let kc = relay.values().map(|&s| s + 1).max().unwrap_or(0);
        let code_c = fixed_length_code(kc);
        let phi_c = relay
            .into_iter()
            .map(|((sa, sb), sc)| ((code_a[sa].clone(), code_b[sb].clone()), code_c[sc].clone()))
            .collect();
        Self::new(
            inst,
            n,
            a.iter().map(|&s| code_a[s].clone()).collect(),
            b.iter().map(|&s| code_b[s].clone()).collect(),
            phi_c,
        )
    }

    /// Relay codeword for blocks `(ix, iy)`.
    pub fn relay(&self, ix: usize, iy: usize) -> &str {
        &self.phi_c[&(self.phi_a[ix].clone(), self.phi_b[iy].clone())]
    }

    /// Relay messages as small integers, `msg[ix][iy]`.
    pub(crate) fn relay_ids(&self) -> Vec<Vec<usize>> {
        let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
        (0..self.phi_a.len())
            .map(|ix| {
                (0..self.phi_b.len())
                    .map(|iy| {
                        let w = self.relay(ix, iy);
                        let next = ids.len();
                        *ids.entry(w).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Expected codeword lengths per source symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeRates {
    pub exact: [Rational; 3],
    pub rates: RateTriple,
}

pub fn scheme_rates(scheme: &Scheme, inst: &ProblemInstance) -> SchemeRates {
    let n = scheme.n;
    let bx = Blocks::new(inst.nx(), n);
    let by = Blocks::new(inst.ny(), n);
    let xs: Vec<Vec<usize>> = (0..scheme.phi_a.len()).map(|i| bx.decode(i)).collect();
    let ys: Vec<Vec<usize>> = (0..scheme.phi_b.len()).map(|i| by.decode(i)).collect();
    let mut acc = [Rational::zero(); 3];
    for (ix, xb) in xs.iter().enumerate() {
        for (iy, yb) in ys.iter().enumerate() {
            let p: Rational = xb.iter().zip(yb).map(|(&x, &y)| inst.p(x, y)).product();
            if p.is_zero() {
                continue;
            }
            let len = |s: &str| Rational::from_integer(s.len() as i128);
            acc[0] += p * len(&scheme.phi_a[ix]);
            acc[1] += p * len(&scheme.phi_b[iy]);
            acc[2] += p * len(scheme.relay(ix, iy));
        }
    }
    let nn = Rational::from_integer(n as i128);
    let exact = acc.map(|a| a / nn);
    SchemeRates {
        exact,
        rates: RateTriple::from_array(exact.map(crate::model::to_f64)),
    }
}
