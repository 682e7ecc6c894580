//! Built-in example instances.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use super::{Alphabet, FunctionTable, JointPmf, ProblemInstance, Rational};
use crate::error::{Error, Result};

/// Named fixture with its (optional) DSBS crossover parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Pentagon,
    Threshold,
    DsbsXor(Rational),
    DsbsAnd(Rational),
    DsbsF1(Rational),
    DsbsF2(Rational),
    HanKob,
}

impl Fixture {
    pub fn name(&self) -> String {
        match self {
            Fixture::Pentagon => "PENTAGON".into(),
            Fixture::Threshold => "THRESHOLD".into(),
            Fixture::DsbsXor(p) => format!("DSBS_XOR({p})"),
            Fixture::DsbsAnd(p) => format!("DSBS_AND({p})"),
            Fixture::DsbsF1(p) => format!("DSBS_F1({p})"),
            Fixture::DsbsF2(p) => format!("DSBS_F2({p})"),
            Fixture::HanKob => "HANKOB".into(),
        }
    }

    pub fn instance(&self) -> ProblemInstance {
        let inst = match *self {
            Fixture::Pentagon => pentagon(),
            Fixture::Threshold => threshold(),
            Fixture::DsbsXor(p) => dsbs(p, |x, y| x ^ y, 2),
            Fixture::DsbsAnd(p) => dsbs(p, |x, y| x & y, 2),
            Fixture::DsbsF1(p) => dsbs(p, |x, y| x + y, 3),
            Fixture::DsbsF2(p) => dsbs(p, |x, y| y * (x + y), 3),
            Fixture::HanKob => hankob(),
        };
        ProblemInstance {
            name: Some(self.name()),
            ..inst
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownFixture(s.to_string());
        match s.to_ascii_uppercase().as_str() {
            "PENTAGON" => return Ok(Fixture::Pentagon),
            "THRESHOLD" => return Ok(Fixture::Threshold),
            "HANKOB" => return Ok(Fixture::HanKob),
            _ => {}
        }
        let open = s.find('(').ok_or_else(unknown)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        let p = parse_probability(inner).ok_or_else(unknown)?;
        if p <= Rational::from_integer(0) || p >= Rational::from_integer(1) {
            return Err(Error::UnknownFixture(format!(
                "{s}: crossover must lie strictly between 0 and 1"
            )));
        }
        let ctor = match s[..open].trim().to_ascii_uppercase().as_str() {
            "DSBS_XOR" => Fixture::DsbsXor,
            "DSBS_AND" => Fixture::DsbsAnd,
            "DSBS_F1" => Fixture::DsbsF1,
            "DSBS_F2" => Fixture::DsbsF2,
            _ => return Err(unknown()),
        };
        Ok(ctor(p))
    }
}

/// Looks up a fixture by name, e.g. `PENTAGON` or `DSBS_XOR(0.25)`.
pub fn fixture(name: &str) -> Result<ProblemInstance> {
    Ok(name.parse::<Fixture>()?.instance())
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.25` exactly.
pub fn parse_probability(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        return (d != 0).then(|| Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty()) || frac.len() > 30 {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: String = int.chars().chain(frac.chars()).collect();
    let num: i128 = digits.parse().ok()?;
    let den = 10i128.checked_pow(frac.len() as u32)?;
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

fn instance(nx: usize, ny: usize, xs: &[&str], ys: &[&str], zs: &[&str], cell: impl Fn(usize, usize) -> (Rational, usize)) -> ProblemInstance {
    let mut mass = Vec::with_capacity(nx * ny);
    let mut values = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        for y in 0..ny {
            let (m, z) = cell(x, y);
            mass.push(m);
            values.push(z);
        }
    }
    ProblemInstance {
        pmf: JointPmf {
            x_alpha: Alphabet::unchecked(xs.iter().copied()),
            y_alpha: Alphabet::unchecked(ys.iter().copied()),
            mass,
        },
        f: FunctionTable {
            z_alpha: Alphabet::unchecked(zs.iter().copied()),
            values,
        },
        name: None,
    }
}

fn pentagon() -> ProblemInstance {
    let a = ["0", "1", "2", "3", "4"];
    instance(5, 5, &a, &a, &["0", "1"], |x, y| {
        let m = if y == x || y == (x + 1) % 5 {
            Rational::new(1, 10)
        } else {
            Rational::from_integer(0)
        };
        (m, usize::from(x == y))
    })
}

fn threshold() -> ProblemInstance {
    let a = ["1", "2", "3"];
    instance(3, 3, &a, &a, &["0", "1"], |x, y| {
        let m = if x != y {
            Rational::new(1, 6)
        } else {
            Rational::from_integer(0)
        };
        (m, usize::from(x > y))
    })
}

fn dsbs(p: Rational, f: fn(usize, usize) -> usize, nz: usize) -> ProblemInstance {
    let zs = ["0", "1", "2"];
    let one = Rational::from_integer(1);
    instance(2, 2, &["0", "1"], &["0", "1"], &zs[..nz], |x, y| {
        let m = if x == y { (one - p) / 2 } else { p / 2 };
        (m, f(x, y))
    })
}

fn hankob() -> ProblemInstance {
    instance(2, 2, &["0", "1"], &["0", "1"], &["0", "1", "2"], |x, y| {
        let m = if y == 0 {
            Rational::new(1, 6)
        } else {
            Rational::new(1, 3)
        };
        (m, y * (x + y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn support_sizes() {
        assert_eq!(fixture("PENTAGON").unwrap().pmf.support().len(), 10);
        assert_eq!(fixture("THRESHOLD").unwrap().pmf.support().len(), 6);
        let hk = fixture("HANKOB").unwrap();
        assert_eq!(hk.pmf.marginal_y()[0], Rational::new(1, 3));
    }

    #[test]
    fn all_fixtures_validate() {
        for name in [
            "PENTAGON",
            "THRESHOLD",
            "DSBS_XOR(0.25)",
            "DSBS_AND(1/3)",
            "DSBS_F1(0.1)",
            "DSBS_F2(0.4)",
            "HANKOB",
        ] {
            assert!(validate_instance(&fixture(name).unwrap()).is_valid(), "{name}");
        }
    }

    #[test]
    fn names_roundtrip() {
        let inst = fixture("dsbs_xor(0.25)").unwrap();
        assert_eq!(inst.name.as_deref(), Some("DSBS_XOR(1/4)"));
        assert_eq!(fixture("DSBS_XOR(1/4)").unwrap(), inst);
    }

    #[test]
    fn unknown_names() {
        for bad in ["SQUARE", "DSBS_XOR", "DSBS_XOR(1.5)", "DSBS_OR(0.1)", "DSBS_AND(0)"] {
            assert!(fixture(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_probability("0.25"), Some(Rational::new(1, 4)));
        assert_eq!(parse_probability(".5"), Some(Rational::new(1, 2)));
        assert_eq!(parse_probability("3"), Some(Rational::from_integer(3)));
        assert_eq!(parse_probability("1/0"), None);
        assert_eq!(parse_probability("0.2x"), None);
    }
}
