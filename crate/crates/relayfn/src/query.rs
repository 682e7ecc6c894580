//! Membership query files: one rate triple per line, e.g.
//! `1, h(0.25), 0.5*h(0.25)`. A coordinate is a product of factors, each a
//! number (`0.5`, `2/3`), `h(p)` for the binary entropy or `log2(x)`.

use relayfn_core::model::{binary_entropy, parse_probability, to_f64};
use relayfn_core::RateTriple;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub line: usize,
    pub text: String,
    pub point: RateTriple,
}

fn number(s: &str) -> Option<f64> {
    parse_probability(s).map(to_f64).or_else(|| s.parse::<f64>().ok().filter(|v| v.is_finite()))
}

fn factor(s: &str) -> Option<f64> {
    let s = s.trim();
    let call = |name: &str| s.strip_prefix(name).and_then(|r| r.trim_start().strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    if let Some(arg) = call("h") {
        let p = number(arg.trim())?;
        return (0.0..=1.0).contains(&p).then(|| binary_entropy(p));
    }
    if let Some(arg) = call("log2") {
        let x = number(arg.trim())?;
        return (x > 0.0).then(|| x.log2());
    }
    number(s)
}

fn term(s: &str) -> Option<f64> {
    s.split('*').map(factor).try_fold(1.0, |acc, f| Some(acc * f?))
}

pub fn parse_queries(text: &str, source: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let parts: Vec<&str> = if inner.contains(',') {
            inner.split(',').collect()
        } else {
            inner.split_whitespace().collect()
        };
        if parts.len() != 3 {
            return Err(CliError::parse(source, i + 1, format!("expected three coordinates, found {}", parts.len())));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = term(p).ok_or_else(|| CliError::parse(source, i + 1, format!("cannot evaluate `{}`", p.trim())))?;
        }
        out.push(Query {
            line: i + 1,
            text: body.to_string(),
            point: RateTriple::from_array(v),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let q = parse_queries("# c\n(1, h(1/4), 0.5*h(0.25))\n0 log2(4) 2/3\n", "q").unwrap();
        assert_eq!(q.len(), 2);
        let h = binary_entropy(0.25);
        assert_eq!(q[0].point.as_array(), [1.0, h, 0.5 * h]);
        assert_eq!(q[1].point.as_array(), [0.0, 2.0, 2.0 / 3.0]);
        assert_eq!(q[1].line, 3);
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(parse_queries("1 2\n", "q"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_queries("1 2 h(3)\n", "q"), Err(CliError::Parse { line: 1, .. })));
    }
}
