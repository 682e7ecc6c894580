//! Scheme files.
//!
//! ```text
//! # relay scheme for THRESHOLD
//! n = 1
//! [A]
//! 1 = 1
//! 2 = 0
//! 3 = 0
//! [B]
//! ...
//! [C]
//! 0 0 = 1
//! 0 1 = 0
//! ```
//!
//! Blocks are written as comma-separated symbols, codewords as bit strings
//! with `-` for the empty word. `[C]` maps a pair of source codewords to the
//! relay codeword. A broadcast scheme has a single `[BFN]` section with
//! lines `x-block y-block = word`.

use std::collections::BTreeMap;
use std::fmt::Write;

use relayfn_core::model::Blocks;
use relayfn_core::protocol::Scheme;
use relayfn_core::{Alphabet, ProblemInstance};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeFile {
    Relay(Scheme),
    /// `phi_c[ix * |Y|^n + iy]`.
    Broadcast { n: usize, phi_c: Vec<String> },
}

pub fn block_key(alpha: &Alphabet, digits: &[usize]) -> String {
    digits.iter().map(|&d| alpha.symbol(d)).collect::<Vec<_>>().join(",")
}

fn word_text(w: &str) -> &str {
    if w.is_empty() {
        "-"
    } else {
        w
    }
}

fn keys(alpha: &Alphabet, n: usize) -> Vec<String> {
    let b = Blocks::new(alpha.len(), n);
    (0..b.count().unwrap()).map(|i| block_key(alpha, &b.decode(i))).collect()
}

pub fn relay_scheme_text(scheme: &Scheme, inst: &ProblemInstance) -> String {
    let mut s = format!("n = {}\n[A]\n", scheme.n);
    for (k, w) in keys(&inst.pmf.x_alpha, scheme.n).iter().zip(&scheme.phi_a) {
        let _ = writeln!(s, "{k} = {}", word_text(w));
    }
    s.push_str("[B]\n");
    for (k, w) in keys(&inst.pmf.y_alpha, scheme.n).iter().zip(&scheme.phi_b) {
        let _ = writeln!(s, "{k} = {}", word_text(w));
    }
    s.push_str("[C]\n");
    for ((a, b), c) in &scheme.phi_c {
        let _ = writeln!(s, "{} {} = {}", word_text(a), word_text(b), word_text(c));
    }
    s
}

pub fn broadcast_text(n: usize, phi_c: &[String], inst: &ProblemInstance) -> String {
    let kx = keys(&inst.pmf.x_alpha, n);
    let ky = keys(&inst.pmf.y_alpha, n);
    let mut s = format!("n = {n}\n[BFN]\n");
    for (i, w) in phi_c.iter().enumerate() {
        let _ = writeln!(s, "{} {} = {}", kx[i / ky.len()], ky[i % ky.len()], word_text(w));
    }
    s
}

struct Parser<'a> {
    source: &'a str,
    inst: &'a ProblemInstance,
}

impl Parser<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> CliError {
        CliError::parse(self.source, line, msg)
    }

    fn word(&self, line: usize, w: &str) -> Result<String> {
        if w == "-" {
            return Ok(String::new());
        }
        if w.is_empty() || !w.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(self.err(line, format!("`{w}` is not a bit string")));
        }
        Ok(w.to_string())
    }

    fn block(&self, line: usize, alpha: &Alphabet, n: usize, key: &str) -> Result<usize> {
        let digits = key
            .split(',')
            .map(|s| alpha.index_of(s.trim()).ok_or_else(|| self.err(line, format!("unknown symbol `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if digits.len() != n {
            return Err(self.err(line, format!("block `{key}` has length {}, expected {n}", digits.len())));
        }
        Ok(Blocks::new(alpha.len(), n).encode(&digits))
    }
}

pub fn parse_scheme(text: &str, inst: &ProblemInstance, source: &str) -> Result<SchemeFile> {
    let p = Parser { source, inst };
    let mut n: Option<usize> = None;
    let mut section = String::new();
    let mut phi_a: BTreeMap<usize, String> = BTreeMap::new();
    let mut phi_b: BTreeMap<usize, String> = BTreeMap::new();
    let mut phi_c: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut bfn: BTreeMap<(usize, usize), String> = BTreeMap::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            if !matches!(name, "A" | "B" | "C" | "BFN") {
                return Err(p.err(line, format!("unknown section `[{name}]`")));
            }
            if n.is_none() {
                return Err(p.err(line, "`n = ...` must come before any section"));
            }
            section = name.to_string();
            continue;
        }
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or_else(|| p.err(line, "expected `key = value`"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if section.is_empty() {
            if lhs != "n" {
                return Err(p.err(line, format!("unexpected `{lhs}` before any section")));
            }
            let k: usize = rhs.parse().map_err(|_| p.err(line, format!("bad block length `{rhs}`")))?;
            if k == 0 {
                return Err(p.err(line, "block length must be positive"));
            }
            n = Some(k);
            continue;
        }
        let n = n.unwrap();
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let dup = |line| p.err(line, format!("duplicate entry `{lhs}`"));
        match section.as_str() {
            "A" | "B" => {
                let (alpha, map) = if section == "A" {
                    (&p.inst.pmf.x_alpha, &mut phi_a)
                } else {
                    (&p.inst.pmf.y_alpha, &mut phi_b)
                };
                if parts.len() != 1 {
                    return Err(p.err(line, "expected `block = word`"));
                }
                let b = p.block(line, alpha, n, parts[0])?;
                if map.insert(b, p.word(line, rhs)?).is_some() {
                    return Err(dup(line));
                }
            }
            "C" => {
                if parts.len() != 2 {
                    return Err(p.err(line, "expected `word_a word_b = word_c`"));
                }
                let key = (p.word(line, parts[0])?, p.word(line, parts[1])?);
                if phi_c.insert(key, p.word(line, rhs)?).is_some() {
                    return Err(dup(line));
                }
            }
            _ => {
                if parts.len() != 2 {
                    return Err(p.err(line, "expected `x_block y_block = word`"));
                }
                let bx = p.block(line, &p.inst.pmf.x_alpha, n, parts[0])?;
                let by = p.block(line, &p.inst.pmf.y_alpha, n, parts[1])?;
                if bfn.insert((bx, by), p.word(line, rhs)?).is_some() {
                    return Err(dup(line));
                }
            }
        }
    }
    let n = n.ok_or_else(|| p.err(last, "missing `n = ...`"))?;
    let cx = Blocks::new(inst.nx(), n).count().ok_or_else(|| p.err(last, "X^n is too large"))?;
    let cy = Blocks::new(inst.ny(), n).count().ok_or_else(|| p.err(last, "Y^n is too large"))?;
    let complete = |map: &BTreeMap<usize, String>, k: usize, name: &str| -> Result<Vec<String>> {
        (0..k)
            .map(|i| map.get(&i).cloned().ok_or_else(|| p.err(last, format!("{name} has no entry for block #{i}"))))
            .collect()
    };
    if !bfn.is_empty() {
        if !(phi_a.is_empty() && phi_b.is_empty() && phi_c.is_empty()) {
            return Err(p.err(last, "a file holds either a relay scheme or a [BFN] table, not both"));
        }
        let flat: BTreeMap<usize, String> = bfn.into_iter().map(|((x, y), w)| (x * cy + y, w)).collect();
        return Ok(SchemeFile::Broadcast {
            n,
            phi_c: complete(&flat, cx * cy, "[BFN]")?,
        });
    }
    let a = complete(&phi_a, cx, "[A]")?;
    let b = complete(&phi_b, cy, "[B]")?;
    let scheme = Scheme::new(inst, n, a, b, phi_c).map_err(|e| p.err(last, e.to_string()))?;
    Ok(SchemeFile::Relay(scheme))
}

#[cfg(test)]
mod tests {
    use super::*;
    use relayfn_core::fixture;

    #[test]
    fn relay_round_trip() {
        let inst = fixture("THRESHOLD").unwrap();
        let ind = [1, 0, 0];
        let s = Scheme::from_maps(&inst, 1, &ind, &ind, |a, b| usize::from(a == b)).unwrap();
        let text = relay_scheme_text(&s, &inst);
        assert!(text.contains("[A]\n1 = 1\n2 = 0\n"));
        assert_eq!(parse_scheme(&text, &inst, "t").unwrap(), SchemeFile::Relay(s));
    }

    #[test]
    fn broadcast_round_trip() {
        let inst = fixture("DSBS_XOR(1/4)").unwrap();
        let phi: Vec<String> = ["0", "1", "1", "0", "1", "0", "0", "1", "1", "0", "0", "1", "0", "1", "1", "0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let text = broadcast_text(2, &phi, &inst);
        assert!(text.contains("0,1 1,0 = 0"));
        assert_eq!(parse_scheme(&text, &inst, "t").unwrap(), SchemeFile::Broadcast { n: 2, phi_c: phi });
    }

    #[test]
    fn errors_carry_lines() {
        let inst = fixture("THRESHOLD").unwrap();
        let e = parse_scheme("n = 1\n[A]\n1 = 1\n4 = 0\n", &inst, "s.txt").unwrap_err();
        assert_eq!(e.to_string(), "s.txt:4: unknown symbol `4`");
        let e = parse_scheme("n = 1\n[A]\n1 = 12\n", &inst, "s.txt").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }));
        let e = parse_scheme("[A]\n", &inst, "s.txt").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 1, .. }));
    }
}
