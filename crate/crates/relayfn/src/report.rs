//! Report plumbing shared by the commands.

use serde::Serialize;

/// What a command produced: a JSON report, an aligned-text summary and
/// extra files for `--out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub json: String,
    pub text: String,
    /// `(file name, contents)`.
    pub files: Vec<(String, String)>,
    /// False when a computation failed or a check did not hold.
    pub success: bool,
}

impl Output {
    pub fn new(report: &impl Serialize, text: String, success: bool) -> Self {
        let mut json = serde_json::to_string_pretty(report).expect("report serializes");
        json.push('\n');
        Output {
            json,
            text,
            files: Vec::new(),
            success,
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

pub fn fmt_triple(t: [f64; 3]) -> String {
    format!("({}, {}, {})", fmt(t[0]), fmt(t[1]), fmt(t[2]))
}
