//! Problem-instance files: JSON with alphabets, a pmf matrix of rational
//! strings and a function matrix of output labels.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use relayfn_core::model::parse_probability;
use relayfn_core::{fixture, Alphabet, FunctionTable, JointPmf, ProblemInstance};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x_alphabet: Vec<String>,
    pub y_alphabet: Vec<String>,
    pub z_alphabet: Vec<String>,
    /// `pmf[x][y]`, e.g. `"1/6"` or `"0.25"`.
    pub pmf: Vec<Vec<String>>,
    /// `f[x][y]` as a label from `z_alphabet`.
    pub f: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        let (nx, ny) = (inst.nx(), inst.ny());
        let z = &inst.f.z_alpha;
        InstanceFile {
            name: inst.name.clone(),
            x_alphabet: inst.pmf.x_alpha.symbols().to_vec(),
            y_alphabet: inst.pmf.y_alpha.symbols().to_vec(),
            z_alphabet: z.symbols().to_vec(),
            pmf: (0..nx).map(|x| (0..ny).map(|y| inst.p(x, y).to_string()).collect()).collect(),
            f: (0..nx).map(|x| (0..ny).map(|y| z.symbol(inst.f(x, y)).to_string()).collect()).collect(),
        }
    }

    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let bad = |m: String| CliError::Config(m);
        let (nx, ny) = (self.x_alphabet.len(), self.y_alphabet.len());
        let shape_ok = |m: &Vec<Vec<String>>| m.len() == nx && m.iter().all(|r| r.len() == ny);
        if !shape_ok(&self.pmf) || !shape_ok(&self.f) {
            return Err(bad(format!("pmf and f must both be {nx}×{ny} matrices")));
        }
        let x = Alphabet::new(self.x_alphabet.iter()).map_err(|e| bad(format!("x_alphabet: {e}")))?;
        let y = Alphabet::new(self.y_alphabet.iter()).map_err(|e| bad(format!("y_alphabet: {e}")))?;
        let z = Alphabet::new(self.z_alphabet.iter()).map_err(|e| bad(format!("z_alphabet: {e}")))?;
        let mut mass = Vec::with_capacity(nx * ny);
        let mut values = Vec::with_capacity(nx * ny);
        for (i, (prow, frow)) in self.pmf.iter().zip(&self.f).enumerate() {
            for (j, (p, v)) in prow.iter().zip(frow).enumerate() {
                mass.push(parse_probability(p).ok_or_else(|| bad(format!("pmf[{i}][{j}]: `{p}` is not a probability")))?);
                values.push(z.index_of(v).ok_or_else(|| bad(format!("f[{i}][{j}]: `{v}` is not in z_alphabet")))?);
            }
        }
        let pmf = JointPmf::new(x, y, mass).map_err(|e| bad(e.to_string()))?;
        ProblemInstance::new(pmf, FunctionTable { z_alpha: z, values }, self.name.clone()).map_err(|e| bad(e.to_string()))
    }
}

/// Pretty JSON with a trailing newline.
pub fn instance_to_json(inst: &ProblemInstance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes");
    s.push('\n');
    s
}

pub fn parse_instance(text: &str, source_name: &str) -> Result<ProblemInstance> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| CliError::parse(source_name, e.line(), e.to_string()))?;
    file.to_instance()
}

/// A fixture name such as `DSBS_XOR(1/4)`, or a path to a instance file.
pub fn load_instance(source: &str) -> Result<ProblemInstance> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut inst = parse_instance(&text, source)?;
        if inst.name.is_none() {
            inst.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        return Ok(inst);
    }
    fixture(source).map_err(|e| CliError::Config(format!("`{source}` is neither a instance file nor a fixture ({e})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_round_trip() {
        for name in ["PENTAGON", "THRESHOLD", "HANKOB", "DSBS_F2(1/4)"] {
            let inst = fixture(name).unwrap();
            let json = instance_to_json(&inst);
            let back = parse_instance(&json, name).unwrap();
            assert_eq!(back, inst);
            assert_eq!(instance_to_json(&back), json);
        }
    }

    #[test]
    fn bad_label_is_named() {
        let mut file = InstanceFile::from_instance(&fixture("HANKOB").unwrap());
        file.f[1][0] = "7".into();
        let e = file.to_instance().unwrap_err().to_string();
        assert!(e.contains("f[1][0]"), "{e}");
    }

    #[test]
    fn syntax_error_has_line() {
        let e = parse_instance("{\n  \"x_alphabet\": [\n", "t.json").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e:?}");
    }
}
