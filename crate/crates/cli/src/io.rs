//! Frame and witness files.
//!
//! A frame file is a JSON document
//!
//! ```text
//! {
//!   "dim": 2,
//!   "count": 3,
//!   "vectors": [
//!     [1.0000000000000000e0, 0.0000000000000000e0],
//!     ...
//!   ]
//! }
//! ```
//!
//! with every float written with 17 significant digits, so reading a file
//! back reproduces the frame bit for bit. Plain CSV (one vector per line,
//! `#` comments allowed) is accepted on read.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use frame_equiv::{EquivalenceTransform, Frame};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// On-disk layout of a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub dim: usize,
    pub count: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl FrameFile {
    pub fn from_frame(frame: &Frame) -> Self {
        FrameFile {
            dim: frame.dim(),
            count: frame.count(),
            vectors: frame.to_columns(),
        }
    }

    /// Checks the declared shape against the vectors actually present.
    pub fn check_shape(&self) -> std::result::Result<(), String> {
        if self.vectors.len() != self.count {
            return Err(format!(
                "field `count` is {} but `vectors` has {} entries",
                self.count,
                self.vectors.len()
            ));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(format!(
                    "vectors[{i}] has {} components, field `dim` is {}",
                    v.len(),
                    self.dim
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{{\n  \"dim\": {},\n  \"count\": {},\n  \"vectors\": [", self.dim, self.count);
        for (i, v) in self.vectors.iter().enumerate() {
            let items: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
            let sep = if i + 1 == self.vectors.len() { "" } else { "," };
            let _ = writeln!(out, "    [{}]{sep}", items.join(", "));
        }
        out.push_str("  ]\n}\n");
        out
    }
}

/// Parses frame text in either accepted format. `path` only labels errors.
pub fn parse_frame(text: &str, path: &Path, tol: f64) -> Result<Frame> {
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let file = if text.trim_start().starts_with('{') {
        let file: FrameFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        file.check_shape().map_err(parse_err)?;
        file
    } else {
        parse_csv(text).map_err(parse_err)?
    };
    if file.dim == 0 {
        return Err(parse_err("field `dim` must be positive".into()));
    }
    Frame::new(file.dim, &file.vectors, tol).map_err(|source| CliError::Validation {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_csv(text: &str) -> std::result::Result<FrameFile, String> {
    let mut vectors: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .enumerate()
            .map(|(field, s)| {
                s.parse::<f64>()
                    .map_err(|e| format!("line {}, field {}: {s:?}: {e}", lineno + 1, field + 1))
            })
            .collect::<std::result::Result<Vec<f64>, String>>()?;
        if let Some(first) = vectors.first() {
            if row.len() != first.len() {
                return Err(format!(
                    "line {}: {} fields, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                ));
            }
        }
        vectors.push(row);
    }
    let dim = vectors.first().map(Vec::len).ok_or("no vectors found")?;
    Ok(FrameFile {
        dim,
        count: vectors.len(),
        vectors,
    })
}

pub fn read_frame(path: impl AsRef<Path>, tol: f64) -> Result<Frame> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_frame(&text, path, tol)
}

pub fn write_frame(frame: &Frame, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, FrameFile::from_frame(frame).to_json()).map_err(|e| CliError::io(path, e))
}

/// On-disk layout of an equivalence transform `g_i = signs[i] U f_{permutation[i]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub dim: usize,
    pub count: usize,
    /// Rows of `U`.
    pub orthogonal: Vec<Vec<f64>>,
    /// 0-based source index of each output vector.
    pub permutation: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WitnessFile {
    pub fn from_transform(t: &EquivalenceTransform) -> Self {
        let u = t.orthogonal();
        WitnessFile {
            dim: t.dim(),
            count: t.count(),
            orthogonal: u.row_iter().map(|r| r.iter().cloned().collect()).collect(),
            permutation: t.permutation().to_vec(),
            signs: t.signs().to_vec(),
        }
    }

    pub fn to_transform(&self) -> std::result::Result<EquivalenceTransform, String> {
        if self.orthogonal.len() != self.dim || self.orthogonal.iter().any(|r| r.len() != self.dim) {
            return Err(format!("`orthogonal` must be {0}x{0}", self.dim));
        }
        if self.permutation.len() != self.count || self.signs.len() != self.count {
            return Err(format!("`permutation` and `signs` must have {} entries", self.count));
        }
        let u = DMatrix::from_fn(self.dim, self.dim, |r, c| self.orthogonal[r][c]);
        EquivalenceTransform::new(u, self.permutation.clone(), self.signs.clone()).map_err(|e| e.to_string())
    }
}

pub fn write_witness(t: &EquivalenceTransform, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(&WitnessFile::from_transform(t))
        .expect("witness serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_witness(path: impl AsRef<Path>) -> Result<EquivalenceTransform> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let file: WitnessFile = serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
    file.to_transform().map_err(parse_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use frame_equiv::{random_transform, random_unit_frame, FrameError};

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        let basis = Frame::new(2, &[[1.0, 0.0], [0.0, 1.0]], 1e-9).unwrap();
        write_frame(&basis, &path).unwrap();
        assert_eq!(read_frame(&path, 1e-9).unwrap(), basis);

        let f = random_unit_frame(4, 9, 3).unwrap();
        write_frame(&f, &path).unwrap();
        assert_eq!(read_frame(&path, 1e-9).unwrap(), f);
    }

    #[test]
    fn seventeen_significant_digits() {
        let f = Frame::new(1, &[[-1.0]], 1e-9).unwrap();
        let json = FrameFile::from_frame(&f).to_json();
        assert!(json.contains("[-1.0000000000000000e0]"), "{json}");
    }

    #[test]
    fn rejects_bad_files() {
        let p = Path::new("x.json");
        let norm2 = r#"{"dim": 2, "count": 2, "vectors": [[1, 0], [2, 0]]}"#;
        assert!(matches!(
            parse_frame(norm2, p, 1e-9),
            Err(CliError::Validation { source: FrameError::NotUnitNorm { column: 2, .. }, .. })
        ));

        let short = r#"{"dim": 2, "count": 2, "vectors": [[1, 0], [0]]}"#;
        let err = parse_frame(short, p, 1e-9).unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        assert!(err.to_string().contains("vectors[1]"));

        let count = r#"{"dim": 2, "count": 3, "vectors": [[1, 0], [0, 1]]}"#;
        assert!(matches!(parse_frame(count, p, 1e-9), Err(CliError::Parse { .. })));

        let syntax = "{\"dim\": 2,\n \"count\": }";
        let err = parse_frame(syntax, p, 1e-9).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn csv_input() {
        let p = Path::new("x.csv");
        let f = parse_frame("# basis\n1, 0\n0 1\n\n0.6,0.8\n", p, 1e-9).unwrap();
        assert_eq!((f.dim(), f.count()), (2, 3));
        let err = parse_frame("1,0\n0,1,0\n", p, 1e-9).unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = parse_frame("1,0\n0,abc\n", p, 1e-9).unwrap_err();
        assert!(err.to_string().contains("line 2, field 2"), "{err}");
    }

    #[test]
    fn witness_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        let t = random_transform(3, 5, 9);
        write_witness(&t, &path).unwrap();
        assert_eq!(read_witness(&path).unwrap(), t);
    }
}
