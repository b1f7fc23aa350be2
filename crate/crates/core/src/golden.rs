//! Embedded golden matrix tables and the comparison harness.
//!
//! Each file freezes one label: the path basis in emission order, the
//! alignment permutation discovered once against the source tables (identity
//! throughout), transcription notes for the places where the printed tables
//! conflict with the algebra relations, and the matrices themselves in the
//! field text grammar.

use crate::cellular::GenName;
use crate::field::parse_ratfn;
use crate::level::LevelIndex;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::seminormal::SeminormalRep;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenFile {
    pub version: u32,
    pub level: String,
    pub lambda: Vec<u32>,
    pub ell: u32,
    pub paths: Vec<String>,
    pub alignment: Vec<usize>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

impl GoldenFile {
    pub fn level_index(&self) -> LevelIndex {
        LevelIndex::parse(&self.level).expect("golden level parses")
    }

    pub fn matrix(&self, name: &str) -> Option<Matrix> {
        let rows = self.matrices.get(name)?;
        Some(Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_ratfn(s).expect("golden entry parses"))
                        .collect()
                })
                .collect(),
        ))
    }
}

/// All embedded golden files (version 1).
pub fn all() -> Vec<GoldenFile> {
    const FILES: &[&str] = &[
        include_str!("../golden/v1/a1_empty.json"),
        include_str!("../golden/v1/a1h_empty.json"),
        include_str!("../golden/v1/a1h_1.json"),
        include_str!("../golden/v1/a2_empty.json"),
        include_str!("../golden/v1/a2_1.json"),
        include_str!("../golden/v1/a2_2.json"),
        include_str!("../golden/v1/a2_11.json"),
        include_str!("../golden/v1/a2h_empty.json"),
        include_str!("../golden/v1/a2h_1.json"),
        include_str!("../golden/v1/a2h_2.json"),
        include_str!("../golden/v1/a2h_11.json"),
        include_str!("../golden/v1/a3_empty.json"),
    ];
    FILES
        .iter()
        .map(|s| serde_json::from_str(s).expect("golden file parses"))
        .collect()
}

/// Compares a computed representation against a golden file, applying the
/// frozen alignment permutation (golden index -> rep path index).
pub fn compare(rep: &SeminormalRep, golden: &GoldenFile) -> Report {
    let mut r = Report::new(format!("golden {} level {}", rep.label, rep.level));
    let dim = rep.dim();
    if golden.paths.len() != dim {
        r.push("dimension", format!("{} vs {}", golden.paths.len(), dim), false);
        return r;
    }
    // frozen path order matches
    for (i, p) in golden.paths.iter().enumerate() {
        let own = rep.paths[golden.alignment[i]].to_string();
        r.push(format!("path {i}"), p.clone(), &own == p);
    }
    for (name_str, _) in &golden.matrices {
        let name = GenName::parse(name_str).expect("golden generator name parses");
        let Some(got) = rep.gen(&name) else {
            r.push(format!("matrix {name_str}"), "missing in rep", false);
            continue;
        };
        let want = golden.matrix(name_str).unwrap();
        let mut ok = true;
        for i in 0..dim {
            for j in 0..dim {
                let gi = golden.alignment[i];
                let gj = golden.alignment[j];
                if got.rows[gi][gj] != want.rows[i][j] {
                    ok = false;
                }
            }
        }
        r.push(format!("matrix {name_str}"), format!("{}", rep.label), ok);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_parse() {
        let files = all();
        assert_eq!(files.len(), 12);
        for f in &files {
            assert_eq!(f.version, 1);
            assert_eq!(f.paths.len(), f.alignment.len());
            for (name, rows) in &f.matrices {
                assert!(GenName::parse(name).is_some(), "bad name {name}");
                assert_eq!(rows.len(), f.paths.len());
                let m = f.matrix(name).unwrap();
                assert_eq!(m.n(), f.paths.len());
                assert_eq!(m.m(), f.paths.len());
            }
        }
    }
}
