//! Manifest-driven corpus checks: each line builds a group expression and
//! compares computed properties against expected values.
//!
//! ```text
//! <expr> ; key=value ; key=value ...
//! ```
//!
//! Keys: `name` (label), `order`, `abelian`, `agroup`, `solvable`,
//! `radical` (order), `centre` (order), `aut` (order), `valid` (re-run the
//! full table validation). Lines starting with `#` and blank lines are
//! skipped.

use agroup_core::aut::{aut_agroup, AutConfig};
use agroup_core::cayley::{centre, is_agroup, is_solvable, solvable_radical, CayleyGroup, Subgroup};
use agroup_core::oracle::oracle_automorphisms;
use agroup_core::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct ManifestEntry {
    pub expr: String,
    pub name: Option<String>,
    pub checks: Vec<(String, String)>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct EntryReport {
    pub expr: String,
    pub name: Option<String>,
    pub order: Option<usize>,
    pub is_agroup: Option<bool>,
    pub error: Option<String>,
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize)]
pub struct Report {
    pub entries: Vec<EntryReport>,
    pub checks_passed: usize,
    pub checks_total: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks_passed == self.checks_total
            && self.entries.iter().all(|e| e.error.is_none())
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(';').map(str::trim);
        let expr = parts
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::Parse(format!("line {}: empty expression", lineno + 1)))?
            .to_string();
        let mut name = None;
        let mut checks = Vec::new();
        for part in parts {
            if part.is_empty() {
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key=value, found {part:?}", lineno + 1))
            })?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            match key.as_str() {
                "name" => name = Some(value),
                "order" | "abelian" | "agroup" | "solvable" | "radical" | "centre"
                | "aut" | "valid" => checks.push((key, value)),
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown manifest key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        out.push(ManifestEntry { expr, name, checks });
    }
    Ok(out)
}

fn run_check(g: &CayleyGroup, key: &str, cfg: &AutConfig) -> Result<String> {
    Ok(match key {
        "order" => g.order().to_string(),
        "abelian" => g.is_abelian().to_string(),
        "agroup" => is_agroup(g).to_string(),
        "solvable" => is_solvable(g, &Subgroup::whole(g)).to_string(),
        "radical" => solvable_radical(g).order().to_string(),
        "centre" => centre(g).order().to_string(),
        "aut" => {
            if is_agroup(g) {
                aut_agroup(g, cfg)?.aut.order().to_string()
            } else {
                oracle_automorphisms(g, cfg.oracle_budget)?.count.to_string()
            }
        }
        "valid" => match CayleyGroup::from_table(g.order(), g.table().to_vec(), None) {
            Ok(_) => "true".to_string(),
            Err(e) => format!("invalid: {e}"),
        },
        other => return Err(Error::Parse(format!("unknown check {other:?}"))),
    })
}

pub fn run_manifest(entries: &[ManifestEntry], cfg: &AutConfig) -> Report {
    let mut reports = Vec::new();
    let mut passed = 0;
    let mut total = 0;
    for entry in entries {
        match agroup_core::dsl::build_group(&entry.expr) {
            Err(e) => {
                total += entry.checks.len();
                reports.push(EntryReport {
                    expr: entry.expr.clone(),
                    name: entry.name.clone(),
                    order: None,
                    is_agroup: None,
                    error: Some(e.to_string()),
                    checks: Vec::new(),
                });
            }
            Ok(built) => {
                let g = built.group;
                let mut checks = Vec::new();
                for (key, expected) in &entry.checks {
                    total += 1;
                    let actual = match run_check(&g, key, cfg) {
                        Ok(a) => a,
                        Err(e) => format!("error: {e}"),
                    };
                    let pass = actual == *expected;
                    if pass {
                        passed += 1;
                    }
                    checks.push(CheckReport {
                        key: key.clone(),
                        expected: expected.clone(),
                        actual,
                        pass,
                    });
                }
                reports.push(EntryReport {
                    expr: entry.expr.clone(),
                    name: entry.name.clone(),
                    order: Some(g.order()),
                    is_agroup: Some(is_agroup(&g)),
                    error: None,
                    checks,
                });
            }
        }
    }
    Report { entries: reports, checks_passed: passed, checks_total: total }
}
