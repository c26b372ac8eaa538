//! Published reference tables and the comparisons against them.
//!
//! The tables ship as plain text under `data/` and are compiled in. Each
//! `check_*` function recomputes one table and lists every disagreement.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::characters::{characters_of, format_value};
use crate::euler::{basic_index_table, ramified_table, shape_from_characters, RamifiedRow};
use crate::group::{Modulus, UnitGroup};
use crate::lvalues::residue;
use crate::series::coefficients_up_to;

const BASIC_INDICES: &str = include_str!("../data/basic_indices.txt");
const RAMIFIED_PRIMES: &str = include_str!("../data/ramified_primes.txt");
const GALOIS_GROUPS: &str = include_str!("../data/galois_groups.txt");
const CHARACTERS_N20: &str = include_str!("../data/characters_n20.txt");
const SERIES_TERMS: &str = include_str!("../data/series_terms.txt");
const RESIDUES: &str = include_str!("../data/residues.txt");

/// Absolute tolerance on residues quoted to six decimals.
pub const ALPHA_TOLERANCE: f64 = 1e-6;
/// Relative tolerance on regulators.
pub const REGULATOR_TOLERANCE: f64 = 1e-5;

fn data_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn num(s: &str) -> u64 {
    s.parse()
        .unwrap_or_else(|_| panic!("malformed number {s:?} in reference table"))
}

fn modulus(n: u64) -> Modulus {
    Modulus::new(n).expect("reference tables only hold valid moduli")
}

/// `(n, [(k, l)])`.
pub fn basic_indices() -> Vec<(u64, Vec<(u64, u64)>)> {
    data_lines(BASIC_INDICES)
        .map(|line| {
            let (n, rest) = line.split_once(':').expect("n: entries");
            let entries = rest
                .split_whitespace()
                .map(|e| {
                    let (k, l) = e.split_once('_').expect("k_l");
                    (num(k), num(l))
                })
                .collect();
            (num(n.trim()), entries)
        })
        .collect()
}

/// `(n, row)`.
pub fn ramified_primes() -> Vec<(u64, RamifiedRow)> {
    data_lines(RAMIFIED_PRIMES)
        .map(|line| {
            let v: Vec<u64> = line.split_whitespace().map(num).collect();
            (
                v[0],
                RamifiedRow {
                    p: v[1],
                    r: v[2],
                    phi_r: v[3],
                    ell: v[4],
                    m: v[5],
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisRow {
    pub n: u64,
    pub phi: u64,
    pub invariants: Vec<u64>,
    pub generators: Vec<u64>,
}

pub fn galois_groups() -> Vec<GaloisRow> {
    data_lines(GALOIS_GROUPS)
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            GaloisRow {
                n: num(f[0]),
                phi: num(f[1]),
                invariants: f[2].split('x').map(num).collect(),
                generators: f[3].split(',').map(num).collect(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRow {
    pub label: String,
    pub conductor: u64,
    /// `chi(1), ..., chi(n)` as `1`, `-1`, `i`, `-i`, `0`.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: u64,
    pub rows: Vec<CharacterRow>,
    /// Footer: `(column k, l, m)`.
    pub footer: Vec<(u64, u64, u64)>,
}

pub fn character_table_n20() -> CharacterTable {
    let mut rows = Vec::new();
    let mut ell = Vec::new();
    let mut m = Vec::new();
    for line in data_lines(CHARACTERS_N20) {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f[0] {
            "ell" => ell = f[2..].to_vec(),
            "m" => m = f[2..].to_vec(),
            label => rows.push(CharacterRow {
                label: label.to_string(),
                conductor: num(f[1]),
                values: f[2..].iter().map(|s| s.to_string()).collect(),
            }),
        }
    }
    let footer = ell
        .iter()
        .zip(&m)
        .enumerate()
        .filter(|(_, (l, _))| **l != "-")
        .map(|(i, (l, mm))| (i as u64 + 1, num(l), num(mm)))
        .collect();
    CharacterTable {
        n: 20,
        rows,
        footer,
    }
}

/// `(n, [(k, a_n(k))])` for the listed terms beyond `a_n(1) = 1`.
pub fn series_terms() -> Vec<(u64, Vec<(u64, u64)>)> {
    data_lines(SERIES_TERMS)
        .map(|line| {
            let (n, rest) = line.split_once(':').expect("n: terms");
            let terms = rest
                .split_whitespace()
                .map(|t| {
                    let (a, k) = t.split_once('/').expect("a/k");
                    (num(k), num(a))
                })
                .collect();
            (num(n.trim()), terms)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueRow {
    pub n: u64,
    pub phi: u64,
    pub regulator: f64,
    pub alpha: f64,
    pub closed_form: Option<String>,
}

pub fn residues() -> Vec<ResidueRow> {
    data_lines(RESIDUES)
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            ResidueRow {
                n: num(f[0]),
                phi: num(f[1]),
                regulator: f[2].parse().expect("regulator"),
                alpha: f[3].parse().expect("residue"),
                closed_form: f.get(4).map(|s| s.to_string()),
            }
        })
        .collect()
}

/// Outcome of comparing one reference table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub table: &'static str,
    pub rows: usize,
    pub mismatches: Vec<String>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_basic_indices() -> TableCheck {
    let golden = basic_indices();
    let mut mismatches = Vec::new();
    for (n, expected) in &golden {
        let got: Vec<(u64, u64)> = basic_index_table(modulus(*n))
            .into_iter()
            .map(|b| (b.residue, b.ell))
            .collect();
        if &got != expected {
            mismatches.push(format!("n={n}: computed {got:?}, table {expected:?}"));
        }
    }
    TableCheck {
        table: "basic-indices",
        rows: golden.len(),
        mismatches,
    }
}

pub fn check_ramified_primes() -> TableCheck {
    let golden = ramified_primes();
    let mut mismatches = Vec::new();
    let mut computed: HashMap<u64, Vec<RamifiedRow>> = HashMap::new();
    for (n, _) in &golden {
        computed
            .entry(*n)
            .or_insert_with(|| ramified_table(modulus(*n)));
    }
    for (n, expected) in &golden {
        match computed[n].iter().find(|r| r.p == expected.p) {
            Some(got) if got == expected => {}
            Some(got) => mismatches.push(format!(
                "n={n} p={}: computed {got:?}, table {expected:?}",
                expected.p
            )),
            None => mismatches.push(format!("n={n}: {} is not ramified", expected.p)),
        }
    }
    for (n, rows) in &computed {
        let listed = golden.iter().filter(|(m, _)| m == n).count();
        if listed != rows.len() {
            mismatches.push(format!(
                "n={n}: {} ramified primes, table lists {listed}",
                rows.len()
            ));
        }
    }
    mismatches.sort();
    TableCheck {
        table: "ramified-primes",
        rows: golden.len(),
        mismatches,
    }
}

pub fn check_galois_groups() -> TableCheck {
    let golden = galois_groups();
    let mut mismatches = Vec::new();
    for row in &golden {
        let group = UnitGroup::new(modulus(row.n));
        let ty = group.isomorphism_type();
        if group.order() != row.phi || ty != row.invariants {
            mismatches.push(format!(
                "n={}: computed order {} type {ty:?}, table {} {:?}",
                row.n,
                group.order(),
                row.phi,
                row.invariants
            ));
        }
        if !group.is_generated_by(&row.generators) {
            mismatches.push(format!(
                "n={}: {:?} does not generate the unit group",
                row.n, row.generators
            ));
        }
    }
    TableCheck {
        table: "galois-groups",
        rows: golden.len(),
        mismatches,
    }
}

pub fn check_character_table() -> TableCheck {
    let golden = character_table_n20();
    let group = Arc::new(UnitGroup::new(modulus(golden.n)));
    let chars = characters_of(group);
    let mut mismatches = Vec::new();

    let key = |f: u64, v: &[String]| format!("{f}|{}", v.join(" "));
    let mut computed: Vec<String> = chars
        .iter()
        .map(|c| {
            let v: Vec<String> = (1..=golden.n)
                .map(|k| format_value(c.value_at(k)))
                .collect();
            key(c.conductor(), &v)
        })
        .collect();
    let mut expected: Vec<String> = golden
        .rows
        .iter()
        .map(|r| key(r.conductor, &r.values))
        .collect();
    computed.sort();
    expected.sort();
    for row in &expected {
        if !computed.contains(row) {
            mismatches.push(format!("table row {row} not produced"));
        }
    }
    for row in &computed {
        if !expected.contains(row) {
            mismatches.push(format!("computed row {row} not in table"));
        }
    }
    for &(k, ell, m) in &golden.footer {
        match shape_from_characters(&chars, k) {
            Ok(got) if got == (ell, m) => {}
            other => mismatches.push(format!(
                "column {k}: computed {other:?}, table ({ell}, {m})"
            )),
        }
    }
    TableCheck {
        table: "characters-n20",
        rows: golden.rows.len() + 2,
        mismatches,
    }
}

pub fn check_series_terms() -> TableCheck {
    let golden = series_terms();
    let mut mismatches = Vec::new();
    for (n, expected) in &golden {
        let last = expected.last().map_or(1, |t| t.0);
        match coefficients_up_to(modulus(*n), last) {
            Ok(series) => {
                let got: Vec<(u64, u64)> = series
                    .nonzero()
                    .skip(1)
                    .map(|(k, a)| (k, a as u64))
                    .collect();
                if &got != expected {
                    let first_bad = got
                        .iter()
                        .zip(expected)
                        .position(|(a, b)| a != b)
                        .unwrap_or(got.len().min(expected.len()));
                    mismatches.push(format!(
                        "n={n}: term {} computed {:?}, table {:?}",
                        first_bad + 1,
                        got.get(first_bad),
                        expected.get(first_bad)
                    ));
                }
            }
            Err(e) => mismatches.push(format!("n={n}: {e}")),
        }
    }
    TableCheck {
        table: "series-terms",
        rows: golden.len(),
        mismatches,
    }
}

pub fn check_residues() -> TableCheck {
    let golden = residues();
    let mut mismatches = Vec::new();
    for row in &golden {
        match residue(modulus(row.n)) {
            Ok(rep) => {
                if (rep.alpha - row.alpha).abs() > ALPHA_TOLERANCE {
                    mismatches.push(format!(
                        "n={}: residue {:.9}, table {}",
                        row.n, rep.alpha, row.alpha
                    ));
                }
                if ((rep.regulator - row.regulator) / row.regulator).abs() > REGULATOR_TOLERANCE {
                    mismatches.push(format!(
                        "n={}: regulator {:.9}, table {}",
                        row.n, rep.regulator, row.regulator
                    ));
                }
            }
            Err(e) => mismatches.push(format!("n={}: {e}", row.n)),
        }
    }
    TableCheck {
        table: "residues",
        rows: golden.len(),
        mismatches,
    }
}

/// All six reference-table comparisons.
pub fn verify_all() -> Vec<TableCheck> {
    vec![
        check_basic_indices(),
        check_ramified_primes(),
        check_galois_groups(),
        check_character_table(),
        check_series_terms(),
        check_residues(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(basic_indices().len(), 29);
        assert_eq!(galois_groups().len(), 29);
        assert_eq!(series_terms().len(), 29);
        assert_eq!(residues().len(), 16);
        let chars = character_table_n20();
        assert_eq!(chars.rows.len(), 8);
        assert!(chars.rows.iter().all(|r| r.values.len() == 20));
        assert_eq!(chars.footer.len(), 10);
        assert!(series_terms().iter().all(|(_, t)| t.len() >= 15));
    }

    #[test]
    fn every_listed_n_is_class_number_one() {
        for (n, _) in basic_indices() {
            assert!(modulus(n).class_number_one());
        }
    }
}
