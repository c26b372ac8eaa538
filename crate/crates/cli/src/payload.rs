//! JSON payloads, one type per subcommand.

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<P> {
    pub command: String,
    pub n: Option<u64>,
    pub payload: P,
    pub version: String,
}

impl<P> Envelope<P> {
    pub fn new(command: &str, n: Option<u64>, payload: P) -> Self {
        Envelope {
            command: command.to_string(),
            n,
            payload,
            version: VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub residue: u64,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub label: Vec<u64>,
    pub conductor: u64,
    pub parity: String,
    pub order: u64,
    /// `chi(1), ..., chi(n)`.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeColumn {
    pub k: u64,
    pub ell: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharactersPayload {
    pub phi: u64,
    pub group_type: Vec<u64>,
    pub generators: Vec<GeneratorEntry>,
    pub characters: Vec<CharacterEntry>,
    pub footer: Vec<ShapeColumn>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub ell: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerPayload {
    pub prime: u64,
    pub method: String,
    pub characters: Option<Shape>,
    pub order: Option<Shape>,
    /// `None` unless both methods ran.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicRow {
    pub residue: u64,
    pub ell: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamifiedEntry {
    pub p: u64,
    pub r: u64,
    pub phi_r: u64,
    pub ell: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "which", rename_all = "lowercase")]
pub enum TablesPayload {
    Basic { rows: Vec<BasicRow> },
    Ramified { rows: Vec<RamifiedEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPayload {
    pub n: u64,
    pub interpretation: String,
    pub limit: u64,
    /// `[k, a_n(k)]` for the nonzero coefficients, `k = 1` first.
    pub nonzero: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LValueEntry {
    pub label: Vec<u64>,
    pub conductor: u64,
    pub parity: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResiduePayload {
    pub phi: u64,
    pub alpha: f64,
    pub regulator: f64,
    pub symmetry_order: u64,
    pub ramified_product: f64,
    pub factors: Option<Vec<LValueEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub x: u64,
    pub partial_sum: u64,
    pub rate: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePayload {
    pub alpha: f64,
    pub rows: Vec<RateRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePayload {
    pub k: u64,
    pub count: u64,
    pub max_nodes: u64,
    pub series: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: u64,
    pub oracle: u64,
    pub series: Option<u64>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPayload {
    pub max_k: u64,
    pub rows: Vec<SweepRow>,
    pub all_agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableResult {
    pub table: String,
    pub rows: usize,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub tables: Vec<TableResult>,
    pub passed: bool,
}
