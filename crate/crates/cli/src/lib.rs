//! The `cyclozeta` command line: argument parsing, dispatch and rendering.
//!
//! Every subcommand prints text by default and a JSON envelope per modulus
//! with `--format json`. Exit codes: 0 success, 1 internal failure, 2 usage,
//! 3 capacity envelope exceeded, 4 mismatch against reference data.

pub mod payload;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cyclozeta::arith::{gcd, is_prime};
use cyclozeta::characters::{characters_of, format_value};
use cyclozeta::euler::{
    basic_index_table, ramified_table, shape_from_characters, shape_via_characters, shape_via_order,
};
use cyclozeta::golden;
use cyclozeta::lvalues::residue;
use cyclozeta::oracle::{count_invariant_sublattices, OracleConfig};
use cyclozeta::series::{coefficient_at, coefficients_up_to, format_series, series_with_terms};
use cyclozeta::{Error, Interpretation, Modulus, UnitGroup};

use payload::*;

/// Largest `n` whose full character table is printed.
pub const MAX_TABLE_MODULUS: u64 = 1_000;
/// Nonzero terms shown when neither `--limit` nor `--terms` is given.
pub const DEFAULT_TERMS: usize = 15;

#[derive(Debug, Parser)]
#[command(
    name = "cyclozeta",
    version,
    about = "Bravais colourings of cyclotomic modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NSpec {
    All,
    One(u64),
}

fn parse_n(s: &str) -> Result<NSpec, String> {
    if s == "all" {
        return Ok(NSpec::All);
    }
    s.parse()
        .map(NSpec::One)
        .map_err(|_| format!("expected a positive integer or 'all', got {s:?}"))
}

#[derive(Debug, Args)]
struct Target {
    /// Cyclotomic index, or `all` for the 29 class-number-one values.
    #[arg(long, value_parser = parse_n)]
    n: NSpec,
    /// Accept `n` outside the class-number-one list (counts ideals).
    #[arg(long)]
    allow_any: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Chars,
    Order,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Basic,
    Ramified,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dirichlet character table with conductors and Euler shapes.
    Characters {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Euler factor shape of one prime.
    Euler {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Basic indices of unramified classes, or the ramified primes.
    Tables {
        #[arg(long, value_enum)]
        which: Which,
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Coefficients of the Dirichlet series.
    Series {
        #[command(flatten)]
        target: Target,
        /// Sieve bound; defaults to the smallest bound holding `--terms` terms.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: Option<u64>,
        /// Number of nonzero terms after `a(1)`.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Residue of the Dedekind zeta function at s = 1 and the regulator.
    Residue {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=15))]
        digits: u8,
        /// Also list every L(1, chi).
        #[arg(long)]
        with_factors: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Empirical rate A(x)/x against the residue.
    Rate {
        #[command(flatten)]
        target: Target,
        #[arg(long, required = true, value_parser = clap::value_parser!(u64).range(1..))]
        x: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count ideals of norm k by sublattice enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Node budget; overrides CYCLOZETA_MAX_NODES.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the oracle for k = 1..=max-k.
    OracleSweep {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        /// Compare each count with the series coefficient.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recompute the six reference tables and report per table.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Envelope(String),
    Mismatch(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Envelope(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Envelope(m)
            | CliError::Mismatch(m)
            | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_envelope() {
            return CliError::Envelope(msg);
        }
        match e {
            Error::InvalidModulus { .. }
            | Error::RedundantModulus { .. }
            | Error::NotCoprime { .. }
            | Error::NotPrime(_)
            | Error::Unsupported(_) => CliError::Usage(msg),
            _ => CliError::Failure(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn moduli(target: &Target) -> Result<Vec<Modulus>, CliError> {
    match target.n {
        NSpec::All => Ok(Modulus::class_number_one_list().collect()),
        NSpec::One(n) => {
            let m = Modulus::new(n)?;
            if !m.class_number_one() && !target.allow_any {
                return Err(CliError::Usage(format!(
                    "n = {n} does not have class number one; pass --allow-any to count ideals instead of colourings"
                )));
            }
            Ok(vec![m])
        }
    }
}

fn emit<P: Serialize>(out: &mut dyn Write, command: &str, n: Option<u64>, payload: P) -> CliResult {
    let line = serde_json::to_string(&Envelope::new(command, n, payload))
        .map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Characters { target, format } => {
            for m in moduli(&target)? {
                characters(out, m, format)?;
            }
            Ok(())
        }
        Command::Euler {
            target,
            prime,
            method,
            format,
        } => {
            let ms = moduli(&target)?;
            let prefix = ms.len() > 1;
            for m in ms {
                euler(out, m, prime, method, format, prefix)?;
            }
            Ok(())
        }
        Command::Tables {
            which,
            target,
            format,
        } => tables(out, &moduli(&target)?, which, format),
        Command::Series {
            target,
            limit,
            terms,
            format,
        } => {
            let ms = moduli(&target)?;
            let prefix = ms.len() > 1;
            for m in ms {
                series(out, m, limit, terms, format, prefix)?;
            }
            Ok(())
        }
        Command::Residue {
            target,
            digits,
            with_factors,
            format,
        } => {
            let ms = moduli(&target)?;
            let prefix = ms.len() > 1;
            for m in ms {
                residue_cmd(out, m, digits as usize, with_factors, format, prefix)?;
            }
            Ok(())
        }
        Command::Rate { target, x, format } => {
            for m in moduli(&target)? {
                rate(out, m, &x, format)?;
            }
            Ok(())
        }
        Command::Oracle {
            target,
            k,
            max_nodes,
            format,
        } => {
            let cfg = oracle_config(max_nodes);
            for m in moduli(&target)? {
                oracle(out, m, k, &cfg, format)?;
            }
            Ok(())
        }
        Command::OracleSweep {
            target,
            max_k,
            compare,
            max_nodes,
            format,
        } => {
            let cfg = oracle_config(max_nodes);
            let mut disagreements = 0;
            for m in moduli(&target)? {
                disagreements += sweep(out, m, max_k, compare, &cfg, format)?;
            }
            if disagreements > 0 {
                return Err(CliError::Mismatch(format!(
                    "{disagreements} oracle counts differ from the series"
                )));
            }
            Ok(())
        }
        Command::VerifyPaper { format } => verify(out, format),
    }
}

fn oracle_config(max_nodes: Option<u64>) -> OracleConfig {
    let mut cfg = OracleConfig::from_env();
    if let Some(b) = max_nodes {
        cfg.max_nodes = b;
    }
    cfg
}

/// Columns that carry an Euler shape in the character table footer.
fn footer_column(k: u64, n: u64) -> bool {
    k == 1 || gcd(k, n) == 1 || is_prime(k)
}

fn characters(out: &mut dyn Write, m: Modulus, format: TableFormat) -> CliResult {
    let n = m.get();
    if n > MAX_TABLE_MODULUS {
        return Err(CliError::Envelope(format!(
            "character tables are printed for n <= {MAX_TABLE_MODULUS}, got {n}"
        )));
    }
    let group = Arc::new(UnitGroup::new(m));
    let chars = characters_of(Arc::clone(&group));
    let mut footer = Vec::new();
    for k in (1..=n).filter(|&k| footer_column(k, n)) {
        let (ell, mm) = shape_from_characters(&chars, k)?;
        footer.push(ShapeColumn { k, ell, m: mm });
    }
    let payload = CharactersPayload {
        phi: group.order(),
        group_type: group.isomorphism_type(),
        generators: group
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                residue: g.residue,
                order: g.order,
            })
            .collect(),
        characters: chars
            .iter()
            .map(|c| CharacterEntry {
                label: c.label().to_vec(),
                conductor: c.conductor(),
                parity: c.parity().to_string(),
                order: c.order(),
                values: (1..=n).map(|k| format_value(c.value_at(k))).collect(),
            })
            .collect(),
        footer,
    };
    if format == TableFormat::Json {
        return emit(out, "characters", Some(n), payload);
    }

    let type_str: Vec<String> = payload.group_type.iter().map(|d| format!("C{d}")).collect();
    let gens: Vec<String> = payload
        .generators
        .iter()
        .map(|g| format!("{} (order {})", g.residue, g.order))
        .collect();
    writeln!(
        out,
        "n={n}  phi={}  (Z/{n}Z)* = {}  generators: {}",
        payload.phi,
        type_str.join(" x "),
        gens.join(", ")
    )?;
    let label_w = payload
        .characters
        .iter()
        .map(|c| label_text(&c.label).len())
        .max()
        .unwrap_or(1)
        .max(3);
    let cell_w = payload
        .characters
        .iter()
        .flat_map(|c| c.values.iter().map(String::len))
        .chain([n.to_string().len(), 2])
        .max()
        .unwrap_or(2);
    let f_w = n.to_string().len().max(1);
    let mut line = format!("{:<label_w$}  {:>f_w$}", "chi", "f");
    for k in 1..=n {
        let _ = write!(line, " {k:>cell_w$}");
    }
    writeln!(out, "{line}")?;
    for c in &payload.characters {
        let mut line = format!("{:<label_w$}  {:>f_w$}", label_text(&c.label), c.conductor);
        for v in &c.values {
            let _ = write!(line, " {v:>cell_w$}");
        }
        writeln!(out, "{line}")?;
    }
    for (name, pick) in [("ℓ", 0usize), ("m", 1)] {
        let mut line = format!("{:<label_w$}  {:>f_w$}", name, "");
        for k in 1..=n {
            let cell = match payload.footer.iter().find(|s| s.k == k) {
                Some(s) if pick == 0 => s.ell.to_string(),
                Some(s) => s.m.to_string(),
                None => String::new(),
            };
            let _ = write!(line, " {cell:>cell_w$}");
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}

fn label_text(label: &[u64]) -> String {
    let parts: Vec<String> = label.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn euler(
    out: &mut dyn Write,
    m: Modulus,
    p: u64,
    method: Method,
    format: Format,
    prefix: bool,
) -> CliResult {
    let shape = |s: cyclozeta::EulerShape| Shape { ell: s.ell, m: s.m };
    let by_chars = match method {
        Method::Chars | Method::Both => Some(shape(shape_via_characters(m, p)?)),
        Method::Order => None,
    };
    let by_order = match method {
        Method::Order | Method::Both => Some(shape(shape_via_order(m, p)?)),
        Method::Chars => None,
    };
    let agree = match (by_chars, by_order) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let payload = EulerPayload {
        prime: p,
        method: format!("{method:?}").to_lowercase(),
        characters: by_chars,
        order: by_order,
        agree,
    };
    if format == Format::Json {
        emit(out, "euler", Some(m.get()), payload)?;
    } else {
        let lead = if prefix {
            format!("n={m}: ")
        } else {
            String::new()
        };
        let text = |s: Shape| format!("ℓ={} m={}", s.ell, s.m);
        match (by_chars, by_order, agree) {
            (Some(a), Some(_), Some(true)) => writeln!(out, "{lead}{} (methods agree)", text(a))?,
            (Some(a), Some(b), _) => writeln!(
                out,
                "{lead}characters: {}; order: {} (methods disagree)",
                text(a),
                text(b)
            )?,
            (Some(s), None, _) | (None, Some(s), _) => writeln!(out, "{lead}{}", text(s))?,
            (None, None, _) => unreachable!("at least one method runs"),
        }
    }
    if agree == Some(false) {
        return Err(CliError::Failure(format!(
            "n={m} p={p}: the two methods disagree"
        )));
    }
    Ok(())
}

fn tables(out: &mut dyn Write, ms: &[Modulus], which: Which, format: Format) -> CliResult {
    if format == Format::Text && which == Which::Ramified {
        writeln!(
            out,
            "{:>4} {:>4} {:>4} {:>5} {:>3} {:>3}",
            "n", "p", "r", "φ(r)", "ℓ", "m"
        )?;
    }
    for &m in ms {
        let payload = match which {
            Which::Basic => TablesPayload::Basic {
                rows: basic_index_table(m)
                    .into_iter()
                    .map(|b| BasicRow {
                        residue: b.residue,
                        ell: b.ell,
                    })
                    .collect(),
            },
            Which::Ramified => TablesPayload::Ramified {
                rows: ramified_table(m)
                    .into_iter()
                    .map(|r| RamifiedEntry {
                        p: r.p,
                        r: r.r,
                        phi_r: r.phi_r,
                        ell: r.ell,
                        m: r.m,
                    })
                    .collect(),
            },
        };
        if format == Format::Json {
            emit(out, "tables", Some(m.get()), payload)?;
            continue;
        }
        match payload {
            TablesPayload::Basic { rows } => {
                let cells: Vec<String> = rows
                    .iter()
                    .map(|r| format!("{}:{}", r.residue, r.ell))
                    .collect();
                writeln!(out, "n={m}  k:ℓ  {}", cells.join(" "))?;
            }
            TablesPayload::Ramified { rows } => {
                for r in rows {
                    writeln!(
                        out,
                        "{:>4} {:>4} {:>4} {:>5} {:>3} {:>3}",
                        m.get(),
                        r.p,
                        r.r,
                        r.phi_r,
                        r.ell,
                        r.m
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn series(
    out: &mut dyn Write,
    m: Modulus,
    limit: Option<u64>,
    terms: Option<usize>,
    format: Format,
    prefix: bool,
) -> CliResult {
    let (series, terms) = match limit {
        Some(limit) => (coefficients_up_to(m, limit)?, terms.unwrap_or(usize::MAX)),
        None => {
            let terms = terms.unwrap_or(DEFAULT_TERMS);
            (series_with_terms(m, terms)?, terms)
        }
    };
    if format == Format::Json {
        let payload = SeriesPayload {
            n: m.get(),
            interpretation: Interpretation::of(m).as_str().to_string(),
            limit: series.limit(),
            nonzero: series
                .nonzero()
                .take(terms.saturating_add(1))
                .map(|(k, a)| (k, a as u64))
                .collect(),
        };
        return emit(out, "series", Some(m.get()), payload);
    }
    let lead = if prefix {
        format!("n={m}: ")
    } else {
        String::new()
    };
    writeln!(out, "{lead}{}", format_series(&series, terms))?;
    Ok(())
}

fn residue_cmd(
    out: &mut dyn Write,
    m: Modulus,
    digits: usize,
    with_factors: bool,
    format: Format,
    prefix: bool,
) -> CliResult {
    let report = residue(m)?;
    let payload = ResiduePayload {
        phi: report.phi,
        alpha: report.alpha,
        regulator: report.regulator,
        symmetry_order: report.symmetry_order,
        ramified_product: report.ramified_product,
        factors: with_factors.then(|| {
            report
                .factors
                .iter()
                .map(|f| LValueEntry {
                    label: f.label.clone(),
                    conductor: f.conductor,
                    parity: f.parity.clone(),
                    re: f.re,
                    im: f.im,
                })
                .collect()
        }),
    };
    if format == Format::Json {
        return emit(out, "residue", Some(m.get()), payload);
    }
    let lead = if prefix {
        format!("n={m}: ")
    } else {
        String::new()
    };
    writeln!(out, "{lead}{:.digits$}", payload.alpha)?;
    if let Some(factors) = &payload.factors {
        writeln!(out, "  regulator {:.digits$}", payload.regulator)?;
        for f in factors {
            writeln!(
                out,
                "  L(1, chi{}) = {:.digits$} {} {:.digits$}i  f={} {}",
                label_text(&f.label),
                f.re,
                if f.im < 0.0 { '-' } else { '+' },
                f.im.abs(),
                f.conductor,
                f.parity
            )?;
        }
    }
    Ok(())
}

fn rate(out: &mut dyn Write, m: Modulus, xs: &[u64], format: Format) -> CliResult {
    let alpha = residue(m)?.alpha;
    let max = xs.iter().copied().max().unwrap_or(1);
    let series = coefficients_up_to(m, max)?;
    let rows: Vec<RateRow> = series
        .partial_sums(xs)
        .into_iter()
        .zip(xs)
        .map(|(a, &x)| {
            let rate = a as f64 / x as f64;
            RateRow {
                x,
                partial_sum: a,
                rate,
                relative_error: (rate - alpha) / alpha,
            }
        })
        .collect();
    if format == Format::Json {
        return emit(out, "rate", Some(m.get()), RatePayload { alpha, rows });
    }
    for r in rows {
        writeln!(
            out,
            "n={m} x={} A(x)={} A(x)/x={:.6} alpha={alpha:.6} relative error {:+.4}%",
            r.x,
            r.partial_sum,
            r.rate,
            100.0 * r.relative_error
        )?;
    }
    Ok(())
}

fn oracle(
    out: &mut dyn Write,
    m: Modulus,
    k: u64,
    cfg: &OracleConfig,
    format: Format,
) -> CliResult {
    let count = count_invariant_sublattices(m, k, cfg)?;
    let series = coefficient_at(m, k).ok();
    let payload = OraclePayload {
        k,
        count,
        max_nodes: cfg.max_nodes,
        series,
    };
    if format == Format::Json {
        return emit(out, "oracle", Some(m.get()), payload);
    }
    writeln!(out, "{count}")?;
    Ok(())
}

fn sweep(
    out: &mut dyn Write,
    m: Modulus,
    max_k: u64,
    compare: bool,
    cfg: &OracleConfig,
    format: Format,
) -> Result<usize, CliError> {
    let mut rows = Vec::new();
    for k in 1..=max_k {
        let oracle = count_invariant_sublattices(m, k, cfg)?;
        let series = if compare {
            Some(coefficient_at(m, k)?)
        } else {
            None
        };
        rows.push(SweepRow {
            k,
            oracle,
            series,
            agree: series.map(|s| s == oracle),
        });
    }
    let disagreements = rows.iter().filter(|r| r.agree == Some(false)).count();
    let all_agree = compare.then_some(disagreements == 0);
    if format == Format::Json {
        emit(
            out,
            "oracle-sweep",
            Some(m.get()),
            SweepPayload {
                max_k,
                rows,
                all_agree,
            },
        )?;
        return Ok(disagreements);
    }
    if compare {
        writeln!(
            out,
            "n={m}\n{:>5} {:>8} {:>8}  agree",
            "k", "oracle", "series"
        )?;
    } else {
        writeln!(out, "n={m}\n{:>5} {:>8}", "k", "oracle")?;
    }
    for r in &rows {
        match (r.series, r.agree) {
            (Some(s), Some(a)) => writeln!(
                out,
                "{:>5} {:>8} {:>8}  {}",
                r.k,
                r.oracle,
                s,
                if a { "yes" } else { "NO" }
            )?,
            _ => writeln!(out, "{:>5} {:>8}", r.k, r.oracle)?,
        }
    }
    if compare {
        if disagreements == 0 {
            writeln!(out, "all {max_k} counts agree")?;
        } else {
            writeln!(out, "{disagreements} of {max_k} counts disagree")?;
        }
    }
    Ok(disagreements)
}

fn verify(out: &mut dyn Write, format: Format) -> CliResult {
    let tables: Vec<TableResult> = golden::verify_all()
        .into_iter()
        .map(|c| TableResult {
            table: c.table.to_string(),
            rows: c.rows,
            passed: c.passed(),
            mismatches: c.mismatches,
        })
        .collect();
    let passed = tables.iter().all(|t| t.passed);
    let failed = tables.iter().filter(|t| !t.passed).count();
    if format == Format::Json {
        emit(out, "verify-paper", None, VerifyPayload { tables, passed })?;
    } else {
        for t in &tables {
            let status = if t.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {} ({} rows)", t.table, t.rows)?;
            for m in &t.mismatches {
                writeln!(out, "    {m}")?;
            }
        }
        if passed {
            writeln!(out, "all {} tables match", tables.len())?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{failed} reference tables do not match"
        )))
    }
}
