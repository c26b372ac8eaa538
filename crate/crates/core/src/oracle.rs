//! Brute-force ideal counting in `Z[xi_n]`.
//!
//! `Z[xi_n]` is identified with `Z^d`, `d = phi(n)`, via the power basis
//! `1, xi, ..., xi^{d-1}`; multiplication by `xi` acts as the companion
//! matrix of the cyclotomic polynomial. Ideals of norm `k` are exactly the
//! sublattices of index `k` that this matrix maps into themselves. Each
//! sublattice is enumerated once through its Hermite normal form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::arith::{divisors, isqrt, totient};
use crate::error::{Error, Result};
use crate::group::Modulus;

/// Default bound on visited partial bases.
pub const DEFAULT_MAX_NODES: u64 = 2_000_000_000;
/// Default largest index accepted by [`count_invariant_sublattices`].
pub const DEFAULT_MAX_INDEX: u64 = 200;
/// Largest lattice rank the enumerator accepts.
pub const MAX_DEGREE: usize = 8;
/// Environment variable overriding [`DEFAULT_MAX_NODES`].
pub const MAX_NODES_ENV: &str = "CYCLOZETA_MAX_NODES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_nodes: u64,
    pub max_index: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_nodes: DEFAULT_MAX_NODES,
            max_index: DEFAULT_MAX_INDEX,
        }
    }
}

impl OracleConfig {
    /// Defaults, with the node budget taken from `CYCLOZETA_MAX_NODES` when set.
    pub fn from_env() -> Self {
        let mut cfg = OracleConfig::default();
        if let Some(v) = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            cfg.max_nodes = v;
        }
        cfg
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntMatrix {
            dim,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        let d = self.dim;
        if d == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..d - 1 {
            if a[k * d + k] == 0 {
                match (k + 1..d).find(|&r| a[r * d + k] != 0) {
                    Some(r) => {
                        for j in 0..d {
                            a.swap(k * d + j, r * d + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    a[i * d + j] =
                        (a[i * d + j] * a[k * d + k] - a[i * d + k] * a[k * d + j]) / prev;
                }
            }
            prev = a[k * d + k];
        }
        (sign * a[d * d - 1]) as i64
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let mut known: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for d in divisors(n) {
        let mut poly = vec![0i64; d as usize + 1];
        poly[0] = -1;
        poly[d as usize] = 1;
        for (_, phi) in known.iter().filter(|(e, _)| d % **e == 0) {
            poly = divide_monic(&poly, phi);
        }
        known.insert(d, poly);
    }
    known.remove(&n).expect("n divides itself")
}

/// Exact quotient of `num` by the monic `den`.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division is exact");
    quot
}

/// Multiplication by `xi_n` on `Z[xi_n]` in the power basis.
#[derive(Debug, Clone)]
pub struct CyclotomicAction {
    pub modulus: Modulus,
    pub degree: usize,
    pub phi_coeffs: Vec<i64>,
    pub companion: IntMatrix,
}

impl CyclotomicAction {
    pub fn new(modulus: Modulus) -> Self {
        let phi_coeffs = cyclotomic_polynomial(modulus.get());
        let degree = phi_coeffs.len() - 1;
        let mut companion = IntMatrix::zeros(degree);
        for i in 0..degree - 1 {
            companion.set(i + 1, i, 1);
        }
        for (i, &c) in phi_coeffs.iter().take(degree).enumerate() {
            companion.set(i, degree - 1, -c);
        }
        CyclotomicAction {
            modulus,
            degree,
            phi_coeffs,
            companion,
        }
    }
}

/// Upper-triangular Hermite normal form of a full-rank sublattice of `Z^d`.
/// Columns are the basis vectors; row `i` entries right of the diagonal lie
/// in `0..H[i][i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeBasis {
    pub hnf: IntMatrix,
    pub index: u64,
}

impl SublatticeBasis {
    pub fn contains(&self, v: &[i64]) -> bool {
        in_lattice(&self.hnf, v.to_vec(), self.hnf.dim() - 1)
    }
}

/// Whether `v` (supported in rows `0..=top`) lies in the span of the first
/// `top + 1` columns of the triangular `h`.
fn in_lattice(h: &IntMatrix, mut v: Vec<i64>, top: usize) -> bool {
    for i in (0..=top).rev() {
        let d = h.get(i, i);
        if v[i] % d != 0 {
            return false;
        }
        let x = v[i] / d;
        if x != 0 {
            for (r, slot) in v.iter_mut().enumerate().take(i + 1) {
                *slot -= x * h.get(r, i);
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Complete bases reached (all closure tests passed so far).
    pub complete: u64,
    /// Partial bases visited.
    pub nodes: u64,
}

struct Enumerator<'a> {
    dim: usize,
    action: Option<&'a IntMatrix>,
    /// `tests[t]`: columns whose image must be checked once column `t` is set.
    tests: Vec<Vec<usize>>,
    max_nodes: u64,
    nodes: &'a AtomicU64,
}

impl Enumerator<'_> {
    fn new<'a>(
        dim: usize,
        action: Option<&'a IntMatrix>,
        max_nodes: u64,
        nodes: &'a AtomicU64,
    ) -> Enumerator<'a> {
        let mut tests = vec![Vec::new(); dim];
        if let Some(a) = action {
            // image of column j is supported in rows <= max_{i<=j} top(A e_i)
            let mut reach = 0usize;
            for j in 0..dim {
                let top = (0..dim).rev().find(|&r| a.get(r, j) != 0).unwrap_or(0);
                reach = reach.max(top);
                tests[reach.max(j)].push(j);
            }
        }
        Enumerator {
            dim,
            action,
            tests,
            max_nodes,
            nodes,
        }
    }

    fn closed_through(&self, h: &IntMatrix, t: usize) -> bool {
        let Some(a) = self.action else { return true };
        self.tests[t]
            .iter()
            .all(|&j| in_lattice(h, a.mul_vec(&h.column(j)), t))
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            return Err(Error::NodeBudget(self.max_nodes));
        }
        Ok(())
    }

    /// Fill column `j` (diagonal dividing `remaining`) and recurse.
    fn fill(
        &self,
        h: &mut IntMatrix,
        j: usize,
        remaining: u64,
        visit: &mut dyn FnMut(&IntMatrix),
        stats: &mut EnumerationStats,
    ) -> Result<()> {
        if j == self.dim {
            if remaining == 1 {
                stats.complete += 1;
                visit(h);
            }
            return Ok(());
        }
        let diagonals = if j + 1 == self.dim {
            vec![remaining]
        } else {
            divisors(remaining)
        };
        for d in diagonals {
            h.set(j, j, d as i64);
            self.fill_column(h, j, 0, remaining / d, visit, stats)?;
        }
        h.set(j, j, 0);
        Ok(())
    }

    /// Odometer over the off-diagonal entries `h[i][j]`, `i < j`.
    fn fill_column(
        &self,
        h: &mut IntMatrix,
        j: usize,
        i: usize,
        remaining: u64,
        visit: &mut dyn FnMut(&IntMatrix),
        stats: &mut EnumerationStats,
    ) -> Result<()> {
        if i == j {
            self.tick()?;
            stats.nodes += 1;
            if self.closed_through(h, j) {
                self.fill(h, j + 1, remaining, visit, stats)?;
            }
            return Ok(());
        }
        for v in 0..h.get(i, i) {
            h.set(i, j, v);
            self.fill_column(h, j, i + 1, remaining, visit, stats)?;
        }
        h.set(i, j, 0);
        Ok(())
    }
}

/// Enumerate every index-`k` sublattice of `Z^dim` in Hermite normal form
/// that is mapped into itself by `action` (all of them when `action` is
/// `None`). Work is split over the first diagonal entry and run in parallel.
pub fn enumerate_sublattices(
    dim: usize,
    k: u64,
    action: Option<&IntMatrix>,
    max_nodes: u64,
    visit: &(dyn Fn(&SublatticeBasis) + Sync),
) -> Result<EnumerationStats> {
    if dim == 0 || k == 0 {
        return Err(Error::Unsupported("need positive rank and index".into()));
    }
    if let Some(a) = action {
        assert_eq!(a.dim(), dim, "action dimension mismatch");
    }
    let nodes = AtomicU64::new(0);
    let enumerator = Enumerator::new(dim, action, max_nodes, &nodes);
    let first: Vec<u64> = if dim == 1 { vec![k] } else { divisors(k) };
    let partials: Vec<Result<EnumerationStats>> = first
        .into_par_iter()
        .map(|d0| {
            let mut h = IntMatrix::zeros(dim);
            h.set(0, 0, d0 as i64);
            let mut stats = EnumerationStats::default();
            enumerator.tick()?;
            stats.nodes += 1;
            if enumerator.closed_through(&h, 0) {
                let mut on_complete = |m: &IntMatrix| {
                    visit(&SublatticeBasis {
                        hnf: m.clone(),
                        index: k,
                    })
                };
                enumerator.fill(&mut h, 1, k / d0, &mut on_complete, &mut stats)?;
            }
            Ok(stats)
        })
        .collect();
    let mut total = EnumerationStats::default();
    for p in partials {
        let p = p?;
        total.complete += p.complete;
        total.nodes += p.nodes;
    }
    Ok(total)
}

/// Number of index-`k` sublattices of `Z^dim` (no invariance filter).
pub fn count_all_sublattices(dim: usize, k: u64, max_nodes: u64) -> Result<u64> {
    Ok(enumerate_sublattices(dim, k, None, max_nodes, &|_| {})?.complete)
}

/// Number of index-`k` sublattices of `Z^{action.dim()}` invariant under `action`.
pub fn count_invariant_sublattices_for(
    action: &IntMatrix,
    k: u64,
    config: &OracleConfig,
) -> Result<u64> {
    if k > config.max_index {
        return Err(Error::Capacity {
            what: "index",
            value: k,
            limit: config.max_index,
        });
    }
    if action.dim() > MAX_DEGREE {
        return Err(Error::Capacity {
            what: "degree",
            value: action.dim() as u64,
            limit: MAX_DEGREE as u64,
        });
    }
    Ok(enumerate_sublattices(action.dim(), k, Some(action), config.max_nodes, &|_| {})?.complete)
}

/// Ideals of norm `k` in `Z[xi_n]`, counted as `xi`-invariant sublattices.
pub fn count_invariant_sublattices(modulus: Modulus, k: u64, config: &OracleConfig) -> Result<u64> {
    let phi = totient(modulus.get());
    if phi as usize > MAX_DEGREE {
        return Err(Error::Capacity {
            what: "degree",
            value: phi,
            limit: MAX_DEGREE as u64,
        });
    }
    let action = CyclotomicAction::new(modulus);
    count_invariant_sublattices_for(&action.companion, k, config)
}

/// The invariant sublattices themselves.
pub fn invariant_sublattices(
    modulus: Modulus,
    k: u64,
    config: &OracleConfig,
) -> Result<Vec<SublatticeBasis>> {
    let action = CyclotomicAction::new(modulus);
    let found = std::sync::Mutex::new(Vec::new());
    enumerate_sublattices(
        action.degree,
        k,
        Some(&action.companion),
        config.max_nodes,
        &|b| found.lock().expect("collector lock").push(b.clone()),
    )?;
    let mut found = found.into_inner().expect("collector lock");
    found.sort_by(|a, b| a.hnf.data.cmp(&b.hnf.data));
    Ok(found)
}

/// Ideals of norm `k` for `n = 3, 4`, counted as elements of norm `k`
/// modulo the (finite) unit group.
pub fn element_norm_count(modulus: Modulus, k: u64) -> Result<u64> {
    let (norm, units): (fn(i64, i64) -> i64, u64) = match modulus.get() {
        // a + b i
        4 => (|a, b| a * a + b * b, 4),
        // a + b omega, omega^2 = omega - 1 (primitive sixth root)
        3 => (|a, b| a * a + a * b + b * b, 6),
        n => {
            return Err(Error::Unsupported(format!(
                "element counting needs a finite unit group (n = 3 or 4), got {n}"
            )))
        }
    };
    if k == 0 {
        return Err(Error::Unsupported("norm must be positive".into()));
    }
    // both norms dominate (3/4) max(|a|, |b|)^2
    let bound = 2 * isqrt(k) as i64 + 1;
    let target = k as i64;
    let mut hits = 0u64;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if norm(a, b) == target {
                hits += 1;
            }
        }
    }
    debug_assert_eq!(hits % units, 0);
    Ok(hits / units)
}
