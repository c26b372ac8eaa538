//! The Dirichlet series `F_n(s) = sum a_n(k) k^{-s}` and its coefficients.
//!
//! `a_n` is multiplicative with `a_n(p^r) = C(r/l + m - 1, m - 1)` when
//! `l | r` and `0` otherwise, where `(l, m)` is the Euler shape of `p`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{factorize, gcd, prime_table};
use crate::error::{Error, Result};
use crate::euler::{shape_by_order, EulerShape};
use crate::group::{multiplicative_order, Modulus};

/// Largest `k` accepted by [`coefficient_at`].
pub const MAX_DIRECT_K: u64 = 1_000_000_000_000;

/// Largest `K` accepted by [`coefficients_up_to`]; the dense table then takes
/// about 400 MB plus 100 MB for the prime table.
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpretation {
    /// Class number one: `a_n(k)` counts Bravais colourings.
    ColourCounts,
    /// Otherwise only the count of all ideals of norm `k` is meaningful.
    IdealCounts,
}

impl Interpretation {
    pub fn of(modulus: Modulus) -> Self {
        if modulus.class_number_one() {
            Interpretation::ColourCounts
        } else {
            Interpretation::IdealCounts
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::ColourCounts => "colour-counts",
            Interpretation::IdealCounts => "ideal-counts",
        }
    }
}

/// `a_n(1..=limit)`.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    modulus: Modulus,
    limit: u64,
    /// Index 0 is unused and holds 0.
    coeffs: Vec<u32>,
    interpretation: Interpretation,
}

impl CoefficientSeries {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    /// `a_n(k)`; panics outside `1..=limit`.
    pub fn get(&self, k: u64) -> u32 {
        assert!(
            k >= 1 && k <= self.limit,
            "k = {k} outside 1..={}",
            self.limit
        );
        self.coeffs[k as usize]
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[1..]
    }

    /// `(k, a_n(k))` for every nonzero coefficient, ascending in `k`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| (k as u64, a))
    }

    /// `A_n(x) = sum_{k <= x} a_n(k)`.
    pub fn partial_sum(&self, x: u64) -> u64 {
        assert!(x <= self.limit);
        self.coeffs[..=x as usize].iter().map(|&a| a as u64).sum()
    }

    /// Partial sums at several (ascending or not) cut-offs in one pass.
    pub fn partial_sums(&self, xs: &[u64]) -> Vec<u64> {
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by_key(|&i| xs[i]);
        let mut out = vec![0u64; xs.len()];
        let mut acc = 0u64;
        let mut k = 0usize;
        for i in order {
            let x = xs[i].min(self.limit) as usize;
            while k <= x {
                acc += self.coeffs[k] as u64;
                k += 1;
            }
            out[i] = acc;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartialSum {
    pub x: u64,
    pub value: u64,
}

/// `a_n(k)` by factoring `k`.
pub fn coefficient_at(modulus: Modulus, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Unsupported(
            "coefficients are indexed from k = 1".into(),
        ));
    }
    if k > MAX_DIRECT_K {
        return Err(Error::Capacity {
            what: "k",
            value: k,
            limit: MAX_DIRECT_K,
        });
    }
    let mut acc = 1u64;
    for (p, r) in factorize(k)? {
        let local = shape_by_order(modulus.get(), p)
            .prime_power_coefficient(r as u64)
            .ok_or(Error::Overflow(k))?;
        if local == 0 {
            return Ok(0);
        }
        acc = acc.checked_mul(local).ok_or(Error::Overflow(k))?;
    }
    Ok(acc)
}

/// Residue class degrees, cached per class mod `n`.
struct ShapeCache {
    n: u64,
    ell: Vec<u32>,
}

impl ShapeCache {
    fn new(modulus: Modulus) -> Self {
        let n = modulus.get();
        ShapeCache {
            n,
            ell: vec![0; n as usize],
        }
    }

    fn shape(&mut self, p: u64) -> EulerShape {
        if self.n % p == 0 {
            return shape_by_order(self.n, p);
        }
        let class = (p % self.n) as usize;
        if self.ell[class] == 0 {
            self.ell[class] =
                multiplicative_order(class as u64, self.n).expect("unramified class") as u32;
        }
        let ell = self.ell[class] as u64;
        EulerShape {
            p,
            ell,
            m: crate::arith::totient(self.n) / ell,
        }
    }
}

/// `a_n(1..=limit)` by a multiplicative sieve over the primes.
pub fn coefficients_up_to(modulus: Modulus, limit: u64) -> Result<CoefficientSeries> {
    if limit == 0 {
        return Err(Error::Unsupported("limit must be positive".into()));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity {
            what: "limit",
            value: limit,
            limit: MAX_SIEVE_LIMIT,
        });
    }
    let size = limit as usize;
    let mut coeffs = vec![1u32; size + 1];
    coeffs[0] = 0;
    let primes = prime_table(size);
    let mut cache = ShapeCache::new(modulus);

    for p in (2..=size).filter(|&i| primes[i]) {
        let shape = cache.shape(p as u64);
        let mut local = vec![1u32];
        let mut pk = p;
        while pk <= size {
            let r = local.len() as u64;
            let value = shape
                .prime_power_coefficient(r)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or(Error::Overflow(pk as u64))?;
            local.push(value);
            pk = match pk.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        for j in (p..=size).step_by(p) {
            let mut r = 1;
            let mut q = j / p;
            while q % p == 0 {
                q /= p;
                r += 1;
            }
            let factor = local[r];
            if factor != 1 {
                coeffs[j] = coeffs[j]
                    .checked_mul(factor)
                    .ok_or(Error::Overflow(j as u64))?;
            }
        }
    }

    Ok(CoefficientSeries {
        modulus,
        limit,
        coeffs,
        interpretation: Interpretation::of(modulus),
    })
}

pub fn partial_sum(modulus: Modulus, x: u64) -> Result<PartialSum> {
    let series = coefficients_up_to(modulus, x)?;
    Ok(PartialSum {
        x,
        value: series.partial_sum(x),
    })
}

/// The admissible colour numbers `k <= limit`, i.e. those with `a_n(k) > 0`.
pub fn admissible_counts(modulus: Modulus, limit: u64) -> Result<Vec<u64>> {
    Ok(coefficients_up_to(modulus, limit)?
        .nonzero()
        .map(|(k, _)| k)
        .collect())
}

/// Smallest series (by doubling the limit) that holds at least `terms`
/// nonzero coefficients beyond `a(1)`.
pub fn series_with_terms(modulus: Modulus, terms: usize) -> Result<CoefficientSeries> {
    let mut limit = 1024u64;
    loop {
        let series = coefficients_up_to(modulus, limit)?;
        if series.nonzero().count() > terms || limit == MAX_SIEVE_LIMIT {
            return Ok(series);
        }
        limit = (limit * 4).min(MAX_SIEVE_LIMIT);
    }
}

/// `1 + a/k^s + ...` with the first `terms` nonzero coefficients after `a(1)`.
///
/// Series that only count ideals carry a trailing `[ideal counts]` marker.
pub fn format_series(series: &CoefficientSeries, terms: usize) -> String {
    let mut out = String::from("1");
    for (k, a) in series.nonzero().skip(1).take(terms) {
        let _ = write!(out, " + {a}/{k}^s");
    }
    if series.interpretation == Interpretation::IdealCounts {
        out.push_str(" [ideal counts]");
    }
    out
}

/// Whether the nonzero support below `limit` is closed under products of
/// coprime members (the semigroup property of multiplicative functions).
pub fn is_multiplicatively_closed(support: &[u64], limit: u64) -> bool {
    let set: std::collections::HashSet<u64> = support.iter().copied().collect();
    support.iter().all(|&a| {
        support
            .iter()
            .take_while(|&&b| a.saturating_mul(b) <= limit)
            .all(|&b| gcd(a, b) != 1 || set.contains(&(a * b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn direct_coefficients() {
        assert_eq!(coefficient_at(m(3), 7), Ok(2));
        assert_eq!(coefficient_at(m(5), 121), Ok(10));
        assert_eq!(coefficient_at(m(5), 2), Ok(0));
        assert_eq!(coefficient_at(m(11), 529), Ok(55));
        assert!(coefficient_at(m(5), 0).is_err());
        assert!(matches!(
            coefficient_at(m(5), MAX_DIRECT_K + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn sieve_small_rows() {
        let nz = |n, k| {
            coefficients_up_to(m(n), k)
                .unwrap()
                .nonzero()
                .collect::<Vec<_>>()
        };
        assert_eq!(nz(11, 30), vec![(1, 1), (11, 1), (23, 10)]);
        assert_eq!(
            nz(4, 10),
            vec![(1, 1), (2, 1), (4, 1), (5, 2), (8, 1), (9, 1), (10, 2)]
        );
        assert_eq!(nz(7, 1), vec![(1, 1)]);
        assert!(coefficients_up_to(m(7), 0).is_err());
        assert!(matches!(
            coefficients_up_to(m(7), MAX_SIEVE_LIMIT + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn partial_sums() {
        // n = 3 terms up to 9: k = 1, 3, 4, 7, 9 with a(7) = 2
        assert_eq!(partial_sum(m(3), 9).unwrap().value, 6);
        assert_eq!(partial_sum(m(5), 4).unwrap().value, 1);
        assert_eq!(partial_sum(m(40), 1).unwrap().value, 1);
        let s = coefficients_up_to(m(8), 100).unwrap();
        assert_eq!(
            s.partial_sums(&[100, 1, 10]),
            vec![s.partial_sum(100), 1, s.partial_sum(10)]
        );
    }

    #[test]
    fn admissible() {
        assert_eq!(
            admissible_counts(m(5), 32).unwrap(),
            vec![1, 5, 11, 16, 25, 31]
        );
        assert_eq!(admissible_counts(m(12), 17).unwrap(), vec![1, 4, 9, 13, 16]);
        assert_eq!(admissible_counts(m(3), 2).unwrap(), vec![1]);
    }

    #[test]
    fn formatting() {
        let s = series_with_terms(m(27), 5).unwrap();
        assert_eq!(
            format_series(&s, 5),
            "1 + 1/3^s + 1/9^s + 1/27^s + 1/81^s + 18/109^s"
        );
        let s = series_with_terms(m(35), 1).unwrap();
        assert_eq!(format_series(&s, 1), "1 + 24/71^s");
        let s = coefficients_up_to(m(4), 10).unwrap();
        assert_eq!(format_series(&s, 2), "1 + 1/2^s + 1/4^s");
        let s = coefficients_up_to(m(23), 100).unwrap();
        assert!(format_series(&s, 1).ends_with("[ideal counts]"));
    }
}
