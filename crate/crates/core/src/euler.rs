//! Euler factor shapes `(1 - p^{-l s})^{-m}` of the Dedekind zeta function
//! of `Q(xi_n)`.
//!
//! Two independent routes are provided: reading `(l, m)` off the multiset of
//! character values `chi(p)`, and the classical rule via the multiplicative
//! order of `p` modulo the `p`-free part of `n`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{gcd, is_prime, p_free_part, prime_divisors, totient};
use crate::characters::{all_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::group::{multiplicative_order, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EulerShape {
    pub p: u64,
    /// Residue class degree.
    pub ell: u64,
    /// Number of prime ideals above `p`.
    pub m: u64,
}

impl EulerShape {
    /// Local factor `a(p^r)`: `C(r/l + m - 1, m - 1)` when `l | r`, else `0`.
    pub fn prime_power_coefficient(&self, r: u64) -> Option<u64> {
        if r % self.ell != 0 {
            return Some(0);
        }
        crate::arith::binomial(r / self.ell + self.m - 1, self.m - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasicIndex {
    /// Residue class mod `n`.
    pub residue: u64,
    pub ell: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RamifiedRow {
    pub p: u64,
    /// `p`-free part of `n`.
    pub r: u64,
    pub phi_r: u64,
    pub ell: u64,
    pub m: u64,
}

/// `(l, m)` from the values `chi(k)` over the given character set.
///
/// The nonzero values must form `m` copies of the full group of `l`-th roots
/// of unity; anything else is reported as an inconsistency. Works for any
/// `k >= 1`, which is how the footer of a character table is produced.
pub fn shape_from_characters(chars: &[DirichletCharacter], k: u64) -> Result<(u64, u64)> {
    let mut counts: HashMap<(u64, u64), u64> = HashMap::new();
    let mut total = 0u64;
    let mut ell = 1u64;
    for chi in chars {
        if let Some(v) = chi.value_at(k) {
            let key = v.reduced();
            *counts.entry(key).or_default() += 1;
            total += 1;
            ell = ell.max(key.1);
        }
    }
    if total == 0 || total % ell != 0 {
        return Err(Error::Inconsistent(format!(
            "{total} nonzero character values at {k} cannot split into full sets of {ell}-th roots"
        )));
    }
    let m = total / ell;
    for a in 0..ell {
        let g = gcd(a, ell);
        let key = (a / g, ell / g);
        let seen = counts.get(&key).copied().unwrap_or(0);
        if seen != m {
            return Err(Error::Inconsistent(format!(
                "root e({}/{}) occurs {seen} times at k = {k}, expected {m}",
                key.0, key.1
            )));
        }
    }
    Ok((ell, m))
}

pub fn shape_via_characters(modulus: Modulus, p: u64) -> Result<EulerShape> {
    let chars = all_characters(modulus);
    shape_with_characters(&chars, p)
}

/// [`shape_via_characters`] with a precomputed character set.
pub fn shape_with_characters(chars: &[DirichletCharacter], p: u64) -> Result<EulerShape> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (ell, m) = shape_from_characters(chars, p)?;
    Ok(EulerShape { p, ell, m })
}

pub fn shape_via_order(modulus: Modulus, p: u64) -> Result<EulerShape> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(shape_by_order(modulus.get(), p))
}

/// Order rule for any `n >= 1` and prime `p` (unchecked).
pub(crate) fn shape_by_order(n: u64, p: u64) -> EulerShape {
    let r = if n % p == 0 { p_free_part(n, p) } else { n };
    let ell = multiplicative_order(p, r).expect("p is a unit mod its p-free part");
    EulerShape {
        p,
        ell,
        m: totient(r) / ell,
    }
}

pub fn basic_index_table(modulus: Modulus) -> Vec<BasicIndex> {
    let n = modulus.get();
    (1..n)
        .filter(|&k| gcd(k, n) == 1)
        .map(|k| BasicIndex {
            residue: k,
            ell: multiplicative_order(k, n).expect("k is a unit"),
        })
        .collect()
}

/// One row per prime divisor of `n`.
pub fn ramified_table(modulus: Modulus) -> Vec<RamifiedRow> {
    let n = modulus.get();
    prime_divisors(n)
        .into_iter()
        .map(|p| {
            let s = shape_by_order(n, p);
            let r = p_free_part(n, p);
            RamifiedRow {
                p,
                r,
                phi_r: totient(r),
                ell: s.ell,
                m: s.m,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn character_route_n20() {
        let chars = all_characters(m(20));
        assert_eq!(
            shape_with_characters(&chars, 3).unwrap(),
            EulerShape { p: 3, ell: 4, m: 2 }
        );
        assert_eq!(
            shape_with_characters(&chars, 23).unwrap(),
            EulerShape {
                p: 23,
                ell: 4,
                m: 2
            }
        );
        assert_eq!(
            shape_with_characters(&chars, 5).unwrap(),
            EulerShape { p: 5, ell: 1, m: 2 }
        );
        assert_eq!(
            shape_with_characters(&chars, 2).unwrap(),
            EulerShape { p: 2, ell: 4, m: 1 }
        );
        assert_eq!(shape_from_characters(&chars, 9).unwrap(), (2, 4));
        assert_eq!(shape_from_characters(&chars, 1).unwrap(), (1, 8));
    }

    #[test]
    fn order_route_ramified() {
        assert_eq!(
            shape_via_order(m(12), 2).unwrap(),
            EulerShape { p: 2, ell: 2, m: 1 }
        );
        assert_eq!(
            shape_via_order(m(60), 5).unwrap(),
            EulerShape { p: 5, ell: 2, m: 2 }
        );
        assert_eq!(
            shape_via_order(m(7), 7).unwrap(),
            EulerShape { p: 7, ell: 1, m: 1 }
        );
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(shape_via_order(m(7), 9), Err(Error::NotPrime(9)));
        assert_eq!(shape_via_characters(m(7), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn basic_indices() {
        let t = |n| {
            basic_index_table(m(n))
                .into_iter()
                .map(|b| (b.residue, b.ell))
                .collect::<Vec<_>>()
        };
        assert_eq!(t(5), vec![(1, 1), (2, 4), (3, 4), (4, 2)]);
        assert_eq!(t(3), vec![(1, 1), (2, 2)]);
        assert!(t(24).iter().skip(1).all(|&(_, l)| l == 2));
    }

    #[test]
    fn ramified_rows() {
        let rows = ramified_table(m(84));
        let got: Vec<_> = rows
            .iter()
            .map(|r| (r.p, r.r, r.phi_r, r.ell, r.m))
            .collect();
        assert_eq!(
            got,
            vec![(2, 21, 12, 6, 2), (3, 28, 12, 6, 2), (7, 12, 4, 2, 2)]
        );
    }

    #[test]
    fn nonvanishing_count_is_ell_times_m() {
        let chars = all_characters(m(60));
        for p in crate::arith::primes_up_to(200) {
            let s = shape_with_characters(&chars, p).unwrap();
            let nonzero = chars.iter().filter(|c| c.value_at(p).is_some()).count() as u64;
            assert_eq!(s.ell * s.m, nonzero);
            if 60 % p != 0 {
                assert_eq!(nonzero, 16);
            } else {
                assert!(nonzero < 16 && 16 % nonzero == 0);
            }
        }
    }
}
