//! Property checks shared by the `properties` and `acceptance` targets.
//! Every check runs with a fixed seed so failures reproduce.
#![allow(dead_code)]

use std::sync::Arc;

use cyclozeta::arith::{binomial, divisors, gcd, primes_up_to, totient};
use cyclozeta::characters::characters_of;
use cyclozeta::euler::{shape_via_order, shape_with_characters};
use cyclozeta::lvalues::gauss_sum;
use cyclozeta::oracle::{
    count_all_sublattices, count_invariant_sublattices_for, CyclotomicAction, IntMatrix,
    OracleConfig,
};
use cyclozeta::series::{
    admissible_counts, coefficient_at, coefficients_up_to, is_multiplicatively_closed,
};
use cyclozeta::{all_characters, Modulus, UnitGroup, CLASS_NUMBER_ONE};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = fn() -> Result<String, String>;

/// Every property check, in the order they are reported.
pub const CHECKS: &[(&str, Check)] = &[
    ("orthogonality", orthogonality),
    ("gauss-sum-norm", gauss_sum_norm),
    ("multiplicativity-fuzz", multiplicativity_fuzz),
    ("prime-power-law", prime_power_law),
    ("semigroup-closure", semigroup_closure),
    ("sieve-direct-agreement", sieve_direct_agreement),
    ("galois-generators", galois_generators),
    ("character-multiplicativity", character_multiplicativity),
    ("conductor-period", conductor_period),
    ("unramified-shape-by-class", unramified_shape_by_class),
    ("oracle-basis-invariance", oracle_basis_invariance),
    ("total-sublattice-count", total_sublattice_count),
];

fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            max_global_rejects: 100_000,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &bytes),
    )
}

fn run<S: Strategy>(
    seed: u64,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    runner(seed, cases)
        .run(&strategy, test)
        .map(|()| format!("{cases} cases"))
        .map_err(|e| e.to_string())
}

fn modulus(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

fn any_n() -> impl Strategy<Value = u64> {
    (0..CLASS_NUMBER_ONE.len()).prop_map(|i| CLASS_NUMBER_ONE[i])
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Row and column orthogonality of the character table.
pub fn orthogonality() -> Result<String, String> {
    run(
        0x0c7a,
        200,
        (any_n(), 0usize..1000, 0usize..1000, 1u64..1000, 1u64..1000),
        |(n, i, j, a, b)| {
            let chars = all_characters(modulus(n));
            let phi = chars.len();
            let (x, y) = (&chars[i % phi], &chars[j % phi]);
            let row: Complex64 = (1..n)
                .filter(|&u| gcd(u, n) == 1)
                .map(|u| x.value_on_unit(u).to_complex() * y.value_on_unit(u).to_complex().conj())
                .sum();
            let expect = if i % phi == j % phi { phi as f64 } else { 0.0 };
            prop_assert!(
                close(row, Complex64::new(expect, 0.0), 1e-9),
                "n={} rows {} {}: {}",
                n,
                i % phi,
                j % phi,
                row
            );

            let (a, b) = (a % n, b % n);
            if gcd(a, n) == 1 && gcd(b, n) == 1 {
                // full characters mod n: use the value on units, not the primitive lift
                let col: Complex64 = chars
                    .iter()
                    .map(|c| {
                        c.value_on_unit(a).to_complex() * c.value_on_unit(b).to_complex().conj()
                    })
                    .sum();
                let expect = if a == b { phi as f64 } else { 0.0 };
                prop_assert!(
                    close(col, Complex64::new(expect, 0.0), 1e-9),
                    "n={} cols {} {}: {}",
                    n,
                    a,
                    b,
                    col
                );
            }
            Ok(())
        },
    )
}

/// `|tau(chi)|^2 = f` for every character of every listed `n`.
pub fn gauss_sum_norm() -> Result<String, String> {
    let mut count = 0;
    for n in CLASS_NUMBER_ONE {
        for chi in all_characters(modulus(n)) {
            let t = gauss_sum(&chi);
            let f = chi.conductor() as f64;
            if (t.norm_sqr() - f).abs() > 1e-10 * f.max(1.0) {
                return Err(format!(
                    "n={n} {}: |tau|^2 = {}, f = {f}",
                    chi.label_string(),
                    t.norm_sqr()
                ));
            }
            count += 1;
        }
    }
    Ok(format!("{count} characters"))
}

/// `a(jk) = a(j) a(k)` for coprime `j, k` up to `10^12`.
pub fn multiplicativity_fuzz() -> Result<String, String> {
    run(
        0x5eed,
        2000,
        (any_n(), 1u64..1_000_000, 1u64..1_000_000),
        |(n, j, k)| {
            prop_assume!(gcd(j, k) == 1);
            let m = modulus(n);
            let lhs = coefficient_at(m, j * k).unwrap();
            let rhs = coefficient_at(m, j).unwrap() * coefficient_at(m, k).unwrap();
            prop_assert_eq!(lhs, rhs, "n={} j={} k={}", n, j, k);
            Ok(())
        },
    )
}

/// `a(p^r) = C(r/l + m - 1, m - 1)` when `l | r`, else `0`, with `(l, m)`
/// read off the character values.
pub fn prime_power_law() -> Result<String, String> {
    let primes = primes_up_to(1000);
    run(
        0x9091,
        400,
        (any_n(), 0..primes.len(), 1u32..=8),
        |(n, i, r)| {
            let p = primes[i];
            let m = modulus(n);
            let shape = shape_with_characters(&all_characters(m), p).unwrap();
            let Some(pr) = p.checked_pow(r).filter(|&q| q <= 1_000_000_000_000) else {
                return Ok(());
            };
            let r = r as u64;
            let expect = if r % shape.ell == 0 {
                binomial(r / shape.ell + shape.m - 1, shape.m - 1).unwrap()
            } else {
                0
            };
            prop_assert_eq!(
                coefficient_at(m, pr).unwrap(),
                expect,
                "n={} p={} r={}",
                n,
                p,
                r
            );
            Ok(())
        },
    )
}

/// The admissible colour numbers are closed under coprime products and
/// contain every basic index `p^l`.
pub fn semigroup_closure() -> Result<String, String> {
    const LIMIT: u64 = 50_000;
    for n in CLASS_NUMBER_ONE {
        let m = modulus(n);
        let support = admissible_counts(m, LIMIT).map_err(|e| e.to_string())?;
        if !is_multiplicatively_closed(&support, LIMIT) {
            return Err(format!("n={n}: support below {LIMIT} not closed"));
        }
        for p in primes_up_to(LIMIT) {
            let s = shape_via_order(m, p).unwrap();
            if let Some(q) = p.checked_pow(s.ell as u32).filter(|&q| q <= LIMIT) {
                if support.binary_search(&q).is_err() {
                    return Err(format!("n={n}: basic index {q} missing"));
                }
            }
        }
    }
    Ok(format!("29 moduli up to {LIMIT}"))
}

/// The sieve and per-`k` factorization agree on `1..=10^4`.
pub fn sieve_direct_agreement() -> Result<String, String> {
    const K: u64 = 10_000;
    for n in CLASS_NUMBER_ONE {
        let m = modulus(n);
        let series = coefficients_up_to(m, K).map_err(|e| e.to_string())?;
        for k in 1..=K {
            let direct = coefficient_at(m, k).map_err(|e| e.to_string())?;
            if series.get(k) as u64 != direct {
                return Err(format!(
                    "n={n} k={k}: sieve {} direct {direct}",
                    series.get(k)
                ));
            }
        }
    }
    Ok(format!("29 moduli up to {K}"))
}

/// Chosen generators generate, have the stated orders, and discrete logs
/// invert composition.
pub fn galois_generators() -> Result<String, String> {
    for n in CLASS_NUMBER_ONE {
        let g = UnitGroup::new(modulus(n));
        let residues: Vec<u64> = g.generators().iter().map(|x| x.residue).collect();
        if !g.is_generated_by(&residues) || g.order() != totient(n) {
            return Err(format!("n={n}: generators {residues:?} do not generate"));
        }
        for x in g.generators() {
            if g.multiplicative_order(x.residue) != Ok(x.order) {
                return Err(format!(
                    "n={n}: {} does not have order {}",
                    x.residue, x.order
                ));
            }
        }
    }
    run(0x6a10, 500, (any_n(), 1u64..10_000), |(n, u)| {
        let g = UnitGroup::new(modulus(n));
        let u = u % n;
        prop_assume!(gcd(u, n) == 1);
        let e = g.dlog(u).unwrap();
        prop_assert_eq!(g.compose(&e), u);
        Ok(())
    })
}

/// `chi(jk) = chi(j) chi(k)` for all non-negative integers.
pub fn character_multiplicativity() -> Result<String, String> {
    run(
        0xc4a2,
        500,
        (any_n(), 0usize..1000, 0u64..100_000, 0u64..100_000),
        |(n, i, j, k)| {
            let chars = all_characters(modulus(n));
            let chi = &chars[i % chars.len()];
            let lhs = chi.value_at(j * k).map(|v| v.reduced());
            let rhs = match (chi.value_at(j), chi.value_at(k)) {
                (Some(a), Some(b)) => Some((a * b).reduced()),
                _ => None,
            };
            prop_assert_eq!(lhs, rhs, "n={} {} j={} k={}", n, chi.label_string(), j, k);
            Ok(())
        },
    )
}

/// Each primitive character has period `f` and no smaller period.
pub fn conductor_period() -> Result<String, String> {
    for n in CLASS_NUMBER_ONE {
        let group = Arc::new(UnitGroup::new(modulus(n)));
        let units: Vec<u64> = group.units().collect();
        for chi in characters_of(Arc::clone(&group)) {
            let f = chi.conductor();
            if n % f != 0 {
                return Err(format!(
                    "n={n} {}: conductor {f} does not divide n",
                    chi.label_string()
                ));
            }
            // chi(0) = 0 by convention, so periodicity starts at 1
            for k in 1..3 * n {
                if chi.value_at(k) != chi.value_at(k + f) {
                    return Err(format!(
                        "n={n} {}: not {f}-periodic at {k}",
                        chi.label_string()
                    ));
                }
            }
            // a smaller modulus d | f would make chi trivial on units = 1 (mod d)
            for d in divisors(f).into_iter().filter(|&d| d < f) {
                let induced = units
                    .iter()
                    .filter(|&&u| u % d == 1 % d)
                    .all(|&u| chi.value_on_unit(u).is_one());
                if induced {
                    return Err(format!(
                        "n={n} {}: induced from modulus {d} < {f}",
                        chi.label_string()
                    ));
                }
            }
        }
    }
    Ok("29 moduli".into())
}

/// Unramified primes in the same class mod `n` share their Euler shape,
/// whichever route computes it.
pub fn unramified_shape_by_class() -> Result<String, String> {
    let primes = primes_up_to(20_000);
    run(0x0dd5, 300, (any_n(), 0..primes.len()), |(n, i)| {
        let p = primes[i];
        prop_assume!(n % p != 0);
        let m = modulus(n);
        let chars = all_characters(m);
        let Some(&q) = primes[i + 1..].iter().find(|&&q| q % n == p % n) else {
            return Ok(());
        };
        let (sp, sq) = (
            shape_via_order(m, p).unwrap(),
            shape_via_order(m, q).unwrap(),
        );
        prop_assert_eq!((sp.ell, sp.m), (sq.ell, sq.m), "n={} p={} q={}", n, p, q);
        let (cp, cq) = (
            shape_with_characters(&chars, p).unwrap(),
            shape_with_characters(&chars, q).unwrap(),
        );
        prop_assert_eq!((cp.ell, cp.m), (sp.ell, sp.m));
        prop_assert_eq!((cq.ell, cq.m), (sp.ell, sp.m));
        Ok(())
    })
}

fn elementary(dim: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    let mut e = IntMatrix::identity(dim);
    e.set(i, j, c);
    e
}

/// Conjugating the companion matrix by a unimodular `U` leaves the count of
/// invariant sublattices unchanged.
pub fn oracle_basis_invariance() -> Result<String, String> {
    let moduli = [3u64, 4, 5, 8, 12];
    let ops = prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..5);
    run(
        0x0ac1,
        60,
        (0..moduli.len(), 1u64..=30, ops),
        |(idx, k, ops)| {
            let action = CyclotomicAction::new(modulus(moduli[idx]));
            let d = action.degree;
            let mut u = IntMatrix::identity(d);
            let mut u_inv = IntMatrix::identity(d);
            for &(i, j, c) in &ops {
                let (i, j) = (i % d, j % d);
                if i == j {
                    continue;
                }
                u = u.mul(&elementary(d, i, j, c));
                u_inv = elementary(d, i, j, -c).mul(&u_inv);
            }
            prop_assert_eq!(u.mul(&u_inv), IntMatrix::identity(d));
            let conjugated = u_inv.mul(&action.companion).mul(&u);
            let cfg = OracleConfig::default();
            let base = count_invariant_sublattices_for(&action.companion, k, &cfg).unwrap();
            let moved = count_invariant_sublattices_for(&conjugated, k, &cfg).unwrap();
            prop_assert_eq!(base, moved, "n={} k={} ops={:?}", moduli[idx], k, ops);
            Ok(())
        },
    )
}

/// Without the invariance filter, index-`p` sublattices of `Z^d` number
/// `1 + p + ... + p^{d-1}`.
pub fn total_sublattice_count() -> Result<String, String> {
    let mut cases = 0;
    for d in 1..=8usize {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let expect: u64 = (0..d as u32).map(|e| p.pow(e)).sum();
            if expect > 200_000 {
                continue;
            }
            let got = count_all_sublattices(d, p, u64::MAX).map_err(|e| e.to_string())?;
            if got != expect {
                return Err(format!("d={d} p={p}: {got} sublattices, expected {expect}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (d, p) pairs"))
}
