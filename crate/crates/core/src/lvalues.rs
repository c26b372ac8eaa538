//! `L(1, chi)`, the residue `alpha_n` of the Dedekind zeta function at
//! `s = 1`, and the regulator recovered from it.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{prime_divisors, totient};
use crate::characters::{all_characters, DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::group::Modulus;
use crate::series::coefficients_up_to;

/// Largest tolerated imaginary part of the product of the `L(1, chi)`.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

pub const MIN_DIRECT_PERIODS: u64 = 1_000;

/// Largest `n` accepted by [`residue`]; the work grows like `phi(n) * n`.
pub const MAX_RESIDUE_MODULUS: u64 = 10_000;

/// `sum_{a=1}^{f} chi(a) exp(2 pi i a / f)` over the conductor `f`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let f = chi.conductor();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=f {
        if let Some(v) = chi.value_at(a) {
            acc += v.to_complex() * Complex64::from_polar(1.0, TAU * a as f64 / f as f64);
        }
    }
    acc
}

/// Closed-form `L(1, chi)` for a non-trivial primitive character.
///
/// Odd: `L = i pi tau(chi) / f * B_{1, conj chi}` with
/// `B_{1, psi} = (1/f) sum_a psi(a) a`.
/// Even: `L = -(tau(chi) / f) sum_{a=1}^{f-1} conj chi(a) ln|1 - zeta_f^a|`.
pub fn l_at_one(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let f = chi.conductor();
    let ff = f as f64;
    let tau = gauss_sum(chi);
    let conj = |a: u64| chi.value_at(a).map(|v| v.conj().to_complex());
    let value = match chi.parity() {
        Parity::Odd => {
            let mut b1 = Complex64::new(0.0, 0.0);
            for a in 1..=f {
                if let Some(v) = conj(a) {
                    b1 += v * a as f64;
                }
            }
            b1 /= ff;
            Complex64::new(0.0, PI) * tau / ff * b1
        }
        Parity::Even => {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 1..f {
                if let Some(v) = conj(a) {
                    // |1 - e^{2 pi i a/f}| = 2 sin(pi a / f)
                    acc += v * (2.0 * (PI * a as f64 / ff).sin()).ln();
                }
            }
            -(tau / ff) * acc
        }
    };
    Ok(value)
}

/// `L(1, chi)` by summing the series over `periods` full periods of the
/// conductor, averaging the partial sums over one extra period.
///
/// The error is far below `1e-4` at `10^5` periods.
pub fn l_at_one_direct(chi: &DirichletCharacter, periods: u64) -> Result<Complex64> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if periods < MIN_DIRECT_PERIODS {
        return Err(Error::Unsupported(format!(
            "direct summation needs at least {MIN_DIRECT_PERIODS} periods"
        )));
    }
    let f = chi.conductor();
    let table: Vec<Complex64> = (0..f)
        .map(|a| chi.value_complex(if a == 0 { f } else { a }))
        .collect();
    let n = periods * f;
    let mut partial = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        partial += table[(k % f) as usize] / k as f64;
    }
    let mut averaged = partial;
    for k in n + 1..n + f {
        partial += table[(k % f) as usize] / k as f64;
        averaged += partial;
    }
    Ok(averaged / f as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LFactor {
    pub label: Vec<u64>,
    pub conductor: u64,
    pub parity: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueReport {
    pub n: u64,
    pub phi: u64,
    pub symmetry_order: u64,
    /// `L(1, chi)` for every non-trivial character, in label order.
    pub factors: Vec<LFactor>,
    pub alpha: f64,
    /// Imaginary part left over in the product; rounding noise only.
    pub alpha_imag: f64,
    /// `prod_{p | n} p^{1/(p-1)}`.
    pub ramified_product: f64,
    pub regulator: f64,
}

impl ResidueReport {
    /// `(2 pi prod p^{1/(p-1)} / n)^{phi/2} / N(n)`, so that
    /// `alpha = regulator * scale`.
    pub fn scale(&self) -> f64 {
        regulator_scale(self.n, self.phi, self.symmetry_order, self.ramified_product)
    }
}

fn regulator_scale(n: u64, phi: u64, symmetry_order: u64, ramified_product: f64) -> f64 {
    (TAU * ramified_product / n as f64).powf(phi as f64 / 2.0) / symmetry_order as f64
}

pub fn ramified_product(n: u64) -> f64 {
    prime_divisors(n)
        .into_iter()
        .map(|p| (p as f64).powf(1.0 / (p - 1) as f64))
        .product()
}

/// `alpha_n = prod_{chi != 1} L(1, chi)` and the regulator it implies.
pub fn residue(modulus: Modulus) -> Result<ResidueReport> {
    let n = modulus.get();
    if n > MAX_RESIDUE_MODULUS {
        return Err(Error::Capacity {
            what: "modulus",
            value: n,
            limit: MAX_RESIDUE_MODULUS,
        });
    }
    let mut product = Complex64::new(1.0, 0.0);
    let mut factors = Vec::new();
    for chi in all_characters(modulus).iter().filter(|c| !c.is_trivial()) {
        let l = l_at_one(chi)?;
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Err(Error::Inconsistent(format!(
                "non-finite L(1, chi) for {}",
                chi.label_string()
            )));
        }
        product *= l;
        factors.push(LFactor {
            label: chi.label().to_vec(),
            conductor: chi.conductor(),
            parity: chi.parity().to_string(),
            re: l.re,
            im: l.im,
        });
    }
    if product.im.abs() > IMAGINARY_TOLERANCE || product.re <= 0.0 {
        return Err(Error::Inconsistent(format!(
            "product of L-values is not a positive real: {product}"
        )));
    }
    let phi = totient(n);
    let symmetry_order = modulus.symmetry_order();
    let ramified = ramified_product(n);
    let regulator = product.re / regulator_scale(n, phi, symmetry_order, ramified);
    Ok(ResidueReport {
        n,
        phi,
        symmetry_order,
        factors,
        alpha: product.re,
        alpha_imag: product.im,
        ramified_product: ramified,
        regulator,
    })
}

/// `A_n(x) / x`.
pub fn empirical_rate(modulus: Modulus, x: u64) -> Result<f64> {
    Ok(empirical_rates(modulus, &[x])?[0])
}

/// `A_n(x) / x` for several `x`, from a single sieve up to the largest.
pub fn empirical_rates(modulus: Modulus, xs: &[u64]) -> Result<Vec<f64>> {
    let max = xs.iter().copied().max().unwrap_or(1);
    let series = coefficients_up_to(modulus, max)?;
    Ok(series
        .partial_sums(xs)
        .into_iter()
        .zip(xs)
        .map(|(a, &x)| a as f64 / x as f64)
        .collect())
}
