//! Primitive Dirichlet characters attached to `(Z/nZ)^*`.
//!
//! A character is labelled by an exponent tuple `(i_1, ..., i_r)` relative to
//! the generators of [`UnitGroup`]: it sends generator `g_j` (of order `d_j`)
//! to `exp(2 pi i * i_j / d_j)`. Values are exact roots of unity of the common
//! order `e = exponent of the group`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::gcd;
use crate::group::{Modulus, UnitGroup};

/// `exp(2 pi i * num / ord)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    ord: u64,
}

impl RootOfUnity {
    pub fn new(num: u64, ord: u64) -> Self {
        assert!(ord > 0, "root of unity needs a positive order");
        RootOfUnity {
            num: num % ord,
            ord,
        }
    }

    pub fn one(ord: u64) -> Self {
        RootOfUnity { num: 0, ord }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    /// The common denominator this value is expressed over.
    pub fn denominator(self) -> u64 {
        self.ord
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the value itself.
    pub fn order(self) -> u64 {
        self.ord / gcd(self.num, self.ord)
    }

    /// `(a, b)` with `exp(2 pi i a / b)` in lowest terms.
    pub fn reduced(self) -> (u64, u64) {
        let g = gcd(self.num, self.ord);
        (self.num / g, self.ord / g)
    }

    pub fn conj(self) -> Self {
        RootOfUnity::new(self.ord - self.num, self.ord)
    }

    pub fn pow(self, k: u64) -> Self {
        RootOfUnity::new(
            ((self.num as u128 * k as u128) % self.ord as u128) as u64,
            self.ord,
        )
    }

    pub fn to_complex(self) -> Complex64 {
        let (a, b) = self.reduced();
        match (a, b) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, std::f64::consts::TAU * a as f64 / b as f64),
        }
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.ord, rhs.ord, "roots over different denominators");
        RootOfUnity::new(self.num + rhs.num, self.ord)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reduced() {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (a, b) => write!(f, "e({a}/{b})"),
        }
    }
}

/// Render an optional character value, `0` for `None`.
pub fn format_value(v: Option<RootOfUnity>) -> String {
    v.map_or_else(|| "0".to_string(), |r| r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A Dirichlet character mod `n`, extended to the primitive character of
/// conductor `f | n`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    label: Vec<u64>,
    /// Per generator: exponent of `chi(g_j)` over the common order `e`.
    images: Vec<u64>,
    /// Per component: the prime-power part of the conductor.
    local_conductors: Vec<u64>,
    conductor: u64,
    parity: Parity,
}

impl DirichletCharacter {
    /// The character with the given label. Labels are reduced modulo the
    /// generator orders.
    pub fn new(group: Arc<UnitGroup>, label: &[u64]) -> Self {
        assert_eq!(label.len(), group.rank(), "label length must match rank");
        let e = group.exponent();
        let label: Vec<u64> = label
            .iter()
            .zip(group.generators())
            .map(|(&i, g)| i % g.order)
            .collect();
        let images: Vec<u64> = label
            .iter()
            .zip(group.generators())
            .map(|(&i, g)| i * (e / g.order) % e)
            .collect();

        let local_conductors = group
            .components()
            .iter()
            .map(|c| {
                let root = |j: usize| RootOfUnity::new(images[j], e);
                let gens = c.generators.clone();
                if c.prime == 2 {
                    match gens.len() {
                        0 => 1,
                        1 => {
                            if root(gens.start).is_one() {
                                1
                            } else {
                                4
                            }
                        }
                        _ => {
                            let minus_one = root(gens.start);
                            let five = root(gens.start + 1).order();
                            if five > 1 {
                                // kernel of reduction to 2^s is generated by 5^(2^(s-2))
                                4 * five
                            } else if !minus_one.is_one() {
                                4
                            } else {
                                1
                            }
                        }
                    }
                } else {
                    // cyclic: kernel of reduction to p^s has index phi(p^s)
                    let order = root(gens.start).order();
                    let mut pk = 1u64;
                    let mut phi = 1u64;
                    while order > 1 && phi % order != 0 {
                        phi = if pk == 1 { c.prime - 1 } else { phi * c.prime };
                        pk *= c.prime;
                    }
                    pk
                }
            })
            .collect::<Vec<_>>();
        let conductor = local_conductors.iter().product();

        let mut chi = DirichletCharacter {
            group,
            label,
            images,
            local_conductors,
            conductor,
            parity: Parity::Even,
        };
        let n = chi.group.modulus().get();
        chi.parity = if chi.value_on_unit(n - 1).is_one() {
            Parity::Even
        } else {
            Parity::Odd
        };
        chi
    }

    pub fn modulus(&self) -> Modulus {
        self.group.modulus()
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn label(&self) -> &[u64] {
        &self.label
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&a| a == 0)
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        let e = self.group.exponent();
        self.images.iter().fold(1, |acc, &a| {
            crate::arith::lcm(acc, RootOfUnity::new(a, e).order())
        })
    }

    /// The value on a unit `u` mod `n`.
    ///
    /// Panics if `u` is not a unit.
    pub fn value_on_unit(&self, u: u64) -> RootOfUnity {
        let e = self.group.exponent();
        let exps = self.group.dlog(u).expect("argument must be a unit mod n");
        let num = exps
            .iter()
            .zip(&self.images)
            .fold(0u64, |acc, (&x, &a)| (acc + x * a) % e);
        RootOfUnity::new(num, e)
    }

    /// A unit `u` mod `n` with `u = k (mod f)`, built by the Chinese remainder
    /// theorem: `k` on the components dividing the conductor, `1` elsewhere.
    /// Returns `None` when `gcd(k, f) > 1`.
    pub fn lift_to_unit(&self, k: u64) -> Option<u64> {
        if gcd(k, self.conductor) != 1 {
            return None;
        }
        let parts: Vec<u64> = self
            .group
            .components()
            .iter()
            .zip(&self.local_conductors)
            .map(|(c, &fc)| if fc > 1 { k % c.prime_power } else { 1 })
            .collect();
        Some(self.group.crt_combine(&parts))
    }

    /// The primitive character's value at `k`; `None` stands for zero.
    /// `chi(0)` is zero for every character.
    pub fn value_at(&self, k: u64) -> Option<RootOfUnity> {
        if k == 0 || gcd(k, self.conductor) != 1 {
            return None;
        }
        let n = self.group.modulus().get();
        let u = if gcd(k, n) == 1 {
            k % n
        } else {
            self.lift_to_unit(k)?
        };
        Some(self.value_on_unit(u))
    }

    /// Value at an arbitrary integer, negative arguments reduced mod `f`.
    pub fn value_at_signed(&self, k: i64) -> Option<RootOfUnity> {
        if k == 0 {
            return None;
        }
        let f = self.conductor as i64;
        let r = match k.rem_euclid(f) {
            0 => f,
            r => r,
        };
        self.value_at(r as u64)
    }

    /// `chi(k)` for `k = 0..f`.
    pub fn values_mod_f(&self) -> Vec<Option<RootOfUnity>> {
        (0..self.conductor).map(|k| self.value_at(k)).collect()
    }

    pub fn value_complex(&self, k: u64) -> Complex64 {
        self.value_at(k)
            .map_or(Complex64::new(0.0, 0.0), RootOfUnity::to_complex)
    }

    pub fn label_string(&self) -> String {
        let parts: Vec<String> = self.label.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Conductor of a character (smallest period of its primitive extension).
pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

/// See [`DirichletCharacter::value_at`].
pub fn value_at(chi: &DirichletCharacter, k: u64) -> Option<RootOfUnity> {
    chi.value_at(k)
}

/// All `phi(n)` characters, ordered lexicographically by label.
pub fn all_characters(modulus: Modulus) -> Vec<DirichletCharacter> {
    characters_of(Arc::new(UnitGroup::new(modulus)))
}

pub fn characters_of(group: Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    let orders: Vec<u64> = group.generators().iter().map(|g| g.order).collect();
    let mut out = Vec::with_capacity(group.order() as usize);
    let mut label = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::new(Arc::clone(&group), &label));
        // odometer, last coordinate fastest
        let mut j = orders.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            label[j] += 1;
            if label[j] < orders[j] {
                break;
            }
            label[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(n: u64) -> Vec<DirichletCharacter> {
        all_characters(Modulus::new(n).unwrap())
    }

    /// Smallest period of `k -> chi(k)` on `1..=n` (definition of the conductor).
    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let n = chi.modulus().get();
        let group = chi.group();
        crate::arith::divisors(n)
            .into_iter()
            .find(|&f| {
                group
                    .units()
                    .filter(|u| u % f == 1 % f)
                    .all(|u| chi.value_on_unit(u).is_one())
            })
            .unwrap()
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(chars(20).len(), 8);
        assert_eq!(chars(3).len(), 2);
        let labels: Vec<Vec<u64>> = chars(24).iter().map(|c| c.label().to_vec()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
    }

    #[test]
    fn conductors_n20() {
        let mut fs: Vec<u64> = chars(20).iter().map(|c| c.conductor()).collect();
        fs.sort();
        assert_eq!(fs, vec![1, 4, 5, 5, 5, 20, 20, 20]);
    }

    #[test]
    fn conductor_matches_definition() {
        for n in [
            3, 4, 5, 8, 9, 12, 16, 20, 24, 27, 32, 36, 40, 45, 48, 60, 84, 64, 100,
        ] {
            for chi in chars(n) {
                assert_eq!(
                    chi.conductor(),
                    brute_conductor(&chi),
                    "n={n} {}",
                    chi.label_string()
                );
            }
        }
    }

    #[test]
    fn mod5_has_minus_i_at_2() {
        let cs = chars(5);
        assert_eq!(cs.len(), 4);
        assert!(cs
            .iter()
            .any(|c| c.order() == 4 && c.value_at(2).map(|v| v.to_string()) == Some("-i".into())));
    }

    #[test]
    fn value_zero_and_one() {
        for chi in chars(20) {
            assert_eq!(chi.value_at(1).map(|v| v.is_one()), Some(true));
            assert_eq!(chi.value_at(0), None);
        }
    }

    #[test]
    fn lift_is_unit_and_congruent() {
        for chi in chars(60) {
            let n = 60;
            for k in 1..200u64 {
                match chi.lift_to_unit(k) {
                    Some(u) => {
                        assert_eq!(gcd(u, n), 1);
                        assert_eq!(u % chi.conductor(), k % chi.conductor());
                    }
                    None => assert_ne!(gcd(k, chi.conductor()), 1),
                }
            }
        }
    }

    #[test]
    fn parity_is_value_at_minus_one() {
        for chi in chars(84) {
            let f = chi.conductor();
            let v = chi.value_at_signed(-1).unwrap();
            assert_eq!(v.is_one(), chi.parity() == Parity::Even);
            if f > 1 {
                assert_eq!(chi.value_at(f - 1), Some(v));
            }
        }
    }

    #[test]
    fn root_display() {
        assert_eq!(RootOfUnity::new(3, 12).to_string(), "i");
        assert_eq!(RootOfUnity::new(9, 12).to_string(), "-i");
        assert_eq!(RootOfUnity::new(6, 12).to_string(), "-1");
        assert_eq!(RootOfUnity::new(2, 12).to_string(), "e(1/6)");
        assert_eq!(RootOfUnity::new(2, 12).conj(), RootOfUnity::new(10, 12));
    }
}
