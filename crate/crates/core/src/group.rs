//! The unit group `(Z/nZ)^*`: generators, discrete logarithms and
//! isomorphism type.
//!
//! Generators are chosen per prime-power component of `n`. For an odd prime
//! power the component is cyclic and generated by its smallest primitive
//! root; for `2^t` it is generated by `-1` and (when `t >= 3`) by `5`. Each
//! local generator is lifted by the Chinese remainder theorem to the residue
//! mod `n` that is `1` on every other component.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{factorize, gcd, lcm, mul_mod, pow_mod, totient};
use crate::error::{Error, Result};

/// The `n` for which `Z[xi_n]` is a principal ideal domain, with
/// `n = 2 mod 4` omitted.
pub const CLASS_NUMBER_ONE: [u64; 29] = [
    3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24, 25, 27, 28, 32, 33, 35, 36, 40, 44,
    45, 48, 60, 84,
];

/// Largest modulus accepted by [`Modulus::new`].
pub const MAX_MODULUS: u64 = 1_000_000;

/// A validated cyclotomic index `n >= 3` with `n != 2 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    n: u64,
    class_number_one: bool,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidModulus {
                n,
                reason: "n must be at least 3".into(),
            });
        }
        if n % 4 == 2 {
            return Err(Error::RedundantModulus { n, half: n / 2 });
        }
        if n > MAX_MODULUS {
            return Err(Error::Capacity {
                what: "modulus",
                value: n,
                limit: MAX_MODULUS,
            });
        }
        Ok(Modulus {
            n,
            class_number_one: CLASS_NUMBER_ONE.contains(&n),
        })
    }

    /// All 29 class-number-one moduli in ascending order.
    pub fn class_number_one_list() -> impl Iterator<Item = Modulus> {
        CLASS_NUMBER_ONE.iter().map(|&n| Modulus {
            n,
            class_number_one: true,
        })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.n
    }

    pub fn class_number_one(self) -> bool {
        self.class_number_one
    }

    pub fn totient(self) -> u64 {
        totient(self.n)
    }

    /// Order `N(n)` of the rotation symmetry of `Z[xi_n]`.
    pub fn symmetry_order(self) -> u64 {
        symmetry_order(self)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// `n` for even `n`, `2n` for odd `n`.
pub fn symmetry_order(m: Modulus) -> u64 {
    if m.n % 2 == 0 {
        m.n
    } else {
        2 * m.n
    }
}

/// Smallest `l >= 1` with `k^l = 1 (mod n)`.
pub fn multiplicative_order(k: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidModulus {
            n,
            reason: "modulus must be positive".into(),
        });
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd(k % n, n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let mut order = totient(n);
    for (q, _) in factorize(order)? {
        while order % q == 0 && pow_mod(k, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// A cyclic factor of the unit group together with its chosen generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    /// Residue mod `n`.
    pub residue: u64,
    pub order: u64,
}

/// The part of `(Z/nZ)^*` living on one prime power `p^t || n`.
#[derive(Debug, Clone)]
pub struct Component {
    pub prime: u64,
    pub exponent: u32,
    pub prime_power: u64,
    /// Indices into [`UnitGroup::generators`].
    pub generators: std::ops::Range<usize>,
    /// Generator residues mod `prime_power`.
    local: Vec<u64>,
    /// Row-major `prime_power x generators.len()`; `u32::MAX` marks non-units.
    table: Vec<u32>,
    /// CRT idempotent: `1 (mod p^t)`, `0 (mod n / p^t)`.
    idempotent: u64,
}

impl Component {
    fn new(prime: u64, exponent: u32, first: usize) -> (Self, Vec<u64>) {
        let q = prime.pow(exponent);
        let (local, orders): (Vec<u64>, Vec<u64>) = if prime == 2 {
            match exponent {
                1 => (vec![], vec![]),
                2 => (vec![3], vec![2]),
                _ => (vec![q - 1, 5], vec![2, q / 4]),
            }
        } else {
            let phi = (prime - 1) * q / prime;
            let g = (2..q)
                .find(|&g| g % prime != 0 && multiplicative_order(g, q) == Ok(phi))
                .expect("odd prime powers have primitive roots");
            (vec![g], vec![phi])
        };

        let width = local.len().max(1);
        let mut table = vec![u32::MAX; q as usize * width];
        if local.is_empty() {
            table[1] = 0;
        } else {
            let mut exps = vec![0u64; local.len()];
            loop {
                let x = local
                    .iter()
                    .zip(&exps)
                    .fold(1 % q, |acc, (&g, &e)| mul_mod(acc, pow_mod(g, e, q), q));
                for (j, &e) in exps.iter().enumerate() {
                    table[x as usize * width + j] = e as u32;
                }
                // odometer over the exponent box
                let mut j = 0;
                while j < exps.len() {
                    exps[j] += 1;
                    if exps[j] < orders[j] {
                        break;
                    }
                    exps[j] = 0;
                    j += 1;
                }
                if j == exps.len() {
                    break;
                }
            }
        }
        let n_gens = local.len();
        (
            Component {
                prime,
                exponent,
                prime_power: q,
                generators: first..first + n_gens,
                local,
                table,
                idempotent: 0,
            },
            orders,
        )
    }

    /// Exponents of `x mod p^t` with respect to this component's generators.
    fn dlog_into(&self, x: u64, out: &mut [u64]) -> bool {
        let width = self.local.len().max(1);
        let row = (x % self.prime_power) as usize * width;
        if self.table[row] == u32::MAX {
            return false;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = self.table[row + j] as u64;
        }
        true
    }
}

/// `(Z/nZ)^*` with a fixed generating set and a complete discrete-log map.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: Modulus,
    generators: Vec<Generator>,
    components: Vec<Component>,
}

pub fn build_unit_group(modulus: Modulus) -> UnitGroup {
    UnitGroup::new(modulus)
}

impl UnitGroup {
    pub fn new(modulus: Modulus) -> Self {
        let n = modulus.get();
        let mut generators = Vec::new();
        let mut components = Vec::new();
        for (p, e) in factorize(n).expect("modulus within envelope") {
            let (mut comp, orders) = Component::new(p, e, generators.len());
            let q = comp.prime_power;
            let rest = n / q;
            comp.idempotent = if rest == 1 {
                1 % n
            } else {
                rest * mod_inverse(rest % q, q) % n
            };
            for (&g, &order) in comp.local.iter().zip(&orders) {
                // u = g (mod q), u = 1 (mod n/q)
                let residue = if rest == 1 {
                    g
                } else {
                    let t = mul_mod((g + q - 1) % q, mod_inverse(rest % q, q), q);
                    1 + rest * t
                };
                generators.push(Generator { residue, order });
            }
            components.push(comp);
        }
        UnitGroup {
            modulus,
            generators,
            components,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> u64 {
        self.generators.iter().map(|g| g.order).product()
    }

    /// Least common multiple of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.generators.iter().fold(1, |acc, g| lcm(acc, g.order))
    }

    /// Exponent vector of `u` with respect to [`generators`](Self::generators),
    /// or `None` when `u` is not a unit.
    pub fn dlog(&self, u: u64) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.generators.len()];
        for comp in &self.components {
            if !comp.dlog_into(u, &mut out[comp.generators.clone()]) {
                return None;
            }
        }
        Some(out)
    }

    /// `prod g_j^{e_j} mod n`.
    pub fn compose(&self, exponents: &[u64]) -> u64 {
        let n = self.modulus.get();
        self.generators
            .iter()
            .zip(exponents)
            .fold(1 % n, |acc, (g, &e)| {
                mul_mod(acc, pow_mod(g.residue, e, n), n)
            })
    }

    /// The residue mod `n` congruent to `parts[i]` modulo the `i`-th
    /// component's prime power.
    pub fn crt_combine(&self, parts: &[u64]) -> u64 {
        let n = self.modulus.get();
        self.components.iter().zip(parts).fold(0, |acc, (c, &x)| {
            (acc + mul_mod(x % c.prime_power, c.idempotent, n)) % n
        })
    }

    /// Invariant factors of the group, non-increasing, e.g. `[6, 2, 2]`.
    pub fn isomorphism_type(&self) -> Vec<u64> {
        invariant_factors(self.generators.iter().map(|g| g.order))
    }

    /// Whether `residues` generate all of `(Z/nZ)^*`.
    pub fn is_generated_by(&self, residues: &[u64]) -> bool {
        let n = self.modulus.get();
        if residues.iter().any(|&r| gcd(r % n, n) != 1) {
            return false;
        }
        let mut seen = HashSet::from([1 % n]);
        let mut frontier = vec![1 % n];
        while let Some(x) = frontier.pop() {
            for &r in residues {
                let y = mul_mod(x, r, n);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.len() as u64 == self.order()
    }

    pub fn multiplicative_order(&self, k: u64) -> Result<u64> {
        multiplicative_order(k, self.modulus.get())
    }

    /// The units `1 <= u < n` in ascending order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        let n = self.modulus.get();
        (1..n).filter(move |&u| gcd(u, n) == 1)
    }
}

/// Convert a list of cyclic orders into invariant-factor form.
pub fn invariant_factors(orders: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for d in orders {
        for (p, e) in factorize(d).expect("small group order") {
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, powers)) => powers.push(p.pow(e)),
                None => by_prime.push((p, vec![p.pow(e)])),
            }
        }
    }
    let width = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for (_, mut powers) in by_prime {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, pk) in factors.iter_mut().zip(powers) {
            *slot *= pk;
        }
    }
    factors
}
