//! Property suites, runnable on their own with `cargo test --test properties`.
mod common;

#[test]
fn orthogonality() {
    common::orthogonality().unwrap();
}

#[test]
fn gauss_sum_norm() {
    common::gauss_sum_norm().unwrap();
}

#[test]
fn multiplicativity_fuzz() {
    common::multiplicativity_fuzz().unwrap();
}

#[test]
fn prime_power_law() {
    common::prime_power_law().unwrap();
}

#[test]
fn semigroup_closure() {
    common::semigroup_closure().unwrap();
}

#[test]
fn sieve_direct_agreement() {
    common::sieve_direct_agreement().unwrap();
}

#[test]
fn galois_generators() {
    common::galois_generators().unwrap();
}

#[test]
fn character_multiplicativity() {
    common::character_multiplicativity().unwrap();
}

#[test]
fn conductor_period() {
    common::conductor_period().unwrap();
}

#[test]
fn unramified_shape_by_class() {
    common::unramified_shape_by_class().unwrap();
}

#[test]
fn oracle_basis_invariance() {
    common::oracle_basis_invariance().unwrap();
}

#[test]
fn total_sublattice_count() {
    common::total_sublattice_count().unwrap();
}
