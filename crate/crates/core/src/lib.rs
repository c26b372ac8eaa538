//! Counting Bravais colourings of the planar cyclotomic modules `Z[xi_n]`.
//!
//! For the 29 class-number-one indices `n`, the number `a_n(k)` of colourings
//! with `k` colours equals the number of ideals of norm `k` in `Z[xi_n]`,
//! i.e. the `k`-th coefficient of the Dedekind zeta function of `Q(xi_n)`.
//! The crate builds that function from Dirichlet characters of `(Z/nZ)^*`,
//! evaluates its residue at `s = 1`, and checks everything against an
//! independent sublattice enumeration.

pub mod arith;
pub mod characters;
pub mod error;
pub mod euler;
pub mod golden;
pub mod group;
pub mod lvalues;
pub mod oracle;
pub mod series;

pub use characters::{all_characters, DirichletCharacter, Parity, RootOfUnity};
pub use error::{Error, Result};
pub use euler::{EulerShape, RamifiedRow};
pub use group::{Modulus, UnitGroup, CLASS_NUMBER_ONE};
pub use lvalues::ResidueReport;
pub use series::{CoefficientSeries, Interpretation, PartialSum};
