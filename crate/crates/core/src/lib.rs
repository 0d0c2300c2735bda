//! Exact multiplicities of simple sl2-modules in `V(1)^{⊗N}` and of indecomposable
//! tilting modules in `T(1)^{⊗N}` over the restricted quantum group at an odd root
//! of unity.
//!
//! Every multiplicity is available from several independent backends so that they
//! can check one another:
//!
//! * [`sl2`]: the classical numbers `t(k, N)` by recurrence, by convolution and by
//!   iterated Clebsch-Gordan decomposition.
//! * [`paths`]: Catalan paths, Dyck paths and partially `l`-bounded paths, both
//!   enumerated and counted.
//! * [`matchings`]: noncrossing perfect matchings and their bijection with Dyck paths.
//! * [`tilting`]: the tilting multiplicities `p(k, N)` by tensor rules, alternating
//!   sums, recurrences, convolutions and bounded paths.
//! * [`spectral`]: the tridiagonal transfer matrix, its closed-form eigenpairs, the
//!   trigonometric formula for `p(k, N)` and its asymptotic envelope.

pub mod error;
pub mod matchings;
pub mod paths;
pub mod plot;
pub mod sl2;
pub mod spectral;
pub mod table;
pub mod tilting;

pub use error::{Error, Result};
pub use table::{split_weight, validate_table, BigNat, Flavor, MultiplicityTable, RootOrder, Violation, WeightIndex};
