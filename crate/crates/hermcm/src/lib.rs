//! Hermitian lattices over imaginary quadratic fields, their Weil representations,
//! CM newforms and induced vector-valued coefficients, quadratic Hecke L-values,
//! Eisenstein coefficients along CM cycles and the resulting Faltings height formulas.

pub mod arith;
pub mod cmcycles;
pub mod convolution;
pub mod error;
pub mod fields;
pub mod heights;
pub mod lattices;
pub mod lfun;
pub mod linalg;
pub mod suite;
pub mod weilrep;

pub use error::{Error, Result};

/// Exact rational with 128-bit components. Sizes here stay far from overflow;
/// arithmetic overflow panics in debug builds.
pub type Rat = num_rational::Ratio<i128>;

pub type C64 = num_complex::Complex64;
