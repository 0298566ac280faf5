//! Weil representations, local Weil indices, CM newforms, Atkin-Lehner data
//! and the scalar-to-vector induction of coefficients.

pub mod atkin;
pub mod induce;
pub mod local;
pub mod newform;
pub mod rep;

pub use atkin::AtkinLehner;
pub use induce::{full_lattice, induce, induce_formula, Inducer, QExpansion};
pub use local::{gamma_p, gamma_q, hasse_product, inv_v, LocalData};
pub use newform::{cm_newform, NewformData};
pub use rep::WeilRepData;

use crate::lattices::frac;
use crate::{Rat, C64};

/// e(x) = exp(2 pi i x) with x reduced mod 1 first.
pub fn e(x: Rat) -> C64 {
    let r = frac(x);
    let t = std::f64::consts::TAU * (*r.numer() as f64) / (*r.denom() as f64);
    C64::new(t.cos(), t.sin())
}
