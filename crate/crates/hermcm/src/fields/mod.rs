//! Exact arithmetic for k, totally real F, and E = k (x) F.

pub mod cm;
pub mod descriptor;
pub mod local;
pub mod poly;
pub mod quadratic;
pub mod real;

pub use cm::{CMExtension, Splitting};
pub use descriptor::FieldDescriptor;
pub use local::{hilbert_symbol, Place};
pub use quadratic::{class_number_imag_quad, delta_p, ImagQuadField, KElem, Root4};
pub use real::{FElem, FactoredIdealF, PrimeIdealF, TotallyRealField};
