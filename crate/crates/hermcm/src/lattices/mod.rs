//! Hermitian lattices, discriminant modules, theta series and isometries.

pub mod aut;
pub mod disc;
pub mod enumerate;
pub mod hermitian;
pub mod theta;

pub use aut::{aut_count, find_isometry};
pub use disc::{frac, DiscriminantModule, PInvariant};
pub use enumerate::PosDefForm;
pub use hermitian::{class_representatives, ideal_hnf, HermitianLattice, LatticeFile};
pub use theta::{cauchy_product, scalar_theta, ThetaTable};
