//! Dirichlet and Hecke L-values at s = 0.
pub mod dirichlet;
pub mod hecke;
pub mod special;

pub use dirichlet::{all_characters, dirichlet_l_deriv0, l0_exact, DirichletChar};
pub use hecke::{
    completed_lambda, cross_check, field_characters, hecke_l, hecke_l_chi_e_deriv0, lambda0_exact_biquadratic,
    logderiv_relation_residual, CompletedL, LValue, Mode,
};
