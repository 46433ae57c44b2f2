//! Exact scalars (rationals, cyclotomic numbers, Laurent polynomials) and
//! the matrix kernels built on them.

pub mod cyclo;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod rational;
pub mod ring;
pub mod snf;

pub use cyclo::{cyclotomic_coeffs, euler_phi, CycloNumber};
pub use laurent::{cyclotomic_polynomial, LaurentPoly};
pub use linalg::{column_basis, inverse, matrix_rank, nullspace, rank_cyclo, rref, solve};
pub use matrix::Matrix;
pub use rational::Rational;
pub use ring::{EuclideanDomain, Field, Ring};
pub use snf::{
    kernel_basis_poly, smith_normal_form, smith_normal_form_int, smith_normal_form_poly, Snf,
};
