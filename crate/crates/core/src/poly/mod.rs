//! Polynomial arithmetic: dense univariate, sparse multivariate, dense
//! bivariate helpers and Taylor shifts.

pub mod bivar;
pub mod mpoly;
pub mod taylor;
pub mod ufactor;
pub mod upoly;

pub use mpoly::{JsonTerm, MPoly, Mono};
pub use taylor::{binary_form_factor, poly_gcd, taylor_shift, BinaryFormFactorization, HomComponents, LinearForm};
pub use ufactor::{factor as univariate_factor, UFactorization};
pub use upoly::UPoly;
