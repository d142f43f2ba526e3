//! Exact algebra over GF(2^e) for monomial hyperovals in PG(2, q) and the
//! associated plane curves g_k.

pub mod absfactor;
pub mod curve;
pub mod error;
pub mod field;
pub mod hyperoval;
pub mod intersect;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ell_th_roots, embed, make_field, FFElem, FieldCtx};
