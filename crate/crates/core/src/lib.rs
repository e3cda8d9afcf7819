//! Exact tools for projective schemes over Q: Gröbner bases, graded modules,
//! Hilbert scheme charts and isomorphism certificates.

pub mod budget;
pub mod error;
pub mod poly;

pub use budget::Budget;
pub use error::{Error, Result};
pub mod groebner;
pub mod hilb;
pub mod homiso;
pub mod linalg;
pub mod modules;
pub mod positivity;
pub mod scheme;
