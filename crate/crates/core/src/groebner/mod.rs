//! Gröbner bases for ideals and submodules of free modules.

mod engine;
mod hilbert;
mod ideal;
mod syzygy;

pub use engine::{lead_term, ModuleGb, ModuleTermOrder};
pub use hilbert::{
    binom_big, hilbert_numerator, reduce_series, series_to_polynomial, series_values,
};
pub use ideal::{monomial_dim, GroebnerBasis, Ideal};
pub use syzygy::syzygies;

#[cfg(test)]
mod tests;
