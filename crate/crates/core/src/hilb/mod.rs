//! Hilbert schemes of projective space and of projective schemes: Gotzmann numbers,
//! chart equations, universal families, the `GL_r` action and projective equivalence.

mod chart;
mod equivalence;
mod gl;
mod gotzmann;

pub use chart::{
    chart_minor_count, degree_part_rows, echelon_point, hilb_chart, hilb_chart_relative,
    relative_degree, Chart, ChartFile, UniversalFamily,
};
pub use equivalence::{projective_equivalence, verify_witness, Equivalence};
pub use gl::{gl_symmetric_matrix, transition, TransitionMap};
pub use gotzmann::{gotzmann_number, reconstruct, reconstruction_holds, GotzmannData};

#[cfg(test)]
mod tests;
