//! Self-similar energies on finitely ramified fractals.
//!
//! A fractal is given combinatorially by a [`FractalTriple`]. Dirichlet forms
//! on its boundary are coefficient vectors ([`DirichletForm`]); the
//! renormalization operator [`renorm::lambda_r`] sums a form over the cells
//! with weights and traces it back to the boundary. Eigenforms are fixed
//! points of the normalized operator, searched for by [`solver`]. The
//! [`geometry`] and [`solver`] modules also provide the boundary diagnostics:
//! stratification of the normalized simplex, the outward-ray probe and the
//! repulsing check for degenerate eigenforms.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forms;
pub mod geometry;
mod linalg;
pub mod renorm;
pub mod solver;
pub mod tolerance;
pub mod triples;

pub use error::{Error, Result};
pub use forms::{DirichletForm, QuadraticFormMatrix};
pub use renorm::{Stratum, Weights};
pub use tolerance::Tolerances;
pub use triples::FractalTriple;
