//! Exact quantum cohomology, Seidel elements and loop diagnostics for symplectic toric manifolds.

pub mod analysis;
pub mod circle;
pub mod cohomology;
pub mod error;
pub mod examples;
pub mod expr;
pub mod groebner;
pub mod io;
pub mod novikov;
pub mod oracle;
pub mod poly;
pub mod polytope;
pub mod quantum;
pub mod rational;
pub mod seidel;

pub use error::{Error, Result};
