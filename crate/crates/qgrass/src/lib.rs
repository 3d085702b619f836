//! Exact computer algebra for the quantum Grassmann superalgebra `Ω_q(m|n)`
//! and its truncations at a root of unity.
//!
//! Everything is computed over the cyclotomic field `K = ℚ(ε)` with exact
//! rational coefficients; there is no floating point anywhere. The crate
//! builds the graded pieces `Ω_q^{(s)}(m|n, r)` together with the
//! `u_q(gl(m|n))`-action, analyses their submodule structure (socle, Loewy
//! filtration, inclusion nets, indecomposability), and constructs the quantum
//! super de Rham complexes with their exact cohomology.
//!
//! The `examples/` directory contains one runnable example per capability;
//! the `qgrass` binary exposes the same surfaces as batch subcommands.

pub mod derham;
#[doc(hidden)]
pub mod detrand;
mod error;
pub mod linalg;
pub mod omega;
pub mod reports;
pub mod scalars;
pub mod structure;
pub mod superindex;

pub use error::{Error, Result};
