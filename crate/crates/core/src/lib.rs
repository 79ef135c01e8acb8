//! Numerical model of a three-qubit Yang-Baxter system.
//!
//! An 8×8 generator `𝕄` is built from the two-qubit braid operator `M`, then
//! Yang-Baxterized into the unitary `R̆(θ, φ)`. The crate generates entangled
//! states from it and measures their three-tangle and concurrences. It also
//! derives the driven Hamiltonian, its spectrum and su(2) structure, and the
//! Berry phases of its eigenstates. Every closed-form statement about the
//! system is paired with an independent numerical evaluation.
//!
//! Runnable walkthroughs live in `examples/`; the `ybsys` binary exposes the
//! same computations as JSON/CSV reports.

pub mod berry;
pub mod braid;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod entanglement;
pub mod linalg;
pub mod states;
pub mod yangbaxter;

pub use error::{Error, Result};
pub use linalg::{C64, ComplexMatrix, ComplexVector, EigenDecomposition};
