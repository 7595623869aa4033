//! Exact verification and search for 3-Leibniz and 3-Lie bialgebras.
//!
//! Algebras are given by structure constants `f_{ijk}^m` whose values are
//! exact [`Scalar`]s: rationals, or polynomials in named parameters. Every
//! identity check is an exact zero test, so a pass on a parametric family
//! holds for all parameter values at once.
//!
//! Start from [`fixtures`] for the built-in examples, [`bialgebra::pair_check`]
//! for pairs, [`dualsearch::dual_family`] to solve for duals and
//! [`correspondence::verify_correspondence`] for the Leibniz bialgebra on
//! `A⊗A`. The `examples/` directory has one runnable program per area.

pub mod algebras;
pub mod associated;
pub mod bialgebra;
pub mod cli;
mod contract;
pub mod correspondence;
pub mod dualsearch;
pub mod exactmath;
pub mod fixtures;
pub mod io;
pub mod report;
pub mod structure;

pub use algebras::{Algebra3, AlgebraKind, Vector};
pub use exactmath::{Rational, Scalar};
pub use report::{Report, Residual};
pub use structure::{Matrix, Sc3};

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] exactmath::ParseScalarError),
    #[error(transparent)]
    Structure(#[from] structure::StructureError),
    #[error(transparent)]
    Algebra(#[from] algebras::AlgebraError),
    #[error(transparent)]
    Associated(#[from] associated::AssociatedError),
    #[error(transparent)]
    Pair(#[from] bialgebra::PairError),
    #[error(transparent)]
    Search(#[from] dualsearch::SearchError),
    #[error(transparent)]
    Correspondence(#[from] correspondence::CorrespondenceError),
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error(transparent)]
    Cli(#[from] cli::CliError),
}
