//! Numerical laboratory for one-dimensional Hamiltonians
//! `H = (p − A(x))²/(2m) + V(x)` with complex scalar and vector potentials.
//!
//! The crate discretizes `H` on a symmetric grid, builds the antilinear
//! operator `τ = T·exp(−2i∫₀ˣA)` and the linear operator
//! `η = exp(2i∫₀ˣA*)·P`, and measures how well the identities
//! `H† = τHτ⁻¹`, `H† = ηHη⁻¹`, `(PT)H(PT) = H`, `η = τPT` and `[τ, H] = 0`
//! hold at finite resolution.
//!
//! Modules, bottom up:
//!
//! * [`expr`]: parser and evaluator for potential expressions.
//! * [`grid`]: symmetric grid and the trapezoid primitive `∫₀ˣ`.
//! * [`opalg`]: dense complex matrices and linear/antilinear operators.
//! * [`model`]: the Hamiltonian and its symmetry operators.
//! * [`eigen`]: dense non-Hermitian eigensolver and conjugate-pair matching.
//! * [`verify`]: residual checks and grid-refinement studies.
//! * [`cli`]: JSON configuration, command runners and report encoding.

pub mod cli;
pub mod eigen;
pub mod expr;
pub mod grid;
pub mod model;
pub mod opalg;
pub mod verify;

pub use num_complex::Complex64;

/// Top-level error for the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Grid(#[from] grid::GridError),
    #[error(transparent)]
    Op(#[from] opalg::OpError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Eigen(#[from] eigen::EigenError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error(transparent)]
    Config(#[from] cli::ConfigError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
