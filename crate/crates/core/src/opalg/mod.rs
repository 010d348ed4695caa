//! Dense complex matrices and an operator algebra that tracks linearity.
//!
//! An antilinear operator is stored as the matrix `M` of the map
//! `ψ ↦ M·conj(ψ)`. With that convention the four composition rules close:
//!
//! | `a ∘ b`               | result     | matrix            |
//! |-----------------------|------------|-------------------|
//! | linear ∘ linear       | linear     | `Ma · Mb`         |
//! | antilinear ∘ linear   | antilinear | `Ma · conj(Mb)`   |
//! | linear ∘ antilinear   | antilinear | `Ma · Mb`         |
//! | antilinear ∘ antilinear | linear   | `Ma · conj(Mb)`   |
//!
//! The adjoint of an antilinear operator is defined by
//! `⟨φ, Aψ⟩ = conj⟨A†φ, ψ⟩ = ⟨ψ, A†φ⟩` and has matrix `Mᵀ`, so an antilinear
//! operator is Hermitian exactly when its matrix is complex symmetric.

mod lu;
mod matrix;

use num_complex::Complex64;
use thiserror::Error;

pub use lu::{checked_inverse, condition_number, Lu, MAX_CONDITION};
pub use matrix::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is ill-conditioned (1-norm condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// `ψ ↦ M ψ`
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp(pub ComplexMatrix);

/// `ψ ↦ M conj(ψ)`
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOp(pub ComplexMatrix);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    Linear,
    Antilinear,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Linear(LinearOp),
    Antilinear(AntilinearOp),
}

/// Outcome of a Hermiticity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiticityCheck {
    pub hermitian: bool,
    /// `‖M − M_adj‖ / max(1, ‖M‖)` in the max-entry norm.
    pub residual: f64,
}

/// `‖a − b‖ / max(1, ‖reference‖)` in the max-entry norm.
pub fn relative_residual(a: &ComplexMatrix, b: &ComplexMatrix, reference: &ComplexMatrix) -> f64 {
    (a - b).max_abs_norm() / reference.max_abs_norm().max(1.0)
}

/// Time reversal: complex conjugation in the position basis.
pub fn time_reversal(n: usize) -> AntilinearOp {
    AntilinearOp(ComplexMatrix::identity(n))
}

impl LinearOp {
    pub fn identity(n: usize) -> Self {
        LinearOp(ComplexMatrix::identity(n))
    }

    pub fn diag(d: &[Complex64]) -> Self {
        LinearOp(ComplexMatrix::from_diag(d))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        self.0.mul_vec(psi)
    }

    pub fn adjoint(&self) -> LinearOp {
        LinearOp(self.0.adjoint())
    }

    pub fn inverse(&self) -> Result<LinearOp, OpError> {
        checked_inverse(&self.0).map(LinearOp)
    }
}

impl AntilinearOp {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let conj: Vec<Complex64> = psi.iter().map(|z| z.conj()).collect();
        self.0.mul_vec(&conj)
    }

    pub fn adjoint(&self) -> AntilinearOp {
        AntilinearOp(self.0.transpose())
    }

    /// `conj(M⁻¹)`, so that `a ∘ a⁻¹` is the identity.
    pub fn inverse(&self) -> Result<AntilinearOp, OpError> {
        checked_inverse(&self.0).map(|inv| AntilinearOp(inv.conj()))
    }
}

impl From<LinearOp> for Operator {
    fn from(op: LinearOp) -> Self {
        Operator::Linear(op)
    }
}

impl From<AntilinearOp> for Operator {
    fn from(op: AntilinearOp) -> Self {
        Operator::Antilinear(op)
    }
}

impl Operator {
    pub fn linearity(&self) -> Linearity {
        match self {
            Operator::Linear(_) => Linearity::Linear,
            Operator::Antilinear(_) => Linearity::Antilinear,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        match self {
            Operator::Linear(op) => &op.0,
            Operator::Antilinear(op) => &op.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix().dim()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        match self {
            Operator::Linear(op) => op.apply(psi),
            Operator::Antilinear(op) => op.apply(psi),
        }
    }

    fn from_parts(kind: Linearity, m: ComplexMatrix) -> Operator {
        match kind {
            Linearity::Linear => Operator::Linear(LinearOp(m)),
            Linearity::Antilinear => Operator::Antilinear(AntilinearOp(m)),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Operator) -> Result<Operator, OpError> {
        let (a, b) = (self.matrix(), other.matrix());
        if a.dim() != b.dim() {
            return Err(OpError::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        let kind = if self.linearity() == other.linearity() {
            Linearity::Linear
        } else {
            Linearity::Antilinear
        };
        let m = match self.linearity() {
            Linearity::Linear => a.matmul(b),
            Linearity::Antilinear => a.matmul(&b.conj()),
        };
        Ok(Operator::from_parts(kind, m))
    }

    pub fn adjoint(&self) -> Operator {
        match self {
            Operator::Linear(op) => op.adjoint().into(),
            Operator::Antilinear(op) => op.adjoint().into(),
        }
    }

    pub fn inverse(&self) -> Result<Operator, OpError> {
        Ok(match self {
            Operator::Linear(op) => op.inverse()?.into(),
            Operator::Antilinear(op) => op.inverse()?.into(),
        })
    }

    /// `self ∘ h ∘ self⁻¹`, always linear.
    pub fn similarity(&self, h: &LinearOp) -> Result<LinearOp, OpError> {
        let inv = self.inverse()?;
        let h = Operator::Linear(h.clone());
        match self.compose(&h)?.compose(&inv)? {
            Operator::Linear(op) => Ok(op),
            Operator::Antilinear(_) => unreachable!("parity of a∘H∘a⁻¹ is always linear"),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> HermiticityCheck {
        let residual = relative_residual(self.matrix(), self.adjoint().matrix(), self.matrix());
        HermiticityCheck {
            hermitian: residual <= tol,
            residual,
        }
    }
}
