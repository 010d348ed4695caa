//! Dense eigendecomposition of general complex matrices with per-pair
//! residual certification, and conjugate-pair matching of spectra.

mod pairing;
mod real;
mod schur;

use std::cmp::Ordering;

use num_complex::Complex64;
use thiserror::Error;

use crate::opalg::{condition_number, ComplexMatrix};

pub use pairing::{conjugate_pair_matching, PairingReport, DEFAULT_PAIRING_TOL};

/// Largest matrix accepted by [`eigendecompose`].
pub const MAX_DIM: usize = 1000;

/// Default relative residual bound for [`eigendecompose`].
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("matrix dimension {0} exceeds the dense limit {MAX_DIM}")]
    TooLarge(usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("QR iteration did not converge for Schur indices {indices:?}")]
    NoConvergence { indices: Vec<usize> },
    #[error("eigenpairs {indices:?} exceed the residual bound {bound:.3e}")]
    ResidualBound { indices: Vec<usize>, bound: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    /// Unit 2-norm.
    pub vector: Vec<Complex64>,
    /// `‖H v − λ v‖₂`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part.
    pub pairs: Vec<EigenPair>,
    /// Frobenius norm of the input, the scale for all relative bounds.
    pub norm: f64,
    /// 1-norm condition number of the eigenvector matrix; large values flag a
    /// nearly defective matrix.
    pub basis_condition: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn scale(&self) -> f64 {
        self.norm.max(1.0)
    }

    pub fn max_residual(&self) -> f64 {
        self.pairs.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

fn by_real_then_imag(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A unitary `Q` for which `Qᴴ·H·Q` is real.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RealBasis {
    /// `H` is already real.
    Identity,
    /// `H` commutes with reflection-plus-conjugation, `R·conj(H)·R = H`.
    /// Columns are `(e_j + e_j')/√2` for `j` below the middle,
    /// `i(e_j − e_j')/√2` for its mirror `j'`, and `e_c` at an odd centre,
    /// so that `conj(Q) = R·Q`.
    Reflection,
}

/// Detects a real form of `h` up to a few ulps of its largest entry.
fn real_basis(h: &ComplexMatrix) -> Option<RealBasis> {
    let n = h.dim();
    let tol = 8.0 * f64::EPSILON * h.max_abs_norm();
    if h.as_slice().iter().all(|z| z.im.abs() <= tol) {
        return Some(RealBasis::Identity);
    }
    let reflected = (0..n).all(|i| (0..n).all(|j| (h[(n - 1 - i, n - 1 - j)].conj() - h[(i, j)]).norm() <= tol));
    reflected.then_some(RealBasis::Reflection)
}

impl RealBasis {
    /// Nonzero entries `(row, value)` of column `m` of `Q`.
    fn column(n: usize, m: usize) -> [(usize, Complex64); 2] {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mirror = n - 1 - m;
        if m < mirror {
            [(m, Complex64::new(r, 0.0)), (mirror, Complex64::new(r, 0.0))]
        } else if m > mirror {
            [(mirror, Complex64::new(0.0, r)), (m, Complex64::new(0.0, -r))]
        } else {
            [(m, Complex64::new(1.0, 0.0)), (m, Complex64::new(0.0, 0.0))]
        }
    }

    /// Row-major real part of `Qᴴ·H·Q`.
    fn real_part(self, h: &ComplexMatrix) -> Vec<f64> {
        let n = h.dim();
        match self {
            RealBasis::Identity => h.as_slice().iter().map(|z| z.re).collect(),
            RealBasis::Reflection => {
                let cols: Vec<_> = (0..n).map(|m| Self::column(n, m)).collect();
                let mut out = Vec::with_capacity(n * n);
                for a in &cols {
                    for b in &cols {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for &(i, qa) in a {
                            for &(j, qb) in b {
                                acc += qa.conj() * h[(i, j)] * qb;
                            }
                        }
                        out.push(acc.re);
                    }
                }
                out
            }
        }
    }

    /// `v ← Q·v`.
    fn apply(self, v: &mut ComplexMatrix) {
        if self == RealBasis::Identity {
            return;
        }
        let n = v.dim();
        let cols: Vec<_> = (0..n).map(|m| Self::column(n, m)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for (m, col) in cols.iter().enumerate() {
            for &(i, q) in col {
                for k in 0..n {
                    out[(i, k)] += q * v[(m, k)];
                }
            }
        }
        *v = out;
    }
}

/// All eigenpairs of `h`. Every returned pair satisfies
/// `‖H v − λ v‖₂ ≤ tol · max(1, ‖H‖_F)`.
///
/// Matrices that are real, or real after the reflection basis change above,
/// go through real Francis QR, so their eigenvalues come out exactly real or
/// in exactly conjugate pairs.
pub fn eigendecompose(h: &ComplexMatrix, tol: f64) -> Result<Spectrum, EigenError> {
    let n = h.dim();
    if n > MAX_DIM {
        return Err(EigenError::TooLarge(n));
    }
    if !h.is_finite() {
        return Err(EigenError::NonFinite);
    }
    let basis = real_basis(h);
    let factored = match basis {
        Some(basis) => real::schur_of_real(n, basis.real_part(h)),
        None => schur::schur(h),
    };
    let schur::Schur { t, z } = factored.map_err(|e| EigenError::NoConvergence {
        indices: (0..=e.unconverged).collect(),
    })?;
    let y = schur::triangular_eigenvectors(&t);
    let mut vectors = z.matmul(&y);
    if let Some(basis) = basis {
        basis.apply(&mut vectors);
    }

    // Normalise columns.
    for k in 0..n {
        let norm = (0..n).map(|i| vectors[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            vectors[(i, k)] /= norm;
        }
    }
    let basis_condition = condition_number(&vectors);

    let norm = h.frobenius_norm();
    let bound = tol * norm.max(1.0);
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| {
            let value = t[(k, k)];
            let vector: Vec<Complex64> = (0..n).map(|i| vectors[(i, k)]).collect();
            let hv = h.mul_vec(&vector);
            let residual = hv
                .iter()
                .zip(&vector)
                .map(|(a, v)| (a - value * v).norm_sqr())
                .sum::<f64>()
                .sqrt();
            EigenPair {
                value,
                vector,
                residual,
            }
        })
        .collect();
    pairs.sort_by(|a, b| by_real_then_imag(&a.value, &b.value));

    let failed: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| !(p.residual <= bound))
        .map(|(i, _)| i)
        .collect();
    if !failed.is_empty() {
        return Err(EigenError::ResidualBound {
            indices: failed,
            bound,
        });
    }
    Ok(Spectrum {
        pairs,
        norm,
        basis_condition,
    })
}
