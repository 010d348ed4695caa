//! Finite-difference Hamiltonian `H = (p − A)²/(2m) + V` on a [`Grid`] and
//! the symmetry operators built from the same samples:
//!
//! * `τ = T·e^{iα}`, `α(x) = −2∫₀ˣ A`, antilinear and Hermitian for any `A`,
//!   with `H† = τ H τ⁻¹`;
//! * `η = e^{iβ}·P`, `β(x) = 2∫₀ˣ A*`, linear and invertible, Hermitian and
//!   satisfying `H† = η H η⁻¹` when `H` is PT-symmetric;
//! * `P` (reflection) and `T` (conjugation).
//!
//! The momentum is the 3-point central difference `D = −i·S/(2h)` with
//! Dirichlet truncation. It satisfies `conj(D) = −D` and `R·D·R = −D`
//! exactly, which makes the PT and `A ≡ 0` identities hold to rounding.

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{EvalError, Expr, ParamEnv};
use crate::grid::{Grid, GridError};
use crate::opalg::{time_reversal, AntilinearOp, ComplexMatrix, LinearOp, Operator};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("mass must be finite and positive, got {0}")]
    Mass(f64),
    #[error("unbound parameters in {which}: {names:?}")]
    UnboundParams { which: Potential, names: Vec<String> },
    #[error("evaluating {which} at x = {x}: {source}")]
    Eval {
        which: Potential,
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error("{what} is not finite at x = {x}")]
    Overflow { what: &'static str, x: f64 },
    #[error("{what} leaves the floating-point range at x = {x}")]
    GaugeRange { what: &'static str, x: f64 },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    Scalar,
    Vector,
}

impl std::fmt::Display for Potential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Potential::Scalar => "V(x)",
            Potential::Vector => "A(x)",
        })
    }
}

/// Scalar potential `V`, vector potential `A`, mass and parameter bindings.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub scalar: Expr,
    pub vector: Expr,
    pub mass: f64,
    pub params: ParamEnv,
}

/// `V` and `A` evaluated at every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub scalar: Vec<Complex64>,
    pub vector: Vec<Complex64>,
}

impl Samples {
    pub fn vector_vanishes(&self) -> bool {
        self.vector.iter().all(|a| *a == Complex64::new(0.0, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.scalar.iter().chain(&self.vector).all(|z| z.im == 0.0)
    }
}

impl PotentialSpec {
    /// Parses both potentials; mass `m`, no parameters.
    pub fn parse(scalar: &str, vector: &str, mass: f64) -> Result<Self, crate::Error> {
        Ok(PotentialSpec {
            scalar: Expr::parse(scalar)?,
            vector: Expr::parse(vector)?,
            mass,
            params: ParamEnv::new(),
        })
    }

    pub fn with_params(mut self, params: ParamEnv) -> Self {
        self.params = params;
        self
    }

    pub fn sample(&self, grid: &Grid) -> Result<Samples, ModelError> {
        Ok(Samples {
            scalar: sample_one(&self.scalar, Potential::Scalar, &self.params, grid)?,
            vector: sample_one(&self.vector, Potential::Vector, &self.params, grid)?,
        })
    }
}

fn sample_one(
    expr: &Expr,
    which: Potential,
    params: &ParamEnv,
    grid: &Grid,
) -> Result<Vec<Complex64>, ModelError> {
    let names = params.unbound(expr);
    if !names.is_empty() {
        return Err(ModelError::UnboundParams { which, names });
    }
    grid.points()
        .iter()
        .map(|&x| {
            let z = expr
                .eval(x, params)
                .map_err(|source| ModelError::Eval { which, x, source })?;
            if !z.is_finite() {
                let what = match which {
                    Potential::Scalar => "V(x)",
                    Potential::Vector => "A(x)",
                };
                return Err(ModelError::Overflow { what, x });
            }
            Ok(z)
        })
        .collect()
}

/// Central-difference momentum `D = −i·S/(2h)`.
pub fn build_momentum(grid: &Grid) -> LinearOp {
    let n = grid.len();
    let w = 1.0 / (2.0 * grid.spacing());
    let mut d = ComplexMatrix::zeros(n);
    for j in 0..n - 1 {
        d[(j, j + 1)] = Complex64::new(0.0, -w);
        d[(j + 1, j)] = Complex64::new(0.0, w);
    }
    LinearOp(d)
}

/// Reflection `R` with `R[j, N−1−j] = 1`.
pub fn build_parity(grid: &Grid) -> LinearOp {
    let n = grid.len();
    LinearOp(ComplexMatrix::from_fn(n, |i, j| {
        if i + j == n - 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `(D − diag A)² / (2m) + diag V`, with the square formed as a matrix product.
pub fn hamiltonian_from_samples(
    momentum: &LinearOp,
    samples: &Samples,
    mass: f64,
    grid: &Grid,
) -> Result<LinearOp, ModelError> {
    let mut k = momentum.0.clone();
    for (j, a) in samples.vector.iter().enumerate() {
        k[(j, j)] -= a;
    }
    let mut h = k.matmul(&k).scale_real(1.0 / (2.0 * mass));
    for (j, v) in samples.scalar.iter().enumerate() {
        h[(j, j)] += v;
    }
    for (i, &x) in grid.points().iter().enumerate() {
        if h.row(i).iter().any(|z| !z.is_finite()) {
            return Err(ModelError::Overflow {
                what: "Hamiltonian",
                x,
            });
        }
    }
    Ok(LinearOp(h))
}

fn check_mass(mass: f64) -> Result<(), ModelError> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(ModelError::Mass(mass))
    }
}

pub fn build_hamiltonian(spec: &PotentialSpec, grid: &Grid) -> Result<LinearOp, ModelError> {
    check_mass(spec.mass)?;
    let samples = spec.sample(grid)?;
    hamiltonian_from_samples(&build_momentum(grid), &samples, spec.mass, grid)
}

/// `α = −2∫₀ˣ A`
pub fn gauge_alpha(vector: &[Complex64], grid: &Grid) -> Result<Vec<Complex64>, ModelError> {
    Ok(grid
        .cumulative_integral(vector)?
        .into_iter()
        .map(|f| f * -2.0)
        .collect())
}

/// `β = 2∫₀ˣ A*`
pub fn gauge_beta(vector: &[Complex64], grid: &Grid) -> Result<Vec<Complex64>, ModelError> {
    let conj: Vec<Complex64> = vector.iter().map(|a| a.conj()).collect();
    Ok(grid
        .cumulative_integral(&conj)?
        .into_iter()
        .map(|f| f * 2.0)
        .collect())
}

/// `e^{i·phase_j}` at every node, refusing values that overflow or vanish.
fn phase_factors(
    phase: &[Complex64],
    grid: &Grid,
    what: &'static str,
) -> Result<Vec<Complex64>, ModelError> {
    phase
        .iter()
        .zip(grid.points())
        .map(|(p, &x)| {
            let z = (Complex64::new(0.0, 1.0) * p).exp();
            if z.is_finite() && z.norm() > 0.0 && (1.0 / z.norm()).is_finite() {
                Ok(z)
            } else {
                Err(ModelError::GaugeRange { what, x })
            }
        })
        .collect()
}

/// `τ = T ∘ diag(e^{iα})`, stored as the antilinear matrix `diag(conj(e^{iα}))`.
pub fn tau_from_alpha(alpha: &[Complex64], grid: &Grid) -> Result<AntilinearOp, ModelError> {
    let gauge = LinearOp::diag(&phase_factors(alpha, grid, "e^{iα}")?);
    match Operator::from(time_reversal(grid.len()))
        .compose(&gauge.into())
        .expect("same grid")
    {
        Operator::Antilinear(tau) => Ok(tau),
        Operator::Linear(_) => unreachable!("antilinear ∘ linear is antilinear"),
    }
}

/// `η = diag(e^{iβ}) · R`
pub fn eta_from_beta(beta: &[Complex64], grid: &Grid) -> Result<LinearOp, ModelError> {
    let factors = phase_factors(beta, grid, "e^{iβ}")?;
    Ok(LinearOp(build_parity(grid).0.scale_rows(&factors)))
}

pub fn build_tau(spec: &PotentialSpec, grid: &Grid) -> Result<AntilinearOp, ModelError> {
    let samples = spec.sample(grid)?;
    tau_from_alpha(&gauge_alpha(&samples.vector, grid)?, grid)
}

pub fn build_eta(spec: &PotentialSpec, grid: &Grid) -> Result<LinearOp, ModelError> {
    let samples = spec.sample(grid)?;
    eta_from_beta(&gauge_beta(&samples.vector, grid)?, grid)
}

/// `R · conj(H) · R`, the matrix of `(PT) H (PT)`.
pub fn pt_transform(h: &LinearOp) -> LinearOp {
    let n = h.dim();
    let m = &h.0;
    LinearOp(ComplexMatrix::from_fn(n, |i, j| m[(n - 1 - i, n - 1 - j)].conj()))
}

/// `diag(e^{−iα}) · D · diag(e^{iα}) − (D + diag(α′))`, the discrete
/// counterpart of `e^{−iα} p e^{iα} = p + α′`.
pub fn gauge_commutation_defect(
    momentum: &LinearOp,
    alpha: &[Complex64],
    alpha_prime: &[Complex64],
) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let left: Vec<Complex64> = alpha.iter().map(|a| (-i * a).exp()).collect();
    let right: Vec<Complex64> = alpha.iter().map(|a| (i * a).exp()).collect();
    let conjugated = momentum.0.scale_rows(&left).scale_cols(&right);
    let mut shifted = momentum.0.clone();
    for (j, d) in alpha_prime.iter().enumerate() {
        shifted[(j, j)] += d;
    }
    &conjugated - &shifted
}

/// Everything built from one potential on one grid.
#[derive(Debug, Clone)]
pub struct HamiltonianSystem {
    pub grid: Grid,
    pub mass: f64,
    pub samples: Samples,
    pub momentum: LinearOp,
    pub hamiltonian: LinearOp,
    pub hamiltonian_adjoint: LinearOp,
    pub tau: AntilinearOp,
    pub eta: LinearOp,
    pub parity: LinearOp,
    /// `α = −2∫₀ˣ A`
    pub alpha: Vec<Complex64>,
    /// `β = 2∫₀ˣ A*`
    pub beta: Vec<Complex64>,
}

impl HamiltonianSystem {
    pub fn build(spec: &PotentialSpec, grid: &Grid) -> Result<Self, ModelError> {
        check_mass(spec.mass)?;
        let samples = spec.sample(grid)?;
        let momentum = build_momentum(grid);
        let hamiltonian = hamiltonian_from_samples(&momentum, &samples, spec.mass, grid)?;
        let alpha = gauge_alpha(&samples.vector, grid)?;
        let beta = gauge_beta(&samples.vector, grid)?;
        let tau = tau_from_alpha(&alpha, grid)?;
        let eta = eta_from_beta(&beta, grid)?;
        Ok(HamiltonianSystem {
            grid: grid.clone(),
            mass: spec.mass,
            hamiltonian_adjoint: hamiltonian.adjoint(),
            parity: build_parity(grid),
            samples,
            momentum,
            hamiltonian,
            tau,
            eta,
            alpha,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    /// `PT = P ∘ T`, antilinear with matrix `R`.
    pub fn pt(&self) -> AntilinearOp {
        AntilinearOp(self.parity.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(v: &str, a: &str, m: f64) -> PotentialSpec {
        PotentialSpec::parse(v, a, m).unwrap()
    }

    #[test]
    fn momentum_stencil_entries() {
        let g = Grid::new(1.0, 5).unwrap();
        let d = build_momentum(&g);
        assert_eq!(d.0[(0, 1)], c(0.0, -1.0));
        assert_eq!(d.0[(1, 0)], c(0.0, 1.0));
        assert_eq!(d.0[(0, 0)], c(0.0, 0.0));
        assert_eq!(d.0[(0, 2)], c(0.0, 0.0));
        assert_eq!(d.adjoint(), d);
        assert_eq!(d.0.conj(), -&d.0);
    }

    #[test]
    fn parity_matrix_properties() {
        let g = Grid::new(1.0, 5).unwrap();
        let r = build_parity(&g).0;
        for i in 0..5 {
            for j in 0..5 {
                let want = if i + j == 4 { 1.0 } else { 0.0 };
                assert_eq!(r[(i, j)], c(want, 0.0));
            }
        }
        assert_eq!(r.matmul(&r), ComplexMatrix::identity(5));
        assert_eq!(r.transpose(), r);
        let xs = g.sample(|x| c(x, 0.0));
        let neg: Vec<_> = xs.iter().map(|z| -z).collect();
        assert_eq!(
            r.matmul(&ComplexMatrix::from_diag(&xs)).matmul(&r),
            ComplexMatrix::from_diag(&neg)
        );
    }

    #[test]
    fn free_hamiltonian_is_momentum_squared() {
        let g = Grid::new(2.0, 21).unwrap();
        let d = build_momentum(&g).0;
        let h = build_hamiltonian(&spec("0", "0", 0.5), &g).unwrap();
        assert_eq!(h.0, d.matmul(&d));
    }

    #[test]
    fn constant_vector_potential_shifts_momentum() {
        let g = Grid::new(2.0, 21).unwrap();
        let d = build_momentum(&g).0;
        let shifted = &d - &ComplexMatrix::identity(g.len()).scale_real(0.75);
        let want = shifted.matmul(&shifted).scale_real(1.0 / (2.0 * 1.3));
        let h = build_hamiltonian(&spec("0", "0.75", 1.3), &g).unwrap();
        assert!((&h.0 - &want).max_abs_norm() <= 1e-15 * want.max_abs_norm());
    }

    #[test]
    fn build_errors_name_the_problem() {
        let g = Grid::new(2.0, 21).unwrap();
        assert!(matches!(
            build_hamiltonian(&spec("g*x", "0", 0.5), &g),
            Err(ModelError::UnboundParams { which: Potential::Scalar, .. })
        ));
        assert!(matches!(
            build_hamiltonian(&spec("1/x", "0", 0.5), &g),
            Err(ModelError::Eval { x, .. }) if x == 0.0
        ));
        assert!(matches!(
            build_hamiltonian(&spec("exp(x^3)", "0", 0.5), &Grid::new(10.0, 21).unwrap()),
            Err(ModelError::Overflow { x, .. }) if x == 9.0
        ));
        assert_eq!(
            build_hamiltonian(&spec("0", "0", 0.0), &g),
            Err(ModelError::Mass(0.0))
        );
        // e^{iα} = e^{-x²} underflows on a wide box.
        assert!(matches!(
            build_tau(&spec("0", "-i*x", 0.5), &Grid::new(40.0, 21).unwrap()),
            Err(ModelError::GaugeRange { .. })
        ));
    }

    #[test]
    fn tau_for_vanishing_and_constant_vector_potential() {
        let g = Grid::new(3.0, 31).unwrap();
        assert_eq!(build_tau(&spec("x^2", "0", 0.5), &g).unwrap(), time_reversal(31));

        let cst = 0.4;
        let tau = build_tau(&spec("0", "0.4", 0.5), &g).unwrap();
        assert!(tau.0.is_diagonal());
        // T·diag(e^{-2icx}) has antilinear matrix diag(e^{+2icx}).
        for (j, &x) in g.points().iter().enumerate() {
            let want = Complex64::from_polar(1.0, 2.0 * cst * x);
            assert!((tau.0[(j, j)] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn eta_examples() {
        let g = Grid::new(2.0, 21).unwrap();
        assert_eq!(build_eta(&spec("0", "0", 0.5), &g).unwrap(), build_parity(&g));

        let eta = build_eta(&spec("0", "i*x", 0.5), &g).unwrap();
        let n = g.len();
        for (j, &x) in g.points().iter().enumerate() {
            let v = eta.0[(j, n - 1 - j)];
            assert!((v - c((x * x).exp(), 0.0)).norm() <= 1e-14 * (x * x).exp());
        }
        let eta_op: Operator = eta.into();
        assert_eq!(eta_op.is_hermitian(0.0).residual, 0.0);

        // Odd real part of A violates the parity conditions.
        let g5 = Grid::new(1.0, 5).unwrap();
        let eta: Operator = build_eta(&spec("0", "x", 0.5), &g5).unwrap().into();
        assert!(!eta.is_hermitian(1e-12).hermitian);
    }

    #[test]
    fn pt_transform_examples() {
        let g = Grid::new(3.0, 31).unwrap();
        let even_real = LinearOp::diag(&g.sample(|x| c(x * x + 1.0, 0.0)));
        assert_eq!(pt_transform(&even_real), even_real);

        let d = build_momentum(&g).0;
        let d2 = LinearOp(d.matmul(&d));
        assert_eq!(pt_transform(&d2), d2);

        let cubic = LinearOp::diag(&g.sample(|x| c(0.0, x * x * x)));
        assert_eq!(pt_transform(&cubic), cubic);

        let odd_real = LinearOp::diag(&g.sample(|x| c(x, 0.0)));
        assert_ne!(pt_transform(&odd_real), odd_real);
    }

    #[test]
    fn system_invariants() {
        let g = Grid::new(4.0, 41).unwrap();
        let sys = HamiltonianSystem::build(&spec("x^2 + i*x^3", "sin(x) + i*x", 0.5), &g).unwrap();
        let r = &sys.parity.0;
        assert_eq!(r.matmul(r), ComplexMatrix::identity(41));
        assert!(sys.tau.0.is_diagonal());
        assert!(sys.tau.0.diagonal().iter().all(|z| z.norm() > 0.0));
        assert_eq!(sys.hamiltonian_adjoint, sys.hamiltonian.adjoint());
    }

    #[test]
    fn gauge_defect_is_order_one_entrywise_but_second_order_on_smooth_functions() {
        // For α = -2 sin(x): entries of the defect stay O(1) under refinement,
        // while its action on a smooth bump shrinks like h².
        let run = |n: usize| {
            let g = Grid::new(5.0, n).unwrap();
            let d = build_momentum(&g);
            let alpha = g.sample(|x| c(-2.0 * x.sin(), 0.0));
            let alpha_prime = g.sample(|x| c(-2.0 * x.cos(), 0.0));
            let defect = gauge_commutation_defect(&d, &alpha, &alpha_prime);
            let bump = g.sample(|x| c((-x * x).exp(), 0.0));
            let action = defect.mul_vec(&bump).iter().map(|z| z.norm()).fold(0.0, f64::max);
            (defect.max_abs_norm(), action)
        };
        let (m1, a1) = run(101);
        let (m2, a2) = run(201);
        assert!(m1 > 0.5 && m2 > 0.5);
        let slope = (a1 / a2).log2();
        assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    }
}
