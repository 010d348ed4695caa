//! Residual checks for the operator identities of a [`HamiltonianSystem`],
//! and grid-refinement studies of their convergence.
//!
//! Every check compares two full matrices in the max-entry norm and reports
//! `‖X − Y‖ / max(1, ‖ref‖)`. Identities that hold only up to discretization
//! error (those involving a nonzero vector potential) are O(1) at the
//! boundary rows of the matrix, where the difference stencil is truncated and
//! the gauge factors vary fastest, so they also carry a *consistency*
//! residual: the same difference applied to the smooth, boundary-vanishing
//! probe `ψ(x) = exp(−(5x/L)²)`, relative to `max(1, ‖Hψ‖∞)`. That quantity
//! is the local truncation error and shrinks like `h²`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::Grid;
use crate::model::{pt_transform, HamiltonianSystem, ModelError, PotentialSpec};
use crate::opalg::{time_reversal, AntilinearOp, LinearOp, OpError, Operator};

/// Relative residual below which an identity counts as exact.
pub const EXACT_TOL: f64 = 1e-12;

/// Consistency residual below which an approximate identity counts as a
/// discretization effect rather than a failure.
pub const DEFAULT_DISCRETIZATION_TOL: f64 = 0.25;

/// Accepted range of the fitted log-log slope in a refinement study.
pub const SLOPE_WINDOW: (f64, f64) = (1.7, 2.3);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("a convergence study needs at least 3 grid sizes, got {0}")]
    TooFewSizes(usize),
    #[error("grid sizes must be odd, got {0}")]
    EvenSize(usize),
    #[error("grid sizes must be strictly increasing")]
    NotIncreasing,
    #[error("{0} produced non-finite entries")]
    Overflow(Identity),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// The identities that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `τ H τ⁻¹ = H†`
    AntiPseudo,
    /// `η H η⁻¹ = H†`
    Pseudo,
    /// `(PT) H (PT) = H`
    PtSymmetry,
    /// `η = η†`
    EtaHermiticity,
    /// `τ∘P∘T = η`
    Corollary1,
    /// `τ∘H = H∘τ`
    CommutatorTau,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::AntiPseudo,
        Identity::Pseudo,
        Identity::PtSymmetry,
        Identity::EtaHermiticity,
        Identity::Corollary1,
        Identity::CommutatorTau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::AntiPseudo => "anti_pseudo",
            Identity::Pseudo => "pseudo",
            Identity::PtSymmetry => "pt_symmetry",
            Identity::EtaHermiticity => "eta_hermiticity",
            Identity::Corollary1 => "corollary1",
            Identity::CommutatorTau => "commutator_tau",
        }
    }

    pub fn from_name(name: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == name)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::AntiPseudo => "tau H tau^-1 = H^dagger",
            Identity::Pseudo => "eta H eta^-1 = H^dagger",
            Identity::PtSymmetry => "(PT) H (PT) = H",
            Identity::EtaHermiticity => "eta = eta^dagger",
            Identity::Corollary1 => "tau P T = eta",
            Identity::CommutatorTau => "[tau, H] = 0",
        }
    }

    /// Runs this identity's check on `sys`.
    pub fn check(self, sys: &HamiltonianSystem, tol: &Tolerances) -> Result<ResidualReport, VerifyError> {
        match self {
            Identity::AntiPseudo => anti_pseudo_residual(sys, tol),
            Identity::Pseudo => pseudo_residual(sys, tol),
            Identity::PtSymmetry => Ok(pt_symmetry_residual(sys, tol)),
            Identity::EtaHermiticity => Ok(eta_hermiticity_residual(sys, tol)),
            Identity::Corollary1 => corollary1_identity_check(sys, tol),
            Identity::CommutatorTau => commutator_tau_residual(sys, tol),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the residual of an identity should look like on a given system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Exact,
    Discretization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Exact,
    Discretization,
    Fail,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Exact => "EXACT",
            Classification::Discretization => "DISCRETIZATION",
            Classification::Fail => "FAIL",
        }
    }

    pub fn passed(self) -> bool {
        self != Classification::Fail
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Exact => "EXACT",
            Expectation::Discretization => "DISCRETIZATION",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub exact: f64,
    pub discretization: f64,
    pub parity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: EXACT_TOL,
            discretization: DEFAULT_DISCRETIZATION_TOL,
            parity: EXACT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub identity: Identity,
    /// `‖X − Y‖` in the max-entry norm.
    pub absolute: f64,
    /// `absolute / max(1, ‖ref‖)`.
    pub relative: f64,
    /// Probe residual, present for identities that can be approximate.
    pub consistency: Option<f64>,
    pub expected: Expectation,
    pub classification: Classification,
    /// False when the system violates the identity's hypothesis; the residual
    /// is still reported.
    pub applicable: bool,
    pub note: Option<String>,
}

impl ResidualReport {
    fn new(
        identity: Identity,
        absolute: f64,
        reference: f64,
        consistency: Option<f64>,
        expected: Expectation,
        tol: &Tolerances,
    ) -> Self {
        let relative = absolute / reference.max(1.0);
        ResidualReport {
            identity,
            absolute,
            relative,
            consistency,
            expected,
            classification: classify(relative, consistency, expected, tol),
            applicable: true,
            note: None,
        }
    }

    fn not_applicable(mut self, note: &str) -> Self {
        self.applicable = false;
        self.note = Some(note.to_owned());
        self
    }

    pub fn passed(&self) -> bool {
        self.classification.passed()
    }
}

/// EXACT when the matrix residual is within `tol.exact`; DISCRETIZATION when
/// an approximate identity's consistency residual is within
/// `tol.discretization`; FAIL otherwise.
pub fn classify(
    relative: f64,
    consistency: Option<f64>,
    expected: Expectation,
    tol: &Tolerances,
) -> Classification {
    if relative <= tol.exact {
        Classification::Exact
    } else if expected == Expectation::Discretization
        && consistency.is_some_and(|c| c <= tol.discretization)
    {
        Classification::Discretization
    } else {
        Classification::Fail
    }
}

/// `exp(−(5x/L)²)` on the grid nodes.
pub fn probe(grid: &Grid) -> Vec<Complex64> {
    let l = grid.half_width();
    grid.sample(|x| {
        let s = 5.0 * x / l;
        Complex64::new((-s * s).exp(), 0.0)
    })
}

fn sup(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖Δψ‖∞ / max(1, ‖Hψ‖∞)` for the probe `ψ`.
fn consistency(sys: &HamiltonianSystem, difference: &Operator) -> f64 {
    let psi = probe(&sys.grid);
    let scale = sup(&sys.hamiltonian.apply(&psi)).max(1.0);
    sup(&difference.apply(&psi)) / scale
}

fn expectation_for(sys: &HamiltonianSystem) -> Expectation {
    if sys.samples.vector_vanishes() {
        Expectation::Exact
    } else {
        Expectation::Discretization
    }
}

fn gauge_similarity_check(
    sys: &HamiltonianSystem,
    identity: Identity,
    op: Operator,
    tol: &Tolerances,
) -> Result<ResidualReport, VerifyError> {
    let transformed = op.similarity(&sys.hamiltonian)?;
    if !transformed.0.is_finite() {
        return Err(VerifyError::Overflow(identity));
    }
    let diff = &transformed.0 - &sys.hamiltonian_adjoint.0;
    let c = consistency(sys, &LinearOp(diff.clone()).into());
    Ok(ResidualReport::new(
        identity,
        diff.max_abs_norm(),
        sys.hamiltonian.0.max_abs_norm(),
        Some(c),
        expectation_for(sys),
        tol,
    ))
}

/// `τ H τ⁻¹` against `H†`. Exact when `A ≡ 0`.
pub fn anti_pseudo_residual(sys: &HamiltonianSystem, tol: &Tolerances) -> Result<ResidualReport, VerifyError> {
    gauge_similarity_check(sys, Identity::AntiPseudo, sys.tau.clone().into(), tol)
}

/// `η H η⁻¹` against `H†`. Meaningful for PT-symmetric potentials; exact
/// when additionally `A ≡ 0`.
pub fn pseudo_residual(sys: &HamiltonianSystem, tol: &Tolerances) -> Result<ResidualReport, VerifyError> {
    gauge_similarity_check(sys, Identity::Pseudo, sys.eta.clone().into(), tol)
}

/// `R·conj(H)·R` against `H`.
pub fn pt_symmetry_residual(sys: &HamiltonianSystem, tol: &Tolerances) -> ResidualReport {
    let h = &sys.hamiltonian;
    let diff = &pt_transform(h).0 - &h.0;
    ResidualReport::new(
        Identity::PtSymmetry,
        diff.max_abs_norm(),
        h.0.max_abs_norm(),
        None,
        Expectation::Exact,
        tol,
    )
}

/// `η` against `η†`, relative to `‖η‖`.
pub fn eta_hermiticity_residual(sys: &HamiltonianSystem, tol: &Tolerances) -> ResidualReport {
    let eta = &sys.eta.0;
    let diff = eta - &eta.adjoint();
    ResidualReport::new(
        Identity::EtaHermiticity,
        diff.max_abs_norm(),
        eta.max_abs_norm(),
        None,
        Expectation::Exact,
        tol,
    )
}

/// `matrix(τ∘P∘T)` against `matrix(η)`, relative to `‖η‖`. Exact for every
/// `A`, because conjugation commutes with the real-weight quadrature.
pub fn corollary1_identity_check(sys: &HamiltonianSystem, tol: &Tolerances) -> Result<ResidualReport, VerifyError> {
    let tau: Operator = sys.tau.clone().into();
    let p: Operator = sys.parity.clone().into();
    let t: Operator = time_reversal(sys.dim()).into();
    let lhs = tau.compose(&p.compose(&t)?)?;
    let eta = &sys.eta.0;
    let mut report = ResidualReport::new(
        Identity::Corollary1,
        (lhs.matrix() - eta).max_abs_norm(),
        eta.max_abs_norm(),
        None,
        Expectation::Exact,
        tol,
    );
    if !matches!(lhs, Operator::Linear(_)) {
        report.classification = Classification::Fail;
        report.note = Some("tau P T is not linear".into());
    }
    Ok(report)
}

/// `τ∘H` against `H∘τ`, both antilinear. The commutation follows from the
/// anti-pseudo-Hermiticity only for Hermitian `H`, so the report is flagged
/// not applicable when the sampled potentials are not real.
pub fn commutator_tau_residual(sys: &HamiltonianSystem, tol: &Tolerances) -> Result<ResidualReport, VerifyError> {
    let tau: Operator = sys.tau.clone().into();
    let h: Operator = sys.hamiltonian.clone().into();
    let left = tau.compose(&h)?;
    let right = h.compose(&tau)?;
    let diff = left.matrix() - right.matrix();
    if !diff.is_finite() {
        return Err(VerifyError::Overflow(Identity::CommutatorTau));
    }
    let c = consistency(sys, &AntilinearOp(diff.clone()).into());
    let report = ResidualReport::new(
        Identity::CommutatorTau,
        diff.max_abs_norm(),
        sys.hamiltonian.0.max_abs_norm(),
        Some(c),
        expectation_for(sys),
        tol,
    );
    Ok(if sys.samples.is_real() {
        report
    } else {
        report.not_applicable("potentials are not real, so H is not Hermitian")
    })
}

/// One of the four node-wise parity conditions on the potentials.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityCondition {
    /// e.g. `"V_i odd"`.
    pub name: &'static str,
    /// `max_j |f(x_j) ∓ f(−x_j)| / max(1, max_j |f(x_j)|)`.
    pub max_violation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityReport {
    pub tolerance: f64,
    pub conditions: Vec<ParityCondition>,
}

impl ParityReport {
    pub fn pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

/// Even real parts and odd imaginary parts of `A` and `V` at every node pair
/// `(x_j, −x_j)`.
pub fn parity_conditions_check(spec: &PotentialSpec, grid: &Grid, tol: f64) -> Result<ParityReport, VerifyError> {
    let samples = spec.sample(grid)?;
    Ok(parity_conditions_from_samples(&samples.scalar, &samples.vector, grid, tol))
}

pub fn parity_conditions_from_samples(
    scalar: &[Complex64],
    vector: &[Complex64],
    grid: &Grid,
    tol: f64,
) -> ParityReport {
    let condition = |name, values: &[Complex64], part: fn(&Complex64) -> f64, sign: f64| {
        let scale = values.iter().map(part).fold(0.0, |m: f64, v| m.max(v.abs())).max(1.0);
        let worst = (0..values.len())
            .map(|j| (part(&values[j]) - sign * part(&values[grid.mirror(j)])).abs())
            .fold(0.0, f64::max);
        let max_violation = worst / scale;
        ParityCondition {
            name,
            max_violation,
            pass: max_violation <= tol,
        }
    };
    let re = |z: &Complex64| z.re;
    let im = |z: &Complex64| z.im;
    ParityReport {
        tolerance: tol,
        conditions: vec![
            condition("A_r even", vector, re, 1.0),
            condition("A_i odd", vector, im, -1.0),
            condition("V_r even", scalar, re, 1.0),
            condition("V_i odd", scalar, im, -1.0),
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSample {
    pub n: usize,
    pub h: f64,
    pub report: ResidualReport,
}

impl ConvergenceSample {
    /// The quantity the slope is fitted to: the consistency residual when the
    /// identity has one, otherwise the relative matrix residual.
    pub fn fitted_residual(&self) -> f64 {
        self.report.consistency.unwrap_or(self.report.relative)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub identity: Identity,
    /// Ordered by decreasing `h`.
    pub samples: Vec<ConvergenceSample>,
    /// Least-squares slope of `log(residual)` against `log(h)`, fitted to
    /// [`ConvergenceSample::fitted_residual`]; `None` if any residual is zero.
    pub slope: Option<f64>,
    /// The same fit applied to the relative matrix residuals.
    pub matrix_slope: Option<f64>,
    pub window: (f64, f64),
    /// Every matrix residual is within the exact tolerance.
    pub exact: bool,
    pub pass: bool,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0 && y.is_finite())) {
        return None;
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Checks `identity` on each grid size in `sizes` and fits the rate at which
/// the residual shrinks with `h`. Passes when the slope lies in
/// [`SLOPE_WINDOW`] or every residual is exact. Grid sizes are evaluated on
/// separate threads.
pub fn convergence_study(
    spec: &PotentialSpec,
    half_width: f64,
    sizes: &[usize],
    identity: Identity,
    tol: &Tolerances,
) -> Result<ConvergenceReport, VerifyError> {
    if sizes.len() < 3 {
        return Err(VerifyError::TooFewSizes(sizes.len()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n % 2 == 0) {
        return Err(VerifyError::EvenSize(n));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(VerifyError::NotIncreasing);
    }
    let grids = sizes
        .iter()
        .map(|&n| Grid::new(half_width, n).map_err(ModelError::from))
        .collect::<Result<Vec<_>, _>>()?;

    let results: Vec<Result<ConvergenceSample, VerifyError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = grids
            .iter()
            .map(|grid| {
                scope.spawn(move || {
                    let sys = HamiltonianSystem::build(spec, grid)?;
                    Ok(ConvergenceSample {
                        n: grid.len(),
                        h: grid.spacing(),
                        report: identity.check(&sys, tol)?,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("convergence worker panicked"))
            .collect()
    });
    let samples = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let fitted: Vec<(f64, f64)> = samples.iter().map(|s| (s.h, s.fitted_residual())).collect();
    let matrix: Vec<(f64, f64)> = samples.iter().map(|s| (s.h, s.report.relative)).collect();
    let slope = log_log_slope(&fitted);
    let matrix_slope = log_log_slope(&matrix);
    let exact = samples.iter().all(|s| s.report.relative <= tol.exact);
    let window = SLOPE_WINDOW;
    let pass = exact || slope.is_some_and(|s| s >= window.0 && s <= window.1);
    Ok(ConvergenceReport {
        identity,
        samples,
        slope,
        matrix_slope,
        window,
        exact,
        pass,
    })
}
