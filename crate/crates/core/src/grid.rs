//! Uniform, exactly mirror-symmetric grid on `[-L, L]` and the trapezoid
//! primitive `F(x) = ∫₀ˣ f` anchored at the centre node.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("half-width must be finite and positive, got {0}")]
    HalfWidth(f64),
    #[error("grid needs at least 5 points, got {0}")]
    TooFewPoints(usize),
    #[error("grid size must be odd so that x = 0 is a node, got {0}")]
    EvenPoints(usize),
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    half_width: f64,
    points: Vec<f64>,
    spacing: f64,
}

impl Grid {
    /// Nodes are generated in mirrored pairs `±L·k/K`, `K = (N-1)/2`, so
    /// `x[N-1-j] == -x[j]` holds bit for bit and the centre node is exactly 0.
    pub fn new(half_width: f64, n_points: usize) -> Result<Grid, GridError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(GridError::HalfWidth(half_width));
        }
        if n_points < 5 {
            return Err(GridError::TooFewPoints(n_points));
        }
        if n_points % 2 == 0 {
            return Err(GridError::EvenPoints(n_points));
        }
        let k_max = (n_points - 1) / 2;
        let mut points = vec![0.0; n_points];
        for k in 1..=k_max {
            let x = half_width * (k as f64 / k_max as f64);
            points[k_max + k] = x;
            points[k_max - k] = -x;
        }
        Ok(Grid {
            half_width,
            points,
            spacing: half_width / k_max as f64,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Zero-based index of the node at `x = 0`.
    pub fn center(&self) -> usize {
        self.points.len() / 2
    }

    /// Zero-based mirror index: `x[mirror(j)] == -x[j]`.
    pub fn mirror(&self, j: usize) -> usize {
        self.points.len() - 1 - j
    }

    /// Samples `f` at every node.
    pub fn sample<T>(&self, f: impl FnMut(f64) -> T) -> Vec<T> {
        self.points.iter().copied().map(f).collect()
    }

    /// Trapezoid-rule primitive `F_j ≈ ∫₀^{x_j} f` with `F_center = 0`,
    /// accumulated outward from the centre in both directions.
    ///
    /// Quadrature weights are real, so `cumulative_integral(conj f)` equals
    /// `conj(cumulative_integral(f))` exactly, and an even `f` gives an
    /// exactly odd `F` (and vice versa).
    pub fn cumulative_integral(&self, f: &[Complex64]) -> Result<Vec<Complex64>, GridError> {
        let n = self.len();
        if f.len() != n {
            return Err(GridError::LengthMismatch {
                expected: n,
                got: f.len(),
            });
        }
        let half_h = 0.5 * self.spacing;
        let c = self.center();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for j in c + 1..n {
            out[j] = out[j - 1] + (f[j - 1] + f[j]) * half_h;
        }
        for j in (0..c).rev() {
            out[j] = out[j + 1] - (f[j + 1] + f[j]) * half_h;
        }
        Ok(out)
    }
}

/// One-based parity reflection `j ↦ N + 1 - j`.
pub fn reflect(j: usize, n: usize) -> Result<usize, GridError> {
    if j == 0 || j > n {
        return Err(GridError::IndexOutOfRange { index: j, n });
    }
    Ok(n + 1 - j)
}
