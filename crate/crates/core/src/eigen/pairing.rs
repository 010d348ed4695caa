use num_complex::Complex64;

use super::Spectrum;

/// Relative matching tolerance used when none is given.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-8;

/// Result of matching each eigenvalue with the conjugate of another.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingReport {
    pub tolerance: f64,
    /// Absolute matching radius, `tolerance · max(1, ‖H‖)`.
    pub radius: f64,
    /// Index pairs `(i, j)`, `i < j`, with `λ_j ≈ conj(λ_i)`.
    pub pairs: Vec<(usize, usize)>,
    /// Eigenvalues within `radius` of the real axis.
    pub real: Vec<usize>,
    pub unmatched: Vec<usize>,
}

impl PairingReport {
    pub fn partner(&self, index: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(i, j)| {
            if i == index {
                Some(j)
            } else if j == index {
                Some(i)
            } else {
                None
            }
        })
    }

    pub fn all_matched(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// Greedy minimum-distance matching of each non-real `λ` with some `μ`,
/// `|μ − conj(λ)| ≤ tol·max(1, ‖H‖)`. Candidate pairs are taken in order of
/// increasing distance, ties broken by index, so the result is deterministic.
pub fn conjugate_pair_matching(spectrum: &Spectrum, tol: f64) -> PairingReport {
    let values = spectrum.values();
    match_values(&values, tol, spectrum.scale())
}

pub(crate) fn match_values(values: &[Complex64], tol: f64, scale: f64) -> PairingReport {
    let radius = tol * scale;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if v.im.abs() <= radius {
            real.push(i);
        } else {
            complex.push(i);
        }
    }

    let mut candidates = Vec::new();
    for (a, &i) in complex.iter().enumerate() {
        for &j in &complex[a + 1..] {
            let d = (values[j] - values[i].conj()).norm();
            if d <= radius {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut used = vec![false; values.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort_unstable();
    let unmatched = complex.into_iter().filter(|&i| !used[i]).collect();
    PairingReport {
        tolerance: tol,
        radius,
        pairs,
        real,
        unmatched,
    }
}
