//! Complex Schur decomposition `A = Z·T·Zᴴ` by Householder reduction to
//! Hessenberg form followed by single-shift QR with Givens rotations.

use num_complex::Complex64;

use crate::opalg::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sweeps allowed per deflated eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

pub(crate) struct Schur {
    pub t: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Indices `0..=ihi` whose eigenvalues did not converge.
pub(crate) struct NoConvergence {
    pub unconverged: usize,
}

/// Reduces `a` in place to upper Hessenberg form and returns the unitary
/// factor `Q` with `a_original = Q·a·Qᴴ`.
fn hessenberg(a: &mut ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }
        // a ← (I − 2vvᴴ)·a on rows k+1.., all columns from k.
        for j in k..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[(i, j)]).sum();
            let f = dot * 2.0;
            for i in k + 1..n {
                let vi = v[i];
                a[(i, j)] -= vi * f;
            }
        }
        // a ← a·(I − 2vvᴴ) and q ← q·(I − 2vvᴴ) on columns k+1...
        for m in [&mut *a, &mut q] {
            for i in 0..n {
                let dot: Complex64 = (k + 1..n).map(|j| m[(i, j)] * v[j]).sum();
                let f = dot * 2.0;
                for j in k + 1..n {
                    let vj = v[j].conj();
                    m[(i, j)] -= f * vj;
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
    q
}

/// Rotation `G = [[c, s], [−conj(s), c]]` with real `c` such that
/// `G·[a, b]ᵀ = [r, 0]ᵀ`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let an = a.norm();
    let norm = an.hypot(b.norm());
    let c = an / norm;
    let s = (a / an) * b.conj() / norm;
    (c, s)
}

/// `rows (k, k+1) ← G·rows` for columns in `cols`.
fn rotate_rows(m: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let x = m[(k, j)];
        let y = m[(k + 1, j)];
        m[(k, j)] = x * c + s * y;
        m[(k + 1, j)] = -s.conj() * x + y * c;
    }
}

/// `cols (k, k+1) ← cols·Gᴴ` for rows in `rows`.
fn rotate_cols(m: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for i in rows {
        let x = m[(i, k)];
        let y = m[(i, k + 1)];
        m[(i, k)] = x * c + y * s.conj();
        m[(i, k + 1)] = -s * x + y * c;
    }
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let scale = abs1(a) + abs1(b) + abs1(c) + abs1(d);
    if scale == 0.0 {
        return ZERO;
    }
    let (a, b, c, d) = (a / scale, b / scale, c / scale, d / scale);
    let half_tr = (a + d) * 0.5;
    let disc = ((a - half_tr) * (a - half_tr) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    let pick = if (l1 - d).norm() <= (l2 - d).norm() { l1 } else { l2 };
    pick * scale
}

pub(crate) fn schur(a: &ComplexMatrix) -> Result<Schur, NoConvergence> {
    let n = a.dim();
    let mut t = a.clone();
    let mut z = hessenberg(&mut t);
    if n == 0 {
        return Ok(Schur { t, z });
    }
    let eps = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE / eps;
    let mut ihi = n - 1;
    let mut sweeps = 0usize;

    while ihi > 0 {
        // Find the start of the active unreduced block.
        let mut l = 0;
        for k in (1..=ihi).rev() {
            let sub = abs1(t[(k, k - 1)]);
            if sub <= safe_min {
                t[(k, k - 1)] = ZERO;
                l = k;
                break;
            }
            let mut tst = abs1(t[(k - 1, k - 1)]) + abs1(t[(k, k)]);
            if tst == 0.0 {
                if k >= 2 {
                    tst += abs1(t[(k - 1, k - 2)]);
                }
                if k < ihi {
                    tst += abs1(t[(k + 1, k)]);
                }
            }
            if sub <= eps * tst {
                t[(k, k - 1)] = ZERO;
                l = k;
                break;
            }
        }
        if l == ihi {
            ihi -= 1;
            sweeps = 0;
            continue;
        }
        if sweeps >= MAX_SWEEPS_PER_EIGENVALUE {
            return Err(NoConvergence { unconverged: ihi });
        }
        sweeps += 1;

        let shift = if sweeps % 10 == 0 {
            // Exceptional shift to break cycles.
            let s = abs1(t[(ihi, ihi - 1)]) + if ihi >= 2 { abs1(t[(ihi - 1, ihi - 2)]) } else { 0.0 };
            t[(ihi, ihi)] + Complex64::new(0.75 * s, 0.0)
        } else {
            wilkinson_shift(
                t[(ihi - 1, ihi - 1)],
                t[(ihi - 1, ihi)],
                t[(ihi, ihi - 1)],
                t[(ihi, ihi)],
            )
        };

        for k in l..ihi {
            let (x, y) = if k == l {
                (t[(l, l)] - shift, t[(l + 1, l)])
            } else {
                (t[(k, k - 1)], t[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let col_start = if k == l { l } else { k - 1 };
            rotate_rows(&mut t, k, c, s, col_start..n);
            let row_end = (k + 3).min(ihi + 1);
            rotate_cols(&mut t, k, c, s, 0..row_end);
            rotate_cols(&mut z, k, c, s, 0..n);
            if k > l {
                t[(k + 1, k - 1)] = ZERO;
            }
        }
    }
    // Clean the strictly lower triangle left by rounding.
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = ZERO;
        }
    }
    Ok(Schur { t, z })
}

/// Eigenvectors of the upper-triangular `t`, as columns of the returned
/// matrix, by back substitution. Near-equal diagonal entries are perturbed to
/// `smin` so defective blocks still yield finite vectors.
pub(crate) fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let eps = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE / eps;
    let mut y = ComplexMatrix::zeros(n);
    let mut work = vec![ZERO; n];
    for k in 0..n {
        let lambda = t[(k, k)];
        let smin = (eps * abs1(lambda)).max(safe_min);
        work[..=k].fill(ZERO);
        work[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = ZERO;
            for m in j + 1..=k {
                acc += t[(j, m)] * work[m];
            }
            let mut denom = t[(j, j)] - lambda;
            if abs1(denom) < smin {
                denom = Complex64::new(smin, 0.0);
            }
            work[j] = -acc / denom;
            let big = abs1(work[j]);
            if big > 1e150 {
                let r = 1.0 / big;
                for w in &mut work[j..=k] {
                    *w *= r;
                }
            }
        }
        for j in 0..=k {
            y[(j, k)] = work[j];
        }
    }
    y
}
