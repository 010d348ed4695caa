//! Real Schur decomposition by Householder reduction and Francis double-shift
//! QR, plus conversion of the quasi-triangular factor to complex triangular
//! form. Complex eigenvalues of a real matrix come out as exact conjugates.

use num_complex::Complex64;

use super::schur::{NoConvergence, Schur};
use crate::opalg::ComplexMatrix;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Dense row-major real square matrix, local to the real QR path.
#[derive(Clone)]
struct Real {
    n: usize,
    data: Vec<f64>,
}

impl Real {
    fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Real { n, data }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }

    /// `rows k.. ← (I − β v vᵀ)·rows` for `cols`, where `v` covers rows `k..k+v.len()`.
    fn reflect_rows(&mut self, k: usize, v: &[f64], beta: f64, cols: std::ops::Range<usize>) {
        for j in cols {
            let dot: f64 = v.iter().enumerate().map(|(r, vr)| vr * self.at(k + r, j)).sum();
            let f = beta * dot;
            for (r, vr) in v.iter().enumerate() {
                *self.at_mut(k + r, j) -= f * vr;
            }
        }
    }

    /// `cols k.. ← cols·(I − β v vᵀ)` for `rows`.
    fn reflect_cols(&mut self, k: usize, v: &[f64], beta: f64, rows: std::ops::Range<usize>) {
        for i in rows {
            let dot: f64 = v.iter().enumerate().map(|(r, vr)| vr * self.at(i, k + r)).sum();
            let f = beta * dot;
            for (r, vr) in v.iter().enumerate() {
                *self.at_mut(i, k + r) -= f * vr;
            }
        }
    }

    /// Rows `(k, k+1) ← [[c, s], [−s, c]]·rows`.
    fn rotate_rows(&mut self, k: usize, c: f64, s: f64, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = self.at(k, j);
            let y = self.at(k + 1, j);
            *self.at_mut(k, j) = c * x + s * y;
            *self.at_mut(k + 1, j) = -s * x + c * y;
        }
    }

    /// Cols `(k, k+1) ← cols·[[c, −s], [s, c]]`.
    fn rotate_cols(&mut self, k: usize, c: f64, s: f64, rows: std::ops::Range<usize>) {
        for i in rows {
            let x = self.at(i, k);
            let y = self.at(i, k + 1);
            *self.at_mut(i, k) = c * x + s * y;
            *self.at_mut(i, k + 1) = -s * x + c * y;
        }
    }
}

/// Householder vector `v` (with `v[0] = 1` implied scaling folded into `beta`)
/// such that `(I − β v vᵀ)·x = ∓‖x‖ e₀`. Returns `None` for `x = 0`.
fn householder(x: &[f64]) -> Option<(Vec<f64>, f64)> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let mut v = x.to_vec();
    v[0] += norm.copysign(x[0]);
    let vv: f64 = v.iter().map(|a| a * a).sum();
    Some((v, 2.0 / vv))
}

fn hessenberg(a: &mut Real) -> Real {
    let n = a.n;
    let mut q = Real::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a.at(i, k)).collect();
        let Some((v, beta)) = householder(&x) else {
            continue;
        };
        a.reflect_rows(k + 1, &v, beta, k..n);
        a.reflect_cols(k + 1, &v, beta, 0..n);
        q.reflect_cols(k + 1, &v, beta, 0..n);
        for i in k + 2..n {
            *a.at_mut(i, k) = 0.0;
        }
    }
    q
}

/// Standardised 2×2 block after [`lanv2`]: `[[a, b], [c, d]]` with either
/// `c = 0` or `a = d` and `b·c < 0`, and the rotation producing it.
struct Block {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    cs: f64,
    sn: f64,
}

/// Schur factorisation of a real 2×2 block, `B = Rᵀ·S·R` with
/// `R = [[cs, sn], [−sn, cs]]`, after LAPACK's `dlanv2`.
fn lanv2(mut a: f64, mut b: f64, mut c: f64, mut d: f64) -> Block {
    let eps = f64::EPSILON;
    let (mut cs, mut sn);
    if c == 0.0 {
        cs = 1.0;
        sn = 0.0;
    } else if b == 0.0 {
        cs = 0.0;
        sn = 1.0;
        std::mem::swap(&mut a, &mut d);
        b = -c;
        c = 0.0;
    } else if a - d == 0.0 && b.signum() != c.signum() {
        cs = 1.0;
        sn = 0.0;
    } else {
        let temp = a - d;
        let p = 0.5 * temp;
        let bcmax = b.abs().max(c.abs());
        let bcmis = b.abs().min(c.abs()) * b.signum() * c.signum();
        let scale = p.abs().max(bcmax);
        let z = p / scale * p + bcmax / scale * bcmis;
        if z >= 4.0 * eps {
            // Real eigenvalues.
            let z = p + (scale.sqrt() * z.sqrt()).copysign(p);
            a = d + z;
            d -= bcmax / z * bcmis;
            let tau = c.hypot(z);
            cs = z / tau;
            sn = c / tau;
            b -= c;
            c = 0.0;
        } else {
            // Complex or nearly equal real eigenvalues: make diagonal equal.
            let sigma = b + c;
            let tau = sigma.hypot(temp);
            cs = (0.5 * (1.0 + sigma.abs() / tau)).sqrt();
            sn = -(p / (tau * cs)) * if sigma >= 0.0 { 1.0 } else { -1.0 };
            let aa = a * cs + b * sn;
            let bb = -a * sn + b * cs;
            let cc = c * cs + d * sn;
            let dd = -c * sn + d * cs;
            a = aa * cs + cc * sn;
            b = bb * cs + dd * sn;
            c = -aa * sn + cc * cs;
            d = -bb * sn + dd * cs;
            let mid = 0.5 * (a + d);
            a = mid;
            d = mid;
            if c != 0.0 {
                if b != 0.0 {
                    if b.signum() == c.signum() {
                        let sab = b.abs().sqrt();
                        let sac = c.abs().sqrt();
                        let p = (sab * sac).copysign(c);
                        let tau = 1.0 / (b + c).abs().sqrt();
                        a = mid + p;
                        d = mid - p;
                        b -= c;
                        c = 0.0;
                        let cs1 = sab * tau;
                        let sn1 = sac * tau;
                        let t = cs * cs1 - sn * sn1;
                        sn = cs * sn1 + sn * cs1;
                        cs = t;
                    }
                } else {
                    b = -c;
                    c = 0.0;
                    let t = cs;
                    cs = -sn;
                    sn = t;
                }
            }
        }
    }
    Block { a, b, c, d, cs, sn }
}

fn standardize(t: &mut Real, z: &mut Real, k: usize) {
    let n = t.n;
    let blk = lanv2(t.at(k, k), t.at(k, k + 1), t.at(k + 1, k), t.at(k + 1, k + 1));
    if k + 2 < n {
        t.rotate_rows(k, blk.cs, blk.sn, k + 2..n);
    }
    t.rotate_cols(k, blk.cs, blk.sn, 0..k);
    z.rotate_cols(k, blk.cs, blk.sn, 0..n);
    *t.at_mut(k, k) = blk.a;
    *t.at_mut(k, k + 1) = blk.b;
    *t.at_mut(k + 1, k) = blk.c;
    *t.at_mut(k + 1, k + 1) = blk.d;
}

/// Real Schur form `a = Z·T·Zᵀ` with standardised 2×2 blocks.
fn real_schur(a: Real) -> Result<(Real, Real), NoConvergence> {
    let n = a.n;
    let mut t = a;
    let mut z = hessenberg(&mut t);
    if n == 0 {
        return Ok((t, z));
    }
    let eps = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE / eps;
    let mut ihi = n as isize - 1;
    let mut sweeps = 0usize;

    while ihi >= 0 {
        let hi = ihi as usize;
        let mut l = 0;
        for k in (1..=hi).rev() {
            let sub = t.at(k, k - 1).abs();
            let mut tst = t.at(k - 1, k - 1).abs() + t.at(k, k).abs();
            if tst == 0.0 {
                if k >= 2 {
                    tst += t.at(k - 1, k - 2).abs();
                }
                if k < hi {
                    tst += t.at(k + 1, k).abs();
                }
            }
            if sub <= safe_min || sub <= eps * tst {
                *t.at_mut(k, k - 1) = 0.0;
                l = k;
                break;
            }
        }
        if l == hi {
            ihi -= 1;
            sweeps = 0;
            continue;
        }
        if l + 1 == hi {
            standardize(&mut t, &mut z, l);
            ihi -= 2;
            sweeps = 0;
            continue;
        }
        if sweeps >= MAX_SWEEPS_PER_EIGENVALUE {
            return Err(NoConvergence { unconverged: hi });
        }
        sweeps += 1;

        let (s, p) = if sweeps % 10 == 0 {
            // Exceptional shift to break cycles.
            let w = t.at(hi, hi - 1).abs() + t.at(hi - 1, hi - 2).abs();
            let x = 0.75 * w + t.at(hi, hi);
            (2.0 * x, x * x - 0.4375 * w * w)
        } else {
            let (a, b, c, d) = (t.at(hi - 1, hi - 1), t.at(hi - 1, hi), t.at(hi, hi - 1), t.at(hi, hi));
            (a + d, a * d - b * c)
        };

        let h = |t: &Real, i: usize, j: usize| t.at(i, j);
        let mut x = h(&t, l, l) * h(&t, l, l) + h(&t, l, l + 1) * h(&t, l + 1, l) - s * h(&t, l, l) + p;
        let mut y = h(&t, l + 1, l) * (h(&t, l, l) + h(&t, l + 1, l + 1) - s);
        let mut w = h(&t, l + 1, l) * h(&t, l + 2, l + 1);

        for k in l..hi - 1 {
            if let Some((v, beta)) = householder(&[x, y, w]) {
                let col_start = if k > l { k - 1 } else { l };
                t.reflect_rows(k, &v, beta, col_start..n);
                let row_end = (k + 4).min(hi + 1);
                t.reflect_cols(k, &v, beta, 0..row_end);
                z.reflect_cols(k, &v, beta, 0..n);
                if k > l {
                    *t.at_mut(k + 1, k - 1) = 0.0;
                    *t.at_mut(k + 2, k - 1) = 0.0;
                }
            }
            x = t.at(k + 1, k);
            y = t.at(k + 2, k);
            if k + 3 <= hi {
                w = t.at(k + 3, k);
            }
        }
        // Final 2-element reflection, done as a rotation.
        let k = hi - 1;
        let r = x.hypot(y);
        if r != 0.0 {
            let (c, sn) = (x / r, y / r);
            t.rotate_rows(k, c, sn, k - 1..n);
            t.rotate_cols(k, c, sn, 0..hi + 1);
            z.rotate_cols(k, c, sn, 0..n);
            *t.at_mut(k + 1, k - 1) = 0.0;
        }
    }
    for i in 1..n {
        for j in 0..i - 1 {
            *t.at_mut(i, j) = 0.0;
        }
    }
    Ok((t, z))
}

/// Complex Schur form of a real matrix given row-major. Each complex
/// eigenvalue pair `a ± iω` of the real quasi-triangular factor lands on the
/// diagonal as exactly conjugate values.
pub(crate) fn schur_of_real(n: usize, data: Vec<f64>) -> Result<Schur, NoConvergence> {
    let (tr, zr) = real_schur(Real { n, data })?;
    let c = |v: f64| Complex64::new(v, 0.0);
    let mut t = ComplexMatrix::from_fn(n, |i, j| c(tr.at(i, j)));
    let mut z = ComplexMatrix::from_fn(n, |i, j| c(zr.at(i, j)));

    let mut k = 0;
    while k < n {
        if k + 1 < n && tr.at(k + 1, k) != 0.0 {
            // Standardised block [[a, b], [c, a]] with b·c < 0.
            let a = tr.at(k, k);
            let b = tr.at(k, k + 1);
            let cc = tr.at(k + 1, k);
            let omega = b.abs().sqrt() * cc.abs().sqrt();
            let up = Complex64::new(a, omega);
            let down = Complex64::new(a, -omega);
            // Unitary U = [u, w] with u ∝ (b, iω) the eigenvector for `up`.
            let norm = b.hypot(omega);
            let u = [c(b / norm), Complex64::new(0.0, omega / norm)];
            let w = [-u[1].conj(), u[0].conj()];
            // T ← Uᴴ·T·U on rows and columns (k, k+1).
            for j in 0..n {
                let x = t[(k, j)];
                let y = t[(k + 1, j)];
                t[(k, j)] = u[0].conj() * x + u[1].conj() * y;
                t[(k + 1, j)] = w[0].conj() * x + w[1].conj() * y;
            }
            for m in [&mut t, &mut z] {
                for i in 0..n {
                    let x = m[(i, k)];
                    let y = m[(i, k + 1)];
                    m[(i, k)] = x * u[0] + y * u[1];
                    m[(i, k + 1)] = x * w[0] + y * w[1];
                }
            }
            t[(k, k)] = up;
            t[(k + 1, k + 1)] = down;
            t[(k + 1, k)] = Complex64::new(0.0, 0.0);
            k += 2;
        } else {
            k += 1;
        }
    }
    Ok(Schur { t, z })
}
