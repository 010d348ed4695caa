use num_complex::Complex64;

use super::{ComplexMatrix, OpError};

/// Matrices whose 1-norm condition number exceeds this are refused.
pub const MAX_CONDITION: f64 = 1e12;

/// LU factorisation with partial pivoting, `P·A = L·U`, packed in place.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix) -> Result<Lu, OpError> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot_mag) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_mag == 0.0 || !pivot_mag.is_finite() {
                return Err(OpError::Singular);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.dim();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                y[i] = y[i] - l * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                y[i] = y[i] - u * y[k];
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.lu.dim();
        let mut inv = ComplexMatrix::zeros(n);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            e[j] = Complex64::new(0.0, 0.0);
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        inv
    }
}

/// Inverse of a matrix with exactly one nonzero per row and column
/// (diagonal, permutation, or a product of the two). Computed entrywise, so
/// no conditioning limit applies beyond the entries being finite.
fn monomial_inverse(pattern: &[(usize, Complex64)]) -> Option<ComplexMatrix> {
    let n = pattern.len();
    let mut inv = ComplexMatrix::zeros(n);
    for (i, &(j, z)) in pattern.iter().enumerate() {
        let r = Complex64::new(1.0, 0.0) / z;
        if !r.is_finite() {
            return None;
        }
        inv[(j, i)] = r;
    }
    Some(inv)
}

/// Inverse with a 1-norm condition check.
pub fn checked_inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, OpError> {
    if !a.is_finite() {
        return Err(OpError::NonFinite);
    }
    if let Some(pattern) = a.monomial_pattern() {
        return monomial_inverse(&pattern).ok_or(OpError::Singular);
    }
    let inv = Lu::factor(a)?.inverse();
    let cond = a.one_norm() * inv.one_norm();
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(OpError::IllConditioned { condition: cond });
    }
    Ok(inv)
}

/// 1-norm condition number, `inf` for singular input.
pub fn condition_number(a: &ComplexMatrix) -> f64 {
    match Lu::factor(a) {
        Ok(lu) => a.one_norm() * lu.inverse().one_norm(),
        Err(_) => f64::INFINITY,
    }
}
