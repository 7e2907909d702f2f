//! Small dense solves for weight/kernel coefficient systems and a banded
//! Cholesky for B-spline least squares.

use crate::error::{Error, Result};

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n` and is consumed.
pub fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    assert_eq!(a.len(), n * n);
    for col in 0..n {
        let (mut pivot, mut pmax) = (col, a[col * n + col].abs());
        for r in col + 1..n {
            let v = a[r * n + col].abs();
            if v > pmax {
                pivot = r;
                pmax = v;
            }
        }
        if pmax < 1e-300 {
            return Err(Error::Singular(format!("pivot {col} vanished")));
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * n + col];
        for r in col + 1..n {
            let f = a[r * n + col] / diag;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(b)
}

/// Symmetric positive-definite banded matrix stored as `band[i][d]` holding
/// `A[i, i+d]` for `d = 0..=bw`.
pub struct BandedSpd {
    n: usize,
    bw: usize,
    band: Vec<f64>,
}

impl BandedSpd {
    pub fn zeros(n: usize, bw: usize) -> Self {
        BandedSpd {
            n,
            bw,
            band: vec![0.0; n * (bw + 1)],
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        assert!(d <= self.bw);
        self.band[lo * (self.bw + 1) + d] += v;
    }

    /// In-place Cholesky factorisation followed by a solve.
    pub fn solve(mut self, mut b: Vec<f64>) -> Result<Vec<f64>> {
        let (n, bw, w) = (self.n, self.bw, self.bw + 1);
        // factor: band[i][d] becomes L[i+d, i] (column-oriented lower factor)
        for j in 0..n {
            let mut d = self.band[j * w];
            let lo = j.saturating_sub(bw);
            for k in lo..j {
                let l = self.band[k * w + (j - k)];
                d -= l * l;
            }
            if d <= 0.0 {
                return Err(Error::Singular(format!(
                    "banded matrix not positive definite at column {j}"
                )));
            }
            let d = d.sqrt();
            self.band[j * w] = d;
            for i in j + 1..(j + w).min(n) {
                let mut v = self.band[j * w + (i - j)];
                let lo = i.saturating_sub(bw);
                for k in lo..j {
                    if i - k <= bw {
                        v -= self.band[k * w + (j - k)] * self.band[k * w + (i - k)];
                    }
                }
                self.band[j * w + (i - j)] = v / d;
            }
        }
        // forward substitution L y = b
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            let mut acc = b[i];
            for k in lo..i {
                acc -= self.band[k * w + (i - k)] * b[k];
            }
            b[i] = acc / self.band[i * w];
        }
        // back substitution L^T x = y
        for i in (0..n).rev() {
            let hi = (i + w).min(n);
            let mut acc = b[i];
            for k in i + 1..hi {
                acc -= self.band[i * w + (k - i)] * b[k];
            }
            b[i] = acc / self.band[i * w];
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dense_solve_recovers_known_solution() {
        let a = vec![2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0];
        let x_true = [1.0, -2.0, 3.0];
        let b: Vec<f64> = (0..3)
            .map(|i| (0..3).map(|j| a[i * 3 + j] * x_true[j]).sum())
            .collect();
        let x = solve_dense(a, b).unwrap();
        for (got, want) in x.iter().zip(&x_true) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn banded_solve_matches_dense() {
        let n = 12;
        let bw = 2;
        let mut banded = BandedSpd::zeros(n, bw);
        let mut dense = vec![0.0; n * n];
        for i in 0..n {
            for j in i..(i + bw + 1).min(n) {
                let v = if i == j {
                    4.0 + i as f64 * 0.1
                } else {
                    1.0 / (1.0 + (j - i) as f64)
                };
                banded.add(i, j, v);
                dense[i * n + j] = v;
                dense[j * n + i] = v;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x1 = banded.solve(b.clone()).unwrap();
        let x2 = solve_dense(dense, b).unwrap();
        for (a, b) in x1.iter().zip(&x2) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }
}
