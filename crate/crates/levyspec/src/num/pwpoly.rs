//! Piecewise polynomials (degree <= 2) with exact Fourier transforms on the
//! complex strip. Fitted option curves are stored in this form so that
//! `F O(u)` and `F[x O](u)` can be evaluated in closed form at arbitrary
//! complex frequencies, which grid FFTs cannot provide.

use num_complex::Complex64;

/// One polynomial piece on `[lo, hi]`, in coordinates centred at the midpoint:
/// `p(x) = c[0] + c[1] t + c[2] t^2`, `t = x - mid`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub c: [f64; 3],
}

impl Piece {
    fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn half(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x - self.mid();
        self.c[0] + t * (self.c[1] + t * self.c[2])
    }
}

/// Centred moments `m_k = integral_{-h}^{h} t^k e^{iwt} dt`, `k = 0..=3`.
fn centred_moments(w: Complex64, h: f64) -> [Complex64; 4] {
    let z = w * h; // dimensionless
    if z.norm() < 0.5 {
        // series: m_k = 2 sum_{n: n+k even} (iw)^n h^{n+k+1} / (n! (n+k+1))
        let iw = Complex64::new(0.0, 1.0) * w;
        let mut m = [Complex64::default(); 4];
        for (k, mk) in m.iter_mut().enumerate() {
            let mut pow = Complex64::new(1.0, 0.0); // (iw)^n / n!
            let mut hn = h.powi(k as i32 + 1); // h^{n+k+1}
            let mut acc = Complex64::default();
            for n in 0..30 {
                if (n + k) % 2 == 0 {
                    let term = pow * (hn / (n + k + 1) as f64);
                    acc += term;
                    if term.norm() < 1e-18 * (1.0 + acc.norm()) && n > 2 {
                        break;
                    }
                }
                pow *= iw / (n + 1) as f64;
                hn *= h;
            }
            *mk = 2.0 * acc;
        }
        m
    } else {
        let iw = Complex64::new(0.0, 1.0) * w;
        let ep = (iw * h).exp();
        let em = (-iw * h).exp();
        let mut m = [Complex64::default(); 4];
        m[0] = (ep - em) / iw;
        let mut hp = h; // h^k
        let mut sign = -1.0; // (-h)^k sign for k odd
        for k in 1..4 {
            m[k] = (hp * ep - sign * hp * em) / iw - (k as f64 / iw) * m[k - 1];
            hp *= h;
            sign = -sign;
        }
        m
    }
}

/// A piecewise polynomial, zero outside its pieces. Pieces are sorted and
/// non-overlapping but need not be contiguous (gaps are zero regions).
#[derive(Debug, Clone, Default)]
pub struct PiecewisePoly {
    pub pieces: Vec<Piece>,
}

impl PiecewisePoly {
    /// Piecewise-linear interpolant through sorted points, zero outside.
    pub fn linear_interpolant(x: &[f64], y: &[f64]) -> Self {
        assert_eq!(x.len(), y.len());
        let mut pieces = Vec::with_capacity(x.len().saturating_sub(1));
        for i in 1..x.len() {
            let (lo, hi) = (x[i - 1], x[i]);
            let slope = (y[i] - y[i - 1]) / (hi - lo);
            let midv = 0.5 * (y[i] + y[i - 1]);
            pieces.push(Piece {
                lo,
                hi,
                c: [midv, slope, 0.0],
            });
        }
        Self { pieces }
    }

    pub fn eval(&self, x: f64) -> f64 {
        // pieces are sorted by lo; binary search for the containing piece,
        // with a hairline tolerance against rounding of split boundaries
        let tol = 1e-12 * (1.0 + x.abs());
        let idx = self.pieces.partition_point(|p| p.hi < x - tol);
        if idx < self.pieces.len() {
            let p = &self.pieces[idx];
            if x >= p.lo - tol && x <= p.hi + tol {
                return p.eval(x);
            }
        }
        0.0
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        let first = self.pieces.first()?;
        let last = self.pieces.last()?;
        Some((first.lo, last.hi))
    }

    pub fn integral(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let h = p.half();
                2.0 * h * p.c[0] + 2.0 / 3.0 * h * h * h * p.c[2]
            })
            .sum()
    }

    /// Exact Fourier transform `integral e^{iwx} q(x) dx`, with
    /// `q(x) = x * p(x)` when `x_weight` is set.
    pub fn ft(&self, w: Complex64, x_weight: bool) -> Complex64 {
        let mut terms = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let h = p.half();
            let mid = p.mid();
            let m = centred_moments(w, h);
            // coefficients of the integrand polynomial in t
            let q: [f64; 4] = if x_weight {
                // (mid + t)(c0 + c1 t + c2 t^2)
                [
                    mid * p.c[0],
                    mid * p.c[1] + p.c[0],
                    mid * p.c[2] + p.c[1],
                    p.c[2],
                ]
            } else {
                [p.c[0], p.c[1], p.c[2], 0.0]
            };
            let inner = m[0] * q[0] + m[1] * q[1] + m[2] * q[2] + m[3] * q[3];
            let phase = (Complex64::new(0.0, 1.0) * w * mid).exp();
            terms.push(phase * inner);
        }
        crate::num::pairwise_sum(&terms)
    }

    /// Clip to the nonnegative part: regions where the polynomial is negative
    /// are removed (the function is zero there).
    pub fn clip_nonnegative(&self) -> Self {
        let mut out = Vec::new();
        for p in &self.pieces {
            let h = p.half();
            // roots of c0 + c1 t + c2 t^2 in local coordinates
            let mut cuts = vec![-h, h];
            let (c0, c1, c2) = (p.c[0], p.c[1], p.c[2]);
            if c2.abs() > 1e-14 * (c0.abs() + c1.abs() + 1.0) {
                let disc = c1 * c1 - 4.0 * c2 * c0;
                if disc > 0.0 {
                    let sq = disc.sqrt();
                    // numerically stable quadratic roots
                    let q = -0.5 * (c1 + c1.signum() * sq);
                    let r1 = q / c2;
                    let r2 = if q.abs() > 0.0 { c0 / q } else { r1 };
                    for r in [r1, r2] {
                        if r > -h && r < h {
                            cuts.push(r);
                        }
                    }
                }
            } else if c1.abs() > 1e-300 {
                let r = -c0 / c1;
                if r > -h && r < h {
                    cuts.push(r);
                }
            }
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for win in cuts.windows(2) {
                let (a, b) = (win[0], win[1]);
                if b - a < 1e-14 {
                    continue;
                }
                let tm = 0.5 * (a + b);
                if c0 + tm * (c1 + tm * c2) < 0.0 {
                    continue;
                }
                // re-centre the kept sub-interval; untouched ends keep their
                // exact original coordinates so adjacent pieces stay sealed
                let mid_old = p.mid();
                let lo = if a == -h { p.lo } else { mid_old + a };
                let hi = if b == h { p.hi } else { mid_old + b };
                let shift = 0.5 * (a + b);
                // p(t) = c0 + c1 t + c2 t^2, t = s + shift
                let nc0 = c0 + shift * (c1 + shift * c2);
                let nc1 = c1 + 2.0 * c2 * shift;
                out.push(Piece {
                    lo,
                    hi,
                    c: [nc0.max(0.0), nc1, c2],
                });
            }
        }
        Self { pieces: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::quad::adaptive_simpson_c;
    use approx::assert_abs_diff_eq;

    fn quad_ft(p: &PiecewisePoly, w: Complex64, xw: bool) -> Complex64 {
        let (lo, hi) = p.domain().unwrap();
        adaptive_simpson_c(
            |x| {
                let v = p.eval(x) * if xw { x } else { 1.0 };
                (Complex64::new(0.0, 1.0) * w * x).exp() * v
            },
            lo,
            hi,
            1e-13,
        )
    }

    #[test]
    fn hat_function_transform_is_analytic() {
        // hat on [-1, 1]: FT = (2/u^2)(1 - cos u) = sinc^2(u/2)
        let p = PiecewisePoly::linear_interpolant(&[-1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]);
        for u in [0.0, 0.3, 2.0, 17.5, -8.1] {
            let got = p.ft(Complex64::new(u, 0.0), false);
            let want = if u == 0.0 {
                1.0
            } else {
                2.0 * (1.0 - u.cos()) / (u * u)
            };
            assert_abs_diff_eq!(got.re, want, epsilon = 1e-12);
            assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn ft_matches_quadrature_on_strip() {
        let xs = [-1.5, -0.8, -0.2, 0.1, 0.9, 1.4];
        let ys = [0.1, 0.7, 1.2, 1.0, 0.4, 0.05];
        let p = PiecewisePoly::linear_interpolant(&xs, &ys);
        for w in [
            Complex64::new(3.0, 0.0),
            Complex64::new(-12.0, 1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(45.0, 0.5),
            Complex64::new(1e-7, 0.0),
        ] {
            for xw in [false, true] {
                let got = p.ft(w, xw);
                let want = quad_ft(&p, w, xw);
                assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-10);
                assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn clip_removes_negative_lobes_exactly() {
        // parabola 1 - x^2 on [-2, 2]: negative outside [-1, 1]
        let p = PiecewisePoly {
            pieces: vec![Piece {
                lo: -2.0,
                hi: 2.0,
                c: [1.0, 0.0, -1.0],
            }],
        };
        let clipped = p.clip_nonnegative();
        assert_abs_diff_eq!(clipped.eval(0.0), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(clipped.eval(1.5), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(clipped.eval(-0.5), 0.75, epsilon = 1e-14);
        // integral of (1-x^2)_+ = 4/3
        assert_abs_diff_eq!(clipped.integral(), 4.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn linearity_of_transform() {
        let xs = [-1.0, 0.0, 1.0];
        let p1 = PiecewisePoly::linear_interpolant(&xs, &[0.2, 0.9, 0.1]);
        let p2 = PiecewisePoly::linear_interpolant(&xs, &[0.5, 0.3, 0.8]);
        let sum = PiecewisePoly::linear_interpolant(&xs, &[0.7, 1.2, 0.9]);
        let w = Complex64::new(7.3, 0.6);
        let lhs = sum.ft(w, false);
        let rhs = p1.ft(w, false) + p2.ft(w, false);
        assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-12);
        assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-12);
    }
}
