//! Nonparametric grid models: a finite-activity triplet with a sampled jump
//! density, and a self-decomposable pair with a sampled k-function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::num::expint::ein;
use crate::num::gridfn::GridFn;
use crate::num::pwpoly::PiecewisePoly;

/// Finite-activity model `(sigma^2, gamma, nu)` with `nu` a sampled density.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FaGridModel {
    pub sigma2: f64,
    pub gamma: f64,
    pub nu: GridFn,
}

impl FaGridModel {
    pub fn validate(&self) -> Result<()> {
        if self.sigma2 < 0.0 {
            return Err(Error::InvalidModel("sigma2 must be nonnegative".into()));
        }
        if self.nu.values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidModel(
                "nu must be nonnegative and finite pointwise".into(),
            ));
        }
        Ok(())
    }

    /// Total jump mass `lambda = integral nu`.
    pub fn lambda(&self) -> f64 {
        self.nu.mass()
    }

    /// Drift from the martingale condition for the sampled density.
    pub fn martingale_drift(sigma2: f64, nu: &GridFn) -> f64 {
        let exp_moment = nu.ft(Complex64::new(0.0, -1.0)).re - nu.mass();
        -0.5 * sigma2 - exp_moment
    }

    pub fn char_exponent(&self, w: Complex64) -> Complex64 {
        -0.5 * self.sigma2 * w * w
            + Complex64::new(0.0, 1.0) * self.gamma * w
            + self.nu.ft(w)
            - self.nu.mass()
    }

    pub fn char_exponent_d1(&self, w: Complex64) -> Complex64 {
        -self.sigma2 * w + Complex64::new(0.0, 1.0) * self.gamma + self.nu.ft_deriv(w)
    }
}

/// Self-decomposable model `(gamma, k)` with `nu(dx) = k(x)/|x| dx` and
/// `sigma = 0`. The k samples live on a midpoint-offset grid (no sample at
/// the origin); each half line is the linear interpolant of its samples,
/// extrapolated to the origin and ramped to zero past the last sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdGridModel {
    pub gamma: f64,
    pub k: GridFn,
    #[serde(skip)]
    halves: OnceLock<(HalfLine, HalfLine)>,
}

/// One half line of the k-function: nodes and values, nodes strictly
/// monotone moving away from the origin, first node at 0.
#[derive(Debug, Clone)]
struct HalfLine {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl HalfLine {
    fn positive(k: &GridFn) -> Self {
        let n = k.grid.n;
        let first = n / 2;
        let mut nodes = Vec::with_capacity(n / 2 + 2);
        let mut values = Vec::with_capacity(n / 2 + 2);
        // linear extrapolation of the first cell back to the origin
        let k0 = if n / 2 + 1 < n {
            (1.5 * k.values[first] - 0.5 * k.values[first + 1]).max(0.0)
        } else {
            k.values[first].max(0.0)
        };
        nodes.push(0.0);
        values.push(k0);
        for i in first..n {
            nodes.push(k.grid.x(i));
            values.push(k.values[i]);
        }
        nodes.push(k.grid.x(n - 1) + k.grid.dx);
        values.push(0.0);
        HalfLine { nodes, values }
    }

    fn negative(k: &GridFn) -> Self {
        let n = k.grid.n;
        let last = n / 2 - 1;
        let mut nodes = Vec::with_capacity(n / 2 + 2);
        let mut values = Vec::with_capacity(n / 2 + 2);
        let k0 = if last >= 1 {
            (1.5 * k.values[last] - 0.5 * k.values[last - 1]).max(0.0)
        } else {
            k.values[last].max(0.0)
        };
        nodes.push(0.0);
        values.push(k0);
        for i in (0..=last).rev() {
            nodes.push(k.grid.x(i));
            values.push(k.values[i]);
        }
        nodes.push(k.grid.x(0) - k.grid.dx);
        values.push(0.0);
        HalfLine { nodes, values }
    }

    /// `integral_{half line} (e^{iwx} - 1) k(x)/|x| dx` via per-cell closed
    /// forms: linear cells split into a constant-over-x part (entire
    /// exponential integral) and a polynomial part.
    fn jump_ft(&self, w: Complex64) -> Complex64 {
        let mut terms = Vec::with_capacity(self.nodes.len());
        let miw = -Complex64::new(0.0, 1.0) * w;
        let mut ein_prev = Complex64::default(); // Ein(0) = 0
        for j in 1..self.nodes.len() {
            let (a, b) = (self.nodes[j - 1], self.nodes[j]);
            let (ka, kb) = (self.values[j - 1], self.values[j]);
            let slope = (kb - ka) / (b - a);
            let intercept = ka - slope * a;
            let ein_b = ein(miw * b);
            // integral (e^{iwx} - 1) dx over [a, b], stable for small w
            let g = |x: f64| {
                if x == 0.0 {
                    Complex64::default()
                } else {
                    let z = Complex64::new(0.0, 1.0) * w * x;
                    // (e^z - 1 - z)/z * x = (e^{iwx} - 1)/iw - x
                    (crate::num::expm1_over(z) - 1.0) * x
                }
            };
            // On both half lines the outward orientation cancels against the
            // sign of 1/|x|, leaving one formula for the cell contribution.
            let elem = g(b) - g(a);
            terms.push(slope * elem + intercept * (ein_prev - ein_b));
            ein_prev = ein_b;
        }
        crate::num::pairwise_sum(&terms)
    }

    fn as_pwpoly(&self) -> PiecewisePoly {
        if self.nodes[1] > 0.0 {
            PiecewisePoly::linear_interpolant(&self.nodes, &self.values)
        } else {
            let nodes: Vec<f64> = self.nodes.iter().rev().copied().collect();
            let values: Vec<f64> = self.values.iter().rev().copied().collect();
            PiecewisePoly::linear_interpolant(&nodes, &values)
        }
    }
}

impl SdGridModel {
    pub fn new(gamma: f64, k: GridFn) -> Self {
        SdGridModel {
            gamma,
            k,
            halves: OnceLock::new(),
        }
    }

    /// Validating constructor for external inputs: requires nonnegative
    /// samples, increasing on the negative half line and decreasing on the
    /// positive one.
    pub fn new_checked(gamma: f64, k: GridFn) -> Result<Self> {
        if k.grid.n % 2 != 0 {
            return Err(Error::InvalidModel(
                "k grid must have an even sample count".into(),
            ));
        }
        if k.values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidModel("k must be nonnegative".into()));
        }
        let half = k.grid.n / 2;
        for i in 1..half {
            if k.values[i] + 1e-12 < k.values[i - 1] {
                return Err(Error::InvalidModel(
                    "k must be increasing on the negative half line".into(),
                ));
            }
        }
        for i in half + 1..k.grid.n {
            if k.values[i] > k.values[i - 1] + 1e-12 {
                return Err(Error::InvalidModel(
                    "k must be decreasing on the positive half line".into(),
                ));
            }
        }
        Ok(Self::new(gamma, k))
    }

    fn halves(&self) -> &(HalfLine, HalfLine) {
        self.halves.get_or_init(|| {
            (HalfLine::negative(&self.k), HalfLine::positive(&self.k))
        })
    }

    pub fn k0_plus(&self) -> f64 {
        self.halves().1.values[0]
    }

    pub fn k0_minus(&self) -> f64 {
        self.halves().0.values[0]
    }

    /// `alpha = k(0+) + k(0-)`.
    pub fn alpha(&self) -> f64 {
        self.k0_plus() + self.k0_minus()
    }

    pub fn k_at(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.5 * self.alpha();
        }
        let (neg, pos) = self.halves();
        let h = if x > 0.0 { pos } else { neg };
        if x.abs() <= h.nodes[1].abs() {
            // first cell: interpolate between the origin extrapolation and
            // the first sample
            let t = x.abs() / h.nodes[1].abs();
            return h.values[0] * (1.0 - t) + h.values[1] * t;
        }
        self.k.eval(x)
    }

    /// `integral (e^{iwx} - 1) k(x)/|x| dx` over both half lines.
    pub fn jump_ft(&self, w: Complex64) -> Complex64 {
        let (neg, pos) = self.halves();
        neg.jump_ft(w) + pos.jump_ft(w)
    }

    /// Drift from the martingale condition.
    pub fn martingale_drift(k: &GridFn) -> f64 {
        let model = SdGridModel::new(0.0, k.clone());
        -model.jump_ft(Complex64::new(0.0, -1.0)).re
    }

    pub fn char_exponent(&self, w: Complex64) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.gamma * w + self.jump_ft(w)
    }

    /// `psi'(w) = i gamma + i F[sgn k](w)`, with the transform of the signed
    /// k-function evaluated exactly on the piecewise-linear representation.
    pub fn char_exponent_d1(&self, w: Complex64) -> Complex64 {
        let (neg, pos) = self.halves();
        let f_sgn_k = pos.as_pwpoly().ft(w, false) - neg.as_pwpoly().ft(w, false);
        Complex64::new(0.0, 1.0) * (f_sgn_k + self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::merton::MertonParams;
    use crate::models::variance_gamma::VgParams;
    use crate::num::gridfn::UniformGrid;
    use crate::num::quad::adaptive_simpson_c;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sampled_merton_matches_closed_form_exponent() {
        let m = MertonParams::example();
        let grid = UniformGrid::default_model_grid();
        let nu = GridFn::from_fn(grid, |x| m.nu_at(x));
        let fa = FaGridModel {
            sigma2: m.sigma * m.sigma,
            gamma: m.gamma,
            nu,
        };
        let mut worst: f64 = 0.0;
        let mut u = -60.0;
        while u <= 60.0 {
            let w = Complex64::new(u, 0.0);
            let diff = (fa.char_exponent(w) - m.char_exponent(w)).norm();
            worst = worst.max(diff);
            u += 1.37;
        }
        assert!(worst < 1e-6, "sup deviation {worst}");
    }

    #[test]
    fn sampled_martingale_drift_closes_equation() {
        let m = MertonParams::example();
        let grid = UniformGrid::default_model_grid();
        let nu = GridFn::from_fn(grid, |x| m.nu_at(x));
        let gamma = FaGridModel::martingale_drift(m.sigma * m.sigma, &nu);
        let fa = FaGridModel {
            sigma2: m.sigma * m.sigma,
            gamma,
            nu,
        };
        let psi_mi = fa.char_exponent(Complex64::new(0.0, -1.0));
        assert_abs_diff_eq!(psi_mi.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gamma, m.gamma, epsilon = 1e-4);
    }

    fn vg_k_grid(n: usize) -> (VgParams, GridFn) {
        let vg = VgParams::example();
        let grid = UniformGrid::with_half_width(5.0, n);
        (vg, GridFn::from_fn(grid, |x| vg.k_at(x)))
    }

    #[test]
    fn sd_jump_transform_matches_adaptive_quadrature() {
        let (vg, k) = vg_k_grid(4096);
        let sd = SdGridModel::new(vg.gamma, k);
        for w in [
            Complex64::new(2.5, 0.0),
            Complex64::new(-17.0, 0.0),
            Complex64::new(40.0, -1.0),
            Complex64::new(0.3, -0.5),
        ] {
            let want = adaptive_simpson_c(
                |x| {
                    if x.abs() < 1e-300 {
                        return Complex64::default();
                    }
                    ((Complex64::new(0.0, 1.0) * w * x).exp() - 1.0)
                        * Complex64::new(sd.k_at(x) / x.abs(), 0.0)
                },
                -5.0 - sd.k.grid.dx,
                5.0 + sd.k.grid.dx,
                1e-11,
            );
            let got = sd.jump_ft(w);
            assert_abs_diff_eq!(got.re, want.re, epsilon = 3e-7);
            assert_abs_diff_eq!(got.im, want.im, epsilon = 3e-7);
        }
    }

    #[test]
    fn sd_exponent_close_to_vg_closed_form() {
        // the grid truncates the k tails at |x| = 5 and interpolates k
        // linearly, so agreement is at the representation scale, not machine
        // precision
        let (vg, k) = vg_k_grid(8192);
        let sd = SdGridModel::new(vg.gamma, k);
        for u in [1.0, 8.0, 25.0] {
            let w = Complex64::new(u, 0.0);
            let diff = (sd.char_exponent(w) - vg.char_exponent(w)).norm();
            assert!(diff < 1e-4, "u = {u}: diff = {diff}");
        }
    }

    #[test]
    fn sd_alpha_recovers_vg_alpha() {
        let (vg, k) = vg_k_grid(8192);
        let sd = SdGridModel::new(vg.gamma, k);
        assert_abs_diff_eq!(sd.alpha(), vg.alpha(), epsilon = 1e-4);
    }

    #[test]
    fn sd_psi_prime_matches_quadrature() {
        // psi'(w) = i gamma + i F[sgn k](w)
        let (vg, k) = vg_k_grid(4096);
        let sd = SdGridModel::new(vg.gamma, k);
        let w = Complex64::new(6.0, 0.0);
        let f_sgn = adaptive_simpson_c(
            |x| {
                Complex64::new(x.signum() * sd.k_at(x), 0.0)
                    * (Complex64::new(0.0, 1.0) * w * x).exp()
            },
            -5.1,
            5.1,
            1e-11,
        );
        let want = Complex64::new(0.0, 1.0) * (f_sgn + vg.gamma);
        let got = sd.char_exponent_d1(w);
        assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-6);
        assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-6);
    }
}
