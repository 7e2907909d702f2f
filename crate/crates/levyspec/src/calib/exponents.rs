//! Empirical characteristic exponents on a cached frequency grid.
//!
//! From the fitted curve transform the cache holds, for `u >= 0`,
//!
//! * `psi_mi(u) = (1/T) log(1 + iu(1+iu) F O(u))` (the exponent shifted by
//!   `-i`),
//! * `psi(u) = (1/T) log(1 - u(u+i) F O(u+i))`,
//! * `psi_prime(u)`, the derivative identity with a truncated denominator,
//! * the empirical characteristic function on both lines, clamped away from
//!   zero at magnitude `N^{-1/2}`.
//!
//! Negative frequencies follow from the curve being real: `psi(-u)` is the
//! conjugate of `psi(u)` and `psi'(-u)` its negated conjugate. Complex logs
//! use the branch unwound outward from `u = 0`, where both arguments are 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::market::CurveTransform;

pub struct SpectralCache {
    pub du: f64,
    pub t: f64,
    pub n_obs: usize,
    /// Observation range of the underlying curve.
    pub domain: (f64, f64),
    /// `F O(u)` for `u = m du`.
    pub fo_u: Vec<Complex64>,
    /// `F O(u + i)`.
    pub fo_ui: Vec<Complex64>,
    /// `F [x O](u + i)`.
    pub fxo_ui: Vec<Complex64>,
    pub psi_mi: Vec<Complex64>,
    pub psi: Vec<Complex64>,
    pub psi_prime: Vec<Complex64>,
    /// Clamped `phi_T(u - i)`.
    pub phi_mi: Vec<Complex64>,
    /// Clamped `phi_T(u)`.
    pub phi: Vec<Complex64>,
}

/// Unwind the arguments of `z` along the grid, starting from `z_0` with
/// phase 0 (both log arguments equal 1 at `u = 0`).
fn unwound_log(z: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(z.len());
    let mut theta = 0.0f64;
    for (m, zm) in z.iter().enumerate() {
        let r = zm.norm();
        if r < 1e-12 {
            return Err(Error::IllConditioned {
                u: m as f64,
                magnitude: r,
            });
        }
        if m == 0 {
            theta = zm.arg();
        } else {
            // increment wrapped to (-pi, pi]: a 2 pi jump detector per step
            theta += (zm * z[m - 1].conj()).arg();
        }
        out.push(Complex64::new(r.ln(), theta));
    }
    Ok(out)
}

fn clamp_away_from_zero(z: Complex64, floor: f64) -> Complex64 {
    let r = z.norm();
    if r >= floor {
        z
    } else if r == 0.0 {
        Complex64::new(floor, 0.0)
    } else {
        z * (floor / r)
    }
}

impl SpectralCache {
    /// Build the cache over `u in [0, u_max]` with spacing `du`.
    pub fn new(curve: &dyn CurveTransform, u_max: f64, du: f64) -> Result<Self> {
        let t = curve.maturity();
        if t <= 0.0 {
            return Err(Error::Data("curve maturity must be positive".into()));
        }
        let n = (u_max / du).ceil() as usize + 1;
        let i = Complex64::new(0.0, 1.0);
        let mut fo_u = Vec::with_capacity(n);
        let mut fo_ui = Vec::with_capacity(n);
        let mut fxo_ui = Vec::with_capacity(n);
        for m in 0..n {
            let u = m as f64 * du;
            fo_u.push(curve.ft(Complex64::new(u, 0.0), false));
            fo_ui.push(curve.ft(Complex64::new(u, 1.0), false));
            fxo_ui.push(curve.ft(Complex64::new(u, 1.0), true));
        }
        // log arguments
        let arg_mi: Vec<Complex64> = (0..n)
            .map(|m| {
                let u = m as f64 * du;
                let iu = i * u;
                Complex64::new(1.0, 0.0) + iu * (1.0 + iu) * fo_u[m]
            })
            .collect();
        let arg_psi: Vec<Complex64> = (0..n)
            .map(|m| {
                let u = Complex64::new(m as f64 * du, 0.0);
                Complex64::new(1.0, 0.0) - u * (u + i) * fo_ui[m]
            })
            .collect();
        let log_mi = unwound_log(&arg_mi).map_err(|e| rescale_u(e, du))?;
        let log_psi = unwound_log(&arg_psi).map_err(|e| rescale_u(e, du))?;
        let psi_mi: Vec<Complex64> = log_mi.iter().map(|l| l / t).collect();
        let psi: Vec<Complex64> = log_psi.iter().map(|l| l / t).collect();

        let floor = 1.0 / (curve.n_obs() as f64).sqrt();
        let phi_mi: Vec<Complex64> = arg_mi
            .iter()
            .map(|z| clamp_away_from_zero(*z, floor))
            .collect();
        let phi: Vec<Complex64> = arg_psi
            .iter()
            .map(|z| clamp_away_from_zero(*z, floor))
            .collect();

        // psi'(u) with the same truncation applied to its denominator
        let psi_prime: Vec<Complex64> = (0..n)
            .map(|m| {
                let u = m as f64 * du;
                let uc = Complex64::new(u, 0.0);
                let numer = (uc - i * u * u) * fxo_ui[m] - (2.0 * uc + i) * fo_ui[m];
                numer / (t * phi[m])
            })
            .collect();

        Ok(SpectralCache {
            du,
            t,
            n_obs: curve.n_obs(),
            domain: curve.domain(),
            fo_u,
            fo_ui,
            fxo_ui,
            psi_mi,
            psi,
            psi_prime,
            phi_mi,
            phi,
        })
    }

    pub fn n_points(&self) -> usize {
        self.psi_mi.len()
    }

    pub fn u_max(&self) -> f64 {
        (self.n_points() - 1) as f64 * self.du
    }

    pub fn u(&self, m: usize) -> f64 {
        m as f64 * self.du
    }

    /// `2 integral_0^inf f(u) du` by trapezoid over the cached grid; the
    /// integrand callback receives `(m, u)` and must vanish beyond the
    /// intended cut-off (weights carry their own support).
    pub fn symmetric_integral(&self, mut f: impl FnMut(usize, f64) -> f64) -> f64 {
        let mut acc = 0.5 * f(0, 0.0);
        for m in 1..self.n_points() {
            acc += f(m, self.u(m));
        }
        2.0 * acc * self.du
    }

    /// Hermitian extension value `psi_mi(u)` for signed `u`.
    pub fn psi_mi_at(&self, m: usize, negative: bool) -> Complex64 {
        if negative {
            self.psi_mi[m].conj()
        } else {
            self.psi_mi[m]
        }
    }
}

fn rescale_u(e: Error, du: f64) -> Error {
    match e {
        Error::IllConditioned { u, magnitude } => Error::IllConditioned {
            u: u * du,
            magnitude,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{fit_curve, simulate_quotes, QuoteSet};
    use crate::models::{LevyModel, MertonParams};
    use crate::pricing::PriceEngine;
    use approx::assert_abs_diff_eq;

    fn dense_merton_cache(n: usize, u_max: f64) -> (LevyModel, SpectralCache) {
        let model = LevyModel::Merton(MertonParams::example());
        let engine = PriceEngine::new(&model, 0.25).unwrap();
        // uniform dense zero-noise quotes over a wide range
        let xs: Vec<f64> = (0..n).map(|j| -2.5 + 5.0 * j as f64 / (n - 1) as f64).collect();
        let truth = engine.price_at(&xs).unwrap();
        let q = QuoteSet {
            x: xs,
            o: truth,
            delta: vec![0.0; n],
            t: 0.25,
            r: 0.06,
            s0: 1.0,
        };
        let curve = fit_curve(&q, 1).unwrap();
        let cache = SpectralCache::new(&curve, u_max, 0.05).unwrap();
        (model, cache)
    }

    #[test]
    fn psi_mi_vanishes_at_zero() {
        let (_, cache) = dense_merton_cache(2000, 10.0);
        assert_abs_diff_eq!(cache.psi_mi[0].norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn zero_noise_dense_quotes_recover_exponent_mid_band() {
        // moderate frequencies: the fitted-curve exponents track the closed
        // form at the interpolation-bias scale
        let (model, cache) = dense_merton_cache(60_000, 20.0);
        let mut worst: f64 = 0.0;
        for m in 0..cache.n_points() {
            let u = cache.u(m);
            let want = model.char_exponent(Complex64::new(u, -1.0));
            let got = cache.psi_mi[m];
            worst = worst.max((got - want).norm());
        }
        assert!(worst < 1e-6, "sup deviation {worst}");
    }

    #[test]
    fn empirical_cf_is_one_at_origin_and_u_independent() {
        let (model, cache) = dense_merton_cache(20_000, 30.0);
        // phi_T(-i) corresponds to m = 0 on the shifted line and must be 1
        assert_abs_diff_eq!(cache.phi_mi[0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cache.phi_mi[0].im, 0.0, epsilon = 1e-12);
        // and the unshifted line tracks the true characteristic function
        for m in (0..cache.n_points()).step_by(97) {
            let u = cache.u(m);
            let want = model.char_fn(Complex64::new(u, 0.0), 0.25);
            assert!((cache.phi[m] - want).norm() < 1e-4);
        }
    }

    #[test]
    fn noisy_curve_conjugation_symmetry_is_structural() {
        // conjugation symmetry for real curves is encoded in the accessors
        let model = LevyModel::Merton(MertonParams::example());
        let engine = PriceEngine::new(&model, 0.25).unwrap();
        let q = simulate_quotes(&engine, 50, 0.01, 0.06, 11).unwrap();
        let curve = fit_curve(&q, 1).unwrap();
        let cache = SpectralCache::new(&curve, 20.0, 0.05).unwrap();
        let m = 137;
        assert_eq!(cache.psi_mi_at(m, true), cache.psi_mi[m].conj());
        // psi' picks up a sign under conjugation (derivative of a Hermitian
        // function): check against a direct evaluation at negative u
        let u = cache.u(m);
        let i = Complex64::new(0.0, 1.0);
        let w = Complex64::new(-u, 1.0);
        let fo = curve.ft(w, false);
        let fxo = curve.ft(w, true);
        let un = Complex64::new(-u, 0.0);
        let denom_raw = Complex64::new(1.0, 0.0) - un * (un + i) * fo;
        let floor = 1.0 / (curve.n_obs() as f64).sqrt();
        let denom = if denom_raw.norm() >= floor {
            denom_raw
        } else {
            denom_raw * (floor / denom_raw.norm())
        };
        let neg = ((un - i * un * un) * fxo - (2.0 * un + i) * fo) / (0.25 * denom);
        let pos = cache.psi_prime[m];
        assert_abs_diff_eq!(neg.re, -pos.re, epsilon = 1e-10);
        assert_abs_diff_eq!(neg.im, pos.im, epsilon = 1e-10);
    }

    #[test]
    fn truncation_floor_is_exact_when_active() {
        let model = LevyModel::Merton(MertonParams::example());
        let engine = PriceEngine::new(&model, 0.25).unwrap();
        let q = simulate_quotes(&engine, 100, 0.01, 0.06, 3).unwrap();
        let curve = fit_curve(&q, 1).unwrap();
        let cache = SpectralCache::new(&curve, 60.0, 0.05).unwrap();
        let floor = 1.0 / (100.0f64).sqrt();
        let mut activated = 0;
        for z in &cache.phi {
            assert!(z.norm() >= floor - 1e-14);
            if (z.norm() - floor).abs() < 1e-12 {
                activated += 1;
            }
        }
        assert!(activated > 0, "expected the clamp to bind somewhere at N = 100");
    }
}
