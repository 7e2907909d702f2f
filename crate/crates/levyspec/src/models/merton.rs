//! Merton jump diffusion: Gaussian jumps with intensity `lambda`, jump mean
//! `eta` and jump standard deviation `v`, on top of a Brownian component.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MertonParams {
    /// Volatility of the Brownian component (per sqrt-year).
    pub sigma: f64,
    /// Drift (per year).
    pub gamma: f64,
    /// Jump intensity (per year).
    pub lambda: f64,
    /// Mean log-jump size.
    pub eta: f64,
    /// Log-jump standard deviation.
    pub v: f64,
}

impl MertonParams {
    pub fn validate(&self) -> Result<()> {
        if self.sigma < 0.0 || self.lambda < 0.0 || self.v <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "merton requires sigma >= 0, lambda >= 0, v > 0 (got sigma={}, lambda={}, v={})",
                self.sigma, self.lambda, self.v
            )));
        }
        Ok(())
    }

    /// Parameters of Example 1: eta = -0.1, v = 0.2, lambda = 5, sigma = 0.1,
    /// with the drift fixed by the martingale condition (0.379).
    pub fn example() -> Self {
        Self::with_martingale_drift(0.1, 5.0, -0.1, 0.2)
    }

    /// Construct with `gamma = -sigma^2/2 - integral (e^x - 1) nu(dx)` so that
    /// the discounted asset is a martingale.
    pub fn with_martingale_drift(sigma: f64, lambda: f64, eta: f64, v: f64) -> Self {
        let gamma = -0.5 * sigma * sigma - lambda * ((eta + 0.5 * v * v).exp() - 1.0);
        MertonParams {
            sigma,
            gamma,
            lambda,
            eta,
            v,
        }
    }

    /// Levy density `nu(x) = lambda phi((x - eta)/v)/v`.
    pub fn nu_at(&self, x: f64) -> f64 {
        let z = (x - self.eta) / self.v;
        self.lambda * (-0.5 * z * z).exp() / (self.v * (2.0 * std::f64::consts::PI).sqrt())
    }

    /// Characteristic exponent on the strip, using the closed form of the
    /// jump integral: `lambda (exp(i w eta - v^2 w^2 / 2) - 1)`.
    pub fn char_exponent(&self, w: Complex64) -> Complex64 {
        let iw = Complex64::new(0.0, 1.0) * w;
        -0.5 * self.sigma * self.sigma * w * w
            + iw * self.gamma
            + self.lambda * ((iw * self.eta - 0.5 * self.v * self.v * w * w).exp() - 1.0)
    }

    pub fn char_exponent_d1(&self, w: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let g = i * self.eta - self.v * self.v * w;
        -self.sigma * self.sigma * w
            + i * self.gamma
            + self.lambda * (i * w * self.eta - 0.5 * self.v * self.v * w * w).exp() * g
    }

    pub fn char_exponent_d2(&self, w: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let g = i * self.eta - self.v * self.v * w;
        Complex64::new(-self.sigma * self.sigma, 0.0)
            + self.lambda
                * (i * w * self.eta - 0.5 * self.v * self.v * w * w).exp()
                * (g * g - self.v * self.v)
    }
}
