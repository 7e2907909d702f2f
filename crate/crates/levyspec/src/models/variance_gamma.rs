//! Variance gamma process: Brownian motion with drift `theta` and scale
//! `sigma`, time-changed by a Gamma subordinator with variance rate `rho`.
//!
//! The k-function is
//! `k(x) = (1/rho) e^{x/eta_m}` for `x < 0` and `(1/rho) e^{-x/eta_p}` for
//! `x >= 0`, with `eta_{p,m} = sqrt(theta^2 rho^2/4 + sigma^2 rho/2) +/- theta rho/2`.
//! The characteristic exponent consistent with this k-function is
//! `psi(w) = i gamma w - (1/rho) log(1 - i theta rho w + sigma^2 rho w^2 / 2)`,
//! i.e. the time-changed-Brownian form `E[exp(s G_t)]` with
//! `s = i theta w - sigma^2 w^2/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VgParams {
    /// Scale of the subordinated Brownian motion.
    pub sigma: f64,
    /// Variance rate of the Gamma subordinator.
    pub rho: f64,
    /// Drift of the subordinated Brownian motion.
    pub theta: f64,
    /// Martingale drift (per year).
    pub gamma: f64,
}

impl VgParams {
    /// Parameters of Example 2: sigma = 1.2, rho = 0.2, theta = -0.15, with
    /// the drift from the martingale condition.
    pub fn example() -> Self {
        Self::with_martingale_drift(1.2, 0.2, -0.15)
    }

    /// `gamma = (1/rho) log(1 - theta rho - sigma^2 rho / 2)`, the value that
    /// makes `psi(-i) = 0`.
    pub fn with_martingale_drift(sigma: f64, rho: f64, theta: f64) -> Self {
        let gamma = (1.0 - theta * rho - 0.5 * sigma * sigma * rho).ln() / rho;
        VgParams {
            sigma,
            rho,
            theta,
            gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma <= 0.0 || self.rho <= 0.0 {
            return Err(Error::InvalidModel(
                "variance gamma requires sigma > 0 and rho > 0".into(),
            ));
        }
        let ep = self.eta_p();
        if !(0.0..1.0).contains(&ep) {
            return Err(Error::InvalidModel(format!(
                "eta_p = {ep} outside (0,1): exponential moment diverges"
            )));
        }
        Ok(())
    }

    fn eta_root(&self) -> f64 {
        (0.25 * self.theta * self.theta * self.rho * self.rho
            + 0.5 * self.sigma * self.sigma * self.rho)
            .sqrt()
    }

    /// Decay scale of positive jumps.
    pub fn eta_p(&self) -> f64 {
        self.eta_root() + 0.5 * self.theta * self.rho
    }

    /// Decay scale of negative jumps.
    pub fn eta_m(&self) -> f64 {
        self.eta_root() - 0.5 * self.theta * self.rho
    }

    /// `alpha = k(0+) + k(0-) = 2/rho`.
    pub fn alpha(&self) -> f64 {
        2.0 / self.rho
    }

    pub fn k_at(&self, x: f64) -> f64 {
        if x < 0.0 {
            (x / self.eta_m()).exp() / self.rho
        } else {
            (-x / self.eta_p()).exp() / self.rho
        }
    }

    fn log_base(&self, w: Complex64) -> Result<Complex64> {
        let base = Complex64::new(1.0, 0.0) - Complex64::new(0.0, 1.0) * (self.theta * self.rho) * w
            + 0.5 * self.sigma * self.sigma * self.rho * w * w;
        if base.re <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "variance gamma log base crossed the branch cut at w = {w}"
            )));
        }
        Ok(base)
    }

    /// Characteristic exponent; NaN outside the admissible strip.
    pub fn char_exponent(&self, w: Complex64) -> Complex64 {
        match self.log_base(w) {
            Ok(base) => Complex64::new(0.0, 1.0) * self.gamma * w - base.ln() / self.rho,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    /// Characteristic function `phi_t(w) = exp(t psi(w))`, with the branch
    /// crossing reported as a domain error.
    pub fn char_fn(&self, w: Complex64, t: f64) -> Result<Complex64> {
        let base = self.log_base(w)?;
        Ok(((Complex64::new(0.0, 1.0) * self.gamma * w - base.ln() / self.rho) * t).exp())
    }

    pub fn char_exponent_d1(&self, w: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let base = match self.log_base(w) {
            Ok(b) => b,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        i * self.gamma - (-i * self.theta + self.sigma * self.sigma * w) / base
    }

    pub fn char_exponent_d2(&self, w: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let base = match self.log_base(w) {
            Ok(b) => b,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        let num = -i * self.theta + self.sigma * self.sigma * w;
        -self.sigma * self.sigma / base + self.rho * num * num / (base * base)
    }
}
