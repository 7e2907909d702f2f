//! Model families: Merton jump diffusion and variance gamma as parametric
//! references, plus nonparametric grid models produced by calibration.

mod grids;
mod merton;
mod variance_gamma;

pub use grids::{FaGridModel, SdGridModel};
pub use merton::MertonParams;
pub use variance_gamma::VgParams;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::num::gridfn::{GridFn, UniformGrid};

/// Any supported Levy model. Parameter files use the tagged JSON layout
/// `{"model": "merton" | "vg" | "fa-grid" | "sd-grid", ...}`; grid models
/// carry `{"x0", "dx", "values"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum LevyModel {
    #[serde(rename = "merton")]
    Merton(MertonParams),
    #[serde(rename = "vg")]
    VarianceGamma(VgParams),
    #[serde(rename = "fa-grid", with = "fa_grid_repr")]
    FaGrid(FaGridModel),
    #[serde(rename = "sd-grid", with = "sd_grid_repr")]
    SdGrid(SdGridModel),
}

impl LevyModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            LevyModel::Merton(m) => m.validate(),
            LevyModel::VarianceGamma(m) => m.validate(),
            LevyModel::FaGrid(m) => m.validate(),
            LevyModel::SdGrid(_) => Ok(()),
        }
    }

    /// Levy-Khintchine exponent `psi(w)` on the strip `Im(w) in [-1, 0]`.
    /// Inadmissible arguments yield non-finite values.
    pub fn char_exponent(&self, w: Complex64) -> Complex64 {
        match self {
            LevyModel::Merton(m) => m.char_exponent(w),
            LevyModel::VarianceGamma(m) => m.char_exponent(w),
            LevyModel::FaGrid(m) => m.char_exponent(w),
            LevyModel::SdGrid(m) => m.char_exponent(w),
        }
    }

    pub fn char_exponent_d1(&self, w: Complex64) -> Complex64 {
        match self {
            LevyModel::Merton(m) => m.char_exponent_d1(w),
            LevyModel::VarianceGamma(m) => m.char_exponent_d1(w),
            LevyModel::FaGrid(m) => m.char_exponent_d1(w),
            LevyModel::SdGrid(m) => m.char_exponent_d1(w),
        }
    }

    pub fn char_exponent_d2(&self, w: Complex64) -> Complex64 {
        match self {
            LevyModel::Merton(m) => m.char_exponent_d2(w),
            LevyModel::VarianceGamma(m) => m.char_exponent_d2(w),
            // exact first derivative, differenced; only feeds series limits
            _ => {
                let h = 1e-5;
                (self.char_exponent_d1(w + h) - self.char_exponent_d1(w - h)) / (2.0 * h)
            }
        }
    }

    /// Characteristic function `phi_t(w) = exp(t psi(w))`.
    pub fn char_fn(&self, w: Complex64, t: f64) -> Complex64 {
        (self.char_exponent(w) * t).exp()
    }

    /// Brownian variance component.
    pub fn sigma2(&self) -> f64 {
        match self {
            LevyModel::Merton(m) => m.sigma * m.sigma,
            LevyModel::VarianceGamma(_) | LevyModel::SdGrid(_) => 0.0,
            LevyModel::FaGrid(m) => m.sigma2,
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            LevyModel::Merton(m) => m.gamma,
            LevyModel::VarianceGamma(m) => m.gamma,
            LevyModel::FaGrid(m) => m.gamma,
            LevyModel::SdGrid(m) => m.gamma,
        }
    }

    /// Total jump mass for finite-activity models.
    pub fn lambda(&self) -> Option<f64> {
        match self {
            LevyModel::Merton(m) => Some(m.lambda),
            LevyModel::FaGrid(m) => Some(m.lambda()),
            _ => None,
        }
    }

    /// Jump density for finite-activity models.
    pub fn nu_at(&self, x: f64) -> Option<f64> {
        match self {
            LevyModel::Merton(m) => Some(m.nu_at(x)),
            LevyModel::FaGrid(m) => Some(m.nu.eval(x)),
            _ => None,
        }
    }

    /// k-function for self-decomposable models.
    pub fn k_at(&self, x: f64) -> Option<f64> {
        match self {
            LevyModel::VarianceGamma(m) => Some(m.k_at(x)),
            LevyModel::SdGrid(m) => Some(m.k_at(x)),
            _ => None,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            LevyModel::VarianceGamma(m) => Some(m.alpha()),
            LevyModel::SdGrid(m) => Some(m.alpha()),
            _ => None,
        }
    }

    /// `|psi(-i)|`; zero (to numerical precision) iff the discounted asset is
    /// a martingale.
    pub fn martingale_residual(&self) -> f64 {
        self.char_exponent(Complex64::new(0.0, -1.0)).norm()
    }

    /// Reference Brownian variance for pricing, deliberately offset from the
    /// model's own diffusion so the analytic reference leg never coincides
    /// with the model.
    pub fn reference_sigma2(&self) -> f64 {
        self.sigma2() + 0.02
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: LevyModel = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Drift that closes the martingale condition
/// `sigma^2/2 + gamma + integral (e^x - 1) nu(dx) = 0`, in closed form where
/// available and by exact grid quadrature otherwise.
pub fn martingale_drift(model: &LevyModel) -> f64 {
    match model {
        LevyModel::Merton(m) => {
            MertonParams::with_martingale_drift(m.sigma, m.lambda, m.eta, m.v).gamma
        }
        LevyModel::VarianceGamma(m) => {
            VgParams::with_martingale_drift(m.sigma, m.rho, m.theta).gamma
        }
        LevyModel::FaGrid(m) => FaGridModel::martingale_drift(m.sigma2, &m.nu),
        LevyModel::SdGrid(m) => SdGridModel::martingale_drift(&m.k),
    }
}

mod fa_grid_repr {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        sigma2: f64,
        gamma: Option<f64>,
        x0: f64,
        dx: f64,
        values: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(m: &FaGridModel, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            sigma2: m.sigma2,
            gamma: Some(m.gamma),
            x0: m.nu.grid.x0,
            dx: m.nu.grid.dx,
            values: m.nu.values.clone(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<FaGridModel, D::Error> {
        let r = Repr::deserialize(d)?;
        let grid = UniformGrid {
            x0: r.x0,
            dx: r.dx,
            n: r.values.len(),
        };
        let nu = GridFn::new(grid, r.values);
        let gamma = r
            .gamma
            .unwrap_or_else(|| FaGridModel::martingale_drift(r.sigma2, &nu));
        Ok(FaGridModel {
            sigma2: r.sigma2,
            gamma,
            nu,
        })
    }
}

mod sd_grid_repr {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        gamma: Option<f64>,
        x0: f64,
        dx: f64,
        values: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(m: &SdGridModel, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            gamma: Some(m.gamma),
            x0: m.k.grid.x0,
            dx: m.k.grid.dx,
            values: m.k.values.clone(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<SdGridModel, D::Error> {
        let r = Repr::deserialize(d)?;
        let grid = UniformGrid {
            x0: r.x0,
            dx: r.dx,
            n: r.values.len(),
        };
        let k = GridFn::new(grid, r.values);
        let gamma = r.gamma.unwrap_or_else(|| SdGridModel::martingale_drift(&k));
        SdGridModel::new_checked(gamma, k).map_err(serde::de::Error::custom)
    }
}
