//! Observed option quotes, the simulation design, and the fitted option
//! curve whose exact transforms feed the spectral estimators.

mod csvio;
mod spline;

pub use csvio::{infer_rate, load_quotes, load_quotes_from_reader};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::num::pwpoly::PiecewisePoly;
use crate::pricing::PriceEngine;

/// Observed option prices in option-function coordinates: strictly
/// increasing log-moneyness `x_j`, spot-relative prices `O_j` and noise
/// levels `delta_j`, for one maturity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuoteSet {
    pub x: Vec<f64>,
    pub o: Vec<f64>,
    pub delta: Vec<f64>,
    /// Time to maturity in years.
    pub t: f64,
    /// Riskless rate per year.
    pub r: f64,
    /// Spot used for normalisation.
    pub s0: f64,
}

impl QuoteSet {
    pub fn new(
        x: Vec<f64>,
        o: Vec<f64>,
        delta: Vec<f64>,
        t: f64,
        r: f64,
        s0: f64,
    ) -> Result<Self> {
        let q = QuoteSet {
            x,
            o,
            delta,
            t,
            r,
            s0,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.x.len();
        if n < 10 {
            return Err(Error::Data(format!("need at least 10 quotes, got {n}")));
        }
        if self.o.len() != n || self.delta.len() != n {
            return Err(Error::Data("quote columns have mismatched lengths".into()));
        }
        if self.x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Data("strikes must be strictly increasing".into()));
        }
        if self.delta.iter().any(|d| *d < 0.0) {
            return Err(Error::Data("noise levels must be nonnegative".into()));
        }
        if self.t <= 0.0 {
            return Err(Error::Data("maturity must be positive".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Noise measure `epsilon = Delta^{3/2} + Delta^{1/2} max_j delta_j` with
    /// `Delta` the largest design gap.
    pub fn noise_scale(&self) -> NoiseScale {
        let max_gap = self
            .x
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0f64, f64::max);
        let delta_sup = self.delta.iter().fold(0.0f64, |a, d| a.max(*d));
        NoiseScale {
            max_gap,
            epsilon: max_gap.powf(1.5) + max_gap.sqrt() * delta_sup,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NoiseScale {
    pub max_gap: f64,
    pub epsilon: f64,
}

/// Strike design: the `k/(N+1)`-quantiles, `k = 1..N`, of a centred normal
/// law with variance 1/2, concentrating points at the money.
pub fn design_points(n: usize) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0).unwrap();
    let scale = 0.5f64.sqrt();
    (1..=n)
        .map(|k| scale * normal.inverse_cdf(k as f64 / (n + 1) as f64))
        .collect()
}

/// Synthetic observations `O_j = O(x_j) + delta_j eps_j` with
/// `delta_j = tau O(x_j)` and standard normal errors, deterministic in the
/// seed.
pub fn simulate_quotes(
    engine: &PriceEngine,
    n: usize,
    tau: f64,
    r: f64,
    seed: u64,
) -> Result<QuoteSet> {
    use rand::SeedableRng;
    let xs = design_points(n);
    let truth = engine.price_at(&xs)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    Ok(simulate_from_truth(
        &xs,
        &truth,
        tau,
        engine.maturity(),
        r,
        &mut rng,
    ))
}

/// Noise injection step shared by `simulate_quotes` and the Monte Carlo
/// harness (which reuses precomputed exact prices across iterations).
pub fn simulate_from_truth(
    xs: &[f64],
    truth: &[f64],
    tau: f64,
    t: f64,
    r: f64,
    rng: &mut impl Rng,
) -> QuoteSet {
    let delta: Vec<f64> = truth.iter().map(|o| tau * o).collect();
    let o: Vec<f64> = truth
        .iter()
        .zip(&delta)
        .map(|(o, d)| {
            let eps: f64 = StandardNormal.sample(rng);
            o + d * eps
        })
        .collect();
    QuoteSet {
        x: xs.to_vec(),
        o,
        delta,
        t,
        r,
        s0: 1.0,
    }
}

/// Anything that can serve as an empirical option curve for the spectral
/// estimators: exact transforms on the strip plus bookkeeping.
pub trait CurveTransform: Sync {
    /// `F O(w)` (or `F[x O](w)` when `x_weight` is set) for `Im(w) in [0, 1]`.
    fn ft(&self, w: Complex64, x_weight: bool) -> Complex64;
    fn maturity(&self) -> f64;
    fn n_obs(&self) -> usize;
    /// Observation range `[x_1, x_N]`.
    fn domain(&self) -> (f64, f64);
}

/// Fitted option curve: a piecewise polynomial of degree 1 or 2 through the
/// quotes, zero outside the observation range, clipped at zero.
#[derive(Debug, Clone)]
pub struct OptionCurve {
    pub poly: PiecewisePoly,
    pub t: f64,
    pub r: f64,
    pub n_obs: usize,
    domain: (f64, f64),
}

impl OptionCurve {
    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x)
    }
}

impl CurveTransform for OptionCurve {
    fn ft(&self, w: Complex64, x_weight: bool) -> Complex64 {
        self.poly.ft(w, x_weight)
    }

    fn maturity(&self) -> f64 {
        self.t
    }

    fn n_obs(&self) -> usize {
        self.n_obs
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Fit the empirical option curve. Degree 1 interpolates the quotes exactly;
/// degree 2 performs least squares on the quadratic B-spline basis with
/// knots at the data points, which smooths the noise into a C^1 curve.
/// Negative parts are clipped to zero either way.
pub fn fit_curve(quotes: &QuoteSet, degree: u8) -> Result<OptionCurve> {
    quotes.validate()?;
    let poly = match degree {
        1 => PiecewisePoly::linear_interpolant(&quotes.x, &quotes.o),
        2 => spline::quadratic_lsq(&quotes.x, &quotes.o)?,
        d => {
            return Err(Error::Data(format!(
                "spline degree must be 1 or 2, got {d}"
            )))
        }
    };
    Ok(OptionCurve {
        poly: poly.clip_nonnegative(),
        t: quotes.t,
        r: quotes.r,
        n_obs: quotes.len(),
        domain: (quotes.x[0], quotes.x[quotes.len() - 1]),
    })
}
