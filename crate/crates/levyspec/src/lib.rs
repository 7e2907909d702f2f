//! Nonparametric calibration of exponential Levy models from European option
//! prices, following the spectral cut-off approach.
//!
//! The asset is modelled as `S_t = S_0 exp(r t + X_t)` with `X` a Levy process
//! under the pricing measure. Two non-overlapping model classes are supported:
//!
//! * finite activity (FA): jump diffusions with triplet `(sigma^2, gamma, nu)`
//!   and finite jump mass `lambda = integral of nu`;
//! * self-decomposable (SD): pure-jump processes with `nu(dx) = k(x)/|x| dx`,
//!   `k` monotone on each half line and `alpha = k(0+) + k(0-)` finite.
//!
//! Prices enter through the option function `O(x)` (spot-normalised put/call
//! prices over negative log-moneyness `x = log(K/S_0) - r T`), whose Fourier
//! transform determines the characteristic exponent. Estimators for the model
//! characteristics are weighted spectral functionals cut off at a frequency
//! `U`; finite-sample variances of their linearised errors yield confidence
//! intervals for every estimated quantity.
//!
//! The crate ships a CLI (`levyspec`) exposing pricing, quote simulation,
//! calibration, confidence bands and the Monte Carlo studies as subcommands.



pub mod error;


pub mod market;
pub mod models;
pub mod pricing;
pub mod num;




pub use error::{Error, Result};
