//! Spectral calibration: empirical characteristic exponents from the fitted
//! option curve, and the cut-off estimators for both model families.

pub mod exponents;
pub mod fa;
pub mod sd;

pub use exponents::SpectralCache;
pub use fa::{calibrate_fa, FaCutoffs, FaEstimate, FaWeights};
pub use sd::{calibrate_sd, rearrange, OneSidedKernel, SdCutoffs, SdEstimate, SdWeights};

/// Flat-top window: identically one on `|t| <= 0.05`, infinitely smooth
/// decay to zero at `|t| = 1`, zero outside.
pub fn flat_top(t: f64) -> f64 {
    let a = t.abs();
    if a <= 0.05 {
        1.0
    } else if a < 1.0 {
        let inner = (-((a - 0.05).powi(-2))).exp();
        (-inner / ((a - 1.0) * (a - 1.0))).exp()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_top_plateau_and_support() {
        assert_eq!(flat_top(0.04), 1.0);
        assert_eq!(flat_top(-0.05), 1.0);
        assert_eq!(flat_top(1.5), 0.0);
        assert_eq!(flat_top(1.0), 0.0);
        // strictly inside the transition band the window is in (0, 1)
        let v = flat_top(0.6);
        assert!(v > 0.0 && v < 1.0);
        // continuity at both junctions
        assert!((flat_top(0.05 + 1e-9) - 1.0).abs() < 1e-6);
        assert!(flat_top(1.0 - 1e-4) < 1e-6);
        // symmetry
        assert_eq!(flat_top(0.3), flat_top(-0.3));
    }
}
