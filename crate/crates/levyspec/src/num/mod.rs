//! Numerical building blocks: quadrature, FFT-based Fourier transforms,
//! the entire exponential integral, piecewise polynomials with exact complex
//! Fourier transforms, sampled grid functions and small linear solvers.

pub mod expint;
pub mod fft;
pub mod gridfn;
pub mod linalg;
pub mod pwpoly;
pub mod quad;

use num_complex::Complex64;

/// `sin(z)/z`, stable near the origin for complex argument.
pub fn sinc(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1e-8 {
        // sin(z)/z = 1 - z^2/6 + z^4/120
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// `(exp(z) - 1)/z`, stable near the origin.
pub fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1e-8 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z / 2.0 + z2 / 6.0 + z2 * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    }
}

/// Sum with pairwise reduction to keep rounding growth logarithmic.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 32 {
        let mut acc = Complex64::default();
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
