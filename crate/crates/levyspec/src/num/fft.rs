//! FFT-backed evaluation of continuous Fourier transforms on uniform grids.
//!
//! Convention used throughout the crate:
//! `F g(u) = integral e^{iux} g(x) dx`, `F^{-1} h(x) = (1/2pi) integral e^{-iux} h(u) du`.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
}

/// In-place FFT; `forward` uses the `e^{-2 pi i mn/N}` kernel.
pub fn fft_in_place(data: &mut [Complex64], forward: bool) {
    let plan = PLANS.with(|p| {
        let mut map = p.borrow_mut();
        map.entry((data.len(), forward))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                let dir = if forward {
                    FftDirection::Forward
                } else {
                    FftDirection::Inverse
                };
                planner.plan_fft(data.len(), dir)
            })
            .clone()
    });
    plan.process(data);
}

/// Result of a gridded inverse Fourier transform: values of
/// `(1/2pi) integral e^{-iux} h(u) du` on `x_n = x0 + n dx`.
pub struct InverseFtGrid {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<Complex64>,
}

/// Inverse Fourier transform of trapezoid-weighted samples `h_m` at
/// `u_m = u0 + m du` onto an x-grid of `pad >= samples.len()` points with
/// spacing `dx = 2 pi / (pad * du)`, starting at `x0`.
pub fn inverse_ft_uniform(
    samples: &[Complex64],
    u0: f64,
    du: f64,
    pad: usize,
    x0: f64,
) -> InverseFtGrid {
    let m = samples.len();
    assert!(pad >= m, "padding must not truncate samples");
    let dx = 2.0 * std::f64::consts::PI / (pad as f64 * du);
    let mut buf = vec![Complex64::default(); pad];
    for (j, &s) in samples.iter().enumerate() {
        let w = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
        // fold the e^{-i m du x0} shift into the input
        let phase = Complex64::from_polar(1.0, -(j as f64) * du * x0);
        buf[j] = s * w * phase;
    }
    fft_in_place(&mut buf, true);
    let scale = du / (2.0 * std::f64::consts::PI);
    for (n, v) in buf.iter_mut().enumerate() {
        let x = x0 + n as f64 * dx;
        *v *= scale * Complex64::from_polar(1.0, -u0 * x);
    }
    InverseFtGrid {
        x0,
        dx,
        values: buf,
    }
}

/// Direct evaluation of `(1/2pi) integral e^{-iux} h(u) du` at a single `x`
/// from trapezoid-weighted samples, with a phase recurrence renormalised
/// periodically.
pub fn inverse_ft_at(samples: &[Complex64], u0: f64, du: f64, x: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, -du * x);
    let mut phase = Complex64::from_polar(1.0, -u0 * x);
    let mut acc = Complex64::default();
    let m = samples.len();
    for (j, &s) in samples.iter().enumerate() {
        if j % 1024 == 0 {
            phase = Complex64::from_polar(1.0, -(u0 + j as f64 * du) * x);
        }
        let w = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
        acc += s * phase * w;
        phase *= step;
    }
    acc * du / (2.0 * std::f64::consts::PI)
}

/// Linear interpolation on a uniform grid; clamps to the boundary values.
pub fn lerp_uniform(x0: f64, dx: f64, values: &[f64], x: f64) -> f64 {
    let t = (x - x0) / dx;
    if t <= 0.0 {
        return values[0];
    }
    let n = values.len();
    if t >= (n - 1) as f64 {
        return values[n - 1];
    }
    let i = t.floor() as usize;
    let frac = t - i as f64;
    values[i] * (1.0 - frac) + values[i + 1] * frac
}

/// Catmull-Rom cubic interpolation on a uniform grid for oversampled smooth
/// data; falls back to linear at the boundary cells.
pub fn cubic_uniform(x0: f64, dx: f64, values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let t = (x - x0) / dx;
    if t <= 1.0 || t >= (n - 2) as f64 {
        return lerp_uniform(x0, dx, values, x);
    }
    let i = t.floor() as usize;
    let s = t - i as f64;
    let (p0, p1, p2, p3) = (values[i - 1], values[i], values[i + 1], values[i + 2]);
    p1 + 0.5
        * s
        * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn inverse_ft_gaussian_pair() {
        // F^{-1}[exp(-u^2/2)](x) = exp(-x^2/2)/sqrt(2 pi)
        let du = 0.02;
        let m = 2048;
        let u0 = -(m as f64) * du / 2.0;
        let samples: Vec<Complex64> = (0..m)
            .map(|j| {
                let u = u0 + j as f64 * du;
                Complex64::new((-0.5 * u * u).exp(), 0.0)
            })
            .collect();
        let grid = inverse_ft_uniform(&samples, u0, du, 4096, -10.0);
        let norm = (2.0 * std::f64::consts::PI).sqrt();
        for n in (0..grid.values.len()).step_by(97) {
            let x = grid.x0 + n as f64 * grid.dx;
            if x.abs() > 6.0 {
                continue;
            }
            let expect = (-0.5 * x * x).exp() / norm;
            assert_abs_diff_eq!(grid.values[n].re, expect, epsilon = 1e-10);
            assert_abs_diff_eq!(grid.values[n].im, 0.0, epsilon = 1e-10);
        }
        // single-point evaluation agrees with the gridded path
        let single = inverse_ft_at(&samples, u0, du, 0.7);
        assert_abs_diff_eq!(single.re, (-0.5f64 * 0.49).exp() / norm, epsilon = 1e-10);
    }

    #[test]
    fn cubic_interpolation_matches_smooth_function() {
        let dx = 0.05;
        let values: Vec<f64> = (0..200).map(|i| ((i as f64 * dx) - 3.0).sin()).collect();
        let x = 1.2345;
        assert_abs_diff_eq!(
            cubic_uniform(0.0, dx, &values, x),
            (x - 3.0).sin(),
            epsilon = 1e-6
        );
    }
}
