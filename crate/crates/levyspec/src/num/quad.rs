//! Quadrature rules: trapezoid on uniform grids, adaptive Simpson and
//! Gauss-Legendre for oracle-grade integrals.

use num_complex::Complex64;

/// Composite trapezoid over uniformly spaced samples.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let sum: f64 = values.iter().sum();
    dx * (sum - 0.5 * (values[0] + values[values.len() - 1]))
}

/// Complex-valued composite trapezoid over uniformly spaced samples.
pub fn trapezoid_c(values: &[Complex64], dx: f64) -> Complex64 {
    if values.len() < 2 {
        return Complex64::default();
    }
    let sum = super::pairwise_sum(values);
    (sum - 0.5 * (values[0] + values[values.len() - 1])) * dx
}

/// Trapezoid over an arbitrary sorted abscissa.
pub fn trapezoid_nonuniform(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let mut acc = 0.0;
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    acc
}

fn simpson_step(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let h = b - a;
    let left = (fa + 4.0 * flm + fm) * (h / 12.0);
    let right = (fm + 4.0 * frm + fb) * (h / 12.0);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature for complex integrands.
pub fn adaptive_simpson_c(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Complex64 {
    if a == b {
        return Complex64::default();
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    simpson_step(&mut f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Adaptive Simpson quadrature for real integrands.
pub fn adaptive_simpson(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adaptive_simpson_c(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Fixed-order Gauss-Legendre quadrature of a complex integrand on [a, b].
pub fn gauss_legendre_c(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    n: usize,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre_nodes(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::default();
    for (x, w) in nodes.iter().zip(&weights) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}
