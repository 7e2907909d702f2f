//! Least-squares quadratic B-spline smoothing of the quotes.
//!
//! The knot vector is clamped at `[x_1, x_N]` with interior knots at every
//! other data point, giving roughly `N/2` degrees of freedom. (Placing simple
//! knots at *all* data points makes the least squares problem useless: an
//! alternating coefficient mode is invisible at the knots themselves, so the
//! fit oscillates between them. Thinning the knots restores the
//! Schoenberg-Whitney conditions with room to spare.)

use crate::error::{Error, Result};
use crate::num::linalg::BandedSpd;
use crate::num::pwpoly::{Piece, PiecewisePoly};

/// Degree-2 B-spline over `knots[j..=j+3]`, with zero-denominator guards so
/// repeated boundary knots are handled.
fn bspline2(knots: &[f64], j: usize, x: f64) -> f64 {
    let (t0, t1, t2, t3) = (knots[j], knots[j + 1], knots[j + 2], knots[j + 3]);
    if x < t0 || x >= t3 {
        return 0.0;
    }
    let b0 = |a: f64, b: f64| (x >= a && x < b) as u8 as f64;
    let w = |num: f64, den: f64| if den != 0.0 { num / den } else { 0.0 };
    let b10 = w(x - t0, t1 - t0) * b0(t0, t1) + w(t2 - x, t2 - t1) * b0(t1, t2);
    let b11 = w(x - t1, t2 - t1) * b0(t1, t2) + w(t3 - x, t3 - t2) * b0(t2, t3);
    w(x - t0, t2 - t0) * b10 + w(t3 - x, t3 - t1) * b11
}

fn knot_vector(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut knots = vec![x[0]; 3];
    let mut j = 2;
    while j + 2 < n {
        knots.push(x[j]);
        j += 2;
    }
    knots.extend_from_slice(&[x[n - 1]; 3]);
    knots
}

/// Least-squares fit of the quotes on the quadratic B-spline basis, returned
/// as a piecewise polynomial over the knot intervals.
pub fn quadratic_lsq(x: &[f64], y: &[f64]) -> Result<PiecewisePoly> {
    let n = x.len();
    if n < 10 {
        return Err(Error::Data(format!(
            "degree-2 smoothing needs at least 10 quotes, got {n}"
        )));
    }
    let knots = knot_vector(x);
    let nb = knots.len() - 3;
    let span = x[n - 1] - x[0];
    // evaluation point nudged off the closed right end (half-open convention)
    let at = |xx: f64| xx.min(x[n - 1] - 1e-12 * span);

    let mut ata = BandedSpd::zeros(nb, 2);
    let mut atb = vec![0.0; nb];
    for (&xi, &yi) in x.iter().zip(y) {
        let xe = at(xi);
        // locate the knot segment; candidates are the three basis functions
        // whose support covers it
        let seg = knots.partition_point(|k| *k <= xe) - 1;
        let lo = seg.saturating_sub(2);
        let hi = (seg + 1).min(nb);
        let mut cols: [(usize, f64); 3] = [(0, 0.0); 3];
        let mut m = 0;
        for j in lo..hi {
            let v = bspline2(&knots, j, xe);
            if v != 0.0 {
                cols[m] = (j, v);
                m += 1;
            }
        }
        for &(j, vj) in &cols[..m] {
            atb[j] += vj * yi;
            for &(k, vk) in &cols[..m] {
                if k >= j {
                    ata.add(j, k, vj * vk);
                }
            }
        }
    }
    let coef = ata
        .solve(atb)
        .map_err(|_| Error::Singular("degenerate spline system (collinear knots)".into()))?;

    // convert to piecewise quadratics over the distinct knot intervals by
    // sampling each at three points
    let breaks: Vec<f64> = {
        let mut b = vec![x[0]];
        b.extend(knots[3..knots.len() - 3].iter().copied());
        b.push(x[n - 1]);
        b
    };
    let eval = |xx: f64| -> f64 {
        let xe = at(xx);
        let seg = knots.partition_point(|k| *k <= xe) - 1;
        let lo = seg.saturating_sub(2);
        let hi = (seg + 1).min(nb);
        (lo..hi).map(|j| coef[j] * bspline2(&knots, j, xe)).sum()
    };
    let mut pieces = Vec::with_capacity(breaks.len() - 1);
    for i in 0..breaks.len() - 1 {
        let (lo, hi) = (breaks[i], breaks[i + 1]);
        let h = 0.5 * (hi - lo);
        let mid = 0.5 * (lo + hi);
        let (va, vm, vb) = (eval(lo), eval(mid), eval(hi));
        let c0 = vm;
        let c1 = (vb - va) / (2.0 * h);
        let c2 = (vb - 2.0 * vm + va) / (2.0 * h * h);
        pieces.push(Piece {
            lo,
            hi,
            c: [c0, c1, c2],
        });
    }
    Ok(PiecewisePoly { pieces })
}
