//! Black-Scholes closed forms in option-function coordinates. Besides being
//! the degenerate no-jump model, this supplies the analytic reference leg of
//! the Fourier inversion, which carries the slowly decaying `1/(u(u-i))`
//! part of the transform exactly.

use statrs::function::erf::erfc;

/// Standard normal CDF.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Spot-normalised Black-Scholes option function: the call branch for
/// `x >= 0`, the put branch for `x < 0`, with `x = log(K/S0) - rT`.
pub fn bs_option_fn(x: f64, sigma: f64, t: f64) -> f64 {
    let s = sigma * t.sqrt();
    if s <= 0.0 {
        // degenerate: payoff of the forward
        return if x >= 0.0 {
            (1.0 - x.exp()).max(0.0)
        } else {
            (x.exp() - 1.0).max(0.0)
        };
    }
    let d1 = (-x + 0.5 * s * s) / s;
    let d2 = d1 - s;
    if x >= 0.0 {
        norm_cdf(d1) - x.exp() * norm_cdf(d2)
    } else {
        x.exp() * norm_cdf(-d2) - norm_cdf(-d1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn put_call_parity_at_zero_log_moneyness() {
        // at x = 0 the call and put branches coincide (parity at K = S0 e^{rT})
        let call = bs_option_fn(0.0, 0.2, 0.25);
        let put = bs_option_fn(-1e-300, 0.2, 0.25);
        assert_abs_diff_eq!(call, put, epsilon = 1e-14);
    }

    #[test]
    fn matches_textbook_value() {
        // S0 = 100, K = 105, r = 0.05, T = 0.5, sigma = 0.2:
        // C = 4.5816801675 (Black-Scholes closed form), so C/S0 at
        // x = log(K/S0) - rT
        let x = (105.0f64 / 100.0).ln() - 0.05 * 0.5;
        let got = bs_option_fn(x, 0.2, 0.5);
        assert_abs_diff_eq!(got, 4.581680167540007 / 100.0, epsilon = 1e-12);
    }

    #[test]
    fn payoff_quadrature_agrees() {
        // E[(e^Y - e^x)_+] with Y ~ N(-s^2/2, s^2)
        let (sigma, t, x) = (0.3, 0.75, 0.2);
        let s2 = sigma * sigma * t;
        let m = -0.5 * s2;
        let pdf = |y: f64| (-(y - m) * (y - m) / (2.0 * s2)).exp() / (2.0 * std::f64::consts::PI * s2).sqrt();
        let want = crate::num::quad::adaptive_simpson(
            |y| (y.exp() - x.exp()).max(0.0) * pdf(y),
            x,
            m + 12.0 * s2.sqrt(),
            1e-12,
        );
        assert_abs_diff_eq!(bs_option_fn(x, sigma, t), want, epsilon = 1e-9);
    }
}
