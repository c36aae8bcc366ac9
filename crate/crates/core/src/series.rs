//! Termwise summation of `g(z) = Σ_{k≥1} (z/2^k)^{2^k}` and its derivatives.
//!
//! The `d`-th derivative of the `k`-th term is
//! `(2^k)_d · z^{2^k-d} / 2^{k·2^k} = (2^k)_d / 2^{k·d} · (z/2^k)^{2^k-d}`
//! where `(n)_d` is the falling factorial.

use num_complex::Complex64;

use crate::logcomplex::LogComplex;

/// Largest index ever summed; `2^30` already dwarfs any `|z|` we can represent
/// in the log-modulus budget.
const MAX_INDEX: u32 = 30;

/// Relative cutoff (in log space) below which a term no longer matters.
const LOG_NEGLIGIBLE: f64 = -45.0;

fn falling(n: f64, d: u32) -> f64 {
    (0..d).map(|i| n - i as f64).product()
}

fn log_coefficient(k: u32, order: u32) -> Option<f64> {
    let n = 2f64.powi(k as i32);
    let f = falling(n, order);
    if f <= 0.0 {
        return None;
    }
    Some(f.ln() - (k as f64) * (order as f64) * std::f64::consts::LN_2)
}

/// Direct summation in ordinary complex arithmetic.
pub(crate) fn eval_direct(order: u32, z: Complex64) -> Complex64 {
    let abs_z = z.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=MAX_INDEX {
        let n = 1u64 << k;
        let Some(lc) = log_coefficient(k, order) else {
            continue;
        };
        let p = n - order as u64;
        let w = z / (n as f64);
        let term = if p == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            w.powu(p as u32)
        } * lc.exp();
        sum += term;
        let past_peak = (n as f64) >= 2.0 * abs_z;
        if past_peak && (term.norm() <= 1e-18 * sum.norm() || term.norm() == 0.0) {
            break;
        }
    }
    sum
}

/// Summation in log space; overflow-safe for any representable `z`.
pub(crate) fn eval_log(order: u32, z: LogComplex) -> LogComplex {
    if z.is_zero {
        // only the term with 2^k == order survives
        if order >= 2 && order.is_power_of_two() {
            let k = order.trailing_zeros();
            let lc = log_coefficient(k, order).expect("positive falling factorial");
            return LogComplex::new(lc, 0.0);
        }
        return LogComplex::ZERO;
    }
    let abs_z = z.log_mod.exp();
    let mut sum = LogComplex::ZERO;
    let mut best = f64::NEG_INFINITY;
    for k in 1..=MAX_INDEX {
        let n = 2f64.powi(k as i32);
        let Some(lc) = log_coefficient(k, order) else {
            continue;
        };
        let p = n - order as f64;
        let term = if p == 0.0 {
            LogComplex::new(lc, 0.0)
        } else {
            let lw = z.log_mod - (k as f64) * std::f64::consts::LN_2;
            LogComplex::new(lc + p * lw, p * z.arg)
        };
        best = best.max(term.log_mod);
        sum = sum.add(term);
        if n >= 2.0 * abs_z && term.log_mod < best + LOG_NEGLIGIBLE {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_and_direct_agree() {
        for &(re, im) in &[(2.0, 0.0), (0.3, -1.2), (10.0, 3.0), (-40.0, 25.0)] {
            let z = Complex64::new(re, im);
            for order in 0..3 {
                let a = eval_direct(order, z);
                let b = eval_log(order, LogComplex::from_complex(z)).to_complex();
                assert!(
                    (a - b).norm() <= 1e-11 * a.norm(),
                    "{z} {order}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn derivative_values_at_origin() {
        // g''(0) = 2·(1/2)^2·... = (2)(1)/2^{2} = 1/2
        let z0 = LogComplex::ZERO;
        assert!(eval_log(0, z0).is_zero);
        assert!(eval_log(1, z0).is_zero);
        let g2 = eval_log(2, z0).to_complex();
        assert!((g2.re - 0.5).abs() < 1e-15);
        assert!((eval_direct(2, Complex64::new(0.0, 0.0)).re - 0.5).abs() < 1e-15);
    }
}
