//! Nonzero complex numbers stored as `(log|w|, arg w)`.
//!
//! Every evaluation in the crate goes through this representation so that
//! functions like `exp(exp(z))` or `exp(z^4)` can be handled far outside the
//! range of `f64` without overflowing.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number in polar log form.
///
/// `arg` is kept unreduced when it comes out of continuation (for example
/// the imaginary part of an exponent), so winding counts survive. Call
/// [`LogComplex::normalized`] to reduce it explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_mod: f64,
    pub arg: f64,
    pub is_zero: bool,
}

/// Reduce an angle into `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut r = theta.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

// cos/sin that return the exact values at the multiples of π/2 that show up
// in exact cancellations like 1 + (-1).
fn cis_exact(phi: f64) -> Complex64 {
    let p = wrap_angle(phi);
    if p == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if p == PI {
        Complex64::new(-1.0, 0.0)
    } else if p == PI / 2.0 {
        Complex64::new(0.0, 1.0)
    } else if p == -PI / 2.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(p.cos(), p.sin())
    }
}

// `div` returns an Option and `add` keeps the dominant argument, so these
// stay plain methods rather than operator impls.
#[allow(clippy::should_implement_trait)]
impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mod: f64::NEG_INFINITY,
        arg: 0.0,
        is_zero: true,
    };

    pub const ONE: LogComplex = LogComplex {
        log_mod: 0.0,
        arg: 0.0,
        is_zero: false,
    };

    pub fn new(log_mod: f64, arg: f64) -> Self {
        LogComplex {
            log_mod,
            arg,
            is_zero: false,
        }
    }

    /// `exp(w)` for an ordinary complex exponent.
    pub fn exp_of(w: Complex64) -> Self {
        LogComplex::new(w.re, w.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return LogComplex::ZERO;
        }
        LogComplex::new(z.norm().ln(), z.arg())
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// Back to an ordinary complex number; overflows to infinity when
    /// `log_mod` exceeds the `f64` range.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.log_mod.exp();
        let c = cis_exact(self.arg);
        Complex64::new(m * c.re, m * c.im)
    }

    /// Same value with `arg` reduced into `(-π, π]`.
    pub fn normalized(self) -> Self {
        if self.is_zero {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mod, wrap_angle(self.arg))
    }

    pub fn is_finite(self) -> bool {
        self.is_zero || (self.log_mod.is_finite() && self.arg.is_finite())
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero || other.is_zero {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mod + other.log_mod, self.arg + other.arg)
    }

    /// Division; `None` when `other` is zero.
    pub fn div(self, other: Self) -> Option<Self> {
        if other.is_zero {
            return None;
        }
        if self.is_zero {
            return Some(LogComplex::ZERO);
        }
        Some(LogComplex::new(
            self.log_mod - other.log_mod,
            self.arg - other.arg,
        ))
    }

    pub fn powu(self, n: u32) -> Self {
        if n == 0 {
            return LogComplex::ONE;
        }
        if self.is_zero {
            return LogComplex::ZERO;
        }
        let k = n as f64;
        LogComplex::new(k * self.log_mod, k * self.arg)
    }

    pub fn neg(self) -> Self {
        if self.is_zero {
            return self;
        }
        LogComplex::new(self.log_mod, self.arg + PI)
    }

    pub fn scale(self, factor: f64) -> Self {
        self.mul(LogComplex::from_real(factor))
    }

    /// Log-sum-exp with phase. The larger modulus term carries the result's
    /// argument, so args produced by continuation stay continuous while that
    /// term dominates.
    pub fn add(self, other: Self) -> Self {
        if self.is_zero {
            return other;
        }
        if other.is_zero {
            return self;
        }
        let (big, small) = if self.log_mod >= other.log_mod {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.log_mod - big.log_mod;
        if d == f64::NEG_INFINITY {
            return big;
        }
        let e = d.exp();
        let c = cis_exact(small.arg - big.arg);
        let s = Complex64::new(1.0 + e * c.re, e * c.im);
        if s.re == 0.0 && s.im == 0.0 {
            return LogComplex::ZERO;
        }
        let q = 2.0 * e * c.re + e * e;
        let log_s = if q > -0.5 {
            0.5 * q.ln_1p()
        } else {
            s.norm().ln()
        };
        LogComplex::new(big.log_mod + log_s, big.arg + s.arg())
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn opposite_units_cancel_exactly() {
        let a = LogComplex::new(0.0, 0.0);
        let b = LogComplex::new(0.0, PI);
        assert!(a.add(b).is_zero);
        assert!(a.sub(a).is_zero);
    }

    #[test]
    fn zero_is_absorbing_and_neutral() {
        let a = LogComplex::new(1.5, 0.3);
        assert_eq!(a.add(LogComplex::ZERO), a);
        assert!(a.mul(LogComplex::ZERO).is_zero);
        assert!(a.div(LogComplex::ZERO).is_none());
        assert_eq!(LogComplex::ZERO.powu(0), LogComplex::ONE);
    }

    #[test]
    fn add_far_beyond_f64_range() {
        // e^2000 + e^1999 = e^2000 (1 + 1/e)
        let a = LogComplex::new(2000.0, 0.0);
        let b = LogComplex::new(1999.0, 0.0);
        let s = a.add(b);
        assert!((s.log_mod - (2000.0 + (1.0 + (-1.0f64).exp()).ln())).abs() < 1e-12);
        assert_eq!(s.arg, 0.0);
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * TAU + 0.5) - 0.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            prop_assume!(re != 0.0 || im != 0.0);
            let z = Complex64::new(re, im);
            let l = LogComplex::from_complex(z);
            let back = LogComplex::from_complex(l.to_complex());
            let tol = 1e-12 * l.log_mod.abs().max(1.0);
            prop_assert!((back.log_mod - l.log_mod).abs() < tol);
        }

        #[test]
        fn add_matches_complex(a in -50f64..50.0, b in -50f64..50.0, c in -50f64..50.0, d in -50f64..50.0) {
            let x = Complex64::new(a, b);
            let y = Complex64::new(c, d);
            prop_assume!((x + y).norm() > 1e-6);
            let s = LogComplex::from_complex(x).add(LogComplex::from_complex(y)).to_complex();
            prop_assert!((s - (x + y)).norm() / (x + y).norm() < 1e-9);
        }

        #[test]
        fn product_log_mod_commutes_and_associates(
            a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3,
        ) {
            let x = LogComplex::new(a, 0.1);
            let y = LogComplex::new(b, 0.2);
            let z = LogComplex::new(c, 0.3);
            prop_assert_eq!(x.mul(y).log_mod, y.mul(x).log_mod);
            // addition of three doubles associates exactly only when no
            // rounding happens, so compare against the straight sum both ways
            let l1 = x.mul(y).mul(z).log_mod;
            let l2 = x.mul(y.mul(z)).log_mod;
            prop_assert!((l1 - l2).abs() <= 4.0 * f64::EPSILON * (a.abs() + b.abs() + c.abs()));
        }
    }
}
