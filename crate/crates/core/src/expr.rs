//! Entire-function expressions: AST, evaluation (plain and log-space) and
//! symbolic differentiation.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::logcomplex::LogComplex;
use crate::series;

/// Below this `|Im w|`, `sin w` and `cos w` are evaluated directly.
pub const TRIG_EXP_FORM_THRESHOLD: f64 = 20.0;

/// `log|w|` above which converting back to an ordinary complex overflows.
const LOG_MOD_LIMIT: f64 = 709.0;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("floating point overflow")]
    Overflow,
}

/// Parsed expression tree. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var,
    Const(Complex64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    /// `order`-th derivative of `g(w) = Σ_{k≥1} (w/2^k)^{2^k}`; `beg(w)` is order 0.
    BeSeries {
        order: u32,
        arg: Box<Expr>,
    },
}

fn real(x: f64) -> Expr {
    Expr::Const(Complex64::new(x, 0.0))
}

fn as_const(e: &Expr) -> Option<Complex64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn is_const(e: &Expr, v: f64) -> bool {
    as_const(e) == Some(Complex64::new(v, 0.0))
}

// Smart constructors used by differentiation: fold constants and drop
// identities so derivative trees stay small.

fn add(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        _ if is_const(&a, 0.0) => b,
        _ if is_const(&b, 0.0) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        _ if is_const(&b, 0.0) => a,
        _ if is_const(&a, 0.0) => neg(b),
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        _ if is_const(&a, 0.0) || is_const(&b, 0.0) => real(0.0),
        _ if is_const(&a, 1.0) => b,
        _ if is_const(&b, 1.0) => a,
        _ if is_const(&a, -1.0) => neg(b),
        _ if is_const(&b, -1.0) => neg(a),
        // keep constants on the left and merge nested constant factors
        (None, Some(_)) => mul(b, a),
        (Some(x), None) => match b {
            Expr::Mul(l, r) if as_const(&l).is_some() => {
                mul(Expr::Const(x * as_const(&l).unwrap()), *r)
            }
            other => Expr::Mul(Box::new(Expr::Const(x)), Box::new(other)),
        },
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0.0) {
        return real(0.0);
    }
    if is_const(&b, 1.0) {
        return a;
    }
    Expr::Div(Box::new(a), Box::new(b))
}

fn pow(a: Expr, n: u32) -> Expr {
    match n {
        0 => real(1.0),
        1 => a,
        _ => match as_const(&a) {
            Some(c) => Expr::Const(c.powu(n)),
            None => Expr::Pow(Box::new(a), n),
        },
    }
}

fn finite(z: Complex64) -> Result<Complex64, EvalError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(EvalError::Overflow)
    }
}

fn to_complex_checked(w: LogComplex) -> Result<Complex64, EvalError> {
    if w.is_zero {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if !(w.log_mod <= LOG_MOD_LIMIT) || !w.arg.is_finite() {
        return Err(EvalError::Overflow);
    }
    finite(w.to_complex())
}

fn checked(w: LogComplex) -> Result<LogComplex, EvalError> {
    if w.is_finite() && !(w.log_mod == f64::INFINITY) {
        Ok(w)
    } else {
        Err(EvalError::Overflow)
    }
}

// sin w = (e^{iw} - e^{-iw}) / 2i, cos w = (e^{iw} + e^{-iw}) / 2, summed in
// log space so that |Im w| in the hundreds is harmless.
fn trig_exp_form(w: Complex64, cosine: bool) -> LogComplex {
    let plus = LogComplex::new(-w.im, w.re);
    let minus = LogComplex::new(w.im, -w.re);
    if cosine {
        plus.add(minus)
            .mul(LogComplex::new(-std::f64::consts::LN_2, 0.0))
    } else {
        plus.sub(minus).mul(LogComplex::new(
            -std::f64::consts::LN_2,
            -std::f64::consts::FRAC_PI_2,
        ))
    }
}

impl Expr {
    /// Ordinary complex evaluation.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        let v = match self {
            Expr::Var => z,
            Expr::Const(c) => *c,
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => {
                let num = a.eval(z)?;
                let den = b.eval(z)?;
                if den.re == 0.0 && den.im == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                num / den
            }
            Expr::Pow(a, n) => a.eval(z)?.powu(*n),
            Expr::Exp(a) => a.eval(z)?.exp(),
            Expr::Sin(a) => a.eval(z)?.sin(),
            Expr::Cos(a) => a.eval(z)?.cos(),
            Expr::BeSeries { order, arg } => series::eval_direct(*order, arg.eval(z)?),
        };
        finite(v)
    }

    /// Overflow-safe evaluation returning `(log|f|, arg f)`.
    pub fn eval_log(&self, z: Complex64) -> Result<LogComplex, EvalError> {
        let v = match self {
            Expr::Var => LogComplex::from_complex(z),
            Expr::Const(c) => LogComplex::from_complex(*c),
            Expr::Neg(a) => a.eval_log(z)?.neg(),
            Expr::Add(a, b) => a.eval_log(z)?.add(b.eval_log(z)?),
            Expr::Sub(a, b) => a.eval_log(z)?.sub(b.eval_log(z)?),
            Expr::Mul(a, b) => a.eval_log(z)?.mul(b.eval_log(z)?),
            Expr::Div(a, b) => a
                .eval_log(z)?
                .div(b.eval_log(z)?)
                .ok_or(EvalError::DivisionByZero)?,
            Expr::Pow(a, n) => a.eval_log(z)?.powu(*n),
            Expr::Exp(a) => LogComplex::exp_of(to_complex_checked(a.eval_log(z)?)?),
            Expr::Sin(a) | Expr::Cos(a) => {
                let w = to_complex_checked(a.eval_log(z)?)?;
                let cosine = matches!(self, Expr::Cos(_));
                if w.im.abs() > TRIG_EXP_FORM_THRESHOLD {
                    trig_exp_form(w, cosine)
                } else if cosine {
                    LogComplex::from_complex(w.cos())
                } else {
                    LogComplex::from_complex(w.sin())
                }
            }
            Expr::BeSeries { order, arg } => series::eval_log(*order, arg.eval_log(z)?),
        };
        checked(v)
    }

    /// Symbolic derivative with respect to `z`.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Var => real(1.0),
            Expr::Const(_) => real(0.0),
            Expr::Neg(a) => neg(a.derivative()),
            Expr::Add(a, b) => add(a.derivative(), b.derivative()),
            Expr::Sub(a, b) => sub(a.derivative(), b.derivative()),
            Expr::Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(a, n) => mul(
                mul(real(*n as f64), pow((**a).clone(), n - 1)),
                a.derivative(),
            ),
            Expr::Exp(a) => mul(self.clone(), a.derivative()),
            Expr::Sin(a) => mul(Expr::Cos(a.clone()), a.derivative()),
            Expr::Cos(a) => mul(neg(Expr::Sin(a.clone())), a.derivative()),
            Expr::BeSeries { order, arg } => mul(
                Expr::BeSeries {
                    order: order + 1,
                    arg: arg.clone(),
                },
                arg.derivative(),
            ),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c) if c.im != 0.0 && c.re != 0.0 => 5,
            Expr::Const(c) if c.re < 0.0 || c.im < 0.0 => 3,
            _ => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        write!(f, "{}", x as i64)
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => write!(f, "z"),
            Expr::Const(c) => {
                if c.im == 0.0 {
                    write_number(f, c.re)
                } else if c.re == 0.0 {
                    write_number(f, c.im)?;
                    write!(f, "i")
                } else {
                    write!(f, "(")?;
                    write_number(f, c.re)?;
                    write!(f, "{}", if c.im < 0.0 { "-" } else { "+" })?;
                    write_number(f, c.im.abs())?;
                    write!(f, "i)")
                }
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 4)
            }
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 4)
            }
            Expr::Pow(a, n) => {
                write_child(f, a, 5)?;
                write!(f, "^{n}")
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sin(a) => write!(f, "sin({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
            Expr::BeSeries { order: 0, arg } => write!(f, "beg({arg})"),
            Expr::BeSeries { order, arg } => write!(f, "beg_d{order}({arg})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ev(src: &str, z: Complex64) -> Complex64 {
        parse(src).unwrap().eval(z).unwrap()
    }

    #[test]
    fn plain_eval_examples() {
        assert_eq!(ev("exp(sin(z)-z)", c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(ev("2*exp(z^4)", c(0.0, 0.0)), c(2.0, 0.0));
    }

    #[test]
    fn division_by_zero_is_distinct_from_overflow() {
        let e = parse("1/z").unwrap();
        assert_eq!(e.eval(c(0.0, 0.0)), Err(EvalError::DivisionByZero));
        assert_eq!(e.eval_log(c(0.0, 0.0)), Err(EvalError::DivisionByZero));
        let big = parse("exp(exp(z))").unwrap();
        assert_eq!(big.eval(c(10.0, 0.0)), Err(EvalError::Overflow));
        // the log form has no trouble
        let l = big.eval_log(c(10.0, 0.0)).unwrap();
        assert!((l.log_mod - 10f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn eval_log_examples() {
        let l = parse("2*exp(z^4)").unwrap().eval_log(c(0.0, 0.0)).unwrap();
        assert!((l.log_mod - 2f64.ln()).abs() < 1e-15);
        assert_eq!(l.arg, 0.0);
        let l = parse("exp(exp(z))").unwrap().eval_log(c(3.0, 0.0)).unwrap();
        assert!((l.log_mod - 3f64.exp()).abs() < 1e-12);
        assert_eq!(l.arg, 0.0);
    }

    #[test]
    fn exact_cancellation_gives_zero() {
        let l = parse("z - z").unwrap().eval_log(c(0.7, -0.2)).unwrap();
        assert!(l.is_zero);
        let l = parse("exp(sin(z)-z)")
            .unwrap()
            .eval_log(c(0.0, 0.0))
            .unwrap();
        assert_eq!(l.log_mod, 0.0);
    }

    #[test]
    fn large_imaginary_sine_uses_exp_form() {
        let e = parse("sin(z)").unwrap();
        for y in [25.0, 100.0, 500.0, -300.0] {
            let l = e.eval_log(c(0.4, y)).unwrap();
            // |sin(x+iy)|^2 = sin^2 x + sinh^2 y; for large y log|sin| = |y| - log 2
            let expected = y.abs() - 2f64.ln();
            assert!((l.log_mod - expected).abs() < 1e-12, "{y}: {}", l.log_mod);
        }
        // continuity across the switch point
        let below = e.eval_log(c(0.4, 19.999_999)).unwrap();
        let above = e.eval_log(c(0.4, 20.000_001)).unwrap();
        assert!((below.log_mod - above.log_mod).abs() < 1e-5);
        let cs = parse("cos(z)").unwrap();
        let a = cs.eval_log(c(1.1, 21.0)).unwrap().to_complex();
        let b = c(1.1, 21.0).cos();
        assert!((a - b).norm() / b.norm() < 1e-12);
    }

    #[test]
    fn derivative_examples() {
        let d = parse("2*exp(z^4)").unwrap().derivative();
        let expected = |z: Complex64| 8.0 * z.powu(3) * z.powu(4).exp();
        let d2 = parse("exp(sin(z)-z)").unwrap().derivative();
        let expected2 = |z: Complex64| (z.cos() - 1.0) * (z.sin() - z).exp();
        for z in [c(0.3, 0.4), c(-1.0, 0.5), c(1.2, -0.7)] {
            let a = d.eval(z).unwrap();
            assert!((a - expected(z)).norm() <= 1e-13 * expected(z).norm());
            let b = d2.eval(z).unwrap();
            assert!((b - expected2(z)).norm() <= 1e-13 * expected2(z).norm());
        }
    }

    #[test]
    fn beg_derivative_nodes() {
        let d = parse("beg(z)").unwrap().derivative();
        assert_eq!(
            d,
            Expr::BeSeries {
                order: 1,
                arg: Box::new(Expr::Var)
            }
        );
        // g'(z) = Σ 2^k z^{2^k-1} / 2^{k 2^k}; at z = 1: 2/4 + 4/256 + 8/8^8 + ...
        let oracle: f64 = (1..8)
            .map(|k| {
                let n = 2f64.powi(k);
                n / 2f64.powf(k as f64 * n)
            })
            .sum();
        assert!((d.eval(c(1.0, 0.0)).unwrap().re - oracle).abs() < 1e-15);
        assert_eq!(d.to_string(), "beg_d1(z)");
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "2*exp(z^4)",
            "exp(sin(z) - z)",
            "-z^2 + 3.5i*z",
            "(z + 1)^3/(z - (1+2i))",
            "cos(beg(z))*-1",
            "z - (z - 1)",
        ] {
            let e = parse(src).unwrap();
            let again = parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{src} -> {e}");
        }
    }
}
