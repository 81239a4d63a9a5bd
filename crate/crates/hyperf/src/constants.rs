//! Fundamental constants with error bounds.
//!
//! π, √3 and ln 3 come straight from correctly rounded MPFR operations.
//! The Euler constant is computed from the Euler-Maclaurin expansion of
//! H_n - ln n, reusing the exact Bernoulli numbers; the MPFR built-in
//! value serves as an independent oracle in the test suite.

use crate::combinatorics::{bernoulli_even, harmonic};
use crate::context::rounding_slack;
use crate::{ErrVal, PrecisionContext, Rational, Result};
use once_cell::sync::Lazy;
use rug::Float;
use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Mutex;

/// The constants the numeric core exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    EulerGamma,
    Sqrt3,
    Ln3,
}

impl FromStr for Constant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Constant::Pi),
            "euler_gamma" => Ok(Constant::EulerGamma),
            "sqrt3" => Ok(Constant::Sqrt3),
            "ln3" => Ok(Constant::Ln3),
            other => Err(crate::Error::UnsupportedConstant(other.to_string())),
        }
    }
}

static EULER_CACHE: Lazy<Mutex<HashMap<u32, (Float, Float)>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Evaluate a constant to within 10^-digits; the err field is far below
/// that (the working precision carries guard digits).
pub fn constant(name: Constant, ctx: &PrecisionContext) -> ErrVal {
    let prec = ctx.prec_bits();
    match name {
        Constant::Pi => {
            let v = Float::with_val(prec, rug::float::Constant::Pi);
            let e = rounding_slack(&v);
            ErrVal::new(v, e).expect("finite")
        }
        Constant::Sqrt3 => {
            let v = Float::with_val(prec, 3).sqrt();
            let e = rounding_slack(&v);
            ErrVal::new(v, e).expect("finite")
        }
        Constant::Ln3 => {
            let v = Float::with_val(prec, 3).ln();
            let e = rounding_slack(&v);
            ErrVal::new(v, e).expect("finite")
        }
        Constant::EulerGamma => euler_gamma(ctx),
    }
}

/// Euler-Maclaurin: gamma = H_n - ln n - 1/(2n) + sum_k B_2k / (2k n^2k),
/// truncated at the smallest term, which is added to the error bound.
fn euler_gamma(ctx: &PrecisionContext) -> ErrVal {
    let prec = ctx.prec_bits();
    if let Some((v, e)) = EULER_CACHE.lock().unwrap().get(&prec) {
        return ErrVal::new(v.clone(), e.clone()).expect("cached finite");
    }

    // The optimally truncated tail behaves like e^(-2 pi n); pick n so that
    // it undercuts the internal tolerance comfortably.
    let digits = ctx.digits() + crate::context::GUARD_DIGITS;
    let n = ((digits as f64) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI)).ceil()
        as u64
        + 5;

    let h_n = harmonic(n);
    let mut value = Float::with_val(prec, &h_n);
    value -= Float::with_val(prec, n).ln();
    value -= Float::with_val(prec, Rational::from((1, 2 * n)));

    let n_sq = Rational::from((n * n, 1));
    let mut pow = Rational::from(1); // n^2k
    let mut trunc = Float::new(prec);
    let mut prev_mag: Option<Float> = None;
    for k in 1..=10_000u64 {
        pow *= &n_sq;
        let term = bernoulli_even(2 * k).expect("even index") / (Rational::from(2 * k) * &pow);
        let term_f = Float::with_val(prec, &term);
        let mag = Float::with_val(prec, term_f.abs_ref());
        if let Some(p) = &prev_mag {
            if mag >= *p {
                // asymptotic series turned; previous error bound stands
                break;
            }
        }
        value += &term_f;
        trunc = mag.clone();
        if mag < ctx.internal_tolerance() {
            break;
        }
        prev_mag = Some(mag);
    }

    // rounding slack: a few dozen float ops on O(1) quantities
    let slack = {
        let mut s = Float::with_val(prec, 64);
        s >>= prec - 1;
        s
    };
    let err = trunc + slack;
    EULER_CACHE
        .lock()
        .unwrap()
        .insert(prec, (value.clone(), err.clone()));
    ErrVal::new(value, err).expect("finite")
}
