//! Independent evaluators for trigamma and the Clausen function.
//!
//! These are the "other side" of most identity checks, so they never go
//! through any of the catalogued closed forms. Trigamma uses the shift
//! recurrence plus the Bernoulli asymptotic series; Cl2 uses the power
//! series of the log-sine integral with exact Bernoulli coefficients.

use crate::combinatorics::{bernoulli_even, harmonic, odd_harmonic};
use crate::constants::{constant, Constant};
use crate::context::rounding_slack;
use crate::{Error, ErrVal, PrecisionContext, Rational, Result};
use rug::Float;

/// An angle in radians; evaluators take care of range reduction.
#[derive(Debug, Clone)]
pub struct AngleValue {
    pub theta: Float,
}

impl From<Float> for AngleValue {
    fn from(theta: Float) -> Self {
        Self { theta }
    }
}

/// Trigamma psi'(x) for positive rational x.
///
/// The argument is shifted with psi'(x) = psi'(x+1) + 1/x^2 until it
/// clears max(10, digits/2), then the asymptotic series
/// psi'(X) ~ 1/X + 1/(2X^2) + sum B_2k / X^(2k+1) is truncated at its
/// smallest term, which is added to the error bound.
///
/// ```
/// use hyperf::special::trigamma;
/// use hyperf::{rat, PrecisionContext};
///
/// let ctx = PrecisionContext::new(25).unwrap();
/// let v = trigamma(&rat(1, 3), &ctx).unwrap();
/// assert!((v.value().to_f64() - 10.09559712542709).abs() < 1e-12);
/// ```
pub fn trigamma(x: &Rational, ctx: &PrecisionContext) -> Result<ErrVal> {
    if *x <= 0 {
        return Err(Error::NonpositiveArgument);
    }
    let prec = ctx.prec_bits();
    let threshold = std::cmp::max(10, ctx.digits().div_ceil(2)) as i64;

    // exact recurrence part
    let mut shift_sum = Rational::new();
    let mut shifted = x.clone();
    while shifted < threshold {
        let sq = Rational::from(&shifted * &shifted);
        shift_sum += sq.recip();
        shifted += 1;
    }

    let big_x = Float::with_val(prec, &shifted);
    let mut value = Float::with_val(prec, big_x.recip_ref());
    let x_sq = Float::with_val(prec, &big_x * &big_x);
    value += Float::with_val(prec, x_sq.recip_ref()) / 2u32;

    let mut inv_pow = Float::with_val(prec, x_sq.recip_ref()) / &big_x; // X^-(2k+1)
    let mut trunc = Float::new(prec);
    let mut prev_mag: Option<Float> = None;
    for k in 1..=100_000u64 {
        let b = bernoulli_even(2 * k).expect("even index");
        let term = Float::with_val(prec, &inv_pow * &Rational::from(b));
        let mag = Float::with_val(prec, term.abs_ref());
        if let Some(p) = &prev_mag {
            if mag >= *p {
                break;
            }
        }
        value += &term;
        trunc = mag.clone();
        if mag < ctx.internal_tolerance() {
            break;
        }
        prev_mag = Some(mag);
        inv_pow /= &x_sq;
    }

    value += Float::with_val(prec, &shift_sum);
    let slack = {
        let mut s = Float::with_val(prec, value.abs_ref());
        s += 1u32;
        s *= 256u32;
        s >>= prec - 1;
        s
    };
    ErrVal::new(value, trunc + slack)
}

/// Clausen function Cl2(theta) = sum_{n>=1} sin(n theta) / n^2.
///
/// After range reduction to [0, pi] (Cl2 is odd and 2pi-periodic), the
/// value comes from integrating the log-sine expansion:
/// Cl2(t) = t - t ln t + sum_{n>=1} |B_2n| t^(2n+1) / (2n (2n+1) (2n)!),
/// which converges geometrically with ratio (t/2pi)^2 <= 1/4.
pub fn clausen2(angle: &AngleValue, ctx: &PrecisionContext) -> Result<ErrVal> {
    let theta = &angle.theta;
    if !theta.is_finite() {
        return Err(Error::InvalidInput("angle must be finite".into()));
    }
    let prec = ctx.prec_bits();

    // range-reduce at a precision wide enough to absorb the exponent
    let exp = theta.get_exp().unwrap_or(0).max(0) as u32;
    let wide = prec + exp + 32;
    let two_pi = Float::with_val(wide, rug::float::Constant::Pi) * 2u32;
    let turns = Float::with_val(wide, theta / &two_pi).floor();
    let mut reduced = Float::with_val(wide, theta - turns * &two_pi);
    if reduced < 0 {
        reduced += &two_pi; // guard against rounding just below zero
    }
    let pi = Float::with_val(wide, rug::float::Constant::Pi);
    let (t, negate) = if reduced > pi {
        (Float::with_val(prec, &two_pi - &reduced), true)
    } else {
        (Float::with_val(prec, &reduced), false)
    };
    let reduction_slack = {
        let mut s = Float::with_val(prec, 8u32);
        s >>= wide.min(prec + exp) - 1;
        s
    };

    if t.is_zero() {
        return ErrVal::new(Float::new(prec), reduction_slack);
    }

    let mut value = Float::with_val(prec, &t - &t * Float::with_val(prec, t.ln_ref()));
    let t_sq = Float::with_val(prec, &t * &t);
    let mut pow = Float::with_val(prec, &t_sq * &t); // t^(2n+1)
    // q_up >= t/(2pi); 2pi > 6
    let q_sq = Float::with_val(prec, &t_sq / 36u32);
    let mut tail_scale = Float::with_val(prec, 2u32 * &t) * &q_sq;

    let mut n = 0u64;
    loop {
        n += 1;
        let b = bernoulli_even(2 * n).expect("even index").abs();
        let coeff = b / (Rational::from(2 * n) * Rational::from(2 * n + 1)
            * Rational::from(rug::Integer::from(rug::Integer::factorial(2 * n as u32))));
        value += Float::with_val(prec, &pow * &Float::with_val(prec, &coeff));
        // tail after n terms: <= 2 t q^(2(n+1)) / (1 - q^2) <= 8/3 * 2t q^(2n+2) / 2
        let tail = Float::with_val(prec, &tail_scale * &q_sq)
            * Float::with_val(prec, 2u32);
        if tail < ctx.internal_tolerance() {
            let slack = {
                let mut s = Float::with_val(prec, value.abs_ref());
                s += 1u32;
                s *= Float::with_val(prec, 8 * (n + 4));
                s >>= prec - 1;
                s
            };
            let err = tail + slack + reduction_slack;
            let v = if negate { -value } else { value };
            return ErrVal::new(v, err);
        }
        if n as usize > ctx.max_terms() {
            return Err(Error::PrecisionUnreachable {
                terms: ctx.max_terms(),
            });
        }
        pow *= &t_sq;
        tail_scale *= &q_sq;
    }
}

/// Which digamma shift family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// psi(n + 1) = H_n - gamma_E
    Integer,
    /// psi(k + 1/2) = 2 h_k - gamma_E - 2 ln 2
    HalfInteger,
}

/// Digamma at shifted integer or half-integer arguments, through the
/// exact harmonic parts plus the constants.
pub fn digamma_shifted(kind: ShiftKind, index: u64, ctx: &PrecisionContext) -> ErrVal {
    let prec = ctx.prec_bits();
    let gamma = constant(Constant::EulerGamma, ctx);
    match kind {
        ShiftKind::Integer => {
            let h = harmonic(index);
            gamma.neg().add_rational(&h)
        }
        ShiftKind::HalfInteger => {
            let h = odd_harmonic(index) * Rational::from(2);
            let ln2 = Float::with_val(prec, 2u32).ln();
            let ln2_err = rounding_slack(&ln2);
            let ln2 = ErrVal::new(ln2 * 2u32, ln2_err * 3u32).expect("finite");
            gamma.neg().sub(&ln2).add_rational(&h)
        }
    }
}

/// Exact rational increment psi(k + 1/2) - psi(1/2) = sum_{j<k} 1/(j+1/2),
/// from the digamma recurrence alone.
pub fn psi_half_increment(k: u64) -> Rational {
    let mut acc = Rational::new();
    for j in 0..k {
        acc += Rational::from((2u64, 2 * j + 1));
    }
    acc
}
