//! Precision contexts and error-tracked values.
//!
//! Every approximate computation in this crate returns an [`ErrVal`]: a
//! high-precision value paired with a nonnegative absolute error bound.
//! Arithmetic on `ErrVal`s propagates bounds conservatively, so a final
//! `err` field is always a sound bound on `|stored - true|`.

use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Guard digits carried internally on top of the requested precision.
/// Long summations accumulate rounding; results are reported against the
/// requested digit count, computed with this cushion.
pub const GUARD_DIGITS: u32 = 10;

/// bits per decimal digit, rounded up (log2 10 = 3.3219...)
const BITS_PER_DIGIT: f64 = 3.3219280948873626;

/// Target precision in decimal digits plus a cap on summation length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    max_terms: usize,
}

impl PrecisionContext {
    pub const DEFAULT_MAX_TERMS: usize = 100_000;

    /// A context targeting `digits` decimal digits of absolute accuracy.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_max_terms(digits, Self::DEFAULT_MAX_TERMS)
    }

    pub fn with_max_terms(digits: u32, max_terms: usize) -> Result<Self> {
        if digits < 1 {
            return Err(Error::InvalidInput("digits must be >= 1".into()));
        }
        if max_terms < 1 {
            return Err(Error::InvalidInput("max_terms must be >= 1".into()));
        }
        Ok(Self { digits, max_terms })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Working precision in bits, including the guard digits.
    pub fn prec_bits(&self) -> u32 {
        ((self.digits + GUARD_DIGITS) as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
    }

    /// The requested absolute accuracy, 10^-digits.
    pub fn tolerance(&self) -> Float {
        self.pow10(-(self.digits as i32))
    }

    /// 10^-(digits + guard): the internal summation target, small enough
    /// that bookkeeping slack never eats into the reported tolerance.
    pub fn internal_tolerance(&self) -> Float {
        self.pow10(-((self.digits + GUARD_DIGITS) as i32))
    }

    fn pow10(&self, e: i32) -> Float {
        Float::with_val(self.prec_bits(), Rational::from(10).pow(e))
    }

    /// A fresh working-precision float.
    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec_bits(), v)
    }
}

/// A high-precision real paired with an absolute error bound.
///
/// Invariant: `err >= 0` and both fields are finite.
///
/// ```
/// use hyperf::{rat, ErrVal};
///
/// let third = ErrVal::from_rational(&rat(1, 3), 128);
/// let one = third.mul_rational(&rat(3, 1));
/// assert!((one.value().to_f64() - 1.0).abs() < 1e-30);
/// assert!(*one.err() > 0); // the bound tracks the rounding of 1/3
/// ```
#[derive(Debug, Clone)]
pub struct ErrVal {
    value: Float,
    err: Float,
}

impl ErrVal {
    pub fn new(value: Float, err: Float) -> Result<Self> {
        if !value.is_finite() || !err.is_finite() || err.is_sign_negative() && !err.is_zero() {
            return Err(Error::InvalidInput(
                "ErrVal requires finite value and nonnegative finite err".into(),
            ));
        }
        Ok(Self { value, err })
    }

    /// An exact zero with zero error.
    pub fn zero(prec: u32) -> Self {
        Self {
            value: Float::new(prec),
            err: Float::new(prec),
        }
    }

    /// Round an exact rational to `prec` bits; err is the rounding slack.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let value = Float::with_val(prec, q);
        let err = rounding_slack(&value);
        Self { value, err }
    }

    /// Treat `value` as exact (zero error).
    pub fn exact(value: Float) -> Self {
        let err = Float::new(value.prec());
        Self { value, err }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn err(&self) -> &Float {
        &self.err
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn neg(&self) -> Self {
        Self {
            value: Float::with_val(self.prec(), -&self.value),
            err: self.err.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let value = Float::with_val(prec, &self.value + &other.value);
        let err = Float::with_val(prec, &self.err + &other.err) + rounding_slack(&value);
        Self { value, err }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let value = Float::with_val(prec, &self.value * &other.value);
        // |ab - a'b'| <= |a| eb + |b| ea + ea eb, plus rounding of the product
        let aabs = Float::with_val(prec, self.value.abs_ref());
        let babs = Float::with_val(prec, other.value.abs_ref());
        let mut err = Float::with_val(prec, &aabs * &other.err);
        err += Float::with_val(prec, &babs * &self.err);
        err += Float::with_val(prec, &self.err * &other.err);
        err += rounding_slack(&value);
        Self { value, err }
    }

    /// Multiply by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        let prec = self.prec();
        let value = Float::with_val(prec, &self.value * q);
        let qabs = Float::with_val(prec, q.clone().abs());
        let err = Float::with_val(prec, &qabs * &self.err) + rounding_slack(&value);
        Self { value, err }
    }

    /// Add an exact rational.
    pub fn add_rational(&self, q: &Rational) -> Self {
        let prec = self.prec();
        let value = Float::with_val(prec, &self.value + q);
        let err = self.err.clone() + rounding_slack(&value);
        Self { value, err }
    }

    /// Reciprocal; requires the interval to stay away from zero.
    pub fn recip(&self) -> Result<Self> {
        let prec = self.prec();
        let abs = Float::with_val(prec, self.value.abs_ref());
        if abs <= self.err {
            return Err(Error::InvalidInput(
                "reciprocal of an interval containing zero".into(),
            ));
        }
        let value = Float::with_val(prec, self.value.recip_ref());
        // |1/a - 1/a'| <= ea / (|a'| (|a'| - ea))
        let denom = Float::with_val(prec, &abs * Float::with_val(prec, &abs - &self.err));
        let err = Float::with_val(prec, &self.err / denom) + rounding_slack(&value);
        Self::new(value, err)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let prec = self.prec();
        if self.value.is_sign_negative() && !self.value.is_zero() {
            return Err(Error::OutOfDomain);
        }
        let value = Float::with_val(prec, self.value.sqrt_ref());
        // |sqrt a - sqrt a'| <= ea / (2 sqrt(max(a' - ea, 0))); fall back to
        // sqrt(ea) when the interval touches zero.
        let lo = Float::with_val(prec, &self.value - &self.err);
        let err = if lo > 0 {
            let d = Float::with_val(prec, 2 * lo.sqrt());
            Float::with_val(prec, &self.err / d) + rounding_slack(&value)
        } else {
            Float::with_val(prec, self.err.sqrt_ref()) + rounding_slack(&value)
        };
        Self::new(value, err)
    }

    /// |self.value - other.value|
    pub fn abs_diff(&self, other: &Self) -> Float {
        let prec = self.prec().max(other.prec());
        Float::with_val(prec, &self.value - &other.value).abs()
    }

    /// Widen the error bound by `extra`.
    pub fn widen(&self, extra: &Float) -> Self {
        Self {
            value: self.value.clone(),
            err: Float::with_val(self.prec(), &self.err + extra),
        }
    }
}

/// A bound on the rounding error of the correctly rounded float `x`:
/// one ulp, expressed as |x| * 2^(1-prec).
pub fn rounding_slack(x: &Float) -> Float {
    if x.is_zero() {
        return Float::new(x.prec());
    }
    let mut s = Float::with_val(x.prec(), x.abs_ref());
    s >>= x.prec() - 1;
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn context_invariants() {
        assert!(PrecisionContext::new(0).is_err());
        assert!(PrecisionContext::with_max_terms(5, 0).is_err());
        let ctx = PrecisionContext::new(30).unwrap();
        assert_eq!(ctx.digits(), 30);
        assert_eq!(ctx.max_terms(), 100_000);
        // 30 + 10 guard digits need at least 133 bits
        assert!(ctx.prec_bits() >= 133);
    }

    #[test]
    fn tolerance_magnitude() {
        let ctx = PrecisionContext::new(20).unwrap();
        let t = ctx.tolerance();
        assert!(t > 0);
        assert!(t < Float::with_val(64, 1.1e-20));
        assert!(t > Float::with_val(64, 0.9e-20));
    }

    #[test]
    fn errval_rejects_bad_fields() {
        let v = Float::with_val(64, 1);
        assert!(ErrVal::new(v.clone(), Float::with_val(64, -1)).is_err());
        assert!(ErrVal::new(Float::with_val(64, f64::NAN), Float::new(64)).is_err());
    }

    #[test]
    fn errval_arithmetic_is_conservative() {
        let prec = 128;
        let a = ErrVal::new(Float::with_val(prec, 2), Float::with_val(prec, 1e-20)).unwrap();
        let b = ErrVal::new(Float::with_val(prec, 3), Float::with_val(prec, 1e-20)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.value().to_f64(), 5.0);
        assert!(*s.err() >= Float::with_val(prec, 2e-20));
        let p = a.mul(&b);
        assert_eq!(p.value().to_f64(), 6.0);
        // |a| eb + |b| ea = 5e-20, modulo binary rounding of the bounds
        assert!(*p.err() >= Float::with_val(prec, 4.9e-20));
        assert!(*p.err() < Float::with_val(prec, 1e-19));
    }

    #[test]
    fn errval_recip_and_div() {
        let prec = 128;
        let a = ErrVal::new(Float::with_val(prec, 4), Float::with_val(prec, 1e-25)).unwrap();
        let r = a.recip().unwrap();
        assert_eq!(r.value().to_f64(), 0.25);
        let q = a.div(&a).unwrap();
        assert!((q.value().to_f64() - 1.0).abs() < 1e-30);
        // interval containing zero has no reciprocal
        let z = ErrVal::new(Float::with_val(prec, 1e-30), Float::with_val(prec, 1.0)).unwrap();
        assert!(z.recip().is_err());
    }

    #[test]
    fn from_rational_rounds_with_slack() {
        let prec = 64;
        let v = ErrVal::from_rational(&rat(1, 3), prec);
        assert!((v.value().to_f64() - 1.0 / 3.0).abs() < 1e-15);
        assert!(!v.err().is_zero());
        let exactly = ErrVal::from_rational(&rat(1, 2), prec);
        // 1/2 is representable; slack is still charged but tiny
        assert!(exactly.err().to_f64() < 1e-18);
    }
}
