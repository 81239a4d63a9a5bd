//! Even/odd parameter splits, parameter cancellation, and fused
//! coefficient sequences.
//!
//! Splitting a q+1Fq series at argument z into its even and odd parts
//! produces two 2q+2F2q+1 series of argument z^2 whose parameter lists are
//! the half-shifted copies of the originals. Cancelling matching
//! numerator/denominator parameters then yields the reduced specs, and the
//! coefficient machinery fuses several same-base series into one.

use crate::combinatorics::{gamma_half_integer, gamma_twice_plus_quarter, pochhammer};
use crate::series::HyperSpec;
use crate::{Error, Rational, Result};
use rug::Integer;
use std::sync::Arc;

/// prefactor * F(spec), with a degenerate marker for the odd part taken
/// at argument zero (where the prefactor is genuinely 0).
#[derive(Debug, Clone)]
pub struct ScaledSpec {
    pub prefactor: Rational,
    pub spec: HyperSpec,
    pub degenerate: bool,
}

/// Even part: (F(z) + F(-z)) / 2 = F'(z^2) with half-shifted parameters.
///
/// ```
/// use hyperf::series::HyperSpec;
/// use hyperf::transforms::{cancel_common_params, split_even};
/// use hyperf::rat;
///
/// let spec = HyperSpec::new(
///     vec![rat(1, 2), rat(1, 2), rat(1, 2)],
///     vec![rat(3, 2), rat(3, 2)],
///     rat(1, 4),
/// ).unwrap();
/// let even = split_even(&spec);
/// let reduced = cancel_common_params(&even.spec);
/// assert_eq!(reduced.num_params(), &[rat(1, 4), rat(1, 4), rat(1, 4), rat(3, 4)]);
/// assert_eq!(reduced.den_params(), &[rat(1, 2), rat(5, 4), rat(5, 4)]);
/// assert_eq!(reduced.argument(), &rat(1, 16));
/// ```
pub fn split_even(spec: &HyperSpec) -> ScaledSpec {
    let half = Rational::from((1, 2));
    let mut num = Vec::with_capacity(2 * spec.num_params().len());
    for a in spec.num_params() {
        let a2 = Rational::from(a / Rational::from(2));
        num.push(a2.clone());
        num.push(a2 + &half);
    }
    let mut den = Vec::with_capacity(2 * spec.den_params().len() + 1);
    den.push(half.clone());
    for b in spec.den_params() {
        let b2 = Rational::from(b / Rational::from(2));
        den.push(b2.clone());
        den.push(b2 + &half);
    }
    let z2 = Rational::from(spec.argument() * spec.argument());
    ScaledSpec {
        prefactor: Rational::from(1),
        spec: HyperSpec::new(num, den, z2).expect("half-shifted denominators stay valid"),
        degenerate: false,
    }
}

/// Odd part: (F(z) - F(-z)) / 2 = z prod(a)/prod(b) * F''(z^2).
pub fn split_odd(spec: &HyperSpec) -> ScaledSpec {
    let half = Rational::from((1, 2));
    let one = Rational::from(1);
    let mut num = Vec::with_capacity(2 * spec.num_params().len());
    let mut prefactor = spec.argument().clone();
    for a in spec.num_params() {
        prefactor *= a;
        let a2 = Rational::from(a / Rational::from(2));
        num.push(Rational::from(&a2 + &half));
        num.push(a2 + &one);
    }
    let mut den = Vec::with_capacity(2 * spec.den_params().len() + 1);
    den.push(Rational::from((3, 2)));
    for b in spec.den_params() {
        prefactor /= b;
        let b2 = Rational::from(b / Rational::from(2));
        den.push(Rational::from(&b2 + &half));
        den.push(b2 + &one);
    }
    let z2 = Rational::from(spec.argument() * spec.argument());
    let degenerate = prefactor == 0;
    ScaledSpec {
        prefactor,
        spec: HyperSpec::new(num, den, z2).expect("half-shifted denominators stay valid"),
        degenerate,
    }
}

/// Remove matching numerator/denominator pairs (multiset cancellation,
/// earliest occurrences first). The resulting series is termwise equal.
pub fn cancel_common_params(spec: &HyperSpec) -> HyperSpec {
    let mut den_left: Vec<Option<Rational>> =
        spec.den_params().iter().cloned().map(Some).collect();
    let mut num = Vec::new();
    for a in spec.num_params() {
        if let Some(slot) = den_left
            .iter_mut()
            .find(|d| d.as_ref() == Some(a))
        {
            *slot = None;
        } else {
            num.push(a.clone());
        }
    }
    let den: Vec<Rational> = den_left.into_iter().flatten().collect();
    HyperSpec::new(num, den, spec.argument().clone()).expect("cancellation keeps valid params")
}

/// The argument-free coefficient prod(a_j)_n / (prod(b_k)_n n!).
pub fn coefficient_of(spec: &HyperSpec, n: u64) -> Rational {
    let mut c = Rational::from(1);
    for a in spec.num_params() {
        c *= pochhammer(a, n);
    }
    for b in spec.den_params() {
        c /= pochhammer(b, n);
    }
    c / Rational::from(Integer::from(Integer::factorial(n as u32)))
}

/// An exact coefficient function n -> Rational together with the
/// geometric base its series is summed at (e.g. 1/16).
#[derive(Clone)]
pub struct CoeffSeq {
    base: Rational,
    f: Arc<dyn Fn(u64) -> Rational + Send + Sync>,
}

impl std::fmt::Debug for CoeffSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoeffSeq").field("base", &self.base).finish()
    }
}

impl CoeffSeq {
    pub fn new<F>(base: Rational, f: F) -> Self
    where
        F: Fn(u64) -> Rational + Send + Sync + 'static,
    {
        Self { base, f: Arc::new(f) }
    }

    /// The coefficient sequence of a spec, with the spec's argument as base.
    pub fn from_spec(spec: &HyperSpec) -> Self {
        let spec = spec.clone();
        let base = spec.argument().clone();
        Self::new(base, move |n| coefficient_of(&spec, n))
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn at(&self, n: u64) -> Rational {
        (self.f)(n)
    }
}

/// Pointwise weighted sum of coefficient sequences sharing one base.
pub fn fuse_linear(parts: Vec<(Rational, CoeffSeq)>) -> Result<CoeffSeq> {
    let base = match parts.first() {
        Some((_, c)) => c.base().clone(),
        None => return Err(Error::InvalidInput("fuse_linear needs at least one part".into())),
    };
    if parts.iter().any(|(_, c)| c.base() != &base) {
        return Err(Error::MixedBase);
    }
    Ok(CoeffSeq::new(base, move |n| {
        let mut acc = Rational::new();
        for (w, c) in &parts {
            acc += Rational::from(w * c.at(n));
        }
        acc
    }))
}

fn mms_polynomial(n: u64) -> Integer {
    let n = n as u128;
    Integer::from(4 * n * (4 * n * (12 * n + 29) + 81) + 71)
}

/// Gamma(2n+1/2) / Gamma(n+3/2), reduced exactly: both are sqrt(pi)
/// multiples, so the ratio is rational.
fn gamma_ratio(n: u64) -> Rational {
    gamma_twice_plus_quarter(n).ratio(&gamma_half_integer(n))
}

/// Exact summand of the fused single-sum representation, including the
/// (1/64)^n factor and the overall 1/16 prefix. Summing over n >= 0
/// yields pi^2/10.
pub fn mms_term(n: u64) -> Rational {
    mms_closed_coeff(n) * Rational::from((Integer::from(1), Integer::from(1) << (4 * n) as u32))
}

/// Closed form of the fused coefficient c(n) = c1(n) - c2(n)/72:
/// 2^-2n (4n(4n(12n+29)+81)+71) Gamma(2n+1/2)
///   / (16 n! (4n+1)^2 (4n+3)^2 Gamma(n+3/2)).
pub fn mms_closed_coeff(n: u64) -> Rational {
    let poly = mms_polynomial(n);
    let d1 = Integer::from(4 * n + 1);
    let d3 = Integer::from(4 * n + 3);
    let den = Integer::from(16)
        * Integer::from(Integer::factorial(n as u32))
        * Integer::from(&d1 * &d1)
        * Integer::from(&d3 * &d3)
        * (Integer::from(1) << (2 * n) as u32);
    Rational::from((poly, den)) * gamma_ratio(n)
}
