//! Exact rational combinatorics: Pochhammer symbols, harmonic numbers,
//! normalized central binomial coefficients, Bernoulli numbers, and exact
//! gamma values at positive half-integers.
//!
//! Everything here is exact; results are rationals in lowest terms with
//! positive denominators (rug keeps them canonical).

use crate::constants::{constant, Constant};
use crate::{Error, ErrVal, PrecisionContext, Rational, Result};
use once_cell::sync::Lazy;
use rug::Integer;
use std::sync::Mutex;

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
///
/// ```
/// use hyperf::combinatorics::pochhammer;
/// use hyperf::rat;
///
/// assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
/// ```
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::from(1);
    let mut f = a.clone();
    for _ in 0..n {
        acc *= &f;
        f += 1;
    }
    acc
}

/// Harmonic number H_n = sum_{k=1..n} 1/k; H_0 = 0.
pub fn harmonic(n: u64) -> Rational {
    let mut acc = Rational::new();
    for k in 1..=n {
        acc += Rational::from((1, k));
    }
    acc
}

/// Odd harmonic number h_k = sum_{j=1..k} 1/(2j-1); h_0 = 0.
pub fn odd_harmonic(k: u64) -> Rational {
    let mut acc = Rational::new();
    for j in 1..=k {
        acc += Rational::from((1u64, 2 * j - 1));
    }
    acc
}

/// Normalized binomial mid-coefficient mu_k = 4^-k C(2k, k) = (1/2)_k / k!.
pub fn binom_mid(k: u64) -> Rational {
    let c = Integer::from(2 * k).binomial(k as u32);
    Rational::from((c, Integer::from(1) << (2 * k) as u32))
}

// Akiyama-Tanigawa state: the current row and every B_m produced so far.
struct BernoulliCache {
    row: Vec<Rational>,
    bernoulli: Vec<Rational>,
}

static BERNOULLI: Lazy<Mutex<BernoulliCache>> = Lazy::new(|| {
    Mutex::new(BernoulliCache {
        row: Vec::new(),
        bernoulli: Vec::new(),
    })
});

/// Bernoulli number B_m for even m (B_0 = 1, B_2 = 1/6, B_4 = -1/30, ...).
///
/// Computed by the Akiyama-Tanigawa recurrence, exactly, and memoized.
///
/// ```
/// use hyperf::combinatorics::bernoulli_even;
/// use hyperf::rat;
///
/// assert_eq!(bernoulli_even(12).unwrap(), rat(-691, 2730));
/// ```
pub fn bernoulli_even(m: u64) -> Result<Rational> {
    if m % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "bernoulli_even requires an even index, got {m}"
        )));
    }
    let mut cache = BERNOULLI.lock().unwrap();
    while cache.bernoulli.len() <= m as usize {
        let i = cache.bernoulli.len() as u64;
        cache.row.push(Rational::from((1, i + 1)));
        for j in (1..=i as usize).rev() {
            let diff = Rational::from(&cache.row[j - 1] - &cache.row[j]);
            cache.row[j - 1] = diff * Rational::from(j);
        }
        let head = cache.row[0].clone();
        cache.bernoulli.push(head);
    }
    Ok(cache.bernoulli[m as usize].clone())
}

/// An exact value of the form coeff * sqrt(pi).
///
/// Gamma at positive half-integer arguments is always such a multiple, so
/// ratios of half-integer gamma values reduce to exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPiMultiple {
    coeff: Rational,
}

impl SqrtPiMultiple {
    pub fn new(coeff: Rational) -> Self {
        Self { coeff }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Exact ratio of two sqrt(pi) multiples; the sqrt(pi) factors cancel.
    pub fn ratio(&self, other: &Self) -> Rational {
        Rational::from(&self.coeff / &other.coeff)
    }

    /// Numeric value coeff * sqrt(pi) with error bound.
    pub fn to_errval(&self, ctx: &PrecisionContext) -> ErrVal {
        let pi = constant(Constant::Pi, ctx);
        let sqrt_pi = pi.sqrt().expect("pi is positive");
        sqrt_pi.mul_rational(&self.coeff)
    }
}

/// Gamma(n + 3/2) as an exact sqrt(pi) multiple:
/// Gamma(n + 3/2) = (3/2)_n * Gamma(3/2) = (3/2)_n * (1/2) * sqrt(pi).
pub fn gamma_half_integer(n: u64) -> SqrtPiMultiple {
    let coeff = pochhammer(&Rational::from((3, 2)), n) * Rational::from((1, 2));
    SqrtPiMultiple::new(coeff)
}

/// Gamma(2n + 1/2) as an exact sqrt(pi) multiple, via the Pochhammer
/// duplication identity (1/2)_{2n} = 4^n (1/4)_n (3/4)_n.
pub fn gamma_twice_plus_quarter(n: u64) -> SqrtPiMultiple {
    let dup = Rational::from(pochhammer(&Rational::from((1, 4)), n) * pochhammer(&Rational::from((3, 4)), n))
        * Rational::from(Integer::from(1) << (2 * n) as u32);
    SqrtPiMultiple::new(dup)
}
