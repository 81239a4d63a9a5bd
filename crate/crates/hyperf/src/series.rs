//! The pFq series engine.
//!
//! A [`HyperSpec`] is an exact description of a generalized hypergeometric
//! series: rational numerator and denominator parameters and a rational
//! argument. Evaluation walks the multiplicative term recurrence
//! t_{n+1}/t_n = prod(a_j + n) / (prod(b_k + n) (n+1)) * z and stops once a
//! rigorous geometric majorant bounds the tail below the target tolerance.

use crate::{Error, ErrVal, PrecisionContext, Rational, Result};
use rug::Float;

/// Exact parameters and argument of a pFq series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperSpec {
    num_params: Vec<Rational>,
    den_params: Vec<Rational>,
    argument: Rational,
}

/// Where a pFq series converges, per the ratio test and the parametric
/// excess rule on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceClass {
    /// p <= q: entire in the argument.
    EntireArgument,
    /// p = q + 1 and |z| < 1.
    InsideUnitDisk,
    /// p = q + 1, |z| = 1, parametric excess s > 0.
    UnitCircleAbsolute,
    /// p = q + 1, |z| = 1, z != 1, -1 < s <= 0.
    UnitCircleConditional,
    Divergent,
}

impl std::fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConvergenceClass::EntireArgument => "entire",
            ConvergenceClass::InsideUnitDisk => "inside-unit-disk",
            ConvergenceClass::UnitCircleAbsolute => "unit-circle-absolute",
            ConvergenceClass::UnitCircleConditional => "unit-circle-conditional",
            ConvergenceClass::Divergent => "divergent",
        };
        f.write_str(s)
    }
}

/// Result of a summation: the error-tracked value and how many terms the
/// engine actually added.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub result: ErrVal,
    pub terms_used: usize,
}

/// A single term handed to [`evaluate_custom_sum`].
#[derive(Debug, Clone)]
pub enum SumTerm {
    Exact(Rational),
    Approx(ErrVal),
}

impl From<Rational> for SumTerm {
    fn from(q: Rational) -> Self {
        SumTerm::Exact(q)
    }
}

impl From<ErrVal> for SumTerm {
    fn from(v: ErrVal) -> Self {
        SumTerm::Approx(v)
    }
}

fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && *q <= 0
}

impl HyperSpec {
    /// Build a spec; denominator parameters must avoid zero and the
    /// negative integers.
    pub fn new(
        num_params: Vec<Rational>,
        den_params: Vec<Rational>,
        argument: Rational,
    ) -> Result<Self> {
        if let Some(bad) = den_params.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::InvalidDenominatorParam(bad.clone()));
        }
        Ok(Self {
            num_params,
            den_params,
            argument,
        })
    }

    pub fn num_params(&self) -> &[Rational] {
        &self.num_params
    }

    pub fn den_params(&self) -> &[Rational] {
        &self.den_params
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    /// Parametric excess s = sum(den) - sum(num).
    pub fn parametric_excess(&self) -> Rational {
        let mut s = Rational::new();
        for b in &self.den_params {
            s += b;
        }
        for a in &self.num_params {
            s -= a;
        }
        s
    }

    /// Total classification of convergence. Terminating series are still
    /// classified by the generic rule; `evaluate` handles them exactly.
    ///
    /// ```
    /// use hyperf::series::{ConvergenceClass, HyperSpec};
    /// use hyperf::rat;
    ///
    /// let spec = HyperSpec::new(vec![rat(1, 2), rat(1, 2)], vec![rat(3, 2)], rat(1, 1)).unwrap();
    /// assert_eq!(spec.classify_convergence(), ConvergenceClass::UnitCircleAbsolute);
    /// ```
    pub fn classify_convergence(&self) -> ConvergenceClass {
        let p = self.num_params.len();
        let q = self.den_params.len();
        if p <= q {
            return ConvergenceClass::EntireArgument;
        }
        if p != q + 1 {
            return ConvergenceClass::Divergent;
        }
        let zabs = self.argument.clone().abs();
        let one = Rational::from(1);
        if zabs < one {
            ConvergenceClass::InsideUnitDisk
        } else if zabs == one {
            let s = self.parametric_excess();
            if s > 0 {
                ConvergenceClass::UnitCircleAbsolute
            } else if self.argument != one && s > -1 {
                ConvergenceClass::UnitCircleConditional
            } else {
                ConvergenceClass::Divergent
            }
        } else {
            ConvergenceClass::Divergent
        }
    }

    /// Exact n-th series term prod(a_j)_n / prod(b_k)_n * z^n / n!.
    pub fn series_term(&self, n: u64) -> Rational {
        use crate::combinatorics::pochhammer;
        let mut t = Rational::from(1);
        for a in &self.num_params {
            t *= pochhammer(a, n);
        }
        for b in &self.den_params {
            t /= pochhammer(b, n);
        }
        let zpow = rug::ops::Pow::pow(self.argument.clone(), n as u32);
        t * zpow / Rational::from(rug::Integer::from(rug::Integer::factorial(n as u32)))
    }

    /// Exact ratio t_{n+1} / t_n.
    pub fn term_ratio(&self, n: u64) -> Rational {
        let mut r = self.argument.clone();
        for a in &self.num_params {
            r *= Rational::from(a + n);
        }
        for b in &self.den_params {
            r /= Rational::from(b + n);
        }
        r / Rational::from(n + 1)
    }

    /// Index after which every term vanishes, when some numerator
    /// parameter is a nonpositive integer: (-m)_n = 0 for n > m.
    fn terminates_at(&self) -> Option<u64> {
        self.num_params
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .map(|a| {
                let m = Rational::from(-a.clone());
                m.numer().to_u64().unwrap_or(u64::MAX)
            })
            .min()
    }

    /// A bound on |t_{n+1}/t_n| valid for every n >= m.
    ///
    /// Each paired factor (x+|a|)/(x-|b|) is decreasing in x, so its
    /// supremum over [m, inf) is its value at m; a numerator paired with
    /// the factorial contributes max((m+|a|)/(m+1), 1). Requires
    /// m > |b_k| for all k; returns None below that.
    fn ratio_majorant(&self, m: u64) -> Option<Rational> {
        let p = self.num_params.len();
        let q = self.den_params.len();
        if p > q + 1 {
            return None;
        }
        let m_rat = Rational::from(m);
        let mut bound = self.argument.clone().abs();
        let mut nums: Vec<Rational> = self
            .num_params
            .iter()
            .map(|a| Rational::from(&m_rat + a.clone().abs()))
            .collect();
        for (k, b) in self.den_params.iter().enumerate() {
            let d = Rational::from(&m_rat - b.clone().abs());
            if d <= 0 {
                return None;
            }
            if k < p {
                bound *= nums[k].clone() / d;
            } else {
                bound /= d;
            }
        }
        let fact = Rational::from(m + 1);
        if p == q + 1 {
            let extra = nums.pop().expect("p >= 1");
            let f = extra / fact;
            if f > 1 {
                bound *= f;
            }
        } else {
            bound /= fact;
        }
        Some(bound)
    }

    /// Sum the series to the context's tolerance with a rigorous tail
    /// bound. Terminating series are summed exactly.
    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<EvalResult> {
        let prec = ctx.prec_bits();

        if let Some(last) = self.terminates_at() {
            if last as usize >= ctx.max_terms() {
                return Err(Error::PrecisionUnreachable {
                    terms: ctx.max_terms(),
                });
            }
            let mut acc = Rational::new();
            let mut t = Rational::from(1);
            for n in 0..=last {
                acc += &t;
                t *= self.term_ratio(n);
            }
            return Ok(EvalResult {
                result: ErrVal::from_rational(&acc, prec),
                terms_used: last as usize + 1,
            });
        }

        match self.classify_convergence() {
            ConvergenceClass::Divergent => return Err(Error::DivergentSeries),
            ConvergenceClass::UnitCircleConditional => {
                return Err(Error::ConditionalConvergenceUnsupported)
            }
            _ => {}
        }

        let p = self.num_params.len();
        let q = self.den_params.len();
        let rbar = if p == q + 1 {
            (self.argument.clone().abs() + Rational::from(1)) / Rational::from(2)
        } else {
            Rational::from((1, 2))
        };
        let one_minus_rbar = Float::with_val(prec, Rational::from(1) - &rbar);
        let tail_target = ctx.tolerance() / 4u32;

        let mut sum = Float::new(prec);
        let mut abs_sum = Float::new(prec);
        let mut term = Float::with_val(prec, 1);
        for n in 0..ctx.max_terms() as u64 {
            sum += &term;
            abs_sum += Float::with_val(prec, term.abs_ref());
            let next = Float::with_val(prec, &term * &self.term_ratio(n));
            if let Some(bound) = self.ratio_majorant(n + 1) {
                if bound <= rbar {
                    let tail =
                        Float::with_val(prec, next.abs_ref()) / &one_minus_rbar;
                    if tail <= tail_target {
                        let terms_used = n as usize + 1;
                        let slack = summation_slack(&abs_sum, terms_used);
                        let err = tail + slack;
                        return Ok(EvalResult {
                            result: ErrVal::new(sum, err)?,
                            terms_used,
                        });
                    }
                }
            }
            term = next;
        }
        Err(Error::PrecisionUnreachable {
            terms: ctx.max_terms(),
        })
    }
}

/// Rounding slack for a summation of `terms` correctly rounded additions
/// whose absolute partial sums never exceed `abs_sum`.
fn summation_slack(abs_sum: &Float, terms: usize) -> Float {
    let prec = abs_sum.prec();
    let mut s = Float::with_val(prec, abs_sum.abs_ref());
    s += 1u32;
    s *= Float::with_val(prec, 4 * (terms as u64 + 2));
    s >>= prec - 1;
    s
}

/// Generic tail-bounded summation for series the caller describes term by
/// term, with a caller-supplied eventual geometric ratio bound.
///
/// After terms 0..n-1 are summed, the engine stops as soon as the observed
/// ratio |t_n| / |t_{n-1}| is within the bound and |t_n| / (1 - bound)
/// falls below the tolerance target; that quantity bounds the whole
/// remaining tail.
pub fn evaluate_custom_sum<F>(
    mut term_fn: F,
    ratio_bound: f64,
    ctx: &PrecisionContext,
) -> Result<EvalResult>
where
    F: FnMut(u64) -> SumTerm,
{
    if !(ratio_bound > 0.0 && ratio_bound < 1.0) {
        return Err(Error::InvalidRatioBound(ratio_bound));
    }
    let prec = ctx.prec_bits();
    let rb = Float::with_val(prec, ratio_bound);
    let one_minus_rb = Float::with_val(prec, 1.0 - ratio_bound);
    let tail_target = ctx.tolerance() / 4u32;

    let fetch = |t: SumTerm| -> (Float, Float) {
        match t {
            SumTerm::Exact(q) => {
                let v = ErrVal::from_rational(&q, prec);
                (v.value().clone(), v.err().clone())
            }
            SumTerm::Approx(v) => (v.value().clone(), v.err().clone()),
        }
    };

    let mut sum = Float::new(prec);
    let mut abs_sum = Float::new(prec);
    let mut err_acc = Float::new(prec);

    let (v0, e0) = fetch(term_fn(0));
    let mut prev_mag = Float::with_val(prec, v0.abs_ref()) + &e0;
    sum += &v0;
    abs_sum += Float::with_val(prec, v0.abs_ref());
    err_acc += &e0;

    for n in 1..=ctx.max_terms() as u64 {
        let (v, e) = fetch(term_fn(n));
        let mag = Float::with_val(prec, v.abs_ref()) + &e;
        let tail = Float::with_val(prec, &mag / &one_minus_rb);
        let ratio_ok = mag <= Float::with_val(prec, &prev_mag * &rb);
        if ratio_ok && tail <= tail_target {
            let terms_used = n as usize;
            let slack = summation_slack(&abs_sum, terms_used);
            let err = err_acc + tail + slack;
            return Ok(EvalResult {
                result: ErrVal::new(sum, err)?,
                terms_used,
            });
        }
        sum += &v;
        abs_sum += Float::with_val(prec, v.abs_ref());
        err_acc += &e;
        prev_mag = mag;
    }
    Err(Error::PrecisionUnreachable {
        terms: ctx.max_terms(),
    })
}
