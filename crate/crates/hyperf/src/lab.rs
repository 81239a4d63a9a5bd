//! The identity catalog and verifier.
//!
//! Every identity carries two (or more) independently computed sides.
//! A check passes when |lhs - rhs| <= err_lhs + err_rhs + 10^-digits:
//! the two error bounds plus the requested resolution. Chain identities
//! are verified pairwise over all expression pairs so a failure localizes
//! to one expression.

use crate::combinatorics::{binom_mid, gamma_half_integer, harmonic, odd_harmonic};
use crate::constants::{constant, Constant};
use crate::series::{evaluate_custom_sum, EvalResult, HyperSpec, SumTerm};
use crate::special::{clausen2, trigamma, AngleValue};
use crate::transforms::{
    cancel_common_params, fuse_linear, mms_closed_coeff, mms_term, split_even, split_odd, CoeffSeq,
};
use crate::{Error, ErrVal, PrecisionContext, Rational, Result};
use rug::ops::Pow;
use rug::{Float, Integer};
use std::time::{Duration, Instant};

/// Outcome of checking one identity.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub lhs: ErrVal,
    pub rhs: ErrVal,
    pub abs_diff: Float,
    pub tolerance: Float,
    pub passed: bool,
    pub terms_used: usize,
    pub elapsed: Duration,
    /// Present when evaluation itself failed (the report is then failed).
    pub cause: Option<String>,
}

type Evaluator = fn(&PrecisionContext) -> Result<(ErrVal, usize)>;

enum Kind {
    TwoSided { lhs: Evaluator, rhs: Evaluator },
    Chain(Vec<Evaluator>),
    /// Fused coefficients equal the closed form, exactly, for n <= 200.
    ExactCoeff,
    /// h_k = H_2k - H_k/2 and the digamma-recurrence route, for k <= 500.
    ExactHarmonic,
}

/// A catalogued identity: stable id, human description, source anchor,
/// and the minimum digit count at which it is expected to verify.
pub struct Identity {
    id: &'static str,
    description: &'static str,
    paper_anchor: &'static str,
    min_digits: u32,
    kind: Kind,
}

impl Identity {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn description(&self) -> &'static str {
        self.description
    }

    pub fn paper_anchor(&self) -> &'static str {
        self.paper_anchor
    }

    pub fn min_digits(&self) -> u32 {
        self.min_digits
    }
}

// ---------------------------------------------------------------------
// shared building blocks

fn spec_3f2(z: Rational) -> HyperSpec {
    HyperSpec::new(
        vec![
            Rational::from((1, 2)),
            Rational::from((1, 2)),
            Rational::from((1, 2)),
        ],
        vec![Rational::from((3, 2)), Rational::from((3, 2))],
        z,
    )
    .expect("valid parameters")
}

/// The two 4F3(1/16) specs, produced mechanically from the 3F2 spec by
/// the even/odd split plus cancellation.
pub fn theorem_specs() -> (HyperSpec, HyperSpec, Rational) {
    let base = spec_3f2(Rational::from((1, 4)));
    let even = cancel_common_params(&split_even(&base).spec);
    let odd_scaled = split_odd(&base);
    let odd = cancel_common_params(&odd_scaled.spec);
    (even, odd, odd_scaled.prefactor)
}

fn pi_val(ctx: &PrecisionContext) -> ErrVal {
    constant(Constant::Pi, ctx)
}

fn pi_squared(ctx: &PrecisionContext) -> ErrVal {
    let pi = pi_val(ctx);
    pi.mul(&pi)
}

fn sqrt3(ctx: &PrecisionContext) -> ErrVal {
    constant(Constant::Sqrt3, ctx)
}

fn clausen_pi_third(ctx: &PrecisionContext) -> Result<ErrVal> {
    let pi = Float::with_val(ctx.prec_bits(), rug::float::Constant::Pi);
    clausen2(&AngleValue::from(pi / 3u32), ctx)
}

fn trigamma_third(ctx: &PrecisionContext) -> Result<ErrVal> {
    trigamma(&Rational::from((1, 3)), ctx)
}

// ---------------------------------------------------------------------
// public summation operations

/// sum_k C(2k,k) (+-1)^k / (16^k (2k+1)^2); + gives Cl2(pi/3), - pi^2/10.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn central_binomial_sum_full(sign: Sign, ctx: &PrecisionContext) -> Result<EvalResult> {
    evaluate_custom_sum(
        move |k| {
            let mut t = binom_mid(k) * Rational::from((Integer::from(1), Integer::from(1) << (2 * k) as u32));
            t /= Rational::from((2 * k + 1) * (2 * k + 1));
            if sign == Sign::Minus && k % 2 == 1 {
                t = -t;
            }
            SumTerm::Exact(t)
        },
        0.5,
        ctx,
    )
}

pub fn central_binomial_sum(sign: Sign, ctx: &PrecisionContext) -> Result<ErrVal> {
    Ok(central_binomial_sum_full(sign, ctx)?.result)
}

fn inverse_binomial_harmonic_full(ctx: &PrecisionContext) -> Result<EvalResult> {
    let mut h = Rational::new();
    let mut next_n = 0u64;
    evaluate_custom_sum(
        move |n| {
            // terms are requested in order; extend H_n incrementally
            while next_n < n {
                next_n += 1;
                h += Rational::from((1, next_n));
            }
            let c = Integer::from(2 * n).binomial(n as u32);
            SumTerm::Exact(Rational::from(&h / (Rational::from(c) * Rational::from(2 * n + 1))))
        },
        0.5,
        ctx,
    )
}

/// sum_n H_n / (C(2n,n) (2n+1)) = (8/(3 sqrt3)) Cl2(pi/3) - (2 pi/(3 sqrt3)) ln3.
pub fn inverse_binomial_harmonic_sum(ctx: &PrecisionContext) -> Result<ErrVal> {
    Ok(inverse_binomial_harmonic_full(ctx)?.result)
}

fn ramanujan_f_full(x: &Float, ctx: &PrecisionContext) -> Result<EvalResult> {
    let prec = ctx.prec_bits();
    let xabs = Float::with_val(prec, x.abs_ref());
    if !(xabs < 1) {
        return Err(Error::OutOfDomain);
    }
    if x.is_zero() {
        return Ok(EvalResult {
            result: ErrVal::zero(prec),
            terms_used: 1,
        });
    }
    let x_sq = xabs.to_f64() * xabs.to_f64();
    let bound = (x_sq + 1.0) / 2.0;
    let x = x.clone();
    evaluate_custom_sum(
        move |n| {
            let k = n + 1;
            let pow = Float::with_val(prec, (&x).pow((2 * k - 1) as u32));
            let slack = crate::context::rounding_slack(&pow) * Float::with_val(prec, 2 * k);
            let p = ErrVal::new(pow, slack).expect("finite power");
            let w = odd_harmonic(k) / Rational::from(2 * k - 1);
            SumTerm::Approx(p.mul_rational(&w))
        },
        bound,
        ctx,
    )
}

/// Ramanujan's f(x) = sum_{k>=1} h_k x^(2k-1) / (2k-1) for |x| < 1.
pub fn ramanujan_f(x: &Float, ctx: &PrecisionContext) -> Result<ErrVal> {
    Ok(ramanujan_f_full(x, ctx)?.result)
}

// ---------------------------------------------------------------------
// per-identity evaluators

fn eval_3f2(z: Rational, ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = spec_3f2(z).evaluate(ctx)?;
    Ok((out.result, out.terms_used))
}

fn rp_minus_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    eval_3f2(Rational::from((-1, 4)), ctx)
}

fn rp_plus_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    eval_3f2(Rational::from((1, 4)), ctx)
}

fn pi_sq_tenth(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    Ok((pi_squared(ctx).mul_rational(&Rational::from((1, 10))), 0))
}

fn pi_sq_twentieth(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    Ok((pi_squared(ctx).mul_rational(&Rational::from((1, 20))), 0))
}

/// psi'(1/3)/(2 sqrt3) - pi^2/(3 sqrt3)
fn rp2_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let tri = trigamma_third(ctx)?;
    let s3 = sqrt3(ctx);
    let a = tri.div(&s3.mul_rational(&Rational::from(2)))?;
    let b = pi_squared(ctx).div(&s3.mul_rational(&Rational::from(3)))?;
    Ok((a.sub(&b), 0))
}

fn t1_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let (even, _, _) = theorem_specs();
    let out = even.evaluate(ctx)?;
    Ok((out.result, out.terms_used))
}

/// (1/2) [pi^2 (1/10 - 1/(3 sqrt3)) + psi'(1/3)/(2 sqrt3)]
fn t1_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let tri = trigamma_third(ctx)?;
    let s3 = sqrt3(ctx);
    let pi2 = pi_squared(ctx);
    let inner = pi2
        .mul_rational(&Rational::from((1, 10)))
        .sub(&pi2.div(&s3.mul_rational(&Rational::from(3)))?)
        .add(&tri.div(&s3.mul_rational(&Rational::from(2)))?);
    Ok((inner.mul_rational(&Rational::from((1, 2))), 0))
}

fn t2_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let (_, odd, _) = theorem_specs();
    let out = odd.evaluate(ctx)?;
    Ok((out.result, out.terms_used))
}

/// 36 [psi'(1/3)/(2 sqrt3) - pi^2 (1/10 + 1/(3 sqrt3))]
fn t2_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let tri = trigamma_third(ctx)?;
    let s3 = sqrt3(ctx);
    let pi2 = pi_squared(ctx);
    let inner = tri
        .div(&s3.mul_rational(&Rational::from(2)))?
        .sub(&pi2.mul_rational(&Rational::from((1, 10))))
        .sub(&pi2.div(&s3.mul_rational(&Rational::from(3)))?);
    Ok((inner.mul_rational(&Rational::from(36)), 0))
}

/// F1(1/16) - (1/72) F2(1/16), both evaluated
fn mmf_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let (a, na) = t1_lhs(ctx)?;
    let (b, nb) = t2_lhs(ctx)?;
    Ok((a.sub(&b.mul_rational(&Rational::from((1, 72)))), na + nb))
}

fn mms_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = evaluate_custom_sum(|n| SumTerm::Exact(mms_term(n)), 0.125, ctx)?;
    Ok((out.result, out.terms_used))
}

/// 2 sqrt3 Cl2(pi/3) + 2 pi^2 / 3
fn cp_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let cl = clausen_pi_third(ctx)?;
    let v = cl
        .mul(&sqrt3(ctx))
        .mul_rational(&Rational::from(2))
        .add(&pi_squared(ctx).mul_rational(&Rational::from((2, 3))));
    Ok((v, 0))
}

fn cp_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    Ok((trigamma_third(ctx)?, 0))
}

/// sum_k C(2k,k) / (2^(4k+1) (2k+1)^2), the half-weight normalization
fn bs_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = central_binomial_sum_full(Sign::Plus, ctx)?;
    Ok((
        out.result.mul_rational(&Rational::from((1, 2))),
        out.terms_used,
    ))
}

/// (3 sqrt3 / 4) * (psi'(1/3)/9) - pi^2/(6 sqrt3)
fn bs_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let tri = trigamma_third(ctx)?;
    let s3 = sqrt3(ctx);
    let a = tri.mul(&s3).mul_rational(&Rational::from((1, 12)));
    let b = pi_squared(ctx).div(&s3.mul_rational(&Rational::from(6)))?;
    Ok((a.sub(&b), 0))
}

fn bz_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = central_binomial_sum_full(Sign::Plus, ctx)?;
    Ok((out.result, out.terms_used))
}

fn clausen_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    Ok((clausen_pi_third(ctx)?, 0))
}

/// (3 sqrt(pi)/8) sum_n n! psi(n+1) / Gamma(n+3/2) 4^-n
///   + (pi sqrt3/6)(gamma_E + ln3); sqrt(pi) cancels against Gamma.
fn pv_series(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let gamma = constant(Constant::EulerGamma, ctx);
    let sum = {
        let gamma = gamma.clone();
        evaluate_custom_sum(
            move |n| {
                let fact = Rational::from(Integer::from(Integer::factorial(n as u32)));
                let mut r = Rational::from(&fact / gamma_half_integer(n).coeff());
                r *= Rational::from((3, 8));
                r /= Rational::from(Integer::from(1) << (2 * n) as u32);
                let psi = gamma.neg().add_rational(&harmonic(n));
                SumTerm::Approx(psi.mul_rational(&r))
            },
            0.5,
            ctx,
        )?
    };
    let ln3 = constant(Constant::Ln3, ctx);
    let tail = pi_val(ctx)
        .mul(&sqrt3(ctx))
        .mul_rational(&Rational::from((1, 6)))
        .mul(&gamma.add(&ln3));
    Ok((sum.result.add(&tail), sum.terms_used))
}

/// (2 / sqrt3) Cl2(pi/3)
fn pv_clausen(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let cl = clausen_pi_third(ctx)?;
    Ok((cl.mul_rational(&Rational::from(2)).div(&sqrt3(ctx))?, 0))
}

/// psi'(1/3)/3 - 2 pi^2/9
fn pv_trigamma(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let tri = trigamma_third(ctx)?;
    Ok((
        tri.mul_rational(&Rational::from((1, 3)))
            .sub(&pi_squared(ctx).mul_rational(&Rational::from((2, 9)))),
        0,
    ))
}

fn ib_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = inverse_binomial_harmonic_full(ctx)?;
    Ok((out.result, out.terms_used))
}

/// (8/(3 sqrt3)) Cl2(pi/3) - (2 pi/(3 sqrt3)) ln3
fn ib_rhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let cl = clausen_pi_third(ctx)?;
    let s3_3 = sqrt3(ctx).mul_rational(&Rational::from(3));
    let a = cl.mul_rational(&Rational::from(8)).div(&s3_3)?;
    let b = pi_val(ctx)
        .mul_rational(&Rational::from(2))
        .mul(&constant(Constant::Ln3, ctx))
        .div(&s3_3)?;
    Ok((a.sub(&b), 0))
}

fn cbs_plus(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = central_binomial_sum_full(Sign::Plus, ctx)?;
    Ok((out.result, out.terms_used))
}

fn cbs_minus(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = central_binomial_sum_full(Sign::Minus, ctx)?;
    Ok((out.result, out.terms_used))
}

/// (3 sqrt3/8) * inverse binomial harmonic sum + (pi/4) ln3
fn r1_harmonic_form(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let ib = inverse_binomial_harmonic_full(ctx)?;
    let a = ib
        .result
        .mul(&sqrt3(ctx))
        .mul_rational(&Rational::from((3, 8)));
    let b = pi_val(ctx)
        .mul(&constant(Constant::Ln3, ctx))
        .mul_rational(&Rational::from((1, 4)));
    Ok((a.add(&b), ib.terms_used))
}

fn rs_lhs(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let prec = ctx.prec_bits();
    let x = Float::with_val(prec, 5u32).sqrt().recip();
    let out = ramanujan_f_full(&x, ctx)?;
    Ok((out.result, out.terms_used))
}

/// 2 sum_{k>=1} h_k 5^(-k+1/2) / (2k-1) as written, with the sqrt5 factor
/// applied to the exact rational sum.
fn r2_ramanujan_form(ctx: &PrecisionContext) -> Result<(ErrVal, usize)> {
    let out = evaluate_custom_sum(
        |n| {
            let k = n + 1;
            let t = odd_harmonic(k)
                / (Rational::from(Integer::from(5).pow(k as u32)) * Rational::from(2 * k - 1));
            SumTerm::Exact(t)
        },
        0.5,
        ctx,
    )?;
    let prec = ctx.prec_bits();
    let sqrt5 = Float::with_val(prec, 5u32).sqrt();
    let slack = crate::context::rounding_slack(&sqrt5);
    let sqrt5 = ErrVal::new(sqrt5, slack)?;
    Ok((
        out.result.mul(&sqrt5).mul_rational(&Rational::from(2)),
        out.terms_used,
    ))
}

// ---------------------------------------------------------------------
// registry and verification

/// The full identity catalog, in source order.
pub fn registry() -> Vec<Identity> {
    vec![
        Identity {
            id: "RP1",
            description: "3F2(1/2,1/2,1/2;3/2,3/2;-1/4) = pi^2/10",
            paper_anchor: "Eq. (4)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: rp_minus_lhs, rhs: pi_sq_tenth },
        },
        Identity {
            id: "RP2",
            description: "3F2(1/2,1/2,1/2;3/2,3/2;1/4) = psi'(1/3)/(2 sqrt3) - pi^2/(3 sqrt3)",
            paper_anchor: "Eq. (5)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: rp_plus_lhs, rhs: rp2_rhs },
        },
        Identity {
            id: "T1",
            description: "4F3(1/4,1/4,1/4,3/4;1/2,5/4,5/4;1/16) closed form",
            paper_anchor: "Eq. (6)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: t1_lhs, rhs: t1_rhs },
        },
        Identity {
            id: "T2",
            description: "4F3(3/4,3/4,3/4,5/4;3/2,7/4,7/4;1/16) closed form",
            paper_anchor: "Eq. (7)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: t2_lhs, rhs: t2_rhs },
        },
        Identity {
            id: "MMF",
            description: "weighted 4F3 difference equals pi^2/10",
            paper_anchor: "Eq. (8)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: mmf_lhs, rhs: pi_sq_tenth },
        },
        Identity {
            id: "COEFF",
            description: "fused coefficients match the closed form exactly (n <= 200)",
            paper_anchor: "Eqs. (9)-(11)",
            min_digits: 30,
            kind: Kind::ExactCoeff,
        },
        Identity {
            id: "MMS",
            description: "single-sum representation of pi^2/10",
            paper_anchor: "Eq. (12)",
            min_digits: 30,
            kind: Kind::TwoSided { lhs: mms_lhs, rhs: pi_sq_tenth },
        },
        Identity {
            id: "CP",
            description: "2 sqrt3 Cl2(pi/3) + 2 pi^2/3 = psi'(1/3)",
            paper_anchor: "Eq. (13)",
            min_digits: 20,
            kind: Kind::TwoSided { lhs: cp_lhs, rhs: cp_rhs },
        },
        Identity {
            id: "BS",
            description: "binomial sum with the 1/2 normalization",
            paper_anchor: "Eq. (15)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: bs_lhs, rhs: bs_rhs },
        },
        Identity {
            id: "BZ",
            description: "Zucker's binomial sum equals Cl2(pi/3)",
            paper_anchor: "Eq. (17)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: bz_lhs, rhs: clausen_rhs },
        },
        Identity {
            id: "STAR",
            description: "3F2(1/4) = Cl2(pi/3)",
            paper_anchor: "Eq. (5*)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: rp_plus_lhs, rhs: clausen_rhs },
        },
        Identity {
            id: "PV",
            description: "psi-series with gamma_E and ln3; Clausen and trigamma forms",
            paper_anchor: "Eq. (18)",
            min_digits: 15,
            kind: Kind::Chain(vec![pv_series, pv_clausen, pv_trigamma]),
        },
        Identity {
            id: "IB",
            description: "inverse central binomial sum with harmonic numbers",
            paper_anchor: "Eq. (20)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: ib_lhs, rhs: ib_rhs },
        },
        Identity {
            id: "R1",
            description: "chain: 3F2(1/4), binomial sum, harmonic form, Cl2(pi/3)",
            paper_anchor: "Eq. (21)",
            min_digits: 15,
            kind: Kind::Chain(vec![rp_plus_lhs, cbs_plus, r1_harmonic_form, clausen_rhs]),
        },
        Identity {
            id: "BZ9",
            description: "alternating binomial sum equals pi^2/10",
            paper_anchor: "Eq. (22)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: cbs_minus, rhs: pi_sq_tenth },
        },
        Identity {
            id: "RS",
            description: "Ramanujan's f(1/sqrt5) = pi^2/20",
            paper_anchor: "Eq. (23)",
            min_digits: 15,
            kind: Kind::TwoSided { lhs: rs_lhs, rhs: pi_sq_twentieth },
        },
        Identity {
            id: "R2",
            description: "chain: 3F2(-1/4), alternating sum, Ramanujan form, pi^2/10",
            paper_anchor: "Eq. (24)",
            min_digits: 15,
            kind: Kind::Chain(vec![rp_minus_lhs, cbs_minus, r2_ramanujan_form, pi_sq_tenth]),
        },
        Identity {
            id: "HK",
            description: "h_k = H_2k - H_k/2 and the digamma recurrence route, exactly",
            paper_anchor: "Sec. 4 end",
            min_digits: 15,
            kind: Kind::ExactHarmonic,
        },
    ]
}

fn failed_report(id: &str, ctx: &PrecisionContext, start: Instant, cause: String) -> VerificationReport {
    let prec = ctx.prec_bits();
    VerificationReport {
        id: id.to_string(),
        lhs: ErrVal::zero(prec),
        rhs: ErrVal::zero(prec),
        abs_diff: Float::new(prec),
        tolerance: ctx.tolerance(),
        passed: false,
        terms_used: 0,
        elapsed: start.elapsed(),
        cause: Some(cause),
    }
}

fn run_identity(entry: &Identity, ctx: &PrecisionContext) -> VerificationReport {
    let start = Instant::now();
    let prec = ctx.prec_bits();
    match &entry.kind {
        Kind::TwoSided { lhs, rhs } => {
            let (l, nl) = match lhs(ctx) {
                Ok(v) => v,
                Err(e) => return failed_report(entry.id, ctx, start, e.to_string()),
            };
            let (r, nr) = match rhs(ctx) {
                Ok(v) => v,
                Err(e) => return failed_report(entry.id, ctx, start, e.to_string()),
            };
            let abs_diff = l.abs_diff(&r);
            let tolerance = Float::with_val(prec, l.err() + r.err()) + ctx.tolerance();
            let passed = abs_diff <= tolerance;
            VerificationReport {
                id: entry.id.to_string(),
                lhs: l,
                rhs: r,
                abs_diff,
                tolerance,
                passed,
                terms_used: nl + nr,
                elapsed: start.elapsed(),
                cause: None,
            }
        }
        Kind::Chain(evals) => {
            let mut vals = Vec::with_capacity(evals.len());
            let mut terms = 0usize;
            for ev in evals {
                match ev(ctx) {
                    Ok((v, n)) => {
                        vals.push(v);
                        terms += n;
                    }
                    Err(e) => return failed_report(entry.id, ctx, start, e.to_string()),
                }
            }
            // worst pair by slack = diff - tol
            let mut worst: Option<(usize, usize, Float, Float)> = None;
            for i in 0..vals.len() {
                for j in (i + 1)..vals.len() {
                    let diff = vals[i].abs_diff(&vals[j]);
                    let tol = Float::with_val(prec, vals[i].err() + vals[j].err())
                        + ctx.tolerance();
                    let slack = Float::with_val(prec, &diff - &tol);
                    let replace = match &worst {
                        None => true,
                        Some((_, _, d, t)) => slack > Float::with_val(prec, d - t),
                    };
                    if replace {
                        worst = Some((i, j, diff, tol));
                    }
                }
            }
            let (i, j, abs_diff, tolerance) = worst.expect("chain has >= 2 members");
            let passed = abs_diff <= tolerance;
            VerificationReport {
                id: entry.id.to_string(),
                lhs: vals[i].clone(),
                rhs: vals[j].clone(),
                abs_diff,
                tolerance,
                passed,
                terms_used: terms,
                elapsed: start.elapsed(),
                cause: None,
            }
        }
        Kind::ExactCoeff => {
            let (even, odd, prefactor) = theorem_specs();
            let fused = match fuse_linear(vec![
                (Rational::from(1), CoeffSeq::from_spec(&even)),
                (-prefactor, CoeffSeq::from_spec(&odd)),
            ]) {
                Ok(f) => f,
                Err(e) => return failed_report(entry.id, ctx, start, e.to_string()),
            };
            let mut passed = true;
            let mut abs_diff = Float::new(prec);
            for n in 0..=200u64 {
                let a = fused.at(n);
                let b = mms_closed_coeff(n);
                if a != b {
                    passed = false;
                    abs_diff = Float::with_val(prec, Rational::from(&a - &b)).abs();
                    break;
                }
            }
            let spot = ErrVal::from_rational(&fused.at(1), prec);
            VerificationReport {
                id: entry.id.to_string(),
                lhs: spot.clone(),
                rhs: ErrVal::from_rational(&mms_closed_coeff(1), prec),
                abs_diff,
                tolerance: ctx.tolerance(),
                passed,
                terms_used: 201,
                elapsed: start.elapsed(),
                cause: None,
            }
        }
        Kind::ExactHarmonic => {
            let mut passed = true;
            let mut h2k = Rational::new(); // H_2k
            let mut hk = Rational::new(); // H_k
            let mut hodd = Rational::new(); // h_k
            let mut psi_inc = Rational::new(); // psi(k+1/2) - psi(1/2)
            for k in 1..=500u64 {
                h2k += Rational::from((1, 2 * k - 1));
                h2k += Rational::from((1, 2 * k));
                hk += Rational::from((1, k));
                hodd += Rational::from((1, 2 * k - 1));
                psi_inc += Rational::from((2, 2 * k - 1));
                let route_a = Rational::from(&h2k - &hk / Rational::from(2));
                let route_b = Rational::from(&psi_inc / Rational::from(2));
                if route_a != hodd || route_b != hodd {
                    passed = false;
                    break;
                }
            }
            let spot = ErrVal::from_rational(&hodd, prec);
            VerificationReport {
                id: entry.id.to_string(),
                lhs: spot.clone(),
                rhs: spot,
                abs_diff: Float::new(prec),
                tolerance: ctx.tolerance(),
                passed,
                terms_used: 500,
                elapsed: start.elapsed(),
                cause: None,
            }
        }
    }
}

/// Verify one identity by id.
///
/// ```
/// use hyperf::{lab, PrecisionContext};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let report = lab::verify("MMS", &ctx).unwrap();
/// assert!(report.passed);
/// ```
pub fn verify(id: &str, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let reg = registry();
    let entry = reg
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    Ok(run_identity(entry, ctx))
}

/// Verify the whole catalog; individual failures are reported, never
/// thrown. Reports come back ordered by id.
pub fn verify_all(ctx: &PrecisionContext) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = registry()
        .iter()
        .map(|e| run_identity(e, ctx))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

// ---------------------------------------------------------------------
// convergence benchmark

/// Series tracked by the convergence benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesId {
    Rp1,
    Mms,
    Ib,
    Rs,
    Bs,
    Bz9,
}

impl SeriesId {
    pub const ALL: [SeriesId; 6] = [
        SeriesId::Rp1,
        SeriesId::Mms,
        SeriesId::Ib,
        SeriesId::Rs,
        SeriesId::Bs,
        SeriesId::Bz9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SeriesId::Rp1 => "RP1",
            SeriesId::Mms => "MMS",
            SeriesId::Ib => "IB",
            SeriesId::Rs => "RS",
            SeriesId::Bs => "BS",
            SeriesId::Bz9 => "BZ9",
        }
    }

    /// Limiting absolute term ratio of the series.
    fn ratio_limit(&self) -> Rational {
        match self {
            SeriesId::Mms => Rational::from((1, 16)),
            SeriesId::Rs => Rational::from((1, 5)),
            _ => Rational::from((1, 4)),
        }
    }

    /// First index from which the geometric majorant rbar holds; the
    /// harmonic-weighted sum opens with a zero term, which no geometric
    /// bound can dominate.
    fn majorant_start(&self) -> u64 {
        match self {
            SeriesId::Ib => 1,
            _ => 0,
        }
    }
}

impl std::str::FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "RP1" => Ok(SeriesId::Rp1),
            "MMS" => Ok(SeriesId::Mms),
            "IB" => Ok(SeriesId::Ib),
            "RS" => Ok(SeriesId::Rs),
            "BS" => Ok(SeriesId::Bs),
            "BZ9" => Ok(SeriesId::Bz9),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}

/// |t_n| of the benchmark series, at 60-digit working precision.
fn bench_term_magnitude(series: SeriesId, n: u64, prec: u32) -> Float {
    match series {
        SeriesId::Rp1 => {
            let t = spec_3f2(Rational::from((-1, 4))).series_term(n).abs();
            Float::with_val(prec, &t)
        }
        SeriesId::Mms => Float::with_val(prec, &mms_term(n)),
        SeriesId::Ib => {
            let c = Integer::from(2 * n).binomial(n as u32);
            let t = harmonic(n) / (Rational::from(c) * Rational::from(2 * n + 1));
            Float::with_val(prec, &t)
        }
        SeriesId::Rs => {
            // f(1/sqrt5): |t_n| = h_{n+1} 5^(-(n+1)) sqrt5 / (2n+1)
            let k = n + 1;
            let w = odd_harmonic(k)
                / (Rational::from(Integer::from(5).pow(k as u32)) * Rational::from(2 * k - 1));
            Float::with_val(prec, &w) * Float::with_val(prec, 5u32).sqrt()
        }
        SeriesId::Bs => {
            let t = binom_mid(n)
                * Rational::from((Integer::from(1), Integer::from(2) << (2 * n) as u32))
                / Rational::from((2 * n + 1) * (2 * n + 1));
            Float::with_val(prec, &t)
        }
        SeriesId::Bz9 => {
            let t = binom_mid(n)
                * Rational::from((Integer::from(1), Integer::from(1) << (2 * n) as u32))
                / Rational::from((2 * n + 1) * (2 * n + 1));
            Float::with_val(prec, &t)
        }
    }
}

/// Smallest number of leading terms whose rigorous geometric tail bound
/// falls below epsilon: the first N with |t_N| / (1 - rbar) <= epsilon.
///
/// ```
/// use hyperf::lab::{terms_to_tolerance, SeriesId};
/// use hyperf::Float;
///
/// let eps = Float::with_val(128, 1e-15);
/// assert_eq!(terms_to_tolerance(SeriesId::Rp1, &eps).unwrap(), 19);
/// assert_eq!(terms_to_tolerance(SeriesId::Mms, &eps).unwrap(), 10);
/// ```
pub fn terms_to_tolerance(series: SeriesId, epsilon: &Float) -> Result<usize> {
    if !(epsilon.is_finite() && *epsilon > 0) {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let prec = 256;
    let rbar = (series.ratio_limit() + Rational::from(1)) / Rational::from(2);
    let one_minus = Float::with_val(prec, Rational::from(1) - rbar);
    for n in series.majorant_start()..=PrecisionContext::DEFAULT_MAX_TERMS as u64 {
        let bound = bench_term_magnitude(series, n, prec) / &one_minus;
        if bound <= *epsilon {
            return Ok(n as usize);
        }
    }
    Err(Error::PrecisionUnreachable {
        terms: PrecisionContext::DEFAULT_MAX_TERMS,
    })
}

/// rho(n) = |mms_term(n) / rp1_term(n)| for n = 1..=n_max; successive
/// quotients approach 1/4.
pub fn term_decay_ratio(n_max: usize) -> Result<Vec<f64>> {
    if n_max < 2 {
        return Err(Error::InvalidInput("need at least two ratios".into()));
    }
    let spec = spec_3f2(Rational::from((-1, 4)));
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max as u64 {
        let rho = Rational::from(mms_term(n) / spec.series_term(n)).abs();
        out.push(rho.to_f64());
    }
    Ok(out)
}
