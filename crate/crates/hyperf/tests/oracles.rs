//! Independent oracles: every constant and special function is
//! cross-checked here against a computation that shares no code with the
//! implementation under test (different series, quadrature, or both).

use hyperf::constants::{constant, Constant};
use hyperf::special::{clausen2, trigamma, AngleValue};
use hyperf::{rat, Float, PrecisionContext, Rational};
use rug::ops::Pow;

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).unwrap()
}

/// arctan(1/x) as an exact rational partial sum, truncated below `tiny`.
fn atan_inv(x: i64, tiny: &Rational) -> Rational {
    let mut acc = Rational::new();
    let x_sq = rat(x * x, 1);
    let mut pow = rat(1, x); // x^-(2k+1)
    let mut k = 0u64;
    loop {
        let term = Rational::from(&pow / Rational::from(2 * k + 1));
        if term.clone().abs() < *tiny {
            return acc;
        }
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        pow /= &x_sq;
        k += 1;
    }
}

#[test]
fn pi_against_machin() {
    let c = ctx(35);
    let tiny = Rational::from(rug::Integer::from(10).pow(45u32)).recip();
    let machin = rat(16, 1) * atan_inv(5, &tiny) - rat(4, 1) * atan_inv(239, &tiny);
    let pi = constant(Constant::Pi, &c);
    let diff = Float::with_val(c.prec_bits(), pi.value() - Float::with_val(c.prec_bits(), &machin)).abs();
    assert!(diff < c.tolerance());
}

#[test]
fn pi_against_bbp() {
    let c = ctx(35);
    let mut acc = Rational::new();
    for k in 0..40u64 {
        let base = Rational::from(rug::Integer::from(1) << (4 * k) as u32).recip();
        let inner = rat(4, 8 * k as i64 + 1)
            - rat(2, 8 * k as i64 + 4)
            - rat(1, 8 * k as i64 + 5)
            - rat(1, 8 * k as i64 + 6);
        acc += base * inner;
    }
    let pi = constant(Constant::Pi, &c);
    let diff =
        Float::with_val(c.prec_bits(), pi.value() - Float::with_val(c.prec_bits(), &acc)).abs();
    assert!(diff < c.tolerance());
}

#[test]
fn ln3_against_atanh_series() {
    // ln 3 = 2 atanh(1/2) = 2 sum 1/((2k+1) 4^k) / 2^?  -- atanh(1/2) =
    // sum (1/2)^(2k+1)/(2k+1)
    let c = ctx(30);
    let mut acc = Rational::new();
    for k in 0..80u64 {
        let p = Rational::from(rug::Integer::from(1) << (2 * k + 1) as u32).recip();
        acc += p / Rational::from(2 * k + 1);
    }
    acc *= rat(2, 1);
    let ln3 = constant(Constant::Ln3, &c);
    let diff =
        Float::with_val(c.prec_bits(), ln3.value() - Float::with_val(c.prec_bits(), &acc)).abs();
    assert!(diff < c.tolerance());
}

#[test]
fn trigamma_third_against_euler_maclaurin_direct_sum() {
    // psi'(1/3) = sum_{n>=0} (n + 1/3)^-2, summed directly to K with the
    // Euler-Maclaurin tail of f(x) = (x + 1/3)^-2:
    // sum_{n>=K} f(n) = 1/(K+1/3) + f(K)/2 + 2/(12 (K+1/3)^3)
    //                   - 24/(720 (K+1/3)^5) + O(K^-7)
    let c = ctx(20);
    let k_cut = 2000u64;
    let mut acc = Rational::new();
    for n in 0..k_cut {
        let d = Rational::from(rat(n as i64, 1) + rat(1, 3));
        acc += Rational::from(&d * &d).recip();
    }
    let kk = Rational::from(rat(k_cut as i64, 1) + rat(1, 3));
    let kk2 = Rational::from(&kk * &kk);
    let kk3 = Rational::from(&kk2 * &kk);
    let kk5 = Rational::from(&kk3 * &kk2);
    acc += kk.clone().recip(); // integral
    acc += kk2.recip() / rat(2, 1); // f(K)/2
    acc += kk3.recip() / rat(6, 1); // -B2/2! f'(K) = 2/(12 kk^3)
    acc -= kk5.recip() / rat(30, 1); // B4/4! f'''(K) = -24/(720 kk^5)
    let v = trigamma(&rat(1, 3), &c).unwrap();
    let diff =
        Float::with_val(c.prec_bits(), v.value() - Float::with_val(c.prec_bits(), &acc)).abs();
    assert!(diff < c.tolerance());
}

/// ln(sin(t/2) / (t/2)): the smooth part of the log-sine integrand.
fn smooth_logsine(t: &Float, prec: u32) -> Float {
    if t.is_zero() {
        return Float::new(prec);
    }
    let half = Float::with_val(prec, t / 2u32);
    let s = Float::with_val(prec, half.sin_ref());
    Float::with_val(prec, s / &half).ln()
}

#[test]
fn clausen_pi_third_against_quadrature() {
    // Cl2(theta) = -int_0^theta ln(2 sin(t/2)) dt
    //            = theta - theta ln theta - int_0^theta ln(sin(t/2)/(t/2)) dt,
    // with the singular part integrated analytically and the smooth rest
    // by composite Simpson.
    let c = ctx(15);
    let prec = 256u32;
    let theta = Float::with_val(prec, rug::float::Constant::Pi) / 3u32;

    let n = 1 << 14; // Simpson panels (even count)
    let h = Float::with_val(prec, &theta / Float::with_val(prec, n));
    let mut acc = Float::new(prec);
    for i in 0..=n {
        let t = Float::with_val(prec, &h * Float::with_val(prec, i));
        let w = if i == 0 || i == n {
            1u32
        } else if i % 2 == 1 {
            4
        } else {
            2
        };
        acc += smooth_logsine(&t, prec) * w;
    }
    acc *= &h;
    acc /= 3u32;

    let analytic = Float::with_val(prec, &theta - &theta * Float::with_val(prec, theta.ln_ref()));
    let reference = analytic - acc;

    let v = clausen2(&AngleValue::from(Float::with_val(c.prec_bits(), &theta)), &c).unwrap();
    let diff = Float::with_val(prec, v.value() - &reference).abs();
    assert!(diff < c.tolerance(), "diff = {diff:e}");
}

#[test]
fn clausen_pi_third_against_fourier_blocks() {
    // sin(n pi/3) cycles with period 6 as (s, s, 0, -s, -s, 0), s = sqrt3/2,
    // so the Fourier series collapses to blocks of four reciprocal squares;
    // summing blocks gives an O(K^-2) truncation this sanity check absorbs.
    let prec = 192u32;
    let blocks = 100_000u64;
    let mut acc = Float::new(prec);
    for k in 0..blocks {
        let b = 6 * k;
        let mut block = Float::with_val(prec, (b + 1) * (b + 1)).recip();
        block += Float::with_val(prec, (b + 2) * (b + 2)).recip();
        block -= Float::with_val(prec, (b + 4) * (b + 4)).recip();
        block -= Float::with_val(prec, (b + 5) * (b + 5)).recip();
        acc += block;
    }
    acc *= Float::with_val(prec, 3u32).sqrt() / 2u32;

    let c = ctx(20);
    let theta = Float::with_val(c.prec_bits(), rug::float::Constant::Pi) / 3u32;
    let v = clausen2(&AngleValue::from(theta), &c).unwrap();
    let diff = Float::with_val(prec, v.value() - &acc).abs();
    assert!(diff < Float::with_val(prec, 1e-8), "diff = {diff:e}");
}

#[test]
fn euler_gamma_against_digit_string() {
    let c = ctx(30);
    let g = constant(Constant::EulerGamma, &c);
    let reference = Float::with_val(
        c.prec_bits(),
        Float::parse("0.57721566490153286060651209008240243").unwrap(),
    );
    let diff = Float::with_val(c.prec_bits(), g.value() - &reference).abs();
    assert!(diff < c.tolerance());
}

#[test]
fn trigamma_third_against_digit_string() {
    let c = ctx(30);
    let v = trigamma(&rat(1, 3), &c).unwrap();
    let reference = Float::with_val(
        c.prec_bits(),
        Float::parse("10.09559712542709408179200409989251636051").unwrap(),
    );
    let diff = Float::with_val(c.prec_bits(), v.value() - &reference).abs();
    assert!(diff < c.tolerance());
}
