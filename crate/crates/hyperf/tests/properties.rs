//! Randomized structural properties of the exact layers and the series
//! engine's error bounds.

use hyperf::combinatorics::pochhammer;
use hyperf::series::HyperSpec;
use hyperf::transforms::{cancel_common_params, split_even, split_odd};
use hyperf::{rat, Float, PrecisionContext, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=50).prop_map(|(n, d)| rat(n, d))
}

/// A parameter in (0, 3) in eighths, as the random spec space.
fn positive_param() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_map(|n| rat(n, 8))
}

/// A random p = q+1 spec with |z| <= 1/2 that the engine can sum.
fn summable_spec() -> impl Strategy<Value = HyperSpec> {
    (1usize..=3).prop_flat_map(|q| {
        (
            proptest::collection::vec(positive_param(), q + 1),
            proptest::collection::vec(positive_param(), q),
            -4i64..=4,
        )
            .prop_map(|(num, den, z8)| HyperSpec::new(num, den, rat(z8, 8)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pochhammer_duplication(a in small_rational(), n in 0u64..=50) {
        // (a)_2n = 4^n (a/2)_n ((a+1)/2)_n
        let lhs = pochhammer(&a, 2 * n);
        let rhs = pochhammer(&(a.clone() / rat(2, 1)), n)
            * pochhammer(&((a + rat(1, 1)) / rat(2, 1)), n)
            * Rational::from(rug::Integer::from(1) << (2 * n) as u32);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn even_odd_reconstruction(spec in summable_spec()) {
        let ctx = PrecisionContext::new(20).unwrap();
        let whole = spec.evaluate(&ctx).unwrap().result;
        let even = split_even(&spec);
        let odd = split_odd(&spec);
        let mut rebuilt = even.spec.evaluate(&ctx).unwrap().result;
        if !odd.degenerate {
            let o = odd.spec.evaluate(&ctx).unwrap().result;
            rebuilt = rebuilt.add(&o.mul_rational(&odd.prefactor));
        }
        let tol = Float::with_val(ctx.prec_bits(), rebuilt.err() + whole.err())
            + ctx.tolerance();
        prop_assert!(rebuilt.abs_diff(&whole) <= tol);
    }

    #[test]
    fn cancellation_is_termwise_sound(spec in summable_spec()) {
        // duplicate a denominator parameter into the numerator so there is
        // something to cancel
        let mut num = spec.num_params().to_vec();
        num.push(spec.den_params()[0].clone());
        let mut den = spec.den_params().to_vec();
        den.push(rat(7, 2));
        let padded = HyperSpec::new(num, den, spec.argument().clone()).unwrap();
        let reduced = cancel_common_params(&padded);
        prop_assert!(reduced.num_params().len() < padded.num_params().len());
        for n in 0..=30u64 {
            prop_assert_eq!(padded.series_term(n), reduced.series_term(n));
        }
    }

    #[test]
    fn splits_preserve_parametric_excess(spec in summable_spec()) {
        let s = spec.parametric_excess();
        prop_assert_eq!(split_even(&spec).spec.parametric_excess(), s.clone());
        prop_assert_eq!(split_odd(&spec).spec.parametric_excess(), s);
    }

    #[test]
    fn classification_is_total(
        num in proptest::collection::vec(small_rational(), 0..4),
        den in proptest::collection::vec(positive_param(), 0..4),
        z in small_rational(),
    ) {
        // never panics, whatever the shape
        let spec = HyperSpec::new(num, den, z).unwrap();
        let _ = spec.classify_convergence();
        let _ = spec.parametric_excess();
    }

    #[test]
    fn tail_bound_is_sound(spec in summable_spec(), digits in 10u32..=50) {
        let ctx = PrecisionContext::new(digits).unwrap();
        let out = spec.evaluate(&ctx).unwrap().result;
        // reference at twice the precision
        let wide = PrecisionContext::new(2 * digits + 10).unwrap();
        let reference = spec.evaluate(&wide).unwrap().result;
        let diff = out.abs_diff(&reference);
        let allowed = Float::with_val(
            wide.prec_bits(),
            out.err() + reference.err(),
        );
        prop_assert!(diff <= allowed, "diff {:e} > err {:e}", diff, allowed);
        prop_assert!(*out.err() <= ctx.tolerance());
    }
}
