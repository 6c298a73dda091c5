use proptest::prelude::*;
use qdeform_core::scalars::{EvalEnv, Scalar};

/// Laurent polynomial in q^{1/2} with small rational coefficients.
fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i32..=6, -5i64..=5, 1i64..=4), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Scalar::zero(), |acc, (e, n, d)| &acc + &(&Scalar::frac(n, d) * &Scalar::q_half_pow(e)))
    })
}

/// Laurent numerator over a denominator that stays positive for q > 0.
fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), prop::option::of((1i32..=4, 1i64..=3))).prop_map(|(num, den)| match den {
        None => num,
        Some((e, c)) => {
            let d = &Scalar::one() + &(&Scalar::int(c) * &Scalar::q_half_pow(e));
            num.checked_div(&d).expect("positive denominator")
        }
    })
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64, scale: f64) -> bool {
    (a - b).norm() <= 1e-12 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_associates_and_multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in scalar(),
        b in scalar(),
        qs in prop::collection::vec(0.3f64..3.0, 10),
    ) {
        let sum = &a + &b;
        let prod = &a * &b;
        for q in qs {
            let env = EvalEnv::at_q(q);
            let (x, y) = (a.eval(&env).unwrap(), b.eval(&env).unwrap());
            let s = sum.eval(&env).unwrap();
            let p = prod.eval(&env).unwrap();
            prop_assert!(close(s, x + y, x.norm() + y.norm()), "sum at q={q}: {s} vs {}", x + y);
            prop_assert!(close(p, x * y, x.norm() * y.norm()), "product at q={q}: {p} vs {}", x * y);
        }
    }

    #[test]
    fn square_root_squares_back(a in laurent()) {
        let r = a.sqrt().unwrap();
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn inverse_is_two_sided(a in scalar()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert!((&inv * &a).is_one());
    }
}

#[test]
fn zero_has_no_inverse() {
    assert!(Scalar::zero().inv().is_err());
}
