use proptest::prelude::*;
use qdeform_core::fierz::{
    braid_residual, build_rhat, flip_matrix, hecke_residual, quadratic_residual, reflection_rules, rhat_symbolic,
    standard_epsilon, SpinorConvention,
};
use qdeform_core::ncrewrite::DEFAULT_BUDGET;
use qdeform_core::qclifford::build_q_gammas;
use qdeform_core::scalars::{ratio, Scalar, Var};

#[test]
fn rhat_is_hecke_and_braided_for_symbolic_q() {
    let q = Scalar::q();
    assert!(hecke_residual(&rhat_symbolic(), &q, &q.inv().unwrap()).is_zero());
    assert!(braid_residual(&rhat_symbolic()).is_zero());
    assert_eq!(build_rhat(&Scalar::one(), &Scalar::one()), flip_matrix());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn rhat_is_hecke_at_rational_points(n in 1i64..200, d in 1i64..50) {
        let q = Scalar::rational(ratio(n, d));
        let qi = q.inv().unwrap();
        let r = build_rhat(&q, &qi);
        prop_assert!(hecke_residual(&r, &q, &qi).is_zero());
        prop_assert!(braid_residual(&r).is_zero());
    }
}

#[test]
fn quadratic_residual_is_symmetric_under_spinor_exchange_with_commuting_spinors() {
    let eps = standard_epsilon();
    let alg = reflection_rules(&rhat_symbolic(), &eps, &Scalar::var(Var::K), 2, SpinorConvention::A).unwrap();
    let gs = build_q_gammas();
    let r = quadratic_residual(&gs, &alg, &eps, 0, 1, DEFAULT_BUDGET).unwrap();
    let swapped = quadratic_residual(&gs, &alg, &eps, 1, 0, DEFAULT_BUDGET).unwrap();
    let back = alg.rules.normal_form(&alg.swap_labels(&swapped), DEFAULT_BUDGET).unwrap();
    assert_eq!(back, r);
    assert!(r.terms().all(|(w, _)| w.len() <= 4));
}

#[test]
fn classical_reflection_is_plain_commutation() {
    let eps = qdeform_core::fierz::classical_epsilon();
    let one = Scalar::one();
    let alg = reflection_rules(&build_rhat(&one, &one), &eps, &one, 1, SpinorConvention::A).unwrap();
    assert_eq!(alg.rules.rules().count(), 4);
    for ((a, b), rhs) in alg.rules.rules() {
        assert_eq!(rhs[0], qdeform_core::ncrewrite::NcPoly::word(&[b, a]));
    }
}
