use proptest::prelude::*;
use qdeform_core::clifford::{anticommutation_residuals, blade_matrix, dirac_matrices, Multivector, Signature};
use qdeform_core::linalg::Matrix;
use qdeform_core::scalars::Scalar;

fn multivector() -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u32..16, -3i64..=3, 1i64..=2), 0..5).prop_map(|terms| {
        let sig = Signature::cl31();
        terms.into_iter().fold(Multivector::zero(&sig), |acc, (b, n, d)| {
            acc.add(&Multivector::blade(&sig, b, Scalar::frac(n, d))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn geometric_product_associates(a in multivector(), b in multivector(), c in multivector()) {
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn matrix_image_is_multiplicative(a in multivector(), b in multivector()) {
        let gens = dirac_matrices();
        let lhs = a.product(&b).unwrap().to_matrix(&gens);
        let rhs = a.to_matrix(&gens).matmul(&b.to_matrix(&gens)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn blades_map_to_matrix_products() {
    let sig = Signature::cl31();
    let gens = dirac_matrices();
    for a in 0..16u32 {
        for b in 0..16u32 {
            let (sign, blade) = sig.blade_product(a, b);
            let expected = blade_matrix(a, &gens).matmul(&blade_matrix(b, &gens)).unwrap();
            assert_eq!(blade_matrix(blade, &gens).scale(&Scalar::int(sign as i64)), expected, "{a:04b} {b:04b}");
        }
    }
}

#[test]
fn generators_anticommute_with_the_minkowski_metric() {
    let sig = Signature::cl31();
    let gens = dirac_matrices();
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = gens[mu].anticommutator(&gens[nu]).unwrap();
            let g = if mu == nu { 2 * sig.metric(mu) as i64 } else { 0 };
            assert_eq!(ac, Matrix::identity(4).scale(&Scalar::int(g)));
        }
    }
    assert!(anticommutation_residuals(&gens, &sig).iter().all(|(_, m)| m.is_zero()));
}
