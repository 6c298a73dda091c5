use proptest::prelude::*;
use qdeform_core::linalg::Matrix;
use qdeform_core::scalars::Scalar;

fn entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        4 => (-4i64..=4).prop_map(Scalar::int),
        1 => (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Scalar::frac(n, d)),
        1 => (-2i32..=2).prop_map(|e| &Scalar::int(2) * &Scalar::q_half_pow(e)),
        1 => Just(Scalar::big_q()),
    ]
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec(entry(), r * c).prop_map(move |v| Matrix::new(r, c, v).unwrap())
}

fn chain() -> impl Strategy<Value = (Matrix<Scalar>, Matrix<Scalar>, Matrix<Scalar>)> {
    (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
        .prop_flat_map(|(a, b, c, d)| (matrix(a, b), matrix(b, c), matrix(c, d)))
}

fn quadruple() -> impl Strategy<Value = [Matrix<Scalar>; 4]> {
    (1usize..=2, 1usize..=2, 1usize..=2, 1usize..=2, 1usize..=2, 1usize..=2).prop_flat_map(|(m, n, k, p, r, s)| {
        (matrix(m, n), matrix(p, r), matrix(n, k), matrix(r, s)).prop_map(|(a, b, c, d)| [a, b, c, d])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matmul_associates((a, b, c) in chain()) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn anticommutator_is_symmetric((a, b) in (1usize..=3).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        prop_assert_eq!(a.anticommutator(&b).unwrap(), b.anticommutator(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kron_mixed_product([a, b, c, d] in quadruple()) {
        let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trips(a in matrix(3, 3)) {
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(3));
        }
    }
}
