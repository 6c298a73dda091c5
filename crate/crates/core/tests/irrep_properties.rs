use num_complex::Complex64;
use proptest::prelude::*;
use qdeform_core::linalg::Matrix;
use qdeform_core::presentations::{
    build_affine_irrep, irrep_residuals, mixed_anticommutators, su2_action, ActionConvention, IrrepParams,
};
use qdeform_core::scalars::{ratio, GaussRational, Scalar};

fn rational(avoid_unit: bool) -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=9).prop_filter("nonzero, not a unit", move |(n, d)| *n != 0 && !(avoid_unit && n.abs() == *d))
}

fn draw() -> impl Strategy<Value = ((i64, i64), (i64, i64), (i64, i64), (i64, i64), i64)> {
    (rational(false), rational(false), rational(true), rational(true), (32i64..=128).prop_filter("q != 1", |n| *n != 64))
}

fn gauss((n, d): (i64, i64)) -> GaussRational {
    GaussRational::real(ratio(n, d))
}

fn bracket(q_pow_e: Complex64, q: Complex64) -> Complex64 {
    (q_pow_e - 1.0 / q_pow_e) / (q - 1.0 / q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn exact_irreps_satisfy_the_relations((zr, zi, lx, ly, qn) in draw()) {
        let z = GaussRational::new(ratio(zr.0, zr.1), ratio(zi.0, zi.1));
        let p = IrrepParams {
            z: Scalar::from_gauss(z),
            lambda_x: Scalar::from_gauss(gauss(lx)),
            lambda_y: Scalar::from_gauss(gauss(ly)),
            q: Scalar::rational(ratio(qn, 64)),
        };
        let r = build_affine_irrep(&p).unwrap();
        for (label, m) in irrep_residuals(&r) {
            prop_assert!(m.is_zero(), "{label}: {m}");
        }
        prop_assert_eq!(mixed_anticommutators(&r).len(), 4);
    }

    #[test]
    fn numeric_irreps_satisfy_the_square_law((zr, zi, lx, ly, qn) in draw()) {
        let c = |(n, d): (i64, i64)| Complex64::new(n as f64 / d as f64, 0.0);
        let z = Complex64::new(zr.0 as f64 / zr.1 as f64, zi.0 as f64 / zi.1 as f64);
        let q = Complex64::new(qn as f64 / 64.0, 0.0);
        let (lx, ly) = (c(lx), c(ly));
        let r = build_affine_irrep(&IrrepParams { z, lambda_x: lx, lambda_y: ly, q }).unwrap();
        for (label, m) in irrep_residuals(&r) {
            prop_assert!(m.max_norm() < 1e-10, "{label}: {}", m.max_norm());
        }
        let id = Matrix::<Complex64>::identity(2);
        for (i, (ex, ey)) in [(1.0 / lx, 1.0 / ly), (lx, ly)].into_iter().enumerate() {
            for (g, e) in r.gamma[i].iter().zip([ex, ey]) {
                let sq = g.matmul(g).unwrap();
                prop_assert!(sq.approx_eq(&id.scale(&bracket(e, q)), 1e-10));
            }
        }
    }
}

#[test]
fn gamma3_is_the_grading() {
    let p = IrrepParams { z: Scalar::int(2), lambda_x: Scalar::int(3), lambda_y: Scalar::int(5), q: Scalar::frac(3, 2) };
    let r = build_affine_irrep(&p).unwrap();
    let diag = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::int(-1)]]);
    assert_eq!(r.gamma3, diag);
}

#[test]
fn sigma3_is_fixed_by_the_action() {
    let p = IrrepParams { z: Scalar::int(2), lambda_x: Scalar::int(3), lambda_y: Scalar::int(5), q: Scalar::frac(3, 2) };
    let r = build_affine_irrep(&p).unwrap();
    let s3 = qdeform_core::linalg::pauli()[2].clone();
    for conv in ActionConvention::ALL {
        for i in 0..2 {
            let a = su2_action(&r, i, conv);
            assert_eq!(a[2], s3);
            assert_eq!(a[2].anticommutator(&a[2]).unwrap(), Matrix::identity(2).scale(&Scalar::int(2)));
        }
    }
}
