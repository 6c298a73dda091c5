//! Independent f64 re-implementation of the q-gamma computations, compared
//! against the engine at seeded sample points.

use num_complex::Complex64;
use qdeform_core::fierz::linear_relations;
use qdeform_core::presentations::ActionConvention;
use qdeform_core::qclifford::{build_q_gammas, build_q_metric, deformed_metric, target_alpha_metric};
use qdeform_core::scalars::{ratio, EvalEnv, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = [[f64; 4]; 4];

fn mul(a: &M, b: &M) -> M {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn lin(a: &M, x: f64, b: &M, y: f64) -> M {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = x * a[i][j] + y * b[i][j];
        }
    }
    c
}

fn norm(a: &M) -> f64 {
    a.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
}

/// `γ^0, γ^+, γ^-, γ^3` typed in from the displays.
fn gammas(q: f64) -> [M; 4] {
    let bq = q + 1.0 / q;
    let a = (q * bq).sqrt();
    let b = bq.sqrt();
    [
        [[0., 0., q * q, 0.], [0., 0., 0., -1.], [-1., 0., 0., 0.], [0., -1., 0., 0.]],
        [[0., 0., 0., a], [0., 0., 0., 0.], [0., -a, 0., 0.], [0., 0., 0., 0.]],
        [[0., 0., 0., b * q.powf(-1.5)], [0.; 4], [0.; 4], [-b * q.powf(1.5), 0., 0., 0.]],
        [[0., 0., 1. / q + q - q * q, 0.], [0., 0., 0., -1. / (q * q)], [-1., 0., 0., 0.], [0., q * q, 0., 0.]],
    ]
}

fn target(q: f64) -> M {
    let bq = q + 1.0 / q;
    let e03 = 1. - bq * q.powi(-3) + q.powi(-2);
    let e12 = q - q * q + q.powi(3) - q.powi(4);
    let e23 = 1. - q * q - 1. / q - q.powi(-3);
    [
        [bq * q.powi(-3), 1. - q * q, q - 1. / q, e03],
        [1. - q * q, bq * q + q.powi(4) - 1., e12, q * bq],
        [q - 1. / q, e12, bq * (bq - 2. * q * q), e23],
        [e03, q * bq, e23, -1. + q * bq + q.powi(-3) + q.powi(-4)],
    ]
}

fn coefficients(conv: ActionConvention, g: &[M; 4]) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            c[mu][nu] = match conv {
                ActionConvention::RowSum => (0..4).map(|r| g[mu][r][nu]).sum(),
                ActionConvention::ColumnSum => (0..4).map(|r| g[mu][nu][r]).sum(),
                ActionConvention::FixedRow => g[mu][mu][nu],
                ActionConvention::FixedColumn => g[mu][nu][mu],
            };
        }
    }
    c
}

/// Geometric product of f64 multivectors over `diag(-1,1,1,1)`, indexed by blade bitmask.
fn geometric(a: &[f64; 16], b: &[f64; 16]) -> [f64; 16] {
    let metric = [-1.0, 1.0, 1.0, 1.0];
    let mut out = [0.0; 16];
    for x in 0..16usize {
        for y in 0..16usize {
            if a[x] == 0.0 || b[y] == 0.0 {
                continue;
            }
            let mut swaps = 0;
            for bit in 0..4 {
                if y >> bit & 1 == 1 {
                    swaps += (x >> (bit + 1)).count_ones();
                }
            }
            let mut s = if swaps % 2 == 0 { 1.0 } else { -1.0 };
            for (bit, m) in metric.iter().enumerate() {
                if x & y >> bit & 1 == 1 {
                    s *= m;
                }
            }
            out[x ^ y] += s * a[x] * b[y];
        }
    }
    out
}

fn blade_metric(c: &[[f64; 4]; 4]) -> M {
    let vecs: Vec<[f64; 16]> = c
        .iter()
        .map(|row| {
            let mut v = [0.0; 16];
            for (rho, x) in row.iter().enumerate() {
                v[1 << rho] = *x;
            }
            v
        })
        .collect();
    let mut g = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let ab = geometric(&vecs[mu], &vecs[nu]);
            let ba = geometric(&vecs[nu], &vecs[mu]);
            for k in 1..16 {
                assert!((ab[k] + ba[k]).abs() < 1e-9, "anticommutator of vectors is scalar");
            }
            g[mu][nu] = (ab[0] + ba[0]) / 2.0;
        }
    }
    g
}

fn samples() -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    while out.len() < 5 {
        let q: f64 = rng.gen_range(0.5..2.0);
        if (q - 1.0).abs() > 1e-3 {
            out.push(q);
        }
    }
    out
}

fn real(m: &qdeform_core::linalg::Matrix<Complex64>) -> M {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let z = m.get(i, j);
            assert!(z.im.abs() < 1e-12);
            *x = z.re;
        }
    }
    out
}

#[test]
fn gamma_display_entries() {
    let g = build_q_gammas();
    let q = Scalar::q;
    let bq = Scalar::big_q;
    let qh = Scalar::q_half_pow;
    let pinned = [
        (0, 0, 2, &q() * &q()),
        (0, 1, 3, Scalar::int(-1)),
        (0, 2, 0, Scalar::int(-1)),
        (1, 0, 3, (&q() * &bq()).sqrt().unwrap()),
        (1, 2, 1, -(&q() * &bq()).sqrt().unwrap()),
        (2, 0, 3, &bq().sqrt().unwrap() * &qh(-3)),
        (2, 3, 0, -(&bq().sqrt().unwrap() * &qh(3))),
        (3, 0, 2, &(&q().inv().unwrap() + &q()) - &(&q() * &q())),
        (3, 1, 3, -(&q() * &q()).inv().unwrap()),
        (3, 3, 1, &q() * &q()),
    ];
    for (k, i, j, v) in pinned {
        assert_eq!(g.gammas[k].get(i, j), &v, "gamma {k} entry ({i},{j})");
    }
}

#[test]
fn metric_display_entries() {
    let c = build_q_metric().unwrap().c;
    let q = Scalar::q;
    let pinned = [
        (0, 3, q().inv().unwrap()),
        (1, 1, &Scalar::int(-1) + &(&q() * &q()).inv().unwrap()),
        (1, 2, -q().inv().unwrap()),
        (2, 1, -q().inv().unwrap()),
        (3, 0, q()),
        (0, 0, Scalar::zero()),
        (2, 2, Scalar::zero()),
        (3, 3, Scalar::zero()),
    ];
    for (i, j, v) in pinned {
        assert_eq!(c.get(i, j), &v, "C entry ({i},{j})");
    }
}

#[test]
fn gammas_match_the_oracle_numerically() {
    for q in samples() {
        let engine = build_q_gammas().eval(&EvalEnv::at_q(q)).unwrap();
        for (k, g) in gammas(q).iter().enumerate() {
            assert!(norm(&lin(&real(&engine.gammas[k]), 1.0, g, -1.0)) < 1e-12, "gamma {k} at {q}");
        }
    }
}

#[test]
fn deformed_metric_agrees_with_both_oracles() {
    let symbolic = build_q_gammas();
    for q in samples() {
        let env = EvalEnv::at_q(q);
        let numeric = symbolic.eval(&env).unwrap();
        let g = gammas(q);
        for conv in ActionConvention::ALL {
            let c = coefficients(conv, &g);
            let oracle = blade_metric(&c);
            let engine_numeric = real(&deformed_metric(&numeric, conv).metric);
            let engine_exact = real(&deformed_metric(&symbolic, conv).metric.eval(&env).unwrap());
            assert!(norm(&lin(&engine_numeric, 1.0, &oracle, -1.0)) < 1e-10, "{} at {q}", conv.as_str());
            assert!(norm(&lin(&engine_exact, 1.0, &oracle, -1.0)) < 1e-10, "{} at {q}", conv.as_str());
            let t = target(q);
            let engine_gap = real(&deformed_metric(&numeric, conv).metric.sub(&target_alpha_metric().eval(&env).unwrap()).unwrap());
            assert!((norm(&engine_gap) - norm(&lin(&oracle, 1.0, &t, -1.0))).abs() < 1e-9);
        }
    }
}

#[test]
fn deformed_metric_is_symmetric_for_every_convention() {
    let symbolic = build_q_gammas();
    for conv in ActionConvention::ALL {
        let d = deformed_metric(&symbolic, conv);
        assert_eq!(d.metric, d.metric.transpose(), "{}", conv.as_str());
        for q in [ratio(1, 2), ratio(3, 4), ratio(5, 3), ratio(2, 1)] {
            let m = d.metric.at_q(&q).unwrap();
            assert_eq!(m, m.transpose());
        }
    }
}

#[test]
fn target_matrix_matches_the_oracle() {
    for q in samples() {
        let engine = real(&target_alpha_metric().eval(&EvalEnv::at_q(q)).unwrap());
        assert!(norm(&lin(&engine, 1.0, &target(q), -1.0)) < 1e-10);
    }
}

fn oracle_by_label(g: &[M; 4], l: &str) -> M {
    match l {
        "0" => g[0],
        "+" => g[1],
        "-" => g[2],
        "3" => g[3],
        "5" => mul(&mul(&g[0], &g[1]), &mul(&g[2], &g[3])),
        _ => unreachable!(),
    }
}

#[test]
fn linear_relations_agree_with_the_oracle() {
    let symbolic = build_q_gammas();
    for rel in linear_relations() {
        let exact = rel.residual(&symbolic, &rel.coefficient);
        for q in samples() {
            let env = EvalEnv::at_q(q);
            let g = gammas(q);
            let k = rel.coefficient.eval(&env).unwrap().re;
            let lhs = mul(&oracle_by_label(&g, rel.lhs[0]), &oracle_by_label(&g, rel.lhs[1]));
            let rhs = mul(&oracle_by_label(&g, rel.rhs[0]), &oracle_by_label(&g, rel.rhs[1]));
            let oracle = norm(&lin(&lhs, 1.0, &rhs, -k));
            let numeric = rel.residual(&symbolic.eval(&env).unwrap(), &Complex64::new(k, 0.0)).max_norm();
            let from_exact = exact.eval(&env).unwrap().max_norm();
            assert!((numeric - oracle).abs() < 1e-9, "{} at {q}", rel.label());
            assert!((from_exact - oracle).abs() < 1e-9, "{} at {q}", rel.label());
            assert_eq!(exact.is_zero(), oracle < 1e-9, "{} classification at {q}", rel.label());
        }
    }
}
