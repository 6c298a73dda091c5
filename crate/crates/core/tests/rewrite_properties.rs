use proptest::prelude::*;
use qdeform_core::ncrewrite::{NcPoly, Word, DEFAULT_BUDGET};
use qdeform_core::presentations::glq2_algebra;
use qdeform_core::scalars::Scalar;

fn poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0u16..4, 0..5), -3i64..=3), 0..4).prop_map(|terms| {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(Word(w), Scalar::int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_multiplicative(p in poly(), r in poly()) {
        let rs = glq2_algebra();
        let direct = rs.normal_form(&p.concat_mul(&r), DEFAULT_BUDGET).unwrap();
        let p_nf = rs.normal_form(&p, DEFAULT_BUDGET).unwrap();
        let r_nf = rs.normal_form(&r, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&rs.multiply(&p, &r, DEFAULT_BUDGET).unwrap(), &direct);
        prop_assert_eq!(&rs.multiply(&p_nf, &r_nf, DEFAULT_BUDGET).unwrap(), &direct);
    }

    #[test]
    fn normal_form_is_idempotent_and_irreducible(p in poly()) {
        let rs = glq2_algebra();
        let nf = rs.normal_form(&p, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&rs.normal_form(&nf, DEFAULT_BUDGET).unwrap(), &nf);
        prop_assert!(nf.terms().all(|(w, _)| rs.is_normal_word(w)));
    }

    #[test]
    fn normal_form_is_linear(p in poly(), r in poly(), k in -3i64..=3) {
        let rs = glq2_algebra();
        let lhs = rs.normal_form(&p.add(&r.scale(&Scalar::int(k))), DEFAULT_BUDGET).unwrap();
        let rhs = rs
            .normal_form(&p, DEFAULT_BUDGET)
            .unwrap()
            .add(&rs.normal_form(&r, DEFAULT_BUDGET).unwrap().scale(&Scalar::int(k)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn glq2_rules_preserve_degree() {
    let rs = glq2_algebra();
    assert_eq!(rs.rules().count(), 6);
    for ((a, b), rhs) in rs.rules() {
        for r in rhs {
            assert_eq!(r.homogeneous_degree(), Some(2), "rule {a},{b}");
        }
    }
}

#[test]
fn every_word_up_to_length_eight_terminates() {
    let rs = glq2_algebra();
    let mut nz = rs.normalizer(DEFAULT_BUDGET);
    let mut layer = vec![Vec::<u16>::new()];
    let mut count = 0;
    for len in 1..=8 {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..4u16 {
                let mut v = w.clone();
                v.push(g);
                let (nf, _) = nz.word_nf(&Word(v.clone())).expect("within budget");
                assert!(nf.terms().all(|(u, _)| u.len() == len));
                count += 1;
                next.push(v);
            }
        }
        layer = next;
    }
    assert_eq!(count, (1..=8).map(|k| 4usize.pow(k)).sum::<usize>());
}
