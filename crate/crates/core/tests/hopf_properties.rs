use proptest::prelude::*;
use qdeform_core::hopf::{check_antipode, check_bialgebra_compatibility, check_coassociativity, check_counit, HopfData};
use qdeform_core::ncrewrite::DEFAULT_BUDGET;
use qdeform_core::presentations::{build_ch2, build_chq2, build_group_toy, ch2_negative_controls, glq2_negative_controls};
use qdeform_core::report::Status;

fn axiom(h: &HopfData, name: &str, len: usize) -> Status {
    match name {
        "coassociativity" => check_coassociativity(h, len, DEFAULT_BUDGET),
        "counit" => check_counit(h, len, DEFAULT_BUDGET),
        _ => check_antipode(h, len, DEFAULT_BUDGET),
    }
    .unwrap()
    .status
}

fn controls() -> Vec<(&'static str, HopfData)> {
    ch2_negative_controls().into_iter().chain(glq2_negative_controls()).collect()
}

#[test]
fn group_algebra_passes_every_axiom() {
    let h = build_group_toy();
    for a in ["coassociativity", "counit", "antipode"] {
        assert_eq!(axiom(&h, a, 4), Status::Pass, "{a}");
    }
    assert!(check_bialgebra_compatibility(&h, DEFAULT_BUDGET).unwrap().passed());
}

#[test]
fn ch2_passes_every_axiom_to_length_four() {
    let h = build_ch2();
    for a in ["coassociativity", "counit", "antipode"] {
        assert_eq!(axiom(&h, a, 4), Status::Pass, "{a}");
    }
    assert!(check_bialgebra_compatibility(&h, DEFAULT_BUDGET).unwrap().passed());
}

#[test]
fn chq2_antipode_is_reported_missing() {
    let h = build_chq2();
    let r = check_antipode(&h, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.status, Status::Report);
    assert_eq!(r.details.get("antipode_missing").map(String::as_str), Some("G1,G2"));
}

#[test]
fn every_negative_control_fails() {
    for (a, h) in controls() {
        assert_eq!(axiom(&h, a, 2), Status::Fail, "{} {a}", h.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn failures_persist_at_longer_lengths(idx in 0usize..5, short in 1usize..=2, extra in 1usize..=2) {
        let (a, h) = controls().swap_remove(idx);
        if axiom(&h, a, short) == Status::Fail {
            prop_assert_eq!(axiom(&h, a, short + extra), Status::Fail);
        }
    }
}
