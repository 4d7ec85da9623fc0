//! Integration checks of the theorem machinery through the public API.

use std::sync::Arc;

use hstrace_core::algebra::{build_algebra, opposite, Algebra};
use hstrace_core::modrep::{proj_dim, simple, ProjDim};
use hstrace_core::presentation::parse_presentation;
use hstrace_core::trace::verify_hs_axioms;
use hstrace_core::verify::{
    check_corner_pd_transfer, check_strong_no_loop, check_telescoping_chain, Outcome,
};

fn algebra(src: &str) -> Arc<Algebra> {
    Arc::new(build_algebra(&parse_presentation(src).unwrap()).unwrap())
}

fn fixtures() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("a2", algebra("field Q; vertices 1 2; arrows a: 1 -> 2;")),
        (
            "a3rel",
            algebra("field Q; vertices 1 2 3; arrows a: 1 -> 2; b: 2 -> 3; relations a*b;"),
        ),
        ("loop", algebra("field Q; vertices 1; arrows x: 1 -> 1; relations x*x;")),
        (
            "square",
            algebra(
                "field Q; vertices 1 2 3 4; arrows a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4; \
                 relations a*b - c*d;",
            ),
        ),
        (
            "twoloop",
            algebra(
                "field Q; vertices 1; arrows x: 1 -> 1; y: 1 -> 1; \
                 relations x*x; x*y; y*x; y*y;",
            ),
        ),
    ]
}

#[test]
fn left_simple_projective_dimensions() {
    let expected: Vec<(&str, Vec<ProjDim>)> = vec![
        ("a2", vec![ProjDim::Finite(0), ProjDim::Finite(1)]),
        ("a3rel", vec![ProjDim::Finite(0), ProjDim::Finite(1), ProjDim::Finite(2)]),
        ("loop", vec![ProjDim::AtLeast(20)]),
        (
            "square",
            vec![ProjDim::Finite(0), ProjDim::Finite(1), ProjDim::Finite(1), ProjDim::Finite(2)],
        ),
        ("twoloop", vec![ProjDim::AtLeast(20)]),
    ];
    for ((name, alg), (ename, pds)) in fixtures().into_iter().zip(expected) {
        assert_eq!(name, ename);
        let op = Arc::new(opposite(&alg));
        for (i, expected_pd) in pds.into_iter().enumerate() {
            let s = simple(&op, i);
            assert_eq!(proj_dim(&s, 20), expected_pd, "{name} vertex {i}");
        }
    }
}

#[test]
fn corner_pd_transfer_agrees_on_every_vertex() {
    for (name, alg) in fixtures() {
        for i in 0..alg.num_vertices() {
            let r = check_corner_pd_transfer(&alg, i, 12);
            assert_ne!(r.outcome, Outcome::Refuted, "{name} vertex {i}: {:?}", r.witnesses);
        }
    }
}

#[test]
fn telescoping_chain_on_square() {
    let alg = algebra(
        "field Q; vertices 1 2 3 4; arrows a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4; \
         relations a*b - c*d;",
    );
    for i in 0..4 {
        let r = check_telescoping_chain(&alg, i, 10);
        assert_eq!(r.outcome, Outcome::Verified, "vertex {i}: {:?}", r.witnesses);
    }
}

#[test]
fn strong_no_loop_is_consistent_everywhere() {
    for (name, alg) in fixtures() {
        let r = check_strong_no_loop(&alg, 20);
        assert_eq!(r.outcome, Outcome::Verified, "{name}: {:?}", r.witnesses);
    }
}

#[test]
fn hs_axioms_hold_over_prime_fields_too() {
    let alg = algebra("field F 3; vertices 1 2 3; arrows a: 1 -> 2; b: 2 -> 3; relations a*b;");
    let report = verify_hs_axioms(&alg, 15, 11);
    assert!(report.ok(), "{:?}", report.failures);
}

#[test]
fn trivial_and_semisimple_algebras_pass_everything() {
    // A = k and A = k³: traces reduce to ordinary matrix traces.
    for src in ["field Q; vertices 1;", "field Q; vertices 1 2 3;"] {
        let alg = algebra(src);
        assert_eq!(alg.loewy_length(), 1);
        let hs = verify_hs_axioms(&alg, 10, 5);
        assert!(hs.ok(), "{:?}", hs.failures);
        let ch = hstrace_core::complexes::verify_character(&alg, 5, 5);
        assert!(ch.ok(), "{:?}", ch.failures);
        let r = check_strong_no_loop(&alg, 5);
        assert_eq!(r.outcome, Outcome::Verified);
    }
}

#[test]
fn loop_counts_equal_ext1_dimensions() {
    for (name, alg) in fixtures() {
        let loops = alg.loops_per_vertex();
        for i in 0..alg.num_vertices() {
            let s = simple(&alg, i);
            let ext1 = hstrace_core::modrep::ext_dims(&s, &s, 1)[1];
            assert_eq!(ext1, loops[i], "{name} vertex {i}");
        }
    }
}
