use hassett::constructions::{build_generic, Mode, RealizationStatus};
use hassett::lattice::{short_vectors, AmbientVector};
use hassett::verifier::{verify_corollary20, verify_witness, COROLLARY_TARGETS};

#[test]
fn corollary_witness_shape() {
    let r = verify_corollary20();
    let report = &r.certificate.report;
    assert_eq!(r.certificate.basis.len(), 21);
    assert!(report.labellings.iter().all(|l| l.realized_d == l.target_d && l.saturated_in_m));
    let g = report.realized_gram.as_ref().unwrap();
    assert!(short_vectors(g, 2).unwrap().is_empty());
    assert!(!short_vectors(g, 3).unwrap().is_empty());
    assert_eq!(r.discriminants.iter().map(|d| d.d).collect::<Vec<_>>(), COROLLARY_TARGETS);
}

#[test]
fn verification_is_a_pure_function() {
    let out = build_generic(&[14, 20, 26], Mode::Goal).unwrap();
    assert_eq!(out.status, RealizationStatus::RealizedGoal);
    let basis = out.basis.unwrap();
    assert_eq!(verify_witness(&basis, &[14, 20, 26]), verify_witness(&basis, &[14, 20, 26]));
    assert!(verify_witness(&basis, &[14, 20, 26]).passed());
    let wrong = verify_witness(&basis, &[14, 20, 24]);
    assert_eq!(wrong.failure_reasons, vec!["DISC_MISMATCH(2)"]);
}

#[test]
fn slot_order_covariance() {
    // the scaled pool is filled in order, so permuting targets[2..] reassigns roots but
    // each labelling keeps its discriminant and verdict
    let a = [12, 18, 26, 98, 218];
    let b = [12, 18, 218, 26, 98];
    let ra = verify_witness(&build_generic(&a, Mode::Goal).unwrap().basis.unwrap(), &a);
    let rb = verify_witness(&build_generic(&b, Mode::Goal).unwrap().basis.unwrap(), &b);
    let by_target = |r: &hassett::verifier::WitnessReport| {
        let mut v: Vec<(i64, i64, bool)> =
            r.labellings.iter().map(|l| (l.target_d, l.realized_d, l.saturated_in_m)).collect();
        v.sort();
        v
    };
    assert_eq!(by_target(&ra), by_target(&rb));
    assert_eq!(ra.verdict, rb.verdict);
}

#[test]
fn two_divisors_always_meet() {
    for (d1, d2) in [(8, 8), (12, 14), (200, 8), (194, 198)] {
        let out = build_generic(&[d1, d2], Mode::Goal).unwrap();
        let basis = out.basis.unwrap();
        assert_eq!(basis[0], AmbientVector::h_squared());
        assert!(verify_witness(&basis, &[d1, d2]).passed(), "({d1}, {d2})");
    }
}
