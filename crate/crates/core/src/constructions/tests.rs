use super::*;
use crate::lattice::{inner_product, labelling_discriminant, Sublattice};
use proptest::prelude::*;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

#[test]
fn small_grams_match_display() {
    let cases: [(CaseId, &[i64], IntMatrix); 6] = [
        (CaseId::LemmaCase1, &[2, 2, 4], m(&[&[3, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 4, 0], &[0, 0, 0, 8]])),
        (CaseId::LemmaCase2, &[2, 2, 4], m(&[&[3, 0, 0, 1], &[0, 4, 0, 0], &[0, 0, 4, 0], &[1, 0, 0, 9]])),
        (CaseId::LemmaCase3, &[2, 2, 4], m(&[&[3, 0, 1, 1], &[0, 4, 0, 0], &[1, 0, 5, 0], &[1, 0, 0, 9]])),
        (CaseId::LemmaCase4, &[1, 1, 4], m(&[&[3, 1, 1, 1], &[1, 3, 0, 0], &[1, 0, 3, 0], &[1, 0, 0, 9]])),
        (
            CaseId::PropN4,
            &[2, 3, 4, 9],
            m(&[&[3, 0, 0, 0, 0], &[0, 4, 0, 0, 0], &[0, 0, 6, 0, 0], &[0, 0, 0, 8, 6], &[0, 0, 0, 6, 18]]),
        ),
        (
            CaseId::ThmCase5,
            &[1, 1, 4, 9],
            m(&[&[3, 1, 1, 1, 1], &[1, 3, 0, 0, 0], &[1, 0, 3, 0, 0], &[1, 0, 0, 9, 6], &[1, 0, 0, 6, 19]]),
        ),
    ];
    for (case, params, expected) in cases {
        assert_eq!(paper_gram(case, params).unwrap(), expected, "{case}");
    }
}

#[test]
fn rank21_zero_gram_pattern() {
    let params: Vec<i64> = (1..=20).map(|i| if i <= 2 { i + 1 } else { (i + 1) * (i + 1) }).collect();
    let g = paper_gram(CaseId::PropN20Zero, &params).unwrap();
    assert_eq!(g.rows(), 21);
    let root = |i: usize| params[i - 1].isqrt();
    // (basis index, basis index) pairs carrying -√(n_i n_j), as displayed
    let adjacent = [
        (3, 4),
        (5, 11),
        (6, 11),
        (6, 13),
        (6, 19),
        (7, 15),
        (7, 19),
        (8, 12),
        (9, 12),
        (9, 14),
        (9, 20),
        (10, 16),
        (10, 20),
        (15, 17),
        (16, 18),
    ];
    for i in 0..21 {
        for j in 0..21 {
            let expected = if i == j {
                if i == 0 { 3 } else { 2 * params[i - 1] }
            } else if let Some(&(a, b)) = adjacent.iter().find(|&&(a, b)| (a, b) == (i, j) || (b, a) == (i, j)) {
                let v = root(a) * root(b);
                if (a, b) == (3, 4) { v } else { -v }
            } else {
                0
            };
            assert_eq!(g[(i, j)], BigInt::from(expected), "entry ({i}, {j})");
        }
    }
}

#[test]
fn rank21_two_gram_entries() {
    let mut params = vec![1, 1];
    params.extend(std::iter::repeat(4).take(18));
    let g = paper_gram(CaseId::ThmN20Two, &params).unwrap();
    let e = |i, j| g[(i, j)].clone();
    assert!((1..21).all(|i| e(0, i) == BigInt::from(1)));
    assert_eq!(e(1, 1), BigInt::from(3));
    assert_eq!(e(3, 3), BigInt::from(9));
    assert_eq!(e(3, 4), BigInt::from(4));
    assert_eq!(e(1, 4), BigInt::from(1));
    assert_eq!(e(5, 11), BigInt::from(1 - 4));
    assert_eq!(e(6, 13), BigInt::from(1 - 4));
    assert_eq!(e(7, 14), BigInt::from(1));
    assert_eq!(e(7, 15), BigInt::from(-4));
    assert_eq!(e(15, 17), BigInt::from(-4));
    // displayed without the unit entry its shared perturbation would give
    assert_eq!(e(15, 16), BigInt::from(0));
    assert_eq!(e(19, 20), BigInt::from(0));
    assert!(g.is_symmetric());
}

#[test]
fn parameter_ranges() {
    assert!(paper_gram(CaseId::LemmaCase1, &[1, 2, 4]).is_err());
    assert!(paper_gram(CaseId::LemmaCase1, &[2, 2, 5]).is_err());
    assert!(paper_gram(CaseId::LemmaCase1, &[2, 2]).is_err());
    assert!(paper_gram(CaseId::LemmaCase3, &[2, 1, 4]).is_ok());
    assert!(paper_gram(CaseId::LemmaCase3, &[1, 1, 4]).is_err());
    assert!(paper_gram(CaseId::ThmCase4, &[2, 1, 4, 4]).is_ok());
    assert!(paper_gram(CaseId::ThmCase5, &[1, 1, 4, 1]).is_err());
    assert!(paper_gram(CaseId::Generic, &[2, 2]).is_err());
    assert_eq!("thmcase3".parse::<CaseId>().unwrap(), CaseId::ThmCase3);
    assert!("Case9".parse::<CaseId>().is_err());
}

#[test]
fn candidates_respect_norm_equation() {
    let a = SlotSpec::new(SlotKind::A2First, 4, 2).unwrap();
    assert_eq!(perturbation_candidates(&a, DEFAULT_SEARCH_BOUND), vec![[0, 0, 1]]);
    assert_eq!(perturbation_candidates(&a, GOAL_SEARCH_BOUND), vec![[0, 0, 1], [-1, 0, 2], [0, 3, -2]]);
    let b = SlotSpec::new(SlotKind::A2Second, 4, 2).unwrap();
    assert_eq!(perturbation_candidates(&b, DEFAULT_SEARCH_BOUND), vec![[1, 0, 0]]);
    let u = SlotSpec::new(SlotKind::U1, 3, 2).unwrap();
    assert_eq!(perturbation_candidates(&u, GOAL_SEARCH_BOUND), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let t = SlotSpec::new(SlotKind::E8Second(5), 49, 2).unwrap();
    assert_eq!(perturbation_candidates(&t, GOAL_SEARCH_BOUND).len(), 3);
    assert!(perturbation_candidates(&SlotSpec::new(SlotKind::U2, 3, 0).unwrap(), 3).is_empty());
}

#[test]
fn strict_mode() {
    for (case, params) in [
        (CaseId::LemmaCase1, vec![2, 2, 4]),
        (CaseId::LemmaCase2, vec![2, 2, 4]),
        (CaseId::ThmCase1, vec![2, 2, 4, 9]),
        (CaseId::PropN20Zero, [vec![2, 2], vec![4; 18]].concat()),
    ] {
        let out = build(case, &params, Mode::Strict).unwrap();
        assert_eq!(out.status, RealizationStatus::RealizedStrict, "{case}");
        assert_eq!(out.realized_gram.unwrap(), paper_gram(case, &params).unwrap());
        assert!(out.gram_delta.unwrap().is_zero());
    }
    for (case, params) in [
        (CaseId::LemmaCase3, vec![2, 2, 4]),
        (CaseId::LemmaCase4, vec![1, 1, 4]),
        (CaseId::ThmCase3, vec![2, 2, 4, 4]),
    ] {
        let out = build(case, &params, Mode::Strict).unwrap();
        assert_eq!(out.status, RealizationStatus::NotRealizable, "{case}");
        assert!(!out.gram_delta.unwrap().is_zero());
    }
}

#[test]
fn lemma3_strict_delta() {
    // U² slot and the a₁ slot must share a perturbation pairing: no unit choice is orthogonal to 2a₁ + (0,0,1)
    let out = build(CaseId::LemmaCase3, &[2, 2, 4], Mode::Strict).unwrap();
    let delta = out.gram_delta.unwrap();
    assert_eq!(delta[(2, 3)], delta[(3, 2)]);
    assert_ne!(delta[(2, 3)], BigInt::from(0));
    assert_eq!(delta[(0, 2)], BigInt::from(0));
    assert_eq!(delta[(2, 2)], BigInt::from(0));
}

fn discriminants(basis: &[AmbientVector]) -> Vec<i64> {
    basis[1..].iter().map(|v| i64::try_from(labelling_discriminant(v)).unwrap()).collect()
}

#[test]
fn goal_mode_lemma_cases() {
    for (case, params, expected) in [
        (CaseId::LemmaCase2, vec![2, 2, 4], vec![12, 12, 26]),
        (CaseId::LemmaCase3, vec![2, 2, 4], vec![12, 14, 26]),
        (CaseId::LemmaCase4, vec![2, 2, 4], vec![14, 14, 26]),
        (CaseId::LemmaCase4, vec![1, 1, 4], vec![8, 8, 26]),
    ] {
        let out = build(case, &params, Mode::Goal).unwrap();
        assert_eq!(out.status, RealizationStatus::RealizedGoal, "{case}");
        let basis = out.basis.unwrap();
        assert_eq!(discriminants(&basis), expected);
        let report = crate::criteria::yang_yu_certifiable(&Sublattice::new(basis).unwrap());
        assert!(report.pass, "{case}: {report:?}");
    }
}

#[test]
fn goal_mode_blocked_by_scaled_roots() {
    // an unperturbed m·a₁ with m ≥ 2 is never primitive
    let out = build(CaseId::LemmaCase1, &[2, 2, 4], Mode::Goal).unwrap();
    assert_eq!(out.status, RealizationStatus::NotRealizable);
    assert!(out.basis.is_some());
    let slots = recipe(CaseId::ThmCase2, &[2, 2, 4, 4]).unwrap().slots;
    assert!(saturation_obstruction(&slots).is_some());
}

#[test]
fn goal_mode_blocked_inside_i3() {
    // h² and both perturbed A₂ generators span a rank-3 sublattice of I₃; if it
    // were saturated it would be all of I₃, which has vectors of norm 1
    for (case, params) in [
        (CaseId::ThmCase3, vec![2, 2, 4, 9]),
        (CaseId::ThmCase4, vec![2, 1, 9, 4]),
        (CaseId::ThmCase5, vec![1, 1, 25, 9]),
    ] {
        let slots = recipe(case, &params).unwrap().slots;
        assert!(saturation_obstruction(&slots).is_none(), "{case}");
        let out = realize_goal(&slots, None, GOAL_SEARCH_BOUND);
        assert_eq!(out.status, RealizationStatus::NotRealizable, "{case}");
    }
}

#[test]
fn obstruction_counts_primes() {
    let slot = |kind, n| SlotSpec::new(kind, n, 2).unwrap();
    let two = [slot(SlotKind::A2First, 4), slot(SlotKind::E8First(1), 16)];
    assert!(saturation_obstruction(&two).is_none());
    let three = [slot(SlotKind::A2First, 4), slot(SlotKind::E8First(1), 16), slot(SlotKind::E8First(3), 36)];
    assert!(saturation_obstruction(&three).is_some());
    let coprime = [slot(SlotKind::A2First, 4), slot(SlotKind::E8First(1), 9), slot(SlotKind::E8First(3), 25)];
    assert!(saturation_obstruction(&coprime).is_none());
}

#[test]
fn rank21_zero_minimum() {
    let out = build(CaseId::PropN20Zero, &[vec![2, 2], vec![4; 18]].concat(), Mode::Strict).unwrap();
    let g = out.realized_gram.unwrap();
    assert!(crate::linalg::is_positive_definite(&g).unwrap());
    assert_eq!(crate::lattice::minimum(&g).unwrap(), BigInt::from(3));
}

#[test]
fn generic_slots_follow_pool() {
    let slots = generic_slots(&[12, 12, 24]).unwrap();
    assert_eq!(slots, recipe(CaseId::LemmaCase1, &[2, 2, 4]).unwrap().slots);
    let slots = generic_slots(&[8, 8]).unwrap();
    assert_eq!(slots.iter().map(|s| s.n).collect::<Vec<_>>(), vec![1, 1]);
    let out = build_generic(&[8, 8], Mode::Goal).unwrap();
    assert_eq!(out.status, RealizationStatus::RealizedGoal);
    assert_eq!(discriminants(&out.basis.unwrap()), vec![8, 8]);

    let corollary = [14, 38, 26, 98, 218, 294, 386, 602, 866, 1178, 1538, 1946, 2166, 2402, 2906, 3458, 4058, 4706, 6146, 6938];
    let slots = generic_slots(&corollary).unwrap();
    let ns: Vec<i64> = slots.iter().map(|s| s.n).collect();
    assert_eq!(ns, vec![2, 6, 4, 16, 36, 49, 64, 100, 144, 196, 256, 324, 361, 400, 484, 576, 676, 784, 1024, 1156]);
    assert_eq!(slots[5].kind, SlotKind::E8First(3));
    assert_eq!(slots[5].residue, 0);
}

#[test]
fn generic_rejects_bad_targets() {
    assert!(matches!(generic_slots(&[10, 12]), Err(Error::InvalidTarget { d: 10, .. })));
    assert!(matches!(generic_slots(&[12, 12, 38]), Err(Error::InvalidTarget { d: 38, .. })));
    assert!(generic_slots(&[12]).is_err());
    assert!(generic_slots(&[12; 21]).is_err());
    // repeats occupy separate slots
    assert_eq!(generic_slots(&[12, 12, 26, 26]).unwrap().len(), 4);
}

#[test]
fn identity_examples() {
    let (l, r) = expected_identity(CaseId::LemmaCase2, &[2, 2, 4], &[1, 0, 0, -1], IdentityForm::Corrected).unwrap();
    assert_eq!((l, r), (BigInt::from(10), BigInt::from(10)));
    let (l, r) = expected_identity(CaseId::LemmaCase2, &[5, 7, 9], &[0; 4], IdentityForm::Corrected).unwrap();
    assert_eq!((l, r), (BigInt::from(0), BigInt::from(0)));
    let (l, r) = expected_identity(CaseId::LemmaCase4, &[1, 1, 4], &[1, 1, 1, 1], IdentityForm::Corrected).unwrap();
    assert_eq!(l, r);
    let (l, p) = expected_identity(CaseId::LemmaCase4, &[1, 1, 4], &[1, 1, 1, 1], IdentityForm::AsPrinted).unwrap();
    assert_ne!(l, p);
    assert!(expected_identity(CaseId::LemmaCase2, &[2, 2, 4], &[1, 0, 0], IdentityForm::Corrected).is_err());
    assert!(expected_identity(CaseId::PropN20Zero, &[2; 20], &[0; 21], IdentityForm::Corrected).is_err());
}

fn case_strategy() -> impl Strategy<Value = (CaseId, Vec<i64>)> {
    let sq = prop::sample::select(vec![4i64, 9, 16, 25, 36, 49, 100]);
    (0usize..10, 2i64..40, 2i64..40, sq.clone(), sq).prop_map(|(c, n1, n2, n3, n4)| {
        let cases = [
            CaseId::LemmaCase1,
            CaseId::LemmaCase2,
            CaseId::LemmaCase3,
            CaseId::LemmaCase4,
            CaseId::PropN4,
            CaseId::ThmCase1,
            CaseId::ThmCase2,
            CaseId::ThmCase3,
            CaseId::ThmCase4,
            CaseId::ThmCase5,
        ];
        let case = cases[c];
        let params = if c < 4 { vec![n1, n2, n3] } else { vec![n1, n2, n3, n4] };
        (case, params)
    })
}

proptest! {
    #[test]
    fn identities_hold((case, params) in case_strategy(), point in prop::collection::vec(-30i64..30, 5)) {
        let point = &point[..params.len() + 1];
        let (l, r) = expected_identity(case, &params, point, IdentityForm::Corrected).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn realized_generators_have_target_pairings((case, params) in case_strategy()) {
        let recipe = recipe(case, &params).unwrap();
        for mode in [Mode::Strict, Mode::Goal] {
            let out = build(case, &params, mode).unwrap();
            let Some(basis) = out.basis else { continue };
            let h = AmbientVector::h_squared();
            for (s, v) in recipe.slots.iter().zip(&basis[1..]) {
                prop_assert_eq!(inner_product(&h, v), BigInt::from(s.residue as i64 / 2));
                prop_assert_eq!(v.norm(), BigInt::from(2 * s.n + s.residue as i64 / 2));
                prop_assert_eq!(labelling_discriminant(v), BigInt::from(s.discriminant()));
            }
        }
    }
}
