use super::*;
use crate::analysis::Frame;

#[test]
fn ldies_routing() {
    assert_eq!(ldies_case(5, 1, 4).unwrap(), LdiesCase::EvenA { collapse_by: 23 });
    assert_eq!(
        ldies_case(3, 1, 7).unwrap(),
        LdiesCase::CongruentA {
            ps: 3,
            collapse_by: 22
        }
    );
    assert_eq!(ldies_case(3, 1, 4).unwrap(), LdiesCase::PowerA { ps: 3 });
    assert_eq!(ldies_case(3, 1, 10).unwrap(), LdiesCase::PowerA { ps: 9 });
    assert_eq!(ldies_case(5, 1, 3).unwrap(), LdiesCase::OddA);
    // 19 - 1 = 2 * 9
    assert_eq!(
        ldies_case(3, 1, 19).unwrap(),
        LdiesCase::CongruentA {
            ps: 9,
            collapse_by: 58
        }
    );
    assert!(ldies_case(5, 1, 2).is_err());
}

#[test]
fn theorem41_q3_passes() {
    let r = exp_theorem41(3, 1, 1, 25, None).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let types = r.evidence_for("infinite type").next().unwrap();
    assert!(types.observed.contains("9:type 1"));
    assert!(types.observed.contains("15:type 2"));
    assert!(types.observed.contains("21:fake"));
}

#[test]
fn theorem41_precondition() {
    assert!(matches!(
        exp_theorem41(3, 1, 1, 10, None),
        Err(HarnessError::Precondition(_))
    ));
}

#[test]
fn ldies_cases_pass() {
    for (p, a, d) in [(5, 4, 28), (3, 7, 26), (3, 4, 32), (5, 3, 16)] {
        let r = exp_ldies(p, 1, a, d, None).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
    assert!(matches!(
        exp_ldies(5, 1, 4, 24, None),
        Err(HarnessError::Precondition(_))
    ));
}

#[test]
fn lemma_identities_are_not_vacuous() {
    let (core, _) = theorem41_core(3, 1, 1, 25, None).unwrap();
    let f = core.field();
    let v = |k: usize, tail: &[Letter]| core.evaluate_word(&v_then(k, 3, tail)).unwrap();
    let v1 = v(1, &[]);
    assert!(!v(5, &[]).is_zero());
    assert!(!v(5, &[Letter::X]).is_zero());
    assert!(!v(5, &[Letter::Y]).is_zero());
    // the diamond at degree 9 has type 1, so dropping mu^-1 breaks the identity
    let lhs = core.bracket(&v(4, &[Letter::X]), &v1).unwrap();
    assert_ne!(lhs, v(5, &[Letter::X]));
    let with_mu = v(5, &[Letter::X]).combine(f, 1, &v(5, &[Letter::Y]));
    assert_eq!(lhs, with_mu);

    let r = exp_lemma_identities(3, 1, 1, 25, None).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.evidence_for("k=4 mu=1").count() >= 5);
}

#[test]
fn lemma_identities_q5() {
    let r = exp_lemma_identities(5, 1, 1, 30, None).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for k in 2..=5 {
        assert!(r.evidence_for(&format!("k={k} mu=inf")).count() >= 5, "k={k}");
    }
    assert!(r.evidence_for("x^(q-4) v_2").count() >= 1);
}

#[test]
fn chains_and_second_diamond() {
    let (core, _) = theorem41_core(5, 1, 1, 30, None).unwrap();
    let r = exp_prop_chains(&core, 5, true).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let r = exp_second_diamond(&core, Some(5)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let r = exp_second_diamond(&core, Some(3)).unwrap();
    assert!(!r.passed());
}

#[test]
fn prop_chains_needs_a_frame() {
    let free = crate::algebra::compute(
        &crate::presentation::Presentation::free(crate::fp::PrimeField::new(3).unwrap()),
        6,
    )
    .unwrap();
    assert!(exp_prop_chains(&free, 3, false).is_err());
    let _ = Frame::STANDARD;
}

#[test]
fn manifest_round_trip() {
    let specs = manifest();
    assert!(specs.len() >= 14);
    for s in &specs {
        let text = serde_json::to_string(s).unwrap();
        let back: ExperimentSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, s);
    }
}

#[test]
fn harness_errors_become_failures() {
    let spec = ExperimentSpec::Ldies {
        p: 5,
        n: 1,
        a: 2,
        max_degree: 20,
        reliable_bound: None,
    };
    let r = spec.run_or_fail();
    assert!(!r.passed());
    assert_eq!(r.name, "ldies");
    assert_eq!(r.params["a"], json!(2));
}

#[test]
fn results_document() {
    let specs = vec![
        ExperimentSpec::Superfluity {
            p: 5,
            n: 1,
            a: 4,
            max_degree: 28,
            reliable_bound: None,
        },
        ExperimentSpec::SecondDiamond {
            p: 3,
            n: 1,
            s: 1,
            max_degree: 12,
            reliable_bound: None,
        },
    ];
    let doc = ResultsDocument::new(run_all(&specs));
    assert_eq!((doc.passed, doc.failed), (2, 0));
    assert_eq!(doc.results[0].name, "superfluity");
    let back: ResultsDocument = serde_json::from_str(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    assert!(doc.to_text().ends_with("2 passed, 0 failed\n"));
}
