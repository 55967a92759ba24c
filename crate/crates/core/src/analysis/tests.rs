use super::*;
use crate::algebra::compute;
use crate::presentation::{build_minus1, build_theorem41, Letter, Presentation};

fn core41(p: u32, n: u32, d: usize) -> GradedAlgebra {
    compute(&build_theorem41(p, n, 1).unwrap(), d)
        .unwrap()
        .thin_core(d - 2)
        .unwrap()
}

fn free(p: u32, d: usize) -> GradedAlgebra {
    compute(&Presentation::free(PrimeField::new(p).unwrap()), d).unwrap()
}

fn ctx(q: usize) -> ClassifyContext {
    ClassifyContext {
        frame: Frame::STANDARD,
        q: Some(q),
    }
}

#[test]
fn projective_point_counts() {
    for p in [3u32, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        assert_eq!(projective_points(f, 1).len(), 1);
        assert_eq!(projective_points(f, 2).len(), p as usize + 1);
        assert_eq!(projective_points(f, 3).len(), (p * p + p + 1) as usize);
    }
}

#[test]
fn powers() {
    assert!(is_power_of(9, 3));
    assert!(is_power_of(5, 5));
    assert!(!is_power_of(1, 3));
    assert!(!is_power_of(2, 3));
    assert!(!is_power_of(6, 3));
}

#[test]
fn covering_in_free_algebra() {
    let alg = free(3, 6);
    assert!(check_covering(&alg, 1).unwrap());
    // L_2 = <[yx]> and [yxx], [yxy] span L_3
    assert!(check_covering(&alg, 2).unwrap());
    // L_4 has dimension 3, more than two images can span
    assert!(!check_covering(&alg, 3).unwrap());
    assert!(matches!(
        check_covering(&alg, 4),
        Err(AnalysisError::TooWide { degree: 4, dim: 3, cap: 2 })
    ));
    assert!(matches!(check_covering(&alg, 6), Err(AnalysisError::OutOfRange { .. })));
}

#[test]
fn covering_in_theorem41_core() {
    let core = core41(3, 1, 25);
    for d in 1..=20 {
        assert!(check_covering(&core, d).unwrap(), "d={d}");
    }
    let opts = CoveringOptions {
        max_exhaustive_p: 2,
        samples: 8,
        ..Default::default()
    };
    let out = check_covering_with(&core, 5, &opts).unwrap();
    assert!(out.holds && out.sampled);
}

#[test]
fn centralizers_of_q5_core() {
    let core = core41(5, 1, 30);
    for k in 2..=7 {
        assert_eq!(two_step_centralizer(&core, k).unwrap(), vec![[0, 1]], "k={k}");
    }
    assert!(two_step_centralizer(&core, 8).unwrap().is_empty());
    assert!(two_step_centralizer(&core, 9).unwrap().is_empty());
    assert_eq!(two_step_centralizer(&core, 10).unwrap(), vec![[0, 1]]);
}

#[test]
fn centralizer_of_last_component_is_everything() {
    let n = compute(&build_minus1(5, 1, 4, 1, false).unwrap(), 28).unwrap();
    let core = n.thin_core(26).unwrap();
    assert_eq!(core.collapse_degree(), Some(23));
    assert_eq!(two_step_centralizer(&core, 22).unwrap().len(), 2);
    assert_eq!(
        Centralizer::from_basis(&two_step_centralizer(&core, 22).unwrap()),
        Centralizer::All
    );
}

#[test]
fn generator_normalization() {
    assert_eq!(normalize_generators(&core41(3, 1, 14)).unwrap(), Frame::STANDARD);
    let pres = build_theorem41(3, 1, 1).unwrap().swapped();
    let swapped = compute(&pres, 14).unwrap().thin_core(12).unwrap();
    assert_eq!(
        normalize_generators(&swapped).unwrap(),
        Frame {
            x: [0, 1],
            y: [1, 0]
        }
    );
    assert_eq!(
        normalize_generators(&free(3, 4)),
        Err(AnalysisError::NotNormalForm(0))
    );
}

#[test]
fn theorem41_types_q3() {
    let core = core41(3, 1, 25);
    let c = ctx(3);
    let r9 = classify_component(&core, 9, &c).unwrap();
    assert_eq!((r9.kind, r9.lambda), (DiamondKind::GenuineFinite, Some(1)));
    let r15 = classify_component(&core, 15, &c).unwrap();
    assert_eq!((r15.kind, r15.lambda), (DiamondKind::GenuineFinite, Some(2)));
    assert_eq!(classify_component(&core, 21, &c).unwrap().kind, DiamondKind::Fake);
    assert_eq!(classify_component(&core, 7, &c).unwrap().kind, DiamondKind::GenuineInfinite);
    assert_eq!(classify_component(&core, 8, &c).unwrap().kind, DiamondKind::Chain);
    assert_eq!(
        classify_component(&core, 23, &c).unwrap().kind,
        DiamondKind::BoundaryIndeterminate
    );
    // without q the degree condition for fake diamonds cannot be checked
    let no_q = ClassifyContext {
        frame: Frame::STANDARD,
        q: None,
    };
    assert_eq!(classify_component(&core, 21, &no_q).unwrap().kind, DiamondKind::Chain);
}

#[test]
fn classification_follows_the_frame() {
    let pres = build_theorem41(3, 1, 1).unwrap().swapped();
    let core = compute(&pres, 25).unwrap().thin_core(23).unwrap();
    let frame = normalize_generators(&core).unwrap();
    let c = ClassifyContext { frame, q: Some(3) };
    let r9 = classify_component(&core, 9, &c).unwrap();
    assert_eq!((r9.kind, r9.lambda), (DiamondKind::GenuineFinite, Some(1)));
    assert_eq!(classify_component(&core, 21, &c).unwrap().kind, DiamondKind::Fake);
}

#[test]
fn type_is_a_ratio() {
    let core = core41(3, 1, 25);
    let f = core.field();
    let (x, y) = (core.generator(Letter::X), core.generator(Letter::Y));
    for scale in 1..3 {
        let w = core.basis_element(14, 0).scaled(f, scale);
        let wxx = core.bracket(&core.bracket(&w, &x).unwrap(), &x).unwrap();
        let wyx = core.bracket(&core.bracket(&w, &y).unwrap(), &x).unwrap();
        assert_eq!(linalg::express(f, &wyx.coeffs, &[wxx.coeffs]), Some(vec![2]));
    }
}

#[test]
fn classify_errors() {
    let n = compute(&build_minus1(5, 1, 4, 1, false).unwrap(), 28).unwrap();
    let core = n.thin_core(26).unwrap();
    assert_eq!(
        classify_component(&core, 24, &ctx(5)),
        Err(AnalysisError::ZeroComponent(24))
    );
    assert!(matches!(
        classify_component(&core, 27, &ctx(5)),
        Err(AnalysisError::OutOfRange { .. })
    ));
}

#[test]
fn chain_theorem_at_genuine_diamonds() {
    let core = core41(5, 1, 30);
    for m in [9, 13, 17, 21] {
        assert!(check_chain_theorem(&core, m, 5, &Frame::STANDARD).unwrap(), "m={m}");
        assert!(check_chain_end_relations(&core, m, 5, &Frame::STANDARD).unwrap(), "m={m}");
    }
    // starting one below a diamond, y does not centralize the diamond
    assert!(!check_chain_theorem(&core, 8, 5, &Frame::STANDARD).unwrap());
    assert!(check_chain_theorem(&core, 27, 5, &Frame::STANDARD).is_err());
}

#[test]
fn report_q3() {
    let core = core41(3, 1, 25);
    let r = full_report(&core, &ReportOptions::default());
    assert_eq!(r.q, Some(3));
    assert_eq!(r.q_source, QSource::SecondDiamond);
    assert_eq!(r.frame, Some(Frame::STANDARD));
    assert!(r.findings.is_empty(), "{:?}", r.findings);
    assert_eq!(r.covering_ok_upto, 22);
    assert_eq!(r.collapse_degree, None);
    assert_eq!(r.diamond_degrees, (3..=23).step_by(2).collect::<Vec<_>>());
    assert!(r.diamond_distances.iter().all(|&d| d == 2));
    let back: ThinReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let text = r.to_text();
    assert!(text.contains("genuine-finite"));
    assert!(text.contains("thinlie.report/v1"));
}

#[test]
fn report_on_free_algebra() {
    let r = full_report(&free(3, 6), &ReportOptions::default());
    assert_eq!(r.frame, None);
    assert_eq!(r.q, None);
    assert!(r.records.is_empty());
    assert_eq!(r.covering_ok_upto, 2);
    assert!(r
        .findings
        .iter()
        .any(|f| f.kind == FindingKind::CoveringFailure && f.degree == Some(3)));
    assert!(r.findings.iter().any(|f| f.kind == FindingKind::NotNormalForm));
}

#[test]
fn report_on_collapsing_algebra() {
    let n = compute(&build_minus1(5, 1, 4, 1, false).unwrap(), 28).unwrap();
    let core = n.thin_core(26).unwrap();
    let r = full_report(
        &core,
        &ReportOptions {
            q: Some(5),
            ..Default::default()
        },
    );
    assert_eq!(r.collapse_degree, Some(23));
    assert!(r.findings.is_empty(), "{:?}", r.findings);
    let r17 = r.record(17).unwrap();
    assert_eq!((r17.kind, r17.lambda), (DiamondKind::GenuineFinite, Some(1)));
}
