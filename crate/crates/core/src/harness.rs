//! Parameterised experiments over the built-in families, each producing an
//! exact expected-versus-observed evidence list.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{compute, EngineError, GradedAlgebra, HomElement};
use crate::analysis::{
    check_chain_end_relations, check_chain_theorem, full_report, AnalysisError, Centralizer,
    DiamondKind, FindingKind, ReportOptions, ThinReport,
};
use crate::presentation::{
    build_minus1, build_minus1_chain, build_theorem41, v_word, Letter, PresentationError, Word,
};

pub const RESULTS_SCHEMA: &str = "thinlie.results/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    pub runtime_seconds: f64,
}

impl ExperimentResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Evidence items whose claim contains `needle`.
    pub fn evidence_for<'a>(&'a self, needle: &'a str) -> impl Iterator<Item = &'a Evidence> + 'a {
        self.evidence.iter().filter(move |e| e.claim.contains(needle))
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{verdict} {} {} ({:.3}s)",
            self.name,
            self.params_string(),
            self.runtime_seconds
        );
        for e in &self.evidence {
            let mark = if e.ok { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                s,
                "  [{mark}] {}: expected {}, observed {}",
                e.claim, e.expected, e.observed
            );
        }
        s
    }
}

/// Collects evidence while an experiment runs.
struct Run {
    name: &'static str,
    params: BTreeMap<String, Value>,
    evidence: Vec<Evidence>,
    start: Instant,
}

impl Run {
    fn new(name: &'static str, params: Value) -> Run {
        let params = match params {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Run {
            name,
            params,
            evidence: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, claim: impl Into<String>, expected: impl fmt::Display, observed: impl fmt::Display, ok: bool) {
        self.evidence.push(Evidence {
            claim: claim.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            ok,
        });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, claim: impl Into<String>, expected: T, observed: T) {
        let ok = expected == observed;
        self.check(claim, format!("{expected:?}"), format!("{observed:?}"), ok);
    }

    fn finish(self) -> ExperimentResult {
        let verdict = if self.evidence.iter().all(|e| e.ok) && !self.evidence.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        ExperimentResult {
            name: self.name.to_string(),
            params: self.params,
            verdict,
            evidence: self.evidence,
            runtime_seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

fn q_of(p: u32, n: u32) -> usize {
    (p as usize).pow(n)
}

fn bound(max_degree: usize, reliable_bound: Option<usize>) -> Result<usize, HarnessError> {
    let r = reliable_bound.unwrap_or(max_degree.saturating_sub(2));
    if r < 2 || r >= max_degree {
        return Err(HarnessError::Precondition(format!(
            "reliable bound {r} must satisfy 2 <= bound < max_degree {max_degree}"
        )));
    }
    Ok(r)
}

/// The thin core of the `theorem41` family with its report.
pub fn theorem41_core(
    p: u32,
    n: u32,
    s: u32,
    max_degree: usize,
    reliable_bound: Option<usize>,
) -> Result<(GradedAlgebra, ThinReport), HarnessError> {
    let pres = build_theorem41(p, n, s)?;
    let r = bound(max_degree, reliable_bound)?;
    let core = compute(&pres, max_degree)?.thin_core(r)?;
    let report = full_report(
        &core,
        &ReportOptions {
            q: pres.q(),
            ..Default::default()
        },
    );
    Ok((core, report))
}

fn kind_string(report: &ThinReport, h: usize) -> String {
    match report.record(h) {
        Some(r) => match r.kind {
            DiamondKind::GenuineFinite => format!("type {}", r.lambda.unwrap_or(0)),
            DiamondKind::GenuineInfinite => "type inf".into(),
            DiamondKind::Fake => "fake".into(),
            k => k.as_str().into(),
        },
        None => "zero".into(),
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// The `theorem41` family: diamond positions, types, covering and centralizers
/// of the thin core.
pub fn exp_theorem41(
    p: u32,
    n: u32,
    s: u32,
    max_degree: usize,
    reliable_bound: Option<usize>,
) -> Result<ExperimentResult, HarnessError> {
    let mut run = Run::new(
        "theorem41",
        json!({"p": p, "n": n, "s": s, "max_degree": max_degree}),
    );
    let q = q_of(p, n);
    let ps = (p as usize).pow(s);
    let first_finite = (ps + 1) * (q - 1) + 1;
    if max_degree < first_finite + 2 {
        return Err(HarnessError::Precondition(format!(
            "max_degree must be at least (p^s+1)(q-1)+3 = {}",
            first_finite + 2
        )));
    }
    let (core, report) = theorem41_core(p, n, s, max_degree, reliable_bound)?;
    let r = core.max_degree();

    let bad_dims: Vec<usize> = (1..=r).filter(|&d| !(1..=2).contains(&core.dim(d))).collect();
    run.check(
        format!("thin-core components in degrees 1..={r} have dimension 1 or 2"),
        "no exceptions",
        if bad_dims.is_empty() {
            "no exceptions".to_string()
        } else {
            format!("exceptions at {}", join(&bad_dims))
        },
        bad_dims.is_empty(),
    );

    let positions: Vec<usize> = (1..)
        .map(|t| t * (q - 1) + 1)
        .take_while(|&h| h <= r)
        .collect();
    let typed: Vec<usize> = positions.iter().copied().filter(|&h| h < r).collect();
    let observed_positions: Vec<usize> = report
        .diamond_degrees
        .iter()
        .copied()
        .filter(|&h| h < r)
        .collect();
    run.eq(
        format!("diamonds (fake included) in degrees 2..{r} sit exactly at t(q-1)+1"),
        typed.clone(),
        observed_positions,
    );
    let wide: Vec<usize> = (2..=r).filter(|&h| core.dim(h) == 2).collect();
    let stray: Vec<usize> = wide.iter().copied().filter(|h| !positions.contains(h)).collect();
    run.check(
        format!("two-dimensional components up to degree {r} only at t(q-1)+1"),
        "none elsewhere",
        if stray.is_empty() {
            "none elsewhere".to_string()
        } else {
            format!("also at {}", join(&stray))
        },
        stray.is_empty(),
    );

    let expected_kind = |h: usize| {
        let t = (h - 1) / (q - 1);
        if !(t - 1).is_multiple_of(ps) {
            "type inf".to_string()
        } else {
            let rr = (t - 1) / ps;
            if rr.is_multiple_of(p as usize) {
                "fake".to_string()
            } else {
                format!("type {}", rr % p as usize)
            }
        }
    };
    let expected_types: Vec<String> = typed.iter().map(|&h| format!("{h}:{}", expected_kind(h))).collect();
    let observed_types: Vec<String> = typed
        .iter()
        .map(|&h| format!("{h}:{}", kind_string(&report, h)))
        .collect();
    run.eq(
        "diamond at t(q-1)+1 has infinite type unless t = r p^s + 1, then type r mod p (fake when p | r)",
        expected_types,
        observed_types,
    );

    run.eq(
        "covering holds in every degree below the top",
        r - 1,
        report.covering_ok_upto,
    );

    let mut expected_c = Vec::new();
    let mut observed_c = Vec::new();
    for k in 2..r {
        let e = if core.dim(k) == 2 || core.dim(k + 1) == 2 {
            Centralizer::Zero
        } else {
            Centralizer::Line { vector: [0, 1] }
        };
        expected_c.push((k, e));
        observed_c.push((k, report.centralizer(k).expect("centralizer in range")));
    }
    let mismatches: Vec<usize> = expected_c
        .iter()
        .zip(&observed_c)
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.0)
        .collect();
    run.check(
        "two-step centralizers are <y> along chains and zero at or just before a two-dimensional component",
        "all match",
        if mismatches.is_empty() {
            "all match".to_string()
        } else {
            format!("mismatch at {}", join(&mismatches))
        },
        mismatches.is_empty(),
    );
    run.eq("analyzer reports no structural findings", 0, report.findings.len());
    Ok(run.finish())
}

/// The case of the collapse theorem selected by `a` (for `q = p^n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum LdiesCase {
    /// `a` odd, `a` not congruent to 1 mod p: only the automatic `[v_a x x] = 0`.
    OddA,
    /// `a` even, `a` not congruent to 1 mod p: collapse by `(a+1)(q-1)+3`.
    EvenA { collapse_by: usize },
    /// `a - 1 = n' p^s` with `n' > 1` prime to p: collapse by `(a+p^s)(q-1)+2`.
    CongruentA { ps: usize, collapse_by: usize },
    /// `a - 1 = p^s`: no collapse.
    PowerA { ps: usize },
}

pub fn ldies_case(p: u32, n: u32, a: u32) -> Result<LdiesCase, HarnessError> {
    if a < 3 {
        return Err(HarnessError::Precondition("a must be at least 3".into()));
    }
    let (p, q, a) = (p as usize, q_of(p, n), a as usize);
    if a % p == 1 {
        let mut ps = 1;
        let mut rest = a - 1;
        while rest % p == 0 {
            rest /= p;
            ps *= p;
        }
        return Ok(if rest == 1 {
            LdiesCase::PowerA { ps }
        } else {
            LdiesCase::CongruentA {
                ps,
                collapse_by: (a + ps) * (q - 1) + 2,
            }
        });
    }
    if a % 2 == 1 {
        return Ok(LdiesCase::OddA);
    }
    Ok(LdiesCase::EvenA {
        collapse_by: (a + 1) * (q - 1) + 3,
    })
}

fn eval_in(alg: &GradedAlgebra, word: &Word) -> Result<HomElement, HarnessError> {
    Ok(alg.evaluate_word(word)?)
}

fn v_then(k: usize, q: usize, tail: &[Letter]) -> Word {
    let mut w = v_word(k, q);
    for &l in tail {
        w = w.then(l, 1);
    }
    w
}

/// The collapse theorem for the `(-1)`-family with type relator `lambda = 1`.
pub fn exp_ldies(
    p: u32,
    n: u32,
    a: u32,
    max_degree: usize,
    reliable_bound: Option<usize>,
) -> Result<ExperimentResult, HarnessError> {
    let mut run = Run::new(
        "ldies",
        json!({"p": p, "n": n, "a": a, "max_degree": max_degree}),
    );
    let case = ldies_case(p, n, a)?;
    let q = q_of(p, n);
    let au = a as usize;
    let r = bound(max_degree, reliable_bound)?;

    match case {
        LdiesCase::EvenA { collapse_by } | LdiesCase::CongruentA { collapse_by, .. } => {
            if max_degree < collapse_by + 3 || r < collapse_by {
                return Err(HarnessError::Precondition(format!(
                    "max_degree must exceed the predicted collapse degree {collapse_by} by at least 3"
                )));
            }
            let core = compute(&build_minus1(p, n, a, 1, false)?, max_degree)?.thin_core(r)?;
            let collapse = core.collapse_degree();
            run.check(
                format!("thin-core component of degree {collapse_by} is zero"),
                format!("collapse at or before {collapse_by}"),
                collapse.map_or("no collapse".to_string(), |c| format!("collapse at {c}")),
                collapse.is_some_and(|c| c <= collapse_by),
            );
        }
        LdiesCase::PowerA { ps } => {
            let last = (au + ps) * (q - 1) + 2;
            if r < last {
                return Err(HarnessError::Precondition(format!(
                    "reliable bound must reach degree {last}"
                )));
            }
            let core = compute(&build_minus1(p, n, a, 1, false)?, max_degree)?.thin_core(r)?;
            run.check(
                format!("no collapse up to degree {r}"),
                "no collapse",
                core.collapse_degree()
                    .map_or("no collapse".to_string(), |c| format!("collapse at {c}")),
                core.collapse_degree().is_none(),
            );
            let expected: Vec<(usize, bool)> = (2..=ps).map(|k| (k, k < ps)).collect();
            let mut observed = Vec::new();
            for k in 2..=ps {
                let z = eval_in(&core, &v_then(au + k, q, &[Letter::X, Letter::X]))?;
                observed.push((k, z.is_zero()));
            }
            run.eq(
                "[v_(a+k) x x] vanishes for 2 <= k < p^s and not for k = p^s (pairs k, vanishes)",
                expected,
                observed,
            );
        }
        LdiesCase::OddA => {}
    }

    if a % 2 == 1 {
        let deg = au * (q - 1) + 2;
        if r < deg {
            return Err(HarnessError::Precondition(format!(
                "reliable bound must reach degree {deg} for [v_a x x]"
            )));
        }
        let core = compute(&build_minus1_chain(p, n, a, false)?, max_degree)?.thin_core(r)?;
        let z = eval_in(&core, &v_then(au, q, &[Letter::X, Letter::X]))?;
        run.check(
            "a odd: [v_a x x] = 0 without imposing the type relator",
            "zero",
            format!("{:?}", z.coeffs),
            z.is_zero(),
        );
    }
    Ok(run.finish())
}

fn residual(alg: &GradedAlgebra, lhs: &HomElement, rhs: &HomElement) -> HomElement {
    lhs.sub(alg.field(), rhs)
}

/// Adjoint action of `v_1` and `v_2` on elements near diamonds, in the
/// `theorem41` thin core.
pub fn exp_lemma_identities(
    p: u32,
    n: u32,
    s: u32,
    max_degree: usize,
    reliable_bound: Option<usize>,
) -> Result<ExperimentResult, HarnessError> {
    let mut run = Run::new(
        "lemma-identities",
        json!({"p": p, "n": n, "s": s, "max_degree": max_degree}),
    );
    let q = q_of(p, n);
    let (core, report) = theorem41_core(p, n, s, max_degree, reliable_bound)?;
    let f = core.field();
    let r = core.max_degree();
    let v = |k: usize, tail: &[Letter]| eval_in(&core, &v_then(k, q, tail));
    let (x, y) = (Letter::X, Letter::Y);
    let v1 = v(1, &[])?;
    let v2 = v(2, &[])?;

    // mu^{-1} for the diamond in degree k(q-1)+1, with inf^{-1} = 0
    let inv_type = |k: usize| -> Option<u32> {
        let rec = report.record(k * (q - 1) + 1)?;
        match rec.kind {
            DiamondKind::GenuineInfinite => Some(0),
            DiamondKind::GenuineFinite => f.inv(rec.lambda?).ok(),
            _ => None,
        }
    };

    let mut checked = Vec::new();
    let mut k = 2;
    while (k + 1) * (q - 1) + 2 <= r {
        let Some(mu_inv) = inv_type(k) else {
            k += 1;
            continue;
        };
        checked.push(k);
        let mu_label = if mu_inv == 0 {
            "inf".to_string()
        } else {
            f.inv(mu_inv).unwrap().to_string()
        };
        let identity = |run: &mut Run, name: &str, lhs: HomElement, rhs: HomElement| {
            let res = residual(&core, &lhs, &rhs);
            run.check(
                format!("k={k} mu={mu_label}: {name}"),
                "zero residual",
                format!("{:?}", res.coeffs),
                res.is_zero(),
            );
        };
        let b = |u: &HomElement, w: &HomElement| core.bracket(u, w);
        identity(&mut run, "[v_k v_1] = v_(k+1)", b(&v(k, &[])?, &v1)?, v(k + 1, &[])?);
        identity(
            &mut run,
            "[v_k x v_1] = [v_(k+1) x] + mu^-1 [v_(k+1) y]",
            b(&v(k, &[x])?, &v1)?,
            v(k + 1, &[x])?.combine(f, mu_inv, &v(k + 1, &[y])?),
        );
        identity(&mut run, "[v_k y v_1] = [v_(k+1) y]", b(&v(k, &[y])?, &v1)?, v(k + 1, &[y])?);
        identity(
            &mut run,
            "[v_k x x v_1] = mu^-1 [v_(k+1) y x]",
            b(&v(k, &[x, x])?, &v1)?,
            v(k + 1, &[y, x])?.scaled(f, mu_inv),
        );
        identity(
            &mut run,
            "[v_k y x v_1] = [v_(k+1) y x]",
            b(&v(k, &[y, x])?, &v1)?,
            v(k + 1, &[y, x])?,
        );

        let both_infinite = inv_type(k) == Some(0) && inv_type(k + 1) == Some(0);
        let top = if q > 3 {
            (k + 3) * (q - 1)
        } else {
            (k + 2) * (q - 1) + 2
        };
        if both_infinite && top <= r {
            let zero = |d: usize| HomElement::zero(d, core.dim(d));
            let d2 = (k + 2) * (q - 1);
            identity(&mut run, "[v_k v_2] = 0", b(&v(k, &[])?, &v2)?, zero(d2));
            identity(&mut run, "[v_k x v_2] = 0", b(&v(k, &[x])?, &v2)?, zero(d2 + 1));
            identity(&mut run, "[v_k y v_2] = 0", b(&v(k, &[y])?, &v2)?, zero(d2 + 1));
            identity(
                &mut run,
                "[v_k y x v_2] = [v_(k+2) x x]",
                b(&v(k, &[y, x])?, &v2)?,
                v(k + 2, &[x, x])?,
            );
            if q > 3 {
                let mut tail = vec![x, y];
                tail.extend(std::iter::repeat_n(x, q - 4));
                let long = v(k, &tail)?;
                identity(
                    &mut run,
                    "[v_k x y x^(q-4) v_1] = [v_(k+1) x y x^(q-4)]",
                    b(&long, &v1)?,
                    v(k + 1, &tail)?,
                );
                let xs = vec![x; q - 2];
                identity(
                    &mut run,
                    "[v_k x y x^(q-4) v_2] = 3 [v_(k+2) x^(q-2)]",
                    b(&long, &v2)?,
                    v(k + 2, &xs)?.scaled(f, f.reduce(3)),
                );
            }
        }
        k += 1;
    }
    run.check(
        "identities were checked for at least one k",
        "non-empty",
        join(&checked),
        !checked.is_empty(),
    );
    Ok(run.finish())
}

/// Chain lengths after genuine diamonds and the relations at the chain end.
pub fn exp_prop_chains(
    alg: &GradedAlgebra,
    q: usize,
    uniform_spacing: bool,
) -> Result<ExperimentResult, HarnessError> {
    let mut run = Run::new(
        "prop-chains",
        json!({"p": alg.field().p(), "q": q, "max_degree": alg.max_degree()}),
    );
    let report = full_report(
        alg,
        &ReportOptions {
            q: Some(q),
            ..Default::default()
        },
    );
    let Some(frame) = report.frame else {
        return Err(HarnessError::Precondition(
            "algebra has no normalized generator frame".into(),
        ));
    };
    let max = alg.max_degree();
    let genuine: Vec<usize> = report
        .records
        .iter()
        .filter(|r| r.kind.is_genuine())
        .map(|r| r.degree)
        .collect();

    let mut starts = vec![1];
    starts.extend(genuine.iter().copied());
    for m in starts {
        if m + q > max {
            continue;
        }
        run.eq(
            format!("m={m}: y centralizes degrees m+1..m+q-3 and no two-dimensional component before m+q-1"),
            true,
            check_chain_theorem(alg, m, q, &frame)?,
        );
        run.eq(
            format!("m={m}: w spanning degree m+q-2 has [wxy]+[wyx] = 0 and [wyy] = 0"),
            true,
            check_chain_end_relations(alg, m, q, &frame)?,
        );
    }
    if q + q <= max {
        run.eq(
            "base case: [v_2 x y] + [v_2 y x] = 0 and [v_2 y y] = 0",
            true,
            check_chain_end_relations(alg, q, q, &frame)?,
        );
    }

    let gaps: Vec<usize> = genuine.windows(2).map(|w| w[1] - w[0]).collect();
    run.check(
        "consecutive genuine diamonds are at distance at least q-1",
        format!(">= {}", q - 1),
        join(&gaps),
        gaps.iter().all(|&g| g >= q - 1),
    );
    if uniform_spacing {
        run.check(
            "consecutive diamonds (fake included) are at distance exactly q-1",
            format!("all {}", q - 1),
            join(&report.diamond_distances),
            !report.diamond_distances.is_empty() && report.diamond_distances.iter().all(|&g| g == q - 1),
        );
    }
    let stray: Vec<usize> = report
        .findings
        .iter()
        .filter(|f| f.kind == FindingKind::ChainNotCentralized)
        .filter_map(|f| f.degree)
        .collect();
    run.check(
        "one-dimensional components not preceding a diamond are centralized by y",
        "no exceptions",
        if stray.is_empty() {
            "no exceptions".into()
        } else {
            format!("exceptions at {}", join(&stray))
        },
        stray.is_empty(),
    );
    Ok(run.finish())
}

/// Locates the second diamond; with `q` given it must sit in degree `2q-1`.
pub fn exp_second_diamond(alg: &GradedAlgebra, q: Option<usize>) -> Result<ExperimentResult, HarnessError> {
    let p = alg.field().p() as usize;
    let mut run = Run::new(
        "second-diamond",
        json!({"p": p, "q": q, "max_degree": alg.max_degree()}),
    );
    let found = (2..=alg.max_degree()).find(|&h| alg.dim(h) == 2);
    let allowed = |h: usize| {
        h == 3
            || h == 5
            || crate::analysis::is_power_of(h, p)
            || (h % 2 == 1 && crate::analysis::is_power_of(h.div_ceil(2), p))
    };
    run.check(
        "second diamond lies in degree 3, 5, q or 2q-1",
        "one of 3, 5, q, 2q-1",
        found.map_or("none in range".to_string(), |h| h.to_string()),
        found.is_some_and(allowed),
    );
    if let Some(q) = q {
        run.eq("second diamond lies in degree 2q-1", Some(2 * q - 1), found);
    }
    Ok(run.finish())
}

/// Odd-k relators `[v_k x x]` do not change the thin core.
pub fn exp_superfluity(
    p: u32,
    n: u32,
    a: u32,
    max_degree: usize,
    reliable_bound: Option<usize>,
) -> Result<ExperimentResult, HarnessError> {
    let mut run = Run::new(
        "superfluity",
        json!({"p": p, "n": n, "a": a, "max_degree": max_degree}),
    );
    let r = bound(max_degree, reliable_bound)?;
    let without = compute(&build_minus1(p, n, a, 1, false)?, max_degree)?.thin_core(r)?;
    let with = compute(&build_minus1(p, n, a, 1, true)?, max_degree)?.thin_core(r)?;
    run.eq(
        "thin-core dimensions agree with and without the odd-k relators",
        without.dims(),
        with.dims(),
    );
    Ok(run.finish())
}

/// One entry of the experiment grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    Theorem41 {
        p: u32,
        n: u32,
        s: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
    Ldies {
        p: u32,
        n: u32,
        a: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
    LemmaIdentities {
        p: u32,
        n: u32,
        s: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
    /// Chain checks on the `theorem41` thin core with these parameters.
    PropChains {
        p: u32,
        n: u32,
        s: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
    /// Second-diamond location in the `theorem41` thin core.
    SecondDiamond {
        p: u32,
        n: u32,
        s: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
    Superfluity {
        p: u32,
        n: u32,
        a: u32,
        max_degree: usize,
        #[serde(default)]
        reliable_bound: Option<usize>,
    },
}

impl ExperimentSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentSpec::Theorem41 { .. } => "theorem41",
            ExperimentSpec::Ldies { .. } => "ldies",
            ExperimentSpec::LemmaIdentities { .. } => "lemma-identities",
            ExperimentSpec::PropChains { .. } => "prop-chains",
            ExperimentSpec::SecondDiamond { .. } => "second-diamond",
            ExperimentSpec::Superfluity { .. } => "superfluity",
        }
    }

    pub fn run(&self) -> Result<ExperimentResult, HarnessError> {
        match *self {
            ExperimentSpec::Theorem41 { p, n, s, max_degree, reliable_bound } => {
                exp_theorem41(p, n, s, max_degree, reliable_bound)
            }
            ExperimentSpec::Ldies { p, n, a, max_degree, reliable_bound } => {
                exp_ldies(p, n, a, max_degree, reliable_bound)
            }
            ExperimentSpec::LemmaIdentities { p, n, s, max_degree, reliable_bound } => {
                exp_lemma_identities(p, n, s, max_degree, reliable_bound)
            }
            ExperimentSpec::PropChains { p, n, s, max_degree, reliable_bound } => {
                let start = Instant::now();
                let (core, _) = theorem41_core(p, n, s, max_degree, reliable_bound)?;
                let mut res = exp_prop_chains(&core, q_of(p, n), true)?;
                res.params = family_params(p, n, s, max_degree);
                res.runtime_seconds = start.elapsed().as_secs_f64();
                Ok(res)
            }
            ExperimentSpec::SecondDiamond { p, n, s, max_degree, reliable_bound } => {
                let start = Instant::now();
                let (core, _) = theorem41_core(p, n, s, max_degree, reliable_bound)?;
                let mut res = exp_second_diamond(&core, Some(q_of(p, n)))?;
                res.params = family_params(p, n, s, max_degree);
                res.runtime_seconds = start.elapsed().as_secs_f64();
                Ok(res)
            }
            ExperimentSpec::Superfluity { p, n, a, max_degree, reliable_bound } => {
                exp_superfluity(p, n, a, max_degree, reliable_bound)
            }
        }
    }

    /// Runs the experiment; a harness error becomes a failing result.
    pub fn run_or_fail(&self) -> ExperimentResult {
        let start = Instant::now();
        self.run().unwrap_or_else(|e| ExperimentResult {
            name: self.name().to_string(),
            params: match serde_json::to_value(self) {
                Ok(Value::Object(m)) => m.into_iter().filter(|(k, _)| k != "experiment").collect(),
                _ => BTreeMap::new(),
            },
            verdict: Verdict::Fail,
            evidence: vec![Evidence {
                claim: "experiment runs".into(),
                expected: "no error".into(),
                observed: e.to_string(),
                ok: false,
            }],
            runtime_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

fn family_params(p: u32, n: u32, s: u32, max_degree: usize) -> BTreeMap<String, Value> {
    [
        ("p", json!(p)),
        ("n", json!(n)),
        ("s", json!(s)),
        ("max_degree", json!(max_degree)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

const MANIFEST: &str = include_str!("../manifest/experiments.json");

#[derive(Debug, Clone, Deserialize)]
struct Manifest {
    experiments: Vec<ExperimentSpec>,
}

/// The canonical experiment grid.
pub fn manifest() -> Vec<ExperimentSpec> {
    let m: Manifest = serde_json::from_str(MANIFEST).expect("built-in manifest parses");
    m.experiments
}

/// Runs every spec on its own thread; results come back in input order.
pub fn run_all(specs: &[ExperimentSpec]) -> Vec<ExperimentResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || spec.run_or_fail()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment thread panicked"))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub schema: String,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<ExperimentResult>,
}

impl ResultsDocument {
    pub fn new(results: Vec<ExperimentResult>) -> Self {
        let passed = results.iter().filter(|r| r.passed()).count();
        ResultsDocument {
            schema: RESULTS_SCHEMA.to_string(),
            passed,
            failed: results.len() - passed,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            s.push_str(&r.to_text());
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed);
        s
    }
}

#[cfg(test)]
mod tests;
