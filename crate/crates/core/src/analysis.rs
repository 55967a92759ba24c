//! Thinness structure of a computed algebra: covering, two-step
//! centralizers, diamond typing and chains.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{EngineError, GradedAlgebra, HomElement};
use crate::fp::PrimeField;
use crate::linalg;

pub const REPORT_SCHEMA: &str = "thinlie.report/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("component too wide for line enumeration: degree {degree} has dimension {dim} (cap {cap})")]
    TooWide { degree: usize, dim: usize, cap: usize },
    #[error("not a (-1)-algebra normal form: the centralizer of L_2 has dimension {0}")]
    NotNormalForm(usize),
    #[error("degree {degree} is outside the usable range {lo}..={hi}")]
    OutOfRange { degree: usize, lo: usize, hi: usize },
    #[error("component of degree {0} is zero")]
    ZeroComponent(usize),
}

/// Whether `n = p^k` for some `k >= 1`.
pub fn is_power_of(mut n: usize, p: usize) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn in_range(degree: usize, lo: usize, hi: usize) -> Result<(), AnalysisError> {
    if degree < lo || degree > hi {
        return Err(AnalysisError::OutOfRange { degree, lo, hi });
    }
    Ok(())
}

/// Every nonzero vector of `F_p^dim` whose first nonzero coordinate is 1,
/// one per line.
fn projective_points(field: PrimeField, dim: usize) -> Vec<Vec<u32>> {
    let p = field.p();
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        let count = (p as u64).pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0; dim];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringOptions {
    /// Largest component dimension accepted for line enumeration.
    pub max_dim: usize,
    /// Above this prime the lines are sampled instead of enumerated.
    pub max_exhaustive_p: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CoveringOptions {
    fn default() -> Self {
        CoveringOptions {
            max_dim: 2,
            max_exhaustive_p: 97,
            samples: 64,
            seed: 0x5eed_c0de,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringOutcome {
    pub holds: bool,
    pub sampled: bool,
}

/// Whether `span{[u,x],[u,y]} = L_{d+1}` for every line `<u>` of `L_d`.
pub fn check_covering(alg: &GradedAlgebra, d: usize) -> Result<bool, AnalysisError> {
    Ok(check_covering_with(alg, d, &CoveringOptions::default())?.holds)
}

pub fn check_covering_with(
    alg: &GradedAlgebra,
    d: usize,
    opts: &CoveringOptions,
) -> Result<CoveringOutcome, AnalysisError> {
    in_range(d, 1, alg.max_degree().saturating_sub(1))?;
    let field = alg.field();
    let dim = alg.dim(d);
    let target = alg.dim(d + 1);
    if dim == 0 {
        return Ok(CoveringOutcome {
            holds: target == 0,
            sampled: false,
        });
    }
    if dim > opts.max_dim {
        return Err(AnalysisError::TooWide {
            degree: d,
            dim,
            cap: opts.max_dim,
        });
    }
    let sampled = field.p() > opts.max_exhaustive_p;
    let candidates = if sampled {
        let mut rng = StdRng::seed_from_u64(opts.seed ^ d as u64);
        let mut v: Vec<Vec<u32>> = (0..dim)
            .map(|i| HomElement::unit(d, dim, i).coeffs)
            .collect();
        while v.len() < dim + opts.samples {
            let c: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..field.p())).collect();
            if !linalg::is_zero(&c) {
                v.push(c);
            }
        }
        v
    } else {
        projective_points(field, dim)
    };
    for coeffs in candidates {
        let u = HomElement { degree: d, coeffs };
        let images = [
            alg.act(&u, crate::presentation::Letter::X)?.coeffs,
            alg.act(&u, crate::presentation::Letter::Y)?.coeffs,
        ];
        if linalg::rank(field, &images, target) != target {
            return Ok(CoveringOutcome {
                holds: false,
                sampled,
            });
        }
    }
    Ok(CoveringOutcome {
        holds: true,
        sampled,
    })
}

/// Basis, in `(x, y)` coordinates, of `{ a in L_1 : [b, a] = 0 for all b in L_k }`.
/// A one-dimensional answer is scaled to have leading coordinate 1.
pub fn two_step_centralizer(alg: &GradedAlgebra, k: usize) -> Result<Vec<[u32; 2]>, AnalysisError> {
    in_range(k, 1, alg.max_degree().saturating_sub(1))?;
    let field = alg.field();
    let mut images = [Vec::new(), Vec::new()];
    for b in 0..alg.dim(k) {
        let e = alg.basis_element(k, b);
        for (g, img) in images.iter_mut().enumerate() {
            img.extend(alg.act(&e, crate::presentation::Letter::from_index(g))?.coeffs);
        }
    }
    let len = images[0].len();
    let mut basis: Vec<[u32; 2]> = linalg::relations_among(field, &images, len)
        .into_iter()
        .map(|z| [z[0], z[1]])
        .collect();
    if basis.len() == 1 {
        basis[0] = normalized(field, basis[0]);
    }
    Ok(basis)
}

fn normalized(field: PrimeField, v: [u32; 2]) -> [u32; 2] {
    let lead = if v[0] != 0 { v[0] } else { v[1] };
    let inv = field.inv(lead).expect("nonzero vector");
    [field.mul(v[0], inv), field.mul(v[1], inv)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Centralizer {
    Zero,
    Line { vector: [u32; 2] },
    All,
}

impl Centralizer {
    pub fn from_basis(basis: &[[u32; 2]]) -> Centralizer {
        match basis {
            [] => Centralizer::Zero,
            [v] => Centralizer::Line { vector: *v },
            _ => Centralizer::All,
        }
    }

    fn describe(&self) -> String {
        match self {
            Centralizer::Zero => "0".into(),
            Centralizer::Line { vector } => format!("<({},{})>", vector[0], vector[1]),
            Centralizer::All => "L_1".into(),
        }
    }
}

/// A choice of degree-one generators, in coordinates of the input `x, y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub x: [u32; 2],
    pub y: [u32; 2],
}

impl Frame {
    pub const STANDARD: Frame = Frame {
        x: [1, 0],
        y: [0, 1],
    };

    pub fn x_elem(&self) -> HomElement {
        HomElement {
            degree: 1,
            coeffs: self.x.to_vec(),
        }
    }

    pub fn y_elem(&self) -> HomElement {
        HomElement {
            degree: 1,
            coeffs: self.y.to_vec(),
        }
    }
}

/// `y'` spans the centralizer of `L_2`; `x'` is the first input generator
/// independent of it.
pub fn normalize_generators(alg: &GradedAlgebra) -> Result<Frame, AnalysisError> {
    let c = two_step_centralizer(alg, 2)?;
    if c.len() != 1 {
        return Err(AnalysisError::NotNormalForm(c.len()));
    }
    let y = c[0];
    // y = (1, t) is independent of (0, 1); y = (0, 1) is independent of (1, 0)
    let x = if y[0] == 0 { [1, 0] } else { [0, 1] };
    Ok(Frame { x, y })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiamondKind {
    Chain,
    GenuineFinite,
    GenuineInfinite,
    Fake,
    BoundaryIndeterminate,
    Untypable,
}

impl DiamondKind {
    pub fn is_genuine(self) -> bool {
        matches!(self, DiamondKind::GenuineFinite | DiamondKind::GenuineInfinite)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DiamondKind::Chain => "chain",
            DiamondKind::GenuineFinite => "genuine-finite",
            DiamondKind::GenuineInfinite => "genuine-infinite",
            DiamondKind::Fake => "fake",
            DiamondKind::BoundaryIndeterminate => "boundary-indeterminate",
            DiamondKind::Untypable => "untypable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondRecord {
    pub degree: usize,
    pub dim: usize,
    pub kind: DiamondKind,
    /// Set exactly when `kind` is genuine-finite; never zero.
    pub lambda: Option<u32>,
    /// Coordinates of the element spanning the preceding component, when it is one-dimensional.
    pub witness_w: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl DiamondRecord {
    /// Whether the component sits at a diamond position: two-dimensional, or fake.
    pub fn is_diamond(&self) -> bool {
        self.dim == 2 || self.kind == DiamondKind::Fake
    }

    fn type_string(&self) -> String {
        match (self.kind, self.lambda) {
            (DiamondKind::GenuineFinite, Some(l)) => l.to_string(),
            (DiamondKind::GenuineInfinite, _) => "inf".into(),
            (DiamondKind::Fake, _) => "0".into(),
            _ => "-".into(),
        }
    }
}

/// Generator frame plus the `q` used for the fake-diamond degree condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyContext {
    pub frame: Frame,
    pub q: Option<usize>,
}

pub fn classify_component(
    alg: &GradedAlgebra,
    h: usize,
    ctx: &ClassifyContext,
) -> Result<DiamondRecord, AnalysisError> {
    in_range(h, 2, alg.max_degree())?;
    let field = alg.field();
    let dim = alg.dim(h);
    if dim == 0 {
        return Err(AnalysisError::ZeroComponent(h));
    }
    let record = |kind, lambda, witness: Option<&HomElement>, note: Option<&str>| DiamondRecord {
        degree: h,
        dim,
        kind,
        lambda,
        witness_w: witness.map(|w| w.coeffs.clone()),
        note: note.map(str::to_string),
    };
    if dim > 2 {
        return Ok(record(DiamondKind::Untypable, None, None, Some("dimension exceeds two")));
    }
    if alg.dim(h - 1) != 1 {
        if dim == 1 {
            return Ok(record(DiamondKind::Chain, None, None, None));
        }
        return Ok(record(
            DiamondKind::Untypable,
            None,
            None,
            Some("predecessor is not one-dimensional"),
        ));
    }
    let (x, y) = (ctx.frame.x_elem(), ctx.frame.y_elem());
    let w = alg.basis_element(h - 1, 0);
    let wx = alg.bracket(&w, &x)?;
    let wy = alg.bracket(&w, &y)?;
    if h == alg.max_degree() {
        let kind = if dim == 1 && !wy.is_zero() {
            DiamondKind::Chain
        } else {
            DiamondKind::BoundaryIndeterminate
        };
        return Ok(record(kind, None, Some(&w), Some("top of computed range")));
    }
    let wxx = alg.bracket(&wx, &x)?;
    let wxy = alg.bracket(&wx, &y)?;
    let wyx = alg.bracket(&wy, &x)?;
    let wyy = alg.bracket(&wy, &y)?;

    if dim == 1 {
        let at_position = ctx.q.is_some_and(|q| q > 1 && (h - 1).is_multiple_of(q - 1));
        let kind = if wy.is_zero() && wxy.is_zero() && at_position {
            DiamondKind::Fake
        } else {
            DiamondKind::Chain
        };
        return Ok(record(kind, None, Some(&w), None));
    }

    if !wxy.add(field, &wyx).is_zero() || !wyy.is_zero() {
        return Ok(record(
            DiamondKind::Untypable,
            None,
            Some(&w),
            Some("[wxy]+[wyx] or [wyy] is nonzero"),
        ));
    }
    if alg.dim(h + 1) == 0 {
        return Ok(record(
            DiamondKind::BoundaryIndeterminate,
            None,
            Some(&w),
            Some("last nonzero component"),
        ));
    }
    if wxx.is_zero() && wyx.is_zero() {
        return Ok(record(DiamondKind::BoundaryIndeterminate, None, Some(&w), None));
    }
    if wxx.is_zero() {
        return Ok(record(DiamondKind::GenuineInfinite, None, Some(&w), None));
    }
    match linalg::express(field, &wyx.coeffs, std::slice::from_ref(&wxx.coeffs)) {
        Some(c) if c[0] != 0 => Ok(record(DiamondKind::GenuineFinite, Some(c[0]), Some(&w), None)),
        Some(_) => Ok(record(
            DiamondKind::Untypable,
            None,
            Some(&w),
            Some("type zero on a two-dimensional component"),
        )),
        None => Ok(record(
            DiamondKind::Untypable,
            None,
            Some(&w),
            Some("[wyx] is not a multiple of [wxx]"),
        )),
    }
}

/// Whether `y'` centralizes `T_{m+1}..T_{m+q-3}` and no component among
/// `T_{m+1}..T_{m+q-2}` is two-dimensional.
pub fn check_chain_theorem(
    alg: &GradedAlgebra,
    m: usize,
    q: usize,
    frame: &Frame,
) -> Result<bool, AnalysisError> {
    if q < 3 {
        return Err(AnalysisError::OutOfRange { degree: q, lo: 3, hi: usize::MAX });
    }
    in_range(m, 1, alg.max_degree().saturating_sub(q - 2))?;
    let y = frame.y_elem();
    for k in m + 1..=m + q - 3 {
        for b in 0..alg.dim(k) {
            if !alg.bracket(&alg.basis_element(k, b), &y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok((m + 1..=m + q - 2).all(|k| alg.dim(k) != 2))
}

/// With `w` spanning `T_{m+q-2}`: `[wxy] + [wyx] = 0` and `[wyy] = 0`.
pub fn check_chain_end_relations(
    alg: &GradedAlgebra,
    m: usize,
    q: usize,
    frame: &Frame,
) -> Result<bool, AnalysisError> {
    if q < 3 {
        return Err(AnalysisError::OutOfRange { degree: q, lo: 3, hi: usize::MAX });
    }
    in_range(m, 1, alg.max_degree().saturating_sub(q))?;
    let h = m + q - 2;
    if alg.dim(h) != 1 {
        return Ok(false);
    }
    let field = alg.field();
    let (x, y) = (frame.x_elem(), frame.y_elem());
    let w = alg.basis_element(h, 0);
    let wx = alg.bracket(&w, &x)?;
    let wy = alg.bracket(&w, &y)?;
    let wxy = alg.bracket(&wx, &y)?;
    let wyx = alg.bracket(&wy, &x)?;
    let wyy = alg.bracket(&wy, &y)?;
    Ok(wxy.add(field, &wyx).is_zero() && wyy.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    NotNormalForm,
    CoveringFailure,
    CoveringUnchecked,
    Untypable,
    WidthExceeded,
    ChainNotCentralized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub degree: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QSource {
    Given,
    SecondDiamond,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerRecord {
    pub degree: usize,
    #[serde(flatten)]
    pub centralizer: Centralizer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinReport {
    pub schema: String,
    pub p: u32,
    pub max_degree: usize,
    pub q: Option<usize>,
    pub q_source: QSource,
    pub frame: Option<Frame>,
    pub dims: Vec<usize>,
    pub records: Vec<DiamondRecord>,
    pub centralizers: Vec<CentralizerRecord>,
    pub covering_ok_upto: usize,
    pub covering_sampled: bool,
    pub collapse_degree: Option<usize>,
    pub diamond_degrees: Vec<usize>,
    pub diamond_distances: Vec<usize>,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub q: Option<usize>,
    pub covering: CoveringOptions,
}

/// Analyses every degree of `alg`; the whole computed range is taken as
/// reliable, so pass a thin core rather than a raw computation.
pub fn full_report(alg: &GradedAlgebra, opts: &ReportOptions) -> ThinReport {
    let max = alg.max_degree();
    let dims = alg.dims();
    let mut findings = Vec::new();

    for (i, &d) in dims.iter().enumerate() {
        if d > 2 {
            findings.push(Finding {
                kind: FindingKind::WidthExceeded,
                degree: Some(i + 1),
                message: format!("component of dimension {d}"),
            });
        }
    }

    let centralizers: Vec<CentralizerRecord> = (1..max)
        .map(|k| CentralizerRecord {
            degree: k,
            centralizer: Centralizer::from_basis(
                &two_step_centralizer(alg, k).expect("degree within range"),
            ),
        })
        .collect();

    let mut covering_ok_upto = 0;
    let mut covering_sampled = false;
    let mut prefix = true;
    for d in 1..max {
        match check_covering_with(alg, d, &opts.covering) {
            Ok(outcome) => {
                covering_sampled |= outcome.sampled;
                if outcome.holds {
                    if prefix {
                        covering_ok_upto = d;
                    }
                } else {
                    prefix = false;
                    findings.push(Finding {
                        kind: FindingKind::CoveringFailure,
                        degree: Some(d),
                        message: format!("some line of L_{d} does not generate L_{}", d + 1),
                    });
                }
            }
            Err(e) => {
                prefix = false;
                findings.push(Finding {
                    kind: FindingKind::CoveringUnchecked,
                    degree: Some(d),
                    message: e.to_string(),
                });
            }
        }
    }

    let (q, q_source) = match opts.q {
        Some(q) => (Some(q), QSource::Given),
        None => match (2..=max).find(|&h| alg.dim(h) == 2) {
            Some(h) if h % 2 == 1 && is_power_of(h.div_ceil(2), alg.field().p() as usize) => {
                (Some(h.div_ceil(2)), QSource::SecondDiamond)
            }
            _ => (None, QSource::Unknown),
        },
    };

    let frame = match normalize_generators(alg) {
        Ok(f) => Some(f),
        Err(e) => {
            findings.push(Finding {
                kind: FindingKind::NotNormalForm,
                degree: Some(2),
                message: e.to_string(),
            });
            None
        }
    };

    let mut records = Vec::new();
    if let Some(frame) = frame {
        let ctx = ClassifyContext { frame, q };
        for h in 2..=max {
            if alg.dim(h) == 0 {
                continue;
            }
            let rec = classify_component(alg, h, &ctx).expect("degree within range");
            if rec.kind == DiamondKind::Untypable {
                findings.push(Finding {
                    kind: FindingKind::Untypable,
                    degree: Some(h),
                    message: rec.note.clone().unwrap_or_default(),
                });
            }
            records.push(rec);
        }
        let line_y = Centralizer::Line { vector: frame.y };
        for c in &centralizers {
            let k = c.degree;
            if k >= 2 && alg.dim(k) == 1 && alg.dim(k + 1) == 1 && c.centralizer != line_y {
                findings.push(Finding {
                    kind: FindingKind::ChainNotCentralized,
                    degree: Some(k),
                    message: format!(
                        "chain component has two-step centralizer {}",
                        c.centralizer.describe()
                    ),
                });
            }
        }
    }

    let diamond_degrees: Vec<usize> = records
        .iter()
        .filter(|r| r.is_diamond())
        .map(|r| r.degree)
        .collect();
    let diamond_distances = diamond_degrees.windows(2).map(|w| w[1] - w[0]).collect();

    ThinReport {
        schema: REPORT_SCHEMA.to_string(),
        p: alg.field().p(),
        max_degree: max,
        q,
        q_source,
        frame,
        dims,
        records,
        centralizers,
        covering_ok_upto,
        covering_sampled,
        collapse_degree: alg.collapse_degree(),
        diamond_degrees,
        diamond_distances,
        findings,
    }
}

impl ThinReport {
    pub fn record(&self, degree: usize) -> Option<&DiamondRecord> {
        self.records.iter().find(|r| r.degree == degree)
    }

    pub fn centralizer(&self, degree: usize) -> Option<Centralizer> {
        self.centralizers
            .iter()
            .find(|c| c.degree == degree)
            .map(|c| c.centralizer)
    }

    pub fn has_findings(&self) -> bool {
        !self.findings.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
        let _ = writeln!(s, "schema           {}", self.schema);
        let _ = writeln!(s, "p                {}", self.p);
        let _ = writeln!(s, "max_degree       {}", self.max_degree);
        let _ = writeln!(
            s,
            "q                {} ({})",
            opt(self.q),
            serde_json::to_value(self.q_source).unwrap().as_str().unwrap()
        );
        let frame = self.frame.map_or("none".to_string(), |f| {
            format!("x'=({},{}) y'=({},{})", f.x[0], f.x[1], f.y[0], f.y[1])
        });
        let _ = writeln!(s, "frame            {frame}");
        let _ = writeln!(
            s,
            "covering_ok_upto {}{}",
            self.covering_ok_upto,
            if self.covering_sampled { " (sampled)" } else { "" }
        );
        let _ = writeln!(s, "collapse_degree  {}", opt(self.collapse_degree));
        let join = |v: &[usize]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(s, "dims             {}", join(&self.dims));
        let _ = writeln!(s, "diamond_degrees  {}", join(&self.diamond_degrees));
        let _ = writeln!(s, "distances        {}", join(&self.diamond_distances));
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>6}  {:>3}  {:<22}  {:>6}  {:<10}  witness_w",
            "degree", "dim", "kind", "type", "centr."
        );
        for d in 1..=self.max_degree {
            let dim = self.dims[d - 1];
            let cent = self.centralizer(d).map_or("-".to_string(), |c| c.describe());
            let (kind, ty, witness, note) = match self.record(d) {
                Some(r) => (
                    r.kind.as_str().to_string(),
                    r.type_string(),
                    r.witness_w.as_ref().map_or("-".to_string(), |w| format!("{w:?}")),
                    r.note.clone().map_or(String::new(), |n| format!("  ({n})")),
                ),
                None if d == 1 => ("generators".into(), "-".into(), "-".into(), String::new()),
                None => ("-".into(), "-".into(), "-".into(), String::new()),
            };
            let _ = writeln!(
                s,
                "{d:>6}  {dim:>3}  {kind:<22}  {ty:>6}  {cent:<10}  {witness}{note}"
            );
        }
        if !self.findings.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "findings:");
            for f in &self.findings {
                let kind = serde_json::to_value(f.kind).unwrap();
                let _ = writeln!(
                    s,
                    "  {} at degree {}: {}",
                    kind.as_str().unwrap(),
                    opt(f.degree),
                    f.message
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests;
