//! Two-generator homogeneous presentations: words, relators, and the
//! builders for the (-1)-algebra families.

mod dsl;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::{FpError, PrimeField};

pub use dsl::{parse_relators, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Field(#[from] FpError),
    #[error("empty word")]
    EmptyWord,
    #[error("relator is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    #[error("relator has no nonzero terms")]
    ZeroRelator,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// A degree-one generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::X, Letter::Y];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }

    pub fn from_index(i: usize) -> Letter {
        match i {
            0 => Letter::X,
            1 => Letter::Y,
            _ => panic!("generator index {i} out of range"),
        }
    }

    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A left-normed bracket `[a1 a2 ... ak] = [...[[a1 a2] a3] ... ak]` in x and y.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, PresentationError> {
        if letters.is_empty() {
            return Err(PresentationError::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Appends `count` copies of `letter`.
    pub fn then(mut self, letter: Letter, count: usize) -> Self {
        self.0.extend(std::iter::repeat_n(letter, count));
        self
    }

    pub fn concat(mut self, other: &Word) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|l| l.swapped()).collect())
    }

    /// Compact DSL form, e.g. `[y,x^2,y]`.
    pub fn to_dsl(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if j - i == 1 {
                parts.push(l.as_char().to_string());
            } else {
                parts.push(format!("{}^{}", l.as_char(), j - i));
            }
            i = j;
        }
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

/// Parses a bare string of `x`/`y` characters (whitespace ignored), e.g. `"yxxy"`.
impl FromStr for Word {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(PresentationError::InvalidParams(format!(
                    "unexpected character {other:?} in word"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

/// The canonical chain element v_k of degree k(q-1):
/// `v_1 = [y x^(q-2)]`, `v_2 = [y x^(2q-3)]`, `v_k = [v_(k-1) x y x^(q-3)]`.
pub fn v_word(k: usize, q: usize) -> Word {
    assert!(k >= 1 && q >= 3, "v_word needs k >= 1 and q >= 3");
    if k == 1 {
        return Word(vec![Letter::Y]).then(Letter::X, q - 2);
    }
    let mut w = Word(vec![Letter::Y]).then(Letter::X, 2 * q - 3);
    for _ in 2..k {
        w = w.then(Letter::X, 1).then(Letter::Y, 1).then(Letter::X, q - 3);
    }
    w
}

/// A homogeneous linear combination of words, read as `sum = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    terms: Vec<(u32, Word)>,
    degree: usize,
}

impl Relator {
    /// Collects like words (first-occurrence order) and drops zero coefficients.
    pub fn new(
        field: PrimeField,
        terms: impl IntoIterator<Item = (i64, Word)>,
    ) -> Result<Self, PresentationError> {
        let mut collected: Vec<(u32, Word)> = Vec::new();
        let mut degree = None;
        for (c, w) in terms {
            match degree {
                None => degree = Some(w.degree()),
                Some(d) if d != w.degree() => {
                    return Err(PresentationError::Inhomogeneous(d, w.degree()))
                }
                _ => {}
            }
            let c = field.reduce(c);
            if let Some(slot) = collected.iter_mut().find(|(_, v)| *v == w) {
                slot.0 = field.add(slot.0, c);
            } else {
                collected.push((c, w));
            }
        }
        collected.retain(|(c, _)| *c != 0);
        match degree {
            Some(degree) if !collected.is_empty() => Ok(Relator {
                terms: collected,
                degree,
            }),
            _ => Err(PresentationError::ZeroRelator),
        }
    }

    pub fn word(field: PrimeField, w: Word) -> Self {
        Relator::new(field, [(1, w)]).expect("single word relator")
    }

    pub fn terms(&self) -> &[(u32, Word)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn swapped(&self) -> Relator {
        Relator {
            terms: self.terms.iter().map(|(c, w)| (*c, w.swapped())).collect(),
            degree: self.degree,
        }
    }

    pub fn to_dsl(&self, field: PrimeField) -> String {
        let mut out = String::new();
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let neg = *c == field.p() - 1 && field.p() > 2;
            match (i, neg, *c) {
                (0, false, 1) => {}
                (0, true, _) => out.push_str("- "),
                (0, false, c) => out.push_str(&format!("{c} ")),
                (_, false, 1) => out.push_str(" + "),
                (_, true, _) => out.push_str(" - "),
                (_, false, c) => out.push_str(&format!(" + {c} ")),
            }
            out.push_str(&w.to_dsl());
        }
        out.push_str(" = 0");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Theorem41,
    Minus1Family,
    Custom,
}

/// Optional family parameters: `q = p^n`, `s`, `a`, and the type `lambda`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: Option<u32>,
    pub s: Option<u32>,
    pub a: Option<u32>,
    pub lambda: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: PrimeField,
    pub params: Params,
    pub relators: Vec<Relator>,
    pub provenance: Provenance,
}

fn checked_pow(p: u32, e: u32) -> Option<usize> {
    (p as usize).checked_pow(e)
}

impl Presentation {
    /// The free Lie algebra on x, y.
    pub fn free(field: PrimeField) -> Self {
        Presentation {
            field,
            params: Params::default(),
            relators: Vec::new(),
            provenance: Provenance::Custom,
        }
    }

    pub fn custom(field: PrimeField, relators: Vec<Relator>) -> Self {
        Presentation {
            field,
            params: Params::default(),
            relators,
            provenance: Provenance::Custom,
        }
    }

    /// `q = p^n` when `n` is known.
    pub fn q(&self) -> Option<usize> {
        self.params.n.and_then(|n| checked_pow(self.field.p(), n))
    }

    pub fn max_relator_degree(&self) -> usize {
        self.relators.iter().map(Relator::degree).max().unwrap_or(0)
    }

    /// Same presentation with the roles of x and y exchanged in every relator.
    pub fn swapped(&self) -> Presentation {
        Presentation {
            relators: self.relators.iter().map(Relator::swapped).collect(),
            provenance: Provenance::Custom,
            ..self.clone()
        }
    }

    pub fn to_dsl(&self) -> String {
        dsl::print(self)
    }
}

fn validate_q(p: u32, n: u32) -> Result<usize, PresentationError> {
    if n == 0 {
        return Err(PresentationError::InvalidParams("n must be at least 1".into()));
    }
    checked_pow(p, n)
        .filter(|&q| q <= 1 << 12)
        .ok_or_else(|| PresentationError::InvalidParams(format!("q = {p}^{n} is too large")))
}

/// Relators shared by both families: the chain up to the second diamond.
fn chain_relators(field: PrimeField, n: u32, q: usize) -> Vec<Relator> {
    let p = field.p() as usize;
    let exceptional: Vec<usize> = (1..=n).map(|t| 2 * q - p.pow(t) - 2).collect();
    let y = || Word(vec![Letter::Y]);
    let mut out = Vec::new();
    for i in 1..(2 * q - 3) {
        if !exceptional.contains(&i) {
            out.push(Relator::word(field, y().then(Letter::X, i).then(Letter::Y, 1)));
        }
    }
    for &i in &exceptional {
        let w = y().then(Letter::X, i).then(Letter::Y, 1).then(Letter::X, 1);
        out.push(Relator::word(field, w));
    }
    if q == 3 && p == 3 {
        out.push(Relator::word(field, "yxyy".parse().unwrap()));
    }
    out
}

/// `[v_k a b]` for generators a, b.
fn v_then(k: usize, q: usize, tail: &[Letter]) -> Word {
    let mut w = v_word(k, q);
    w.0.extend_from_slice(tail);
    w
}

use Letter::{X, Y};

/// The finite presentation of the central extension N whose central quotient
/// has infinite-type diamonds in degrees k(q-1)+1 for 2 <= k <= p^s and a
/// type-one diamond in degree (p^s+1)(q-1)+1.
pub fn build_theorem41(p: u32, n: u32, s: u32) -> Result<Presentation, PresentationError> {
    let field = PrimeField::new(p)?;
    let q = validate_q(p, n)?;
    if s == 0 {
        return Err(PresentationError::InvalidParams("s must be at least 1".into()));
    }
    let ps = checked_pow(p, s)
        .filter(|&v| v <= 1 << 12)
        .ok_or_else(|| PresentationError::InvalidParams("p^s is too large".into()))?;

    let mut relators = chain_relators(field, n, q);
    relators.push(Relator::word(field, v_then(2, q, &[X, X, X])));
    relators.push(Relator::word(field, v_then(2, q, &[X, X, Y])));
    for k in (3..=ps).filter(|k| k % 2 == 0) {
        relators.push(Relator::word(field, v_then(k, q, &[X, X])));
    }
    relators.push(Relator::new(
        field,
        [(1, v_then(ps + 1, q, &[Y, X])), (-1, v_then(ps + 1, q, &[X, X]))],
    )?);
    Ok(Presentation {
        field,
        params: Params {
            n: Some(n),
            s: Some(s),
            a: None,
            lambda: None,
        },
        relators,
        provenance: Provenance::Theorem41,
    })
}

/// Presentation with infinite-type diamonds in degrees k(q-1)+1 for
/// 2 <= k < a and the relation `[v_a y x] = lambda [v_a x x]`.
///
/// Without `include_odd_k` only the relators `[v_k x x]` with k even are imposed.
pub fn build_minus1(
    p: u32,
    n: u32,
    a: u32,
    lambda: u32,
    include_odd_k: bool,
) -> Result<Presentation, PresentationError> {
    let mut pres = build_minus1_chain(p, n, a, include_odd_k)?;
    let field = pres.field;
    let lambda = field.reduce(lambda as i64);
    if lambda == 0 {
        return Err(PresentationError::InvalidParams("lambda must be nonzero".into()));
    }
    let q = pres.q().unwrap();
    let a = a as usize;
    pres.relators.push(Relator::new(
        field,
        [
            (1, v_then(a, q, &[Y, X])),
            (-(lambda as i64), v_then(a, q, &[X, X])),
        ],
    )?);
    pres.params.lambda = Some(lambda);
    Ok(pres)
}

/// [`build_minus1`] without the final type relator.
pub fn build_minus1_chain(
    p: u32,
    n: u32,
    a: u32,
    include_odd_k: bool,
) -> Result<Presentation, PresentationError> {
    let field = PrimeField::new(p)?;
    let q = validate_q(p, n)?;
    if a < 3 {
        return Err(PresentationError::InvalidParams("a must be at least 3".into()));
    }
    if a as usize * q > 1 << 14 {
        return Err(PresentationError::InvalidParams("a(q-1) is too large".into()));
    }
    let mut relators = chain_relators(field, n, q);
    for k in (2..a as usize).filter(|k| include_odd_k || k % 2 == 0) {
        relators.push(Relator::word(field, v_then(k, q, &[X, X])));
    }
    Ok(Presentation {
        field,
        params: Params {
            n: Some(n),
            s: None,
            a: Some(a),
            lambda: None,
        },
        relators,
        provenance: Provenance::Minus1Family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn v_word_examples() {
        assert_eq!(v_word(1, 5), w("yxxx"));
        assert_eq!(v_word(2, 3), w("yxxx"));
        assert_eq!(v_word(3, 3), w("yxxxxy"));
        assert_eq!(v_word(3, 5), w("y xxxxxxx xy xx"));
    }

    #[test]
    fn v_word_degrees() {
        for q in 3..=9 {
            for k in 1..=12 {
                assert_eq!(v_word(k, q).degree(), k * (q - 1), "k={k} q={q}");
            }
        }
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(Word::new(vec![]), Err(PresentationError::EmptyWord));
    }

    #[test]
    fn relator_collects_and_checks_homogeneity() {
        let f = PrimeField::new(3).unwrap();
        let r = Relator::new(f, [(1, w("xy")), (2, w("yx")), (2, w("xy"))]).unwrap();
        assert_eq!(r.terms(), &[(2, w("yx"))]);
        assert_eq!(
            Relator::new(f, [(1, w("xy")), (1, w("x"))]),
            Err(PresentationError::Inhomogeneous(2, 1))
        );
        assert_eq!(
            Relator::new(f, [(1, w("xy")), (2, w("xy"))]),
            Err(PresentationError::ZeroRelator)
        );
    }

    #[test]
    fn theorem41_p3() {
        let pres = build_theorem41(3, 1, 1).unwrap();
        let f = pres.field;
        let expected = vec![
            Relator::word(f, w("yxxy")),
            Relator::word(f, w("yxyx")),
            Relator::word(f, w("yxyy")),
            Relator::word(f, w("yxxx xxx")),
            Relator::word(f, w("yxxx xxy")),
            Relator::new(f, [(1, w("yxxx xy xy yx")), (-1, w("yxxx xy xy xx"))]).unwrap(),
        ];
        assert_eq!(pres.relators, expected);
    }

    #[test]
    fn theorem41_p5() {
        let pres = build_theorem41(5, 1, 1).unwrap();
        let f = pres.field;
        let has = |r: Relator| pres.relators.contains(&r);
        for i in [1, 2, 4, 5, 6] {
            assert!(has(Relator::word(f, w("y").then(X, i).then(Y, 1))), "i={i}");
        }
        assert!(!has(Relator::word(f, w("yxxxy"))));
        assert!(has(Relator::word(f, w("yxxxyx"))));
        assert!(has(Relator::word(f, v_then(2, 5, &[X, X, X]))));
        assert!(has(Relator::word(f, v_then(2, 5, &[X, X, Y]))));
        assert!(has(Relator::word(f, v_then(4, 5, &[X, X]))));
        let last = pres.relators.last().unwrap();
        assert_eq!(last.degree(), 6 * 4 + 2);
        assert_eq!(pres.relators.len(), 10);
    }

    #[test]
    fn theorem41_relator_count_formula() {
        for (p, n, s) in [(3, 1, 1), (3, 1, 2), (5, 1, 1), (3, 2, 1), (7, 1, 1), (5, 1, 2), (3, 2, 2)] {
            let pres = build_theorem41(p, n, s).unwrap();
            let q = pres.q().unwrap();
            let ps = (p as usize).pow(s);
            let expected = (2 * q - 4 - n as usize)
                + n as usize
                + usize::from(q == 3 && p == 3)
                + 2
                + (ps - 2) / 2
                + 1;
            assert_eq!(pres.relators.len(), expected, "p={p} n={n} s={s}");
            for r in &pres.relators {
                for (_, word) in r.terms() {
                    assert_eq!(word.degree(), r.degree());
                }
            }
        }
    }

    #[test]
    fn minus1_relators() {
        let with_odd = build_minus1(5, 1, 4, 1, true).unwrap();
        let without = build_minus1(5, 1, 4, 1, false).unwrap();
        let f = with_odd.field;
        let v3xx = Relator::word(f, v_then(3, 5, &[X, X]));
        let v2xx = Relator::word(f, v_then(2, 5, &[X, X]));
        assert!(with_odd.relators.contains(&v3xx));
        assert!(!without.relators.contains(&v3xx));
        assert!(without.relators.contains(&v2xx));
        let ty = Relator::new(f, [(1, v_then(4, 5, &[Y, X])), (-1, v_then(4, 5, &[X, X]))]).unwrap();
        assert_eq!(with_odd.relators.last(), Some(&ty));

        let small = build_minus1(3, 1, 3, 2, true).unwrap();
        let chain = chain_relators(small.field, 1, 3).len();
        assert_eq!(small.relators.len(), chain + 2);
    }

    #[test]
    fn invalid_params() {
        assert!(build_theorem41(4, 1, 1).is_err());
        assert!(build_theorem41(3, 0, 1).is_err());
        assert!(build_theorem41(3, 1, 0).is_err());
        assert!(build_minus1(3, 1, 2, 1, false).is_err());
        assert!(build_minus1(3, 1, 4, 3, false).is_err());
    }
}
