//! The graded nilpotent quotient engine.
//!
//! [`compute`] builds the maximal N-graded Lie algebra on x, y (degree one)
//! satisfying a set of homogeneous relators, one degree at a time. Degree d
//! is spanned by the formal brackets `[b, g]` with `b` running over the basis
//! of degree d-1 and `g` over {x, y}. All products landing in degree d are
//! expressed in these formal candidates by right-recursion,
//! `[a, [b, g]] = [[a, b], g] - [[a, g], b]`, and the candidate space is cut
//! down by
//!
//! * anticommutativity `[a, b] + [b, a]` for every pair of basis elements with
//!   degrees summing to d,
//! * the Jacobi identity `[a, [b, g]] - [[a, b], g] + [[a, g], b]` for every
//!   pair `a`, `b` of basis elements with degrees summing to d-1 and every
//!   generator `g`,
//! * the relators of degree d.
//!
//! These two families of identities are enough for a bilinear product on an
//! algebra generated in degree one to be a Lie bracket: right multiplication
//! by a generator is then a derivation, and derivations are closed under
//! commutators.

mod json;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::PrimeField;
use crate::linalg::{self, Echelon};
use crate::presentation::{Letter, Presentation, Relator, Word};

pub use json::{AlgebraDocument, ALGEBRA_SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("max_degree must be at least 2 (got {0})")]
    MaxDegreeTooSmall(usize),
    #[error("relator {index} has degree {degree}, beyond max_degree {max_degree}")]
    RelatorTooDeep {
        index: usize,
        degree: usize,
        max_degree: usize,
    },
    #[error("relator {index} has degree {degree}; relators must have degree at least 2")]
    RelatorTooShallow { index: usize, degree: usize },
    #[error("degree {degree} exceeds the computed range (max_degree {max_degree})")]
    DegreeOverflow { degree: usize, max_degree: usize },
    #[error("insufficient computed range: degree {degree} needs degree {} (max_degree {max_degree})", degree + 1)]
    InsufficientRange { degree: usize, max_degree: usize },
    #[error("element of degree {degree} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        degree: usize,
        got: usize,
        expected: usize,
    },
    #[error("subspace given for quotient is not an ideal (fails in degree {0})")]
    NotAnIdeal(usize),
    #[error("malformed algebra document: {0}")]
    Malformed(String),
}

/// How a basis element was produced: a generator, or `[parent, letter]`
/// with `parent` indexing the basis one degree lower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisLabel {
    Generator(Letter),
    Bracket { parent: usize, letter: Letter },
}

/// A homogeneous element, as coordinates in the basis of its component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomElement {
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

impl HomElement {
    pub fn zero(degree: usize, dim: usize) -> Self {
        HomElement {
            degree,
            coeffs: vec![0; dim],
        }
    }

    pub fn unit(degree: usize, dim: usize, index: usize) -> Self {
        let mut e = HomElement::zero(degree, dim);
        e.coeffs[index] = 1;
        e
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.coeffs)
    }

    pub fn add(&self, field: PrimeField, other: &HomElement) -> HomElement {
        self.combine(field, 1, other)
    }

    pub fn sub(&self, field: PrimeField, other: &HomElement) -> HomElement {
        self.combine(field, field.p() - 1, other)
    }

    /// `self + c * other`
    pub fn combine(&self, field: PrimeField, c: u32, other: &HomElement) -> HomElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        let mut out = self.clone();
        field.axpy(&mut out.coeffs, c, &other.coeffs);
        out
    }

    pub fn scaled(&self, field: PrimeField, c: u32) -> HomElement {
        let mut out = self.clone();
        field.scale(&mut out.coeffs, c);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Component {
    pub(crate) labels: Vec<BasisLabel>,
    /// `action[b][g]`: image of basis element `b` under `ad g`, in the next
    /// degree. Empty in the top computed degree.
    pub(crate) action: Vec<[Vec<u32>; 2]>,
}

impl Component {
    fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Structure constants for all pairs of basis elements. `blocks[d][i]` holds
/// the products `[a, b]` with `deg a = i`, `deg b = d - i`, stored at
/// `a * dim(d - i) + b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Products {
    blocks: Vec<Vec<Vec<Vec<u32>>>>,
}

impl Products {
    fn get(&self, left: usize, right: usize, a: usize, b: usize, dim_right: usize) -> &[u32] {
        &self.blocks[left + right][left][a * dim_right + b]
    }
}

/// Computes every product landing in degree `d`, in whatever target space
/// `act_top` maps into (formal candidates while building degree `d`, or the
/// finished component afterwards).
fn products_into<F>(
    field: PrimeField,
    d: usize,
    comps: &[Component],
    lower: &Products,
    target_dim: usize,
    act_top: F,
) -> Vec<Vec<Vec<u32>>>
where
    F: Fn(&[u32], Letter) -> Vec<u32>,
{
    let dim = |k: usize| comps[k - 1].dim();
    let mut blocks: Vec<Vec<Vec<u32>>> = vec![Vec::new(); d];
    for right in 1..d {
        let left = d - right;
        let (dl, dr) = (dim(left), dim(right));
        let mut block = Vec::with_capacity(dl * dr);
        for a in 0..dl {
            for b in 0..dr {
                let entry = match comps[right - 1].labels[b] {
                    BasisLabel::Generator(g) => {
                        let mut unit = vec![0; dl];
                        unit[a] = 1;
                        act_top(&unit, g)
                    }
                    BasisLabel::Bracket { parent, letter } => {
                        let dp = dim(right - 1);
                        // [[a, parent], g]
                        let mut acc = act_top(lower.get(left, right - 1, a, parent, dp), letter);
                        // - [[a, g], parent]
                        let ag = &comps[left - 1].action[a][letter.index()];
                        let shifted: &Vec<Vec<u32>> = &blocks[left + 1];
                        for (k, &c) in ag.iter().enumerate() {
                            if c != 0 {
                                field.axpy(&mut acc, field.neg(c), &shifted[k * dp + parent]);
                            }
                        }
                        acc
                    }
                };
                debug_assert_eq!(entry.len(), target_dim);
                block.push(entry);
            }
        }
        blocks[left] = block;
    }
    blocks
}

/// Adds the full structure-constant table for degree `d`, assuming
/// components up to `d` and actions into `d` are final.
fn extend_products(field: PrimeField, d: usize, comps: &[Component], products: &mut Products) {
    let top = comps[d - 1].dim();
    let prev = &comps[d - 2];
    let blocks = products_into(field, d, comps, products, top, |v, g| {
        let mut out = vec![0; top];
        for (b, &c) in v.iter().enumerate() {
            field.axpy(&mut out, c, &prev.action[b][g.index()]);
        }
        out
    });
    while products.blocks.len() <= d {
        products.blocks.push(Vec::new());
    }
    products.blocks[d] = blocks;
}

/// A graded Lie algebra generated by x, y in degree one, truncated at
/// `max_degree`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: PrimeField,
    max_degree: usize,
    components: Vec<Component>,
    products: Products,
    relator_log: BTreeMap<usize, Vec<usize>>,
}

impl GradedAlgebra {
    fn generators() -> Component {
        Component {
            labels: vec![BasisLabel::Generator(Letter::X), BasisLabel::Generator(Letter::Y)],
            action: Vec::new(),
        }
    }

    /// Rebuilds the structure-constant table from labels and actions.
    pub(crate) fn from_parts(
        field: PrimeField,
        components: Vec<Component>,
        relator_log: BTreeMap<usize, Vec<usize>>,
    ) -> Self {
        let max_degree = components.len();
        let mut products = Products {
            blocks: vec![Vec::new(); 2],
        };
        for d in 2..=max_degree {
            extend_products(field, d, &components, &mut products);
        }
        GradedAlgebra {
            field,
            max_degree,
            components,
            products,
            relator_log,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Dimension of the degree `d` component (0 outside `1..=max_degree`).
    pub fn dim(&self, d: usize) -> usize {
        if d == 0 || d > self.max_degree {
            0
        } else {
            self.components[d - 1].dim()
        }
    }

    /// `dim L_d` for `d = 1..=max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Component::dim).collect()
    }

    pub fn labels(&self, d: usize) -> &[BasisLabel] {
        &self.components[d - 1].labels
    }

    /// Indices of the relators imposed at each degree.
    pub fn relator_log(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.relator_log
    }

    /// First degree with a zero component, if any within range.
    pub fn collapse_degree(&self) -> Option<usize> {
        (1..=self.max_degree).find(|&d| self.dim(d) == 0)
    }

    fn check_element(&self, u: &HomElement) -> Result<(), EngineError> {
        if u.degree == 0 || u.degree > self.max_degree {
            return Err(EngineError::DegreeOverflow {
                degree: u.degree,
                max_degree: self.max_degree,
            });
        }
        let expected = self.dim(u.degree);
        if u.coeffs.len() != expected {
            return Err(EngineError::DimensionMismatch {
                degree: u.degree,
                got: u.coeffs.len(),
                expected,
            });
        }
        Ok(())
    }

    pub fn generator(&self, g: Letter) -> HomElement {
        HomElement::unit(1, 2, g.index())
    }

    /// Degree-one element `a x + b y`.
    pub fn degree_one(&self, a: u32, b: u32) -> HomElement {
        HomElement {
            degree: 1,
            coeffs: vec![self.field.reduce(a as i64), self.field.reduce(b as i64)],
        }
    }

    pub fn basis_element(&self, d: usize, index: usize) -> HomElement {
        HomElement::unit(d, self.dim(d), index)
    }

    /// `[u, g]` through the action tables.
    pub fn act(&self, u: &HomElement, g: Letter) -> Result<HomElement, EngineError> {
        self.check_element(u)?;
        let d = u.degree;
        if d + 1 > self.max_degree {
            return Err(EngineError::DegreeOverflow {
                degree: d + 1,
                max_degree: self.max_degree,
            });
        }
        let mut out = HomElement::zero(d + 1, self.dim(d + 1));
        let comp = &self.components[d - 1];
        for (b, &c) in u.coeffs.iter().enumerate() {
            self.field.axpy(&mut out.coeffs, c, &comp.action[b][g.index()]);
        }
        Ok(out)
    }

    /// Applies `ad` of each letter in turn: `[u l1 l2 ...]`.
    pub fn act_word(&self, u: &HomElement, letters: &[Letter]) -> Result<HomElement, EngineError> {
        let mut cur = u.clone();
        for &l in letters {
            cur = self.act(&cur, l)?;
        }
        Ok(cur)
    }

    /// Evaluates a left-normed word.
    pub fn evaluate_word(&self, word: &Word) -> Result<HomElement, EngineError> {
        if word.degree() > self.max_degree {
            return Err(EngineError::DegreeOverflow {
                degree: word.degree(),
                max_degree: self.max_degree,
            });
        }
        let letters = word.letters();
        self.act_word(&self.generator(letters[0]), &letters[1..])
    }

    /// Evaluates a relator (a combination of words of one degree).
    pub fn evaluate_relator(&self, relator: &Relator) -> Result<HomElement, EngineError> {
        let mut acc = HomElement::zero(relator.degree(), self.dim(relator.degree()));
        for (c, w) in relator.terms() {
            let v = self.evaluate_word(w)?;
            acc = acc.combine(self.field, *c, &v);
        }
        Ok(acc)
    }

    /// The Lie bracket `[u, v]` of homogeneous elements.
    pub fn bracket(&self, u: &HomElement, v: &HomElement) -> Result<HomElement, EngineError> {
        self.check_element(u)?;
        self.check_element(v)?;
        let d = u.degree + v.degree;
        if d > self.max_degree {
            return Err(EngineError::DegreeOverflow {
                degree: d,
                max_degree: self.max_degree,
            });
        }
        let mut out = HomElement::zero(d, self.dim(d));
        let dr = self.dim(v.degree);
        for (a, &ca) in u.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in v.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let c = self.field.mul(ca, cb);
                let entry = self.products.get(u.degree, v.degree, a, b, dr);
                self.field.axpy(&mut out.coeffs, c, entry);
            }
        }
        Ok(out)
    }

    /// Basis of `{ z in L_d : [z, x] = [z, y] = 0 }`.
    pub fn graded_center_component(&self, d: usize) -> Result<Vec<HomElement>, EngineError> {
        if d == 0 || d + 1 > self.max_degree {
            return Err(EngineError::InsufficientRange {
                degree: d,
                max_degree: self.max_degree,
            });
        }
        let next = self.dim(d + 1);
        let images: Vec<Vec<u32>> = self.components[d - 1]
            .action
            .iter()
            .map(|[ax, ay]| ax.iter().chain(ay).copied().collect())
            .collect();
        Ok(linalg::relations_among(self.field, &images, 2 * next)
            .into_iter()
            .map(|coeffs| HomElement { degree: d, coeffs })
            .collect())
    }

    /// Quotient by the graded ideal spanned degree-wise by `ideal[d - 1]`,
    /// truncated at `new_max`. The quotient basis in each degree is chosen
    /// among the formal brackets `[b, g]` of the quotient's own basis, with
    /// the same pivot rule as [`compute`].
    pub fn quotient(&self, ideal: &[Vec<Vec<u32>>], new_max: usize) -> Result<GradedAlgebra, EngineError> {
        let field = self.field;
        let new_max = new_max.min(self.max_degree);
        let sub = |d: usize| -> Echelon {
            let rows = ideal.get(d - 1).cloned().unwrap_or_default();
            Echelon::new(field, rows, self.dim(d))
        };
        if sub(1).rank() > 0 {
            return Err(EngineError::NotAnIdeal(1));
        }
        // ideal check: [I_d, g] inside I_{d+1}
        for d in 1..new_max {
            let (here, next) = (sub(d), sub(d + 1));
            for row in &here.rows {
                let u = HomElement {
                    degree: d,
                    coeffs: row.clone(),
                };
                for g in Letter::ALL {
                    let img = self.act(&u, g)?;
                    if !next.contains(field, &img.coeffs) {
                        return Err(EngineError::NotAnIdeal(d + 1));
                    }
                }
            }
        }

        let mut comps = vec![GradedAlgebra::generators()];
        // lifts of the new basis, as old coordinates
        let mut lifts: Vec<Vec<u32>> = vec![vec![1, 0], vec![0, 1]];
        for d in 2..=new_max {
            let ech = sub(d);
            let free = ech.free_columns();
            let to_q = |v: &[u32]| -> Vec<u32> {
                let r = ech.reduce(field, v);
                free.iter().map(|&c| r[c]).collect()
            };
            let mut cand_old = Vec::with_capacity(2 * lifts.len());
            for lift in &lifts {
                let u = HomElement {
                    degree: d - 1,
                    coeffs: lift.clone(),
                };
                for g in Letter::ALL {
                    cand_old.push(self.act(&u, g)?.coeffs);
                }
            }
            let cand_q: Vec<Vec<u32>> = cand_old.iter().map(|v| to_q(v)).collect();
            let rels = linalg::relations_among(field, &cand_q, free.len());
            let rel_ech = Echelon::new(field, rels, cand_q.len());
            let chosen = rel_ech.free_columns();
            let chosen_q: Vec<Vec<u32>> = chosen.iter().map(|&c| cand_q[c].clone()).collect();

            let prev = comps.last_mut().expect("degree one present");
            prev.action = (0..lifts.len())
                .map(|b| {
                    [0, 1].map(|g| {
                        linalg::express(field, &cand_q[2 * b + g], &chosen_q)
                            .expect("candidates span the quotient")
                    })
                })
                .collect();
            comps.push(Component {
                labels: chosen
                    .iter()
                    .map(|&c| BasisLabel::Bracket {
                        parent: c / 2,
                        letter: Letter::from_index(c % 2),
                    })
                    .collect(),
                action: Vec::new(),
            });
            lifts = chosen.iter().map(|&c| cand_old[c].clone()).collect();
        }
        let log = self
            .relator_log
            .iter()
            .filter(|(d, _)| **d <= new_max)
            .map(|(d, v)| (*d, v.clone()))
            .collect();
        Ok(GradedAlgebra::from_parts(field, comps, log))
    }

    /// Iterated quotient by the graded centre in degrees `2..=reliable_bound`,
    /// truncated at `reliable_bound`.
    ///
    /// The first pass uses the centre computed against degree
    /// `reliable_bound + 1` of the input; later passes only look at degrees
    /// below the new top. A component whose successor vanishes is the top of
    /// a finite-dimensional algebra and is kept.
    pub fn thin_core(&self, reliable_bound: usize) -> Result<GradedAlgebra, EngineError> {
        if reliable_bound == 0 || reliable_bound + 1 > self.max_degree {
            return Err(EngineError::InsufficientRange {
                degree: reliable_bound,
                max_degree: self.max_degree,
            });
        }
        let mut current = self.clone();
        let mut upper = reliable_bound;
        loop {
            let mut ideal: Vec<Vec<Vec<u32>>> = vec![Vec::new(); reliable_bound];
            let mut found = false;
            for d in 2..=upper {
                if current.dim(d + 1) == 0 {
                    continue;
                }
                let z = current.graded_center_component(d)?;
                if !z.is_empty() {
                    found = true;
                    ideal[d - 1] = z.into_iter().map(|e| e.coeffs).collect();
                }
            }
            let truncating = current.max_degree > reliable_bound;
            if !found && !truncating {
                return Ok(current);
            }
            current = current.quotient(&ideal, reliable_bound)?;
            upper = reliable_bound - 1;
        }
    }

    pub fn reliable_default(&self) -> usize {
        self.max_degree.saturating_sub(2).max(1)
    }
}

/// Builds the maximal graded Lie algebra on x, y satisfying the relators of
/// `presentation`, truncated at `max_degree`.
pub fn compute(presentation: &Presentation, max_degree: usize) -> Result<GradedAlgebra, EngineError> {
    if max_degree < 2 {
        return Err(EngineError::MaxDegreeTooSmall(max_degree));
    }
    let field = presentation.field;
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (index, r) in presentation.relators.iter().enumerate() {
        if r.degree() > max_degree {
            return Err(EngineError::RelatorTooDeep {
                index,
                degree: r.degree(),
                max_degree,
            });
        }
        if r.degree() < 2 {
            return Err(EngineError::RelatorTooShallow {
                index,
                degree: r.degree(),
            });
        }
        by_degree.entry(r.degree()).or_default().push(index);
    }

    let mut comps = vec![GradedAlgebra::generators()];
    let mut products = Products {
        blocks: vec![Vec::new(); 2],
    };
    for d in 2..=max_degree {
        let prev_dim = comps[d - 2].dim();
        if prev_dim == 0 {
            // generated in degree one: everything above a zero component is zero
            let blocks = products_into(field, d, &comps, &products, 0, |_, _| Vec::new());
            comps.push(Component {
                labels: Vec::new(),
                action: Vec::new(),
            });
            products.blocks.push(blocks);
            continue;
        }
        let ncand = 2 * prev_dim;
        let lift = |v: &[u32], g: Letter| -> Vec<u32> {
            let mut out = vec![0; ncand];
            for (b, &c) in v.iter().enumerate() {
                out[2 * b + g.index()] = c;
            }
            out
        };
        // the action into degree d is not known yet; products_into only
        // reads actions of degrees below d - 1
        let formal = products_into(field, d, &comps, &products, ncand, lift);
        let dim = |k: usize| comps[k - 1].dim();
        let mut rows: Vec<Vec<u32>> = Vec::new();

        // anticommutativity
        for i in 1..=d / 2 {
            let j = d - i;
            for a in 0..dim(i) {
                for b in 0..dim(j) {
                    if i == j && b < a {
                        continue;
                    }
                    let mut row = formal[i][a * dim(j) + b].clone();
                    field.axpy(&mut row, 1, &formal[j][b * dim(i) + a]);
                    rows.push(row);
                }
            }
        }

        // Jacobi with a generator: [a,[b,g]] - [[a,b],g] + [[a,g],b]
        for i in 1..=d.saturating_sub(2) {
            let j = d - 1 - i;
            for a in 0..dim(i) {
                for b in 0..dim(j) {
                    let ab = products.get(i, j, a, b, dim(j));
                    for g in Letter::ALL {
                        let mut row = lift(ab, g);
                        field.scale(&mut row, field.p() - 1);
                        let bg = &comps[j - 1].action[b][g.index()];
                        for (k, &c) in bg.iter().enumerate() {
                            field.axpy(&mut row, c, &formal[i][a * dim(j + 1) + k]);
                        }
                        let ag = &comps[i - 1].action[a][g.index()];
                        for (k, &c) in ag.iter().enumerate() {
                            field.axpy(&mut row, c, &formal[i + 1][k * dim(j) + b]);
                        }
                        if !linalg::is_zero(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }

        // relators
        let tmp = GradedAlgebra {
            field,
            max_degree: d - 1,
            components: comps.clone(),
            products: Products::default(),
            relator_log: BTreeMap::new(),
        };
        for &index in by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
            let mut row = vec![0; ncand];
            for (c, w) in presentation.relators[index].terms() {
                let letters = w.letters();
                let prefix = tmp
                    .act_word(&tmp.generator(letters[0]), &letters[1..letters.len() - 1])
                    .expect("prefix within range");
                field.axpy(&mut row, *c, &lift(&prefix.coeffs, letters[letters.len() - 1]));
            }
            rows.push(row);
        }

        let ech = Echelon::new(field, rows, ncand);
        let free = ech.free_columns();
        let project = |v: &[u32]| -> Vec<u32> {
            let r = ech.reduce(field, v);
            free.iter().map(|&c| r[c]).collect()
        };
        comps[d - 2].action = (0..prev_dim)
            .map(|b| [0, 1].map(|g| project(&lift(&HomElement::unit(d - 1, prev_dim, b).coeffs, Letter::from_index(g)))))
            .collect();
        comps.push(Component {
            labels: free
                .iter()
                .map(|&c| BasisLabel::Bracket {
                    parent: c / 2,
                    letter: Letter::from_index(c % 2),
                })
                .collect(),
            action: Vec::new(),
        });
        let blocks = formal
            .into_iter()
            .map(|block| block.iter().map(|v| project(v)).collect())
            .collect();
        products.blocks.push(blocks);
    }
    Ok(GradedAlgebra {
        field,
        max_degree,
        components: comps,
        products,
        relator_log: by_degree,
    })
}
