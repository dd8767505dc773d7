//! Finite-dimensional Nijenhuis and NS algebras given by structure constants,
//! the induced NS structure, and the enveloping construction: generators of
//! the defining ideal, evaluation of free-algebra elements in a target
//! algebra, and a truncated ideal-membership search.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{operator_n, product, OpSymbol};
use crate::lincomb::LinComb;
use crate::matrix::{RationalMatrix, Vector};
use crate::rational::Rational;
use crate::relations::{ndendriform_relation_set, ns_relation_set, RelVector};
use crate::word::{enumerate_words, Factor, Symbol, Word};

/// Linear map between coordinate spaces; columns index the source basis.
pub type LinearMap = RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopingError {
    #[error("structure constants do not fit dimension {dim}: {what}")]
    Shape { dim: usize, what: String },
    #[error("expected {expected} generator names, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("generator `{0}` has no image")]
    UnknownGenerator(String),
    #[error("input is not a Nijenhuis algebra: {0}")]
    InvalidInput(Counterexample),
    #[error("size bound {bound} is below the candidate's largest word size {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
}

/// A bilinear operation on a `dim`-dimensional space:
/// `e_i . e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_nested(
        dim: usize,
        nested: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self, EnvelopingError> {
        let bad = |what: &str| EnvelopingError::Shape {
            dim,
            what: what.to_string(),
        };
        if nested.len() != dim || nested.iter().any(|r| r.len() != dim) {
            return Err(bad("expected dim x dim x dim"));
        }
        let mut c = Vec::with_capacity(dim * dim * dim);
        for row in nested {
            for cell in row {
                if cell.len() != dim {
                    return Err(bad("expected dim x dim x dim"));
                }
                c.extend(cell);
            }
        }
        Ok(StructureConstants { dim, c })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.basis_product(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.c[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Coordinates of `e_i . e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.c[start..start + self.dim]
    }

    pub fn apply(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o += &(&ab * c);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_nested()).finish()
    }
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// An associative algebra with a linear operator, given by structure
/// constants and the operator matrix (`P e_j` is column `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisAlgebraFD {
    pub mult: StructureConstants,
    pub op: RationalMatrix,
}

impl NijenhuisAlgebraFD {
    pub fn new(mult: StructureConstants, op: RationalMatrix) -> Result<Self, EnvelopingError> {
        let dim = mult.dim();
        if op.rows() != dim || op.cols() != dim {
            return Err(EnvelopingError::Shape {
                dim,
                what: format!("operator matrix is {}x{}", op.rows(), op.cols()),
            });
        }
        Ok(NijenhuisAlgebraFD { mult, op })
    }

    pub fn dim(&self) -> usize {
        self.mult.dim()
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.mult.apply(u, v)
    }

    pub fn apply_op(&self, v: &[Rational]) -> Vector {
        self.op.mul_vec(v).expect("operator is square")
    }

    /// The induced operation on coordinate vectors: `u P(v)`, `P(u) v`,
    /// `-P(uv)` or their sum.
    pub fn derived(&self, op: OpSymbol, u: &[Rational], v: &[Rational]) -> Vector {
        match op {
            OpSymbol::Prec => self.mul(u, &self.apply_op(v)),
            OpSymbol::Succ => self.mul(&self.apply_op(u), v),
            OpSymbol::Bullet => self
                .apply_op(&self.mul(u, v))
                .into_iter()
                .map(|c| -c)
                .collect(),
            OpSymbol::Star => {
                let mut acc = vec![Rational::zero(); self.dim()];
                for op in OpSymbol::BASIC {
                    for (a, b) in acc.iter_mut().zip(self.derived(op, u, v)) {
                        *a += &b;
                    }
                }
                acc
            }
        }
    }
}

/// Three bilinear operations `prec`, `succ`, `bullet` on one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSAlgebraFD {
    pub prec: StructureConstants,
    pub succ: StructureConstants,
    pub bullet: StructureConstants,
}

impl NSAlgebraFD {
    pub fn new(
        prec: StructureConstants,
        succ: StructureConstants,
        bullet: StructureConstants,
    ) -> Result<Self, EnvelopingError> {
        let dim = prec.dim();
        if succ.dim() != dim || bullet.dim() != dim {
            return Err(EnvelopingError::Shape {
                dim,
                what: "operations have different dimensions".to_string(),
            });
        }
        Ok(NSAlgebraFD { prec, succ, bullet })
    }

    pub fn zero(dim: usize) -> Self {
        let z = StructureConstants::zero(dim);
        NSAlgebraFD {
            prec: z.clone(),
            succ: z.clone(),
            bullet: z,
        }
    }

    pub fn dim(&self) -> usize {
        self.prec.dim()
    }

    pub fn table(&self, op: OpSymbol) -> &StructureConstants {
        match op {
            OpSymbol::Prec => &self.prec,
            OpSymbol::Succ => &self.succ,
            OpSymbol::Bullet => &self.bullet,
            OpSymbol::Star => panic!("star has no table of its own"),
        }
    }

    pub fn table_mut(&mut self, op: OpSymbol) -> &mut StructureConstants {
        match op {
            OpSymbol::Prec => &mut self.prec,
            OpSymbol::Succ => &mut self.succ,
            OpSymbol::Bullet => &mut self.bullet,
            OpSymbol::Star => panic!("star has no table of its own"),
        }
    }

    pub fn apply(&self, op: OpSymbol, u: &[Rational], v: &[Rational]) -> Vector {
        match op {
            OpSymbol::Star => {
                let mut acc = vec![Rational::zero(); self.dim()];
                for op in OpSymbol::BASIC {
                    for (a, b) in acc.iter_mut().zip(self.apply(op, u, v)) {
                        *a += &b;
                    }
                }
                acc
            }
            _ => self.table(op).apply(u, v),
        }
    }
}

/// The first failing instance found by a check. Basis indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Associativity {
        i: usize,
        j: usize,
        k: usize,
    },
    Nijenhuis {
        i: usize,
        j: usize,
    },
    Relation {
        relation: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    NotMorphism {
        op: OpSymbol,
        i: usize,
        j: usize,
    },
    GeneratorNotKilled {
        index: usize,
        generator: String,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Associativity { i, j, k } => write!(
                f,
                "associativity fails at (e{}, e{}, e{})",
                i + 1,
                j + 1,
                k + 1
            ),
            Counterexample::Nijenhuis { i, j } => {
                write!(f, "Nijenhuis identity fails at (e{}, e{})", i + 1, j + 1)
            }
            Counterexample::Relation { relation, i, j, k } => write!(
                f,
                "relation {} fails at (e{}, e{}, e{})",
                relation + 1,
                i + 1,
                j + 1,
                k + 1
            ),
            Counterexample::NotMorphism { op, i, j } => {
                write!(f, "map does not preserve {op} at (e{}, e{})", i + 1, j + 1)
            }
            Counterexample::GeneratorNotKilled { index, generator } => {
                write!(f, "generator {} ({generator}) does not vanish", index + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Pass,
    Fail(Counterexample),
}

impl Report {
    pub fn is_pass(&self) -> bool {
        matches!(self, Report::Pass)
    }

    fn from_result(r: Result<(), Counterexample>) -> Self {
        match r {
            Ok(()) => Report::Pass,
            Err(c) => Report::Fail(c),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Pass => f.write_str("pass"),
            Report::Fail(c) => write!(f, "fail: {c}"),
        }
    }
}

/// Associativity on all basis triples, then the Nijenhuis identity
/// `P(u)P(v) = P(P(u)v + uP(v) - P(uv))` on all basis pairs.
pub fn check_nijenhuis_fd(n: &NijenhuisAlgebraFD) -> Report {
    let dim = n.dim();
    let e = |i| basis_vector(dim, i);
    let run = || -> Result<(), Counterexample> {
        for i in 0..dim {
            for j in 0..dim {
                let ij = n.mul(&e(i), &e(j));
                for k in 0..dim {
                    let left = n.mul(&ij, &e(k));
                    let right = n.mul(&e(i), &n.mul(&e(j), &e(k)));
                    if left != right {
                        return Err(Counterexample::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let (pu, pv) = (n.apply_op(&e(i)), n.apply_op(&e(j)));
                let lhs = n.mul(&pu, &pv);
                let inner: Vector = n
                    .mul(&pu, &e(j))
                    .iter()
                    .zip(n.mul(&e(i), &pv))
                    .zip(n.apply_op(&n.mul(&e(i), &e(j))))
                    .map(|((a, b), c)| &(a + &b) - &c)
                    .collect();
                if lhs != n.apply_op(&inner) {
                    return Err(Counterexample::Nijenhuis { i, j });
                }
            }
        }
        Ok(())
    };
    Report::from_result(run())
}

/// Checks `rels` on all basis triples, with operations supplied by `apply`.
fn check_relations_with(
    dim: usize,
    rels: &[RelVector],
    apply: impl Fn(OpSymbol, &[Rational], &[Rational]) -> Vector,
) -> Report {
    let e = |i| basis_vector(dim, i);
    for i in 0..dim {
        for j in 0..dim {
            let xy: Vec<Vector> = OpSymbol::BASIC
                .iter()
                .map(|&o| apply(o, &e(i), &e(j)))
                .collect();
            for k in 0..dim {
                let yz: Vec<Vector> = OpSymbol::BASIC
                    .iter()
                    .map(|&o| apply(o, &e(j), &e(k)))
                    .collect();
                for (r, rel) in rels.iter().enumerate() {
                    let mut acc = vec![Rational::zero(); dim];
                    for a in 0..3 {
                        for b in 0..3 {
                            let cl = &rel.left[a][b];
                            if !cl.is_zero() {
                                let t = apply(OpSymbol::BASIC[b], &xy[a], &e(k));
                                for (s, v) in acc.iter_mut().zip(t) {
                                    *s += &(cl * &v);
                                }
                            }
                            let cr = &rel.right[a][b];
                            if !cr.is_zero() {
                                let t = apply(OpSymbol::BASIC[a], &e(i), &yz[b]);
                                for (s, v) in acc.iter_mut().zip(t) {
                                    *s -= &(cr * &v);
                                }
                            }
                        }
                    }
                    if !is_zero_vec(&acc) {
                        return Report::Fail(Counterexample::Relation {
                            relation: r,
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
    }
    Report::Pass
}

/// Checks arbitrary relation vectors on an NS-type algebra.
pub fn check_relations_fd(m: &NSAlgebraFD, rels: &[RelVector]) -> Report {
    check_relations_with(m.dim(), rels, |op, u, v| m.apply(op, u, v))
}

/// The four NS relations on all basis triples.
pub fn check_ns_axioms(m: &NSAlgebraFD) -> Report {
    check_relations_fd(m, &ns_relation_set())
}

/// The five N-dendriform relations on all basis triples.
pub fn check_ndendriform_fd(m: &NSAlgebraFD) -> Report {
    check_relations_fd(m, &ndendriform_relation_set())
}

/// `e_i prec e_j = e_i P(e_j)`, `e_i succ e_j = P(e_i) e_j`,
/// `e_i bullet e_j = -P(e_i e_j)`.
pub fn induced_ns(n: &NijenhuisAlgebraFD) -> Result<NSAlgebraFD, EnvelopingError> {
    if let Report::Fail(c) = check_nijenhuis_fd(n) {
        return Err(EnvelopingError::InvalidInput(c));
    }
    let dim = n.dim();
    let mut out = NSAlgebraFD::zero(dim);
    for op in OpSymbol::BASIC {
        for i in 0..dim {
            for j in 0..dim {
                let v = n.derived(op, &basis_vector(dim, i), &basis_vector(dim, j));
                for (k, c) in v.into_iter().enumerate() {
                    out.table_mut(op).set(i, j, k, c);
                }
            }
        }
    }
    Ok(out)
}

/// `e1, e2, ..., en`.
pub fn default_names(dim: usize) -> Vec<Symbol> {
    (1..=dim)
        .map(|i| Symbol::new(&format!("e{i}")).expect("valid name"))
        .collect()
}

fn vector_to_letters(v: &[Rational], names: &[Symbol]) -> LinComb {
    v.iter()
        .zip(names)
        .map(|(c, s)| (Word::letter(s.clone()), c.clone()))
        .collect()
}

/// Generators of the ideal defining the enveloping algebra, three per basis
/// pair `(e_i, e_j)` in row-major order:
///
/// ```text
/// e_i prec e_j   - e_i [e_j]
/// e_i succ e_j   - [e_i] e_j
/// e_i bullet e_j + [e_i e_j]
/// ```
///
/// where the first term of each is the NS product expanded as a combination
/// of single letters. The sign of the third matches `bullet = -P(xy)`.
pub fn enveloping_generators(
    m: &NSAlgebraFD,
    names: &[Symbol],
) -> Result<Vec<LinComb>, EnvelopingError> {
    let dim = m.dim();
    if names.len() != dim {
        return Err(EnvelopingError::ArityMismatch {
            expected: dim,
            found: names.len(),
        });
    }
    let letter = |i: usize| Word::letter(names[i].clone());
    let mut out = Vec::with_capacity(3 * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let bi = Word::bracket(letter(i));
            let bj = Word::bracket(letter(j));
            let bij = Word::bracket(Word::run(vec![names[i].clone(), names[j].clone()]));
            let terms = [
                (
                    OpSymbol::Prec,
                    letter(i).concat(&bj).expect("mixed junction"),
                    -1,
                ),
                (
                    OpSymbol::Succ,
                    bi.concat(&letter(j)).expect("mixed junction"),
                    -1,
                ),
                (OpSymbol::Bullet, bij, 1),
            ];
            for (op, word, sign) in terms {
                let mut g = vector_to_letters(m.table(op).basis_product(i, j), names);
                g.add_term(word, &Rational::from(sign));
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Evaluates `a` in `n` under the algebra map extending `f` on generators:
/// letters go through `f`, runs and factors multiply in `n`, and a bracket
/// applies the operator.
pub fn evaluate_hom(
    n: &NijenhuisAlgebraFD,
    f: &LinearMap,
    names: &[Symbol],
    a: &LinComb,
) -> Result<Vector, EnvelopingError> {
    if f.rows() != n.dim() || f.cols() != names.len() {
        return Err(EnvelopingError::Shape {
            dim: n.dim(),
            what: format!(
                "map is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                n.dim(),
                names.len()
            ),
        });
    }
    let images: HashMap<&Symbol, Vector> = names
        .iter()
        .enumerate()
        .map(|(c, s)| (s, f.column(c)))
        .collect();
    let mut out = vec![Rational::zero(); n.dim()];
    for (w, c) in a {
        let v = eval_word(n, &images, w)?;
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(c * &x);
        }
    }
    Ok(out)
}

fn eval_word(
    n: &NijenhuisAlgebraFD,
    images: &HashMap<&Symbol, Vector>,
    w: &Word,
) -> Result<Vector, EnvelopingError> {
    let mut acc: Option<Vector> = None;
    let push = |v: Vector, acc: &mut Option<Vector>| {
        *acc = Some(match acc.take() {
            None => v,
            Some(prev) => n.mul(&prev, &v),
        });
    };
    for factor in w.factors() {
        match factor {
            Factor::Letters(run) => {
                for s in run {
                    let v = images
                        .get(s)
                        .ok_or_else(|| EnvelopingError::UnknownGenerator(s.to_string()))?;
                    push(v.clone(), &mut acc);
                }
            }
            Factor::Bracket(inner) => {
                let v = n.apply_op(&eval_word(n, images, inner)?);
                push(v, &mut acc);
            }
        }
    }
    Ok(acc.expect("words are nonempty"))
}

/// Checks that `f: m -> n` preserves the three operations (with `n`
/// carrying its induced ones) and that the evaluation map built from `f`
/// kills every enveloping generator.
pub fn check_morphism_kills_generators(
    m: &NSAlgebraFD,
    n: &NijenhuisAlgebraFD,
    f: &LinearMap,
) -> Result<Report, EnvelopingError> {
    let (dm, dn) = (m.dim(), n.dim());
    if f.rows() != dn || f.cols() != dm {
        return Err(EnvelopingError::Shape {
            dim: dn,
            what: format!("map is {}x{}, expected {dn}x{dm}", f.rows(), f.cols()),
        });
    }
    let image = |v: &[Rational]| f.mul_vec(v).expect("shape checked");
    for op in OpSymbol::BASIC {
        for i in 0..dm {
            for j in 0..dm {
                let (ei, ej) = (basis_vector(dm, i), basis_vector(dm, j));
                let lhs = image(&m.apply(op, &ei, &ej));
                let rhs = n.derived(op, &image(&ei), &image(&ej));
                if lhs != rhs {
                    return Ok(Report::Fail(Counterexample::NotMorphism { op, i, j }));
                }
            }
        }
    }
    let names = default_names(dm);
    for (index, g) in enveloping_generators(m, &names)?.iter().enumerate() {
        if !is_zero_vec(&evaluate_hom(n, f, &names, g)?) {
            return Ok(Report::Fail(Counterexample::GeneratorNotKilled {
                index,
                generator: g.to_string(),
            }));
        }
    }
    Ok(Report::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotDetected,
}

/// The part of a Nijenhuis ideal reachable without leaving words of size at
/// most `bound`.
///
/// Starting from the generators that fit, the span is closed under the
/// operator and under left and right multiplication by basis words, keeping
/// only images whose words all fit. Rows are kept in echelon form with the
/// largest word (by size, then canonical order) as pivot, so the rows of
/// size at most `s` span exactly the elements of size at most `s`.
#[derive(Debug, Clone)]
pub struct IdealSpan {
    bound: usize,
    rows: Vec<LinComb>,
    pivots: HashMap<Word, usize>,
}

fn lead(a: &LinComb) -> Option<(&Word, &Rational)> {
    a.iter()
        .max_by(|(u, _), (v, _)| u.size().cmp(&v.size()).then(u.cmp(v)))
}

impl IdealSpan {
    pub fn new(generators: &[LinComb], alphabet: &[Symbol], bound: usize) -> Self {
        let mut span = IdealSpan {
            bound,
            rows: Vec::new(),
            pivots: HashMap::new(),
        };
        let mut queue = VecDeque::new();
        for g in generators {
            if g.max_size() <= bound {
                if let Some(r) = span.insert(g.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let words = enumerate_words(alphabet, bound.saturating_sub(1));
        while let Some(r) = queue.pop_front() {
            let row = span.rows[r].clone();
            let size = row.max_size();
            let mut images = Vec::new();
            if size < bound {
                images.push(operator_n(&row));
            }
            for u in words.iter().take_while(|u| u.size() + size <= bound) {
                let ul = LinComb::from_word(u.clone());
                images.push(product(&ul, &row));
                images.push(product(&row, &ul));
            }
            for img in images {
                if let Some(r) = span.insert(img) {
                    queue.push_back(r);
                }
            }
        }
        span
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Dimension of the truncated span.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut a: LinComb) -> LinComb {
        loop {
            let Some((w, c)) = lead(&a) else {
                return a;
            };
            let Some(&r) = self.pivots.get(w) else {
                return a;
            };
            let c = -c;
            a.add_scaled(&c, &self.rows[r]);
        }
    }

    fn insert(&mut self, a: LinComb) -> Option<usize> {
        let reduced = self.reduce(a);
        let (w, c) = lead(&reduced)?;
        let w = w.clone();
        let normalized = reduced.scale(&c.recip().expect("nonzero lead"));
        self.rows.push(normalized);
        self.pivots.insert(w, self.rows.len() - 1);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, candidate: &LinComb) -> Result<Membership, EnvelopingError> {
        let needed = candidate.max_size();
        if needed > self.bound {
            return Err(EnvelopingError::BoundTooSmall {
                bound: self.bound,
                needed,
            });
        }
        Ok(if self.reduce(candidate.clone()).is_zero() {
            Membership::Member
        } else {
            Membership::NotDetected
        })
    }
}

/// Letters occurring anywhere in the given combinations, sorted.
pub fn alphabet_of<'a>(items: impl IntoIterator<Item = &'a LinComb>) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = items
        .into_iter()
        .flat_map(|a| a.words().flat_map(Word::symbols).collect::<Vec<_>>())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `Member` if `candidate` lies in the truncated ideal generated by
/// `generators`. `NotDetected` is not a proof of non-membership.
pub fn truncated_ideal_membership(
    generators: &[LinComb],
    candidate: &LinComb,
    size_bound: usize,
) -> Result<Membership, EnvelopingError> {
    let needed = candidate.max_size();
    if needed > size_bound {
        return Err(EnvelopingError::BoundTooSmall {
            bound: size_bound,
            needed,
        });
    }
    let alphabet = alphabet_of(generators.iter().chain([candidate]));
    IdealSpan::new(generators, &alphabet, size_bound).contains(candidate)
}

/// Small fixtures over `k^2` with componentwise multiplication.
pub mod fixtures {
    use super::*;

    pub fn componentwise(dim: usize) -> StructureConstants {
        let mut c = StructureConstants::zero(dim);
        for i in 0..dim {
            c.set(i, i, i, Rational::one());
        }
        c
    }

    fn with_op(op: RationalMatrix) -> NijenhuisAlgebraFD {
        NijenhuisAlgebraFD::new(componentwise(2), op).expect("2x2 operator")
    }

    /// `P = diag(1, 0)`.
    pub fn projection() -> NijenhuisAlgebraFD {
        with_op(RationalMatrix::from_i64(&[&[1, 0], &[0, 0]]))
    }

    /// `P = lambda * I`.
    pub fn scalar(lambda: i64) -> NijenhuisAlgebraFD {
        with_op(RationalMatrix::from_i64(&[&[lambda, 0], &[0, lambda]]))
    }

    /// `P` swaps the two coordinates; not a Nijenhuis operator.
    pub fn swap() -> NijenhuisAlgebraFD {
        with_op(RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]))
    }
}

/// JSON form of a Nijenhuis algebra: `{"dim", "mult", "op"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NijenhuisFile {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<Rational>>>,
    pub op: Vec<Vec<Rational>>,
}

/// JSON form of an NS algebra: `{"dim", "prec", "succ", "bullet"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NSFile {
    pub dim: usize,
    pub prec: Vec<Vec<Vec<Rational>>>,
    pub succ: Vec<Vec<Vec<Rational>>>,
    pub bullet: Vec<Vec<Vec<Rational>>>,
}

/// JSON form of a map on generators: `matrix` has one column per name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub names: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
}

/// Either algebra file, told apart by its keys.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Nijenhuis(NijenhuisFile),
    NS(NSFile),
}

fn matrix_from_rows(
    dim_rows: usize,
    rows: Vec<Vec<Rational>>,
    cols: usize,
) -> Result<RationalMatrix, EnvelopingError> {
    if rows.len() != dim_rows {
        return Err(EnvelopingError::Shape {
            dim: dim_rows,
            what: format!("matrix has {} rows", rows.len()),
        });
    }
    RationalMatrix::from_rows(&rows, cols).map_err(|e| EnvelopingError::Shape {
        dim: dim_rows,
        what: e.to_string(),
    })
}

impl TryFrom<NijenhuisFile> for NijenhuisAlgebraFD {
    type Error = EnvelopingError;
    fn try_from(f: NijenhuisFile) -> Result<Self, Self::Error> {
        let mult = StructureConstants::from_nested(f.dim, f.mult)?;
        let op = matrix_from_rows(f.dim, f.op, f.dim)?;
        NijenhuisAlgebraFD::new(mult, op)
    }
}

impl From<&NijenhuisAlgebraFD> for NijenhuisFile {
    fn from(n: &NijenhuisAlgebraFD) -> Self {
        NijenhuisFile {
            dim: n.dim(),
            mult: n.mult.to_nested(),
            op: n.op.to_rows(),
        }
    }
}

impl TryFrom<NSFile> for NSAlgebraFD {
    type Error = EnvelopingError;
    fn try_from(f: NSFile) -> Result<Self, Self::Error> {
        NSAlgebraFD::new(
            StructureConstants::from_nested(f.dim, f.prec)?,
            StructureConstants::from_nested(f.dim, f.succ)?,
            StructureConstants::from_nested(f.dim, f.bullet)?,
        )
    }
}

impl From<&NSAlgebraFD> for NSFile {
    fn from(m: &NSAlgebraFD) -> Self {
        NSFile {
            dim: m.dim(),
            prec: m.prec.to_nested(),
            succ: m.succ.to_nested(),
            bullet: m.bullet.to_nested(),
        }
    }
}

impl MapFile {
    /// Names and matrix, checked against the target dimension.
    pub fn into_parts(
        self,
        target_dim: usize,
    ) -> Result<(Vec<Symbol>, LinearMap), EnvelopingError> {
        let names = self
            .names
            .iter()
            .map(|s| Symbol::new(s).map_err(|_| EnvelopingError::UnknownGenerator(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let m = matrix_from_rows(target_dim, self.matrix, names.len())?;
        Ok((names, m))
    }
}
