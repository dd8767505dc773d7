//! Binary quadratic nonsymmetric relations in the operations `prec`, `succ`
//! and `bullet`, and the solver for the relations that hold in every
//! Nijenhuis algebra.
//!
//! A relation is a pair of 3x3 coefficient grids. With `ops = [prec, succ,
//! bullet]` it reads
//!
//! ```text
//! sum left[i][j] (x ops[i] y) ops[j] z  =  sum right[i][j] x ops[i] (y ops[j] z)
//! ```
//!
//! Since the free Nijenhuis algebra on `x, y, z` is free, a relation holds in
//! all Nijenhuis algebras exactly when it holds there on the generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{derived_op, OpSymbol};
use crate::lincomb::LinComb;
use crate::matrix::{nullspace_basis, RationalMatrix, Vector};
use crate::rational::Rational;
use crate::word::{Symbol, Word};

const PREC: usize = 0;
const SUCC: usize = 1;
const BULLET: usize = 2;

/// Number of coordinates of a relation vector.
pub const COORDS: usize = 18;

type Grid = [[Rational; 3]; 3];

/// An element of `V⊗2 ⊕ V⊗2` with `V` spanned by the three basic operations.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RelVector {
    pub left: Grid,
    pub right: Grid,
}

/// Which side of a relation a coordinate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl RelVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Coordinate index: left block `3i + j`, right block `9 + 3i + j`.
    pub fn coord_index(side: Side, i: usize, j: usize) -> usize {
        let base = match side {
            Side::Left => 0,
            Side::Right => 9,
        };
        base + 3 * i + j
    }

    pub fn unit(index: usize) -> Self {
        let mut coords = vec![Rational::zero(); COORDS];
        coords[index] = Rational::one();
        Self::from_coords(&coords)
    }

    /// Panics unless `coords.len() == 18`.
    pub fn from_coords(coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), COORDS, "relation vectors have 18 coordinates");
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.left[i][j] = coords[3 * i + j].clone();
                r.right[i][j] = coords[9 + 3 * i + j].clone();
            }
        }
        r
    }

    pub fn coords(&self) -> Vector {
        self.left
            .iter()
            .chain(self.right.iter())
            .flat_map(|row| row.iter().cloned())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Rational::is_zero)
    }

    fn add_at(&mut self, side: Side, i: usize, j: usize) {
        let cell = match side {
            Side::Left => &mut self.left[i][j],
            Side::Right => &mut self.right[i][j],
        };
        *cell += &Rational::one();
    }

    /// Builds a relation from lists of (outer-pair) terms, each term being a
    /// pair of operations where `Star` expands into the three basic ones.
    fn build(left: &[(OpSymbol, OpSymbol)], right: &[(OpSymbol, OpSymbol)]) -> Self {
        let mut r = Self::zero();
        for (side, terms) in [(Side::Left, left), (Side::Right, right)] {
            for &(a, b) in terms {
                for i in expand(a) {
                    for &j in &expand(b) {
                        r.add_at(side, i, j);
                    }
                }
            }
        }
        r
    }
}

fn expand(op: OpSymbol) -> Vec<usize> {
    match op {
        OpSymbol::Prec => vec![PREC],
        OpSymbol::Succ => vec![SUCC],
        OpSymbol::Bullet => vec![BULLET],
        OpSymbol::Star => vec![PREC, SUCC, BULLET],
    }
}

impl fmt::Display for RelVector {
    /// Readable form, e.g. `(x prec y) bullet z = x bullet (y succ z)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |grid: &Grid, left: bool| -> String {
            let mut terms = Vec::new();
            for (i, row) in grid.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (a, b) = (OpSymbol::BASIC[i], OpSymbol::BASIC[j]);
                    let mono = if left {
                        format!("(x {a} y) {b} z")
                    } else {
                        format!("x {a} (y {b} z)")
                    };
                    terms.push(if c.is_one() {
                        mono
                    } else {
                        format!("{c}*{mono}")
                    });
                }
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(
            f,
            "{} = {}",
            side(&self.left, true),
            side(&self.right, false)
        )
    }
}

impl fmt::Debug for RelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelVector({self})")
    }
}

/// The four NS relations:
///
/// ```text
/// (x prec y) prec z = x prec (y star z)
/// (x succ y) prec z = x succ (y prec z)
/// (x star y) succ z = x succ (y succ z)
/// (x star y) bullet z + (x bullet y) prec z = x succ (y bullet z) + x bullet (y star z)
/// ```
pub fn ns_relation_set() -> Vec<RelVector> {
    use OpSymbol::*;
    vec![
        RelVector::build(&[(Prec, Prec)], &[(Prec, Star)]),
        RelVector::build(&[(Succ, Prec)], &[(Succ, Prec)]),
        RelVector::build(&[(Star, Succ)], &[(Succ, Succ)]),
        RelVector::build(
            &[(Star, Bullet), (Bullet, Prec)],
            &[(Succ, Bullet), (Bullet, Star)],
        ),
    ]
}

/// The five N-dendriform relations:
///
/// ```text
/// (x prec y) prec z = x prec (y star z)
/// (x succ y) prec z = x succ (y prec z)
/// (x star y) succ z = x succ (y succ z)
/// (x prec y) bullet z = x bullet (y succ z)
/// (x succ y) bullet z + (x bullet y) prec z + (x bullet y) bullet z
///     = x succ (y bullet z) + x bullet (y prec z) + x bullet (y bullet z)
/// ```
pub fn ndendriform_relation_set() -> Vec<RelVector> {
    use OpSymbol::*;
    let mixed = [(Succ, Bullet), (Bullet, Prec), (Bullet, Bullet)];
    vec![
        RelVector::build(&[(Prec, Prec)], &[(Prec, Star)]),
        RelVector::build(&[(Succ, Prec)], &[(Succ, Prec)]),
        RelVector::build(&[(Star, Succ)], &[(Succ, Succ)]),
        RelVector::build(&[(Prec, Bullet)], &[(Bullet, Succ)]),
        RelVector::build(&mixed, &mixed),
    ]
}

/// `left(x, y, z) - right(x, y, z)` computed with the derived operations of
/// the free Nijenhuis algebra. Zero means the relation holds on this triple.
pub fn evaluate_relation(rel: &RelVector, x: &LinComb, y: &LinComb, z: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    let xy: Vec<Option<LinComb>> = (0..3)
        .map(|i| {
            rel.left[i]
                .iter()
                .any(|c| !c.is_zero())
                .then(|| derived_op(OpSymbol::BASIC[i], x, y))
        })
        .collect();
    let mut yz: Vec<Option<LinComb>> = vec![None, None, None];
    for j in 0..3 {
        if (0..3).any(|i| !rel.right[i][j].is_zero()) {
            yz[j] = Some(derived_op(OpSymbol::BASIC[j], y, z));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let c = &rel.left[i][j];
            if !c.is_zero() {
                let inner = xy[i].as_ref().expect("computed for nonzero rows");
                out.add_scaled(c, &derived_op(OpSymbol::BASIC[j], inner, z));
            }
            let c = &rel.right[i][j];
            if !c.is_zero() {
                let inner = yz[j].as_ref().expect("computed for nonzero columns");
                out.add_scaled(&-c, &derived_op(OpSymbol::BASIC[i], x, inner));
            }
        }
    }
    out
}

/// The free generators `x, y, z` as one-letter combinations.
pub fn free_generators() -> [LinComb; 3] {
    ["x", "y", "z"].map(|s| LinComb::from_word(Word::letter(Symbol::new(s).expect("valid name"))))
}

/// True iff the relation holds in every Nijenhuis algebra.
pub fn check_relation_universal(rel: &RelVector) -> bool {
    let [x, y, z] = free_generators();
    evaluate_relation(rel, &x, &y, &z).is_zero()
}

/// The coefficient system: rows are the basis words that occur when the 18
/// unit relations are evaluated on `x, y, z`, columns are the coordinates.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    pub monomials: Vec<Word>,
    pub matrix: RationalMatrix,
}

pub fn relation_system() -> RelationSystem {
    let [x, y, z] = free_generators();
    let columns: Vec<LinComb> = (0..COORDS)
        .map(|k| evaluate_relation(&RelVector::unit(k), &x, &y, &z))
        .collect();
    let mut monomials: Vec<Word> = columns.iter().flat_map(|c| c.words().cloned()).collect();
    monomials.sort();
    monomials.dedup();
    let mut matrix = RationalMatrix::zeros(monomials.len(), COORDS);
    for (col, lc) in columns.iter().enumerate() {
        for (w, c) in lc {
            let row = monomials.binary_search(w).expect("collected above");
            matrix.set(row, col, c.clone());
        }
    }
    RelationSystem { monomials, matrix }
}

pub fn relation_matrix() -> RationalMatrix {
    relation_system().matrix
}

/// A basis of all relations satisfied by every Nijenhuis algebra.
pub fn solve_relation_space() -> Vec<RelVector> {
    nullspace_basis(&relation_matrix())
        .iter()
        .map(|v| RelVector::from_coords(v))
        .collect()
}
