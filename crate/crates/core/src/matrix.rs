//! Dense matrices over the rationals: row reduction, nullspaces, and span tests.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("vector lengths differ: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry count {len} does not match a {rows}x{cols} shape")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
}

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<Rational>,
    ) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self, LinAlgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&n| Rational::from(n)).collect())
            .collect();
        Self::from_rows(&vecs, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Reduced row echelon form and the (strictly increasing) pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).recip().expect("nonzero pivot");
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let sub = &factor * a.get(row, c);
                if !sub.is_zero() {
                    let v = a.get(r, c) - &sub;
                    a.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Nullspace basis: one vector per free column, in increasing column order,
/// with that free variable set to 1 and the other free variables 0.
pub fn nullspace_basis(m: &RationalMatrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); m.cols];
            v[fc] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, fc);
            }
            v
        })
        .collect()
}

fn check_lengths<'a>(
    len: usize,
    vs: impl IntoIterator<Item = &'a Vector>,
) -> Result<(), LinAlgError> {
    for v in vs {
        if v.len() != len {
            return Err(LinAlgError::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    Ok(())
}

fn span_rank(vs: &[Vector], len: usize) -> usize {
    RationalMatrix::from_rows(vs, len)
        .expect("lengths checked")
        .rank()
}

/// Dimension of the span of `vs` (all of length `len`).
pub fn span_dimension(vs: &[Vector], len: usize) -> Result<usize, LinAlgError> {
    check_lengths(len, vs)?;
    Ok(span_rank(vs, len))
}

/// `span(a) == span(b)`.
pub fn subspace_equal(a: &[Vector], b: &[Vector]) -> Result<bool, LinAlgError> {
    let len = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(true),
    };
    check_lengths(len, a.iter().chain(b))?;
    let ra = span_rank(a, len);
    let rb = span_rank(b, len);
    if ra != rb {
        return Ok(false);
    }
    let both: Vec<Vector> = a.iter().chain(b).cloned().collect();
    Ok(span_rank(&both, len) == ra)
}

/// `v ∈ span(a)`.
pub fn in_span(v: &[Rational], a: &[Vector]) -> Result<bool, LinAlgError> {
    check_lengths(v.len(), a)?;
    if v.iter().all(Rational::is_zero) {
        return Ok(true);
    }
    let base = span_rank(a, v.len());
    let mut with = a.to_vec();
    with.push(v.to_vec());
    Ok(span_rank(&with, v.len()) == base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&n| Rational::from(n)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1]));

        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            rref(&m),
            (RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]), vec![0])
        );

        let m = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(rref(&m), (RationalMatrix::identity(2), vec![0, 1]));
    }

    #[test]
    fn rref_fractions() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[4, 3, 1]]);
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(
            r.row(0),
            &[Rational::one(), Rational::zero(), Rational::new(-1, 2)]
        );
        assert_eq!(r.row(1), &v(&[0, 1, 1])[..]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&RationalMatrix::identity(3)).is_empty());
        assert_eq!(nullspace_basis(&RationalMatrix::zeros(1, 3)).len(), 3);
        let ns = nullspace_basis(&RationalMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(ns, vec![v(&[-1, 1])]);
    }

    #[test]
    fn subspace_equal_examples() {
        assert!(subspace_equal(&[v(&[1, 0])], &[v(&[2, 0])]).unwrap());
        assert!(!subspace_equal(&[v(&[1, 0])], &[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(subspace_equal(&[], &[]).unwrap());
        assert!(subspace_equal(&[v(&[0, 0])], &[]).unwrap());
        assert_eq!(
            subspace_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])]),
            Err(LinAlgError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn in_span_examples() {
        assert!(in_span(&v(&[0, 0]), &[]).unwrap());
        assert!(in_span(&v(&[1, 1]), &[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(!in_span(&v(&[1, 0]), &[v(&[0, 1])]).unwrap());
        assert!(in_span(&v(&[1, 0]), &[v(&[0, 1, 0])]).is_err());
    }
}
