//! Dense matrices over ℚ(i) and the exact elimination routines every
//! derivation solve is built on.

use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Column vector over ℚ(i).
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Build from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self, LinearError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinearError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    /// Build from column vectors of a common length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinearError> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinearError::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<Self, LinearError> {
        if self.cols != rhs.rows {
            return Err(LinearError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinearError> {
        if self.cols != v.len() {
            return Err(LinearError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form. Pivots are chosen deterministically: columns
    /// left to right, first nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> Echelon {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..a.cols {
            if pr == a.rows {
                break;
            }
            let Some(found) = (pr..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(found, pr);
            let inv = a[(pr, col)].inv().expect("nonzero pivot");
            for c in col..a.cols {
                if !a[(pr, c)].is_zero() {
                    a[(pr, c)] *= &inv;
                }
            }
            let pivot_row: Vector = a.row(pr)[col..].to_vec();
            for r in 0..a.rows {
                if r == pr || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for (off, p) in pivot_row.iter().enumerate() {
                    if !p.is_zero() {
                        let t = &factor * p;
                        a[(r, col + off)] -= &t;
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self, LinearError> {
        if self.rows != self.cols {
            return Err(LinearError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(LinearError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = e.reduced[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the null space of `m`.
///
/// One vector per free column, in increasing column order; the free
/// variable is set to 1 and the pivot variables are read off the reduced
/// echelon form. The result is empty when `m` is injective.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vector> {
    let Echelon { reduced, pivots } = m.rref();
    let mut is_pivot = vec![None; m.cols()];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..m.cols())
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols()];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                let e = &reduced[(row, free)];
                if !e.is_zero() {
                    v[pc] = -e;
                }
            }
            v
        })
        .collect()
}

/// A particular solution of `m·x = b` with every free variable set to zero.
///
/// The product `m·x` is checked against `b` before returning.
pub fn solve_linear(m: &ExactMatrix, b: &[Scalar]) -> Result<Vector, LinearError> {
    if b.len() != m.rows() {
        return Err(LinearError::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let mut aug = ExactMatrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols())] = b[r].clone();
    }
    let Echelon { reduced, pivots } = aug.rref();
    if pivots.last() == Some(&m.cols()) {
        return Err(LinearError::Inconsistent);
    }
    let mut x = vec![Scalar::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = reduced[(row, m.cols())].clone();
    }
    let check = m.mul_vec(&x)?;
    if check.as_slice() != b {
        return Err(LinearError::Inconsistent);
    }
    Ok(x)
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vector], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_columns(len, vectors).map(|m| m.rank()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use proptest::prelude::*;

    fn s(re: i64, im: i64) -> Scalar {
        Scalar::from_ints(re, im)
    }

    #[test]
    fn kernel_of_zero_map() {
        let m = ExactMatrix::from_i64_rows(&[&[0]]);
        assert_eq!(kernel_basis(&m), vec![vec![s(1, 0)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_over_gaussian_rationals() {
        // [[1, i], [-i, 1]] has rank one; its kernel is spanned by (-i, 1).
        let m = ExactMatrix::from_rows(vec![vec![s(1, 0), s(0, 1)], vec![s(0, -1), s(1, 0)]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![s(0, -1), s(1, 0)]]);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
        // (i, 1) is not annihilated: a plain multiply-back rules it out.
        assert!(!m.mul_vec(&[s(0, 1), s(1, 0)]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_identity() {
        let b = vec![s(1, 2), s(-3, 0), Scalar::from(rat(1, 3))];
        assert_eq!(solve_linear(&ExactMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn solve_underdetermined_sets_free_to_zero() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 1]]);
        assert_eq!(solve_linear(&m, &[s(2, 0)]).unwrap(), vec![s(2, 0), s(0, 0)]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = ExactMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(solve_linear(&m, &[s(1, 0), s(2, 0)]), Err(LinearError::Inconsistent));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_rows(vec![vec![s(1, 1), s(2, 0)], vec![s(0, 0), s(0, 3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert_eq!(ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse(), Err(LinearError::Singular));
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-2i64..3, -1i64..2), r * c).prop_map(move |entries| {
                let rows = entries.chunks(c).map(|ch| ch.iter().map(|&(a, b)| s(a, b)).collect()).collect();
                ExactMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(rank_of(&k, m.cols()), k.len());
        }

        #[test]
        fn solve_consistent_systems(m in arb_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x0: Vector = (0..m.cols()).map(|i| s(seed[i], 0)).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = solve_linear(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }
}
