//! Finite-dimensional graded Lie algebras given by structure constants.

mod json;
mod real;
mod symbol;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, LinearError, Scalar, Vector};

pub use json::{AlgebraDoc, MatrixDoc, ScalarDoc};
pub use real::{complexify, realify, RealForm};
pub use symbol::{build_symbol_algebra, QuotientSpec, SymbolAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("[e{i}, e{j}] has a component on e{k} of the wrong degree")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("invalid complex structure: {0}")]
    InvalidJ(String),
    #[error("algebra carries no complex structure J")]
    MissingJ,
    #[error("bad quotient: {0}")]
    BadQuotient(String),
    #[error("not self-conjugate: {0}")]
    NotSelfConjugate(String),
    #[error("structural check failed: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i32) -> Self {
        Self { label: label.into(), degree }
    }
}

/// Provenance carried along with an algebra into its JSON form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
}

/// A linear map `J` on the degree −1 subspace with `J∘J = −id`.
///
/// `matrix[(r, c)]` is the coefficient of `e_{indices[r]}` in `J(e_{indices[c]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructure {
    indices: Vec<usize>,
    matrix: ExactMatrix,
}

impl ComplexStructure {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// `J(e_{indices[c]})` as a full-length vector.
    pub fn image(&self, c: usize, dim: usize) -> Vector {
        let mut v = vec![Scalar::zero(); dim];
        for (r, &idx) in self.indices.iter().enumerate() {
            v[idx] = self.matrix[(r, c)].clone();
        }
        v
    }
}

/// Violations found by [`GradedLieAlgebra::check_jacobi`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Graded Lie algebra over ℚ(i) stored as a dense bracket table.
///
/// `brackets[i][j]` holds the coordinates of `[e_i, e_j]`. The table is
/// antisymmetric and respects the grading; Jacobi is checked separately by
/// [`check_jacobi`](Self::check_jacobi) so corrupted tables can still be
/// represented and diagnosed.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    basis: Vec<BasisElement>,
    brackets: Vec<Vec<Vector>>,
    conjugation: Option<ExactMatrix>,
    complex_structure: Option<ComplexStructure>,
    pub meta: AlgebraMeta,
}

impl GradedLieAlgebra {
    /// Build from the brackets `[e_i, e_j]` for the listed pairs; the table
    /// is completed by antisymmetry and every other bracket is zero.
    pub fn from_brackets(
        basis: Vec<BasisElement>,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, v) in entries {
            if i >= n || j >= n || v.len() != n {
                return Err(AlgebraError::Malformed(format!("bracket entry ({i}, {j}) out of range")));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(AlgebraError::NotAntisymmetric(i, j));
                }
                continue;
            }
            let neg: Vector = v.iter().map(|c| -c).collect();
            if (seen[i][j] && brackets[i][j] != v) || (seen[j][i] && brackets[j][i] != neg) {
                return Err(AlgebraError::NotAntisymmetric(i, j));
            }
            brackets[i][j] = v;
            brackets[j][i] = neg;
            seen[i][j] = true;
            seen[j][i] = true;
        }
        Self::from_table(basis, brackets)
    }

    /// Build from a full `n × n` table of bracket vectors.
    pub fn from_table(basis: Vec<BasisElement>, brackets: Vec<Vec<Vector>>) -> Result<Self, AlgebraError> {
        let n = basis.len();
        if brackets.len() != n || brackets.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::Malformed(format!("bracket table must be {n}×{n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&brackets[i][j], &brackets[j][i]);
                if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(AlgebraError::NotAntisymmetric(i, j));
                }
                let target = basis[i].degree + basis[j].degree;
                if let Some(k) = (0..n).find(|&k| !a[k].is_zero() && basis[k].degree != target) {
                    return Err(AlgebraError::GradingViolation { i, j, k });
                }
            }
        }
        Ok(Self { basis, brackets, conjugation: None, complex_structure: None, meta: AlgebraMeta::default() })
    }

    /// Attach `J` on the degree −1 subspace, checking `J∘J = −id`.
    pub fn with_complex_structure(mut self, matrix: ExactMatrix) -> Result<Self, AlgebraError> {
        let indices = self.indices_of_degree(-1);
        let d = indices.len();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(AlgebraError::InvalidJ(format!("J must be {d}×{d}")));
        }
        let sq = matrix.mul(&matrix)?;
        let mut minus_id = ExactMatrix::identity(d);
        for r in 0..d {
            minus_id[(r, r)] = -Scalar::one();
        }
        if sq != minus_id {
            return Err(AlgebraError::InvalidJ("J∘J ≠ −id".into()));
        }
        self.complex_structure = Some(ComplexStructure { indices, matrix });
        Ok(self)
    }

    /// Attach an antilinear involution: column `j` holds the coordinates of
    /// `σ(e_j)`, and `σ(Σ a_j e_j) = Σ conj(a_j) σ(e_j)`.
    pub fn with_conjugation(mut self, matrix: ExactMatrix) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(AlgebraError::NotSelfConjugate(format!("conjugation must be {n}×{n}")));
        }
        if matrix.mul(&matrix.conj())? != ExactMatrix::identity(n) {
            return Err(AlgebraError::NotSelfConjugate("conjugation is not an involution".into()));
        }
        self.conjugation = Some(matrix);
        Ok(self)
    }

    pub fn with_meta(mut self, meta: AlgebraMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn relabel(&mut self, i: usize, label: impl Into<String>) {
        self.basis[i].label = label.into();
    }

    pub fn without_conjugation(mut self) -> Self {
        self.conjugation = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn conjugation(&self) -> Option<&ExactMatrix> {
        self.conjugation.as_ref()
    }

    pub fn complex_structure(&self) -> Option<&ComplexStructure> {
        self.complex_structure.as_ref()
    }

    pub fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree < 0).collect()
    }

    /// Distinct degrees, sorted ascending, with their dimensions.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i][j]
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let c = ai * bj;
                for (k, v) in self.brackets[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        out[k] += &(&c * v);
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad(&self, i: usize) -> ExactMatrix {
        let columns: Vec<Vector> = (0..self.dim()).map(|j| self.brackets[i][j].clone()).collect();
        ExactMatrix::from_columns(self.dim(), &columns).expect("square table")
    }

    /// Exhaustive Jacobi check over all basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket_vec(&self.unit(i), &self.brackets[j][k]);
                    let t2 = self.bracket_vec(&self.unit(j), &self.brackets[k][i]);
                    let t3 = self.bracket_vec(&self.unit(k), &self.brackets[i][j]);
                    if (0..n).any(|m| !(&(&t1[m] + &t2[m]) + &t3[m]).is_zero()) {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Whether iterated brackets of the degree −1 part span every negative
    /// degree.
    pub fn is_fundamental(&self) -> bool {
        let n = self.dim();
        let gens = self.indices_of_degree(-1);
        let mut layer: Vec<Vector> = gens.iter().map(|&g| self.unit(g)).collect();
        let min_deg = self.basis.iter().map(|b| b.degree).filter(|&d| d < 0).min().unwrap_or(-1);
        for d in (min_deg..=-1).rev() {
            let expected = self.indices_of_degree(d).len();
            if crate::exact::rank_of(&layer, n) != expected {
                return false;
            }
            layer = layer.iter().flat_map(|v| gens.iter().map(move |&g| self.bracket_vec(&self.unit(g), v))).collect();
        }
        true
    }

    /// No nonzero `x` of degree −1 commutes with the whole degree −1 part.
    pub fn is_nondegenerate(&self) -> bool {
        let gens = self.indices_of_degree(-1);
        let columns: Vec<Vector> = gens
            .iter()
            .map(|&x| gens.iter().flat_map(|&y| self.brackets[x][y].clone()).collect())
            .collect();
        crate::exact::rank_of(&columns, gens.len() * self.dim()) == gens.len()
    }

    /// `[x, y] = [Jx, Jy]` on the degree −1 part.
    pub fn is_pseudocomplex(&self) -> Result<bool, AlgebraError> {
        let j = self.complex_structure.as_ref().ok_or(AlgebraError::MissingJ)?;
        let n = self.dim();
        let idx = j.indices();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let lhs = &self.brackets[idx[a]][idx[b]];
                let rhs = self.bracket_vec(&j.image(a, n), &j.image(b, n));
                if *lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No nonzero element of nonnegative degree annihilates the whole
    /// negative part.
    pub fn is_transitive(&self) -> bool {
        let neg = self.negative_indices();
        let n = self.dim();
        self.dims_by_degree().keys().filter(|&&d| d >= 0).all(|&d| {
            let comp = self.indices_of_degree(d);
            let columns: Vec<Vector> =
                comp.iter().map(|&x| neg.iter().flat_map(|&m| self.brackets[x][m].clone()).collect()).collect();
            crate::exact::rank_of(&columns, neg.len() * n) == comp.len()
        })
    }

    /// `B(a, b) = tr(ad a ∘ ad b)` on basis elements.
    pub fn killing_form(&self) -> ExactMatrix {
        let ads: Vec<ExactMatrix> = (0..self.dim()).map(|i| self.ad(i)).collect();
        let mut k = ExactMatrix::zeros(self.dim(), self.dim());
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let prod = ads[a].mul(&ads[b]).expect("square");
                let mut tr = Scalar::zero();
                for i in 0..self.dim() {
                    tr += &prod[(i, i)];
                }
                k[(a, b)] = tr.clone();
                k[(b, a)] = tr;
            }
        }
        k
    }

    /// Same algebra with a single bracket overwritten; used to build
    /// negative controls. Antisymmetry is preserved, Jacobi usually is not.
    pub fn with_bracket_overridden(&self, i: usize, j: usize, value: Vector) -> Result<Self, AlgebraError> {
        let mut table = self.brackets.clone();
        table[j][i] = value.iter().map(|c| -c).collect();
        table[i][j] = value;
        let mut out = Self::from_table(self.basis.clone(), table)?;
        out.conjugation = self.conjugation.clone();
        out.complex_structure = self.complex_structure.clone();
        out.meta = self.meta.clone();
        Ok(out)
    }

    /// Human-readable bracket table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let dims: Vec<String> =
            self.dims_by_degree().iter().rev().map(|(d, n)| format!("{d}:{n}")).collect();
        s += &format!("dimension {} (degree:dim {})\n", self.dim(), dims.join(" "));
        s += "basis:\n";
        for (i, b) in self.basis.iter().enumerate() {
            s += &format!("  e{i:<3} deg {:>3}  {}\n", b.degree, b.label);
        }
        s += "brackets:\n";
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = &self.brackets[i][j];
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                s += &format!("  [{}, {}] = {}\n", self.label(i), self.label(j), self.format_vector(v));
            }
        }
        if let Some(j) = &self.complex_structure {
            s += "J:\n";
            for (c, &idx) in j.indices().iter().enumerate() {
                s += &format!("  J({}) = {}\n", self.label(idx), self.format_vector(&j.image(c, self.dim())));
            }
        }
        s
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if c.is_one() {
                    self.label(k).to_string()
                } else if (-c).is_one() {
                    format!("-{}", self.label(k))
                } else if c.is_real() || c.re().is_zero() {
                    format!("{c} {}", self.label(k))
                } else {
                    format!("({c}) {}", self.label(k))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

impl fmt::Debug for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Check that `map` (column `c` = image of source basis element `c`) is a
/// bracket-preserving linear map. Returns the first failing basis pair.
pub fn first_bracket_mismatch(
    source: &GradedLieAlgebra,
    target: &GradedLieAlgebra,
    map: &ExactMatrix,
) -> Result<Option<(usize, usize)>, AlgebraError> {
    if map.rows() != target.dim() || map.cols() != source.dim() {
        return Err(AlgebraError::Malformed("map has the wrong shape".into()));
    }
    let images: Vec<Vector> = map.columns();
    for a in 0..source.dim() {
        for b in a + 1..source.dim() {
            let lhs = map.mul_vec(source.bracket(a, b))?;
            let rhs = target.bracket_vec(&images[a], &images[b]);
            if lhs != rhs {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}
