use num_traits::{One, Zero};

use super::{AlgebraError, BasisElement, GradedLieAlgebra};
use crate::exact::{rank_of, ExactMatrix, Scalar, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RealKind {
    /// `σe = e`, keep `e`.
    Fixed,
    /// `σe = −e`, keep `i·e`.
    AntiFixed,
    /// `e + σe`.
    Re,
    /// `i·(e − σe)`.
    Im,
}

impl RealKind {
    pub(crate) fn label(self, base: &str) -> String {
        match self {
            RealKind::Fixed => base.to_string(),
            RealKind::AntiFixed => format!("i{base}"),
            RealKind::Re => format!("re{base}"),
            RealKind::Im => format!("im{base}"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RealCandidate {
    pub vector: Vector,
    pub kind: RealKind,
    pub source: usize,
}

/// σ-fixed vectors spanning the coordinate subspace on `indices`, chosen
/// greedily in index order. Column `j` of `sigma` is `σ(e_j)`.
pub(crate) fn greedy_real_basis(indices: &[usize], sigma: &ExactMatrix) -> Result<Vec<RealCandidate>, AlgebraError> {
    let n = sigma.rows();
    let mut chosen: Vec<RealCandidate> = Vec::new();
    let mut vectors: Vec<Vector> = Vec::new();
    for &j in indices {
        if chosen.len() == indices.len() {
            break;
        }
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        let s = sigma.column(j);
        if (0..n).any(|r| !s[r].is_zero() && !indices.contains(&r)) {
            return Err(AlgebraError::NotSelfConjugate(format!("σ(e{j}) leaves its degree")));
        }
        let candidates = if s == e {
            vec![(e, RealKind::Fixed)]
        } else if s.iter().zip(&e).all(|(a, b)| (a + b).is_zero()) {
            vec![(e.iter().map(Scalar::mul_i).collect(), RealKind::AntiFixed)]
        } else {
            let re: Vector = e.iter().zip(&s).map(|(a, b)| a + b).collect();
            let im: Vector = e.iter().zip(&s).map(|(a, b)| (a - b).mul_i()).collect();
            vec![(re, RealKind::Re), (im, RealKind::Im)]
        };
        for (v, kind) in candidates {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            vectors.push(v.clone());
            if rank_of(&vectors, n) == vectors.len() {
                chosen.push(RealCandidate { vector: v, kind, source: j });
            } else {
                vectors.pop();
            }
        }
    }
    if chosen.len() != indices.len() {
        return Err(AlgebraError::NotSelfConjugate("σ-fixed vectors do not span a degree".into()));
    }
    Ok(chosen)
}

/// Real form of a self-conjugate algebra together with the change of basis.
#[derive(Debug, Clone)]
pub struct RealForm {
    pub algebra: GradedLieAlgebra,
    /// Column `c` holds the coordinates of the `c`-th real basis vector in
    /// the original basis.
    pub basis_change: ExactMatrix,
}

fn apply_sigma(sigma: &ExactMatrix, v: &[Scalar]) -> Vector {
    let conj: Vector = v.iter().map(Scalar::conj).collect();
    sigma.mul_vec(&conj).expect("square")
}

/// Fixed-point algebra of the conjugation, with real structure constants.
///
/// Each degree gets a real basis built greedily from `e + σe` and
/// `i(e − σe)` (or `e`, `i·e` for self-conjugate and anti-self-conjugate
/// elements). Fails with [`AlgebraError::NotSelfConjugate`] if there is no
/// conjugation, it does not preserve brackets, or any resulting constant is
/// not real.
pub fn realify(alg: &GradedLieAlgebra) -> Result<RealForm, AlgebraError> {
    let sigma = alg
        .conjugation()
        .ok_or_else(|| AlgebraError::NotSelfConjugate("algebra has no conjugation".into()))?;
    let n = alg.dim();
    for i in 0..n {
        let si = sigma.column(i);
        for j in i + 1..n {
            let lhs = apply_sigma(sigma, alg.bracket(i, j));
            let rhs = alg.bracket_vec(&si, &sigma.column(j));
            if lhs != rhs {
                return Err(AlgebraError::NotSelfConjugate(format!(
                    "conjugation does not preserve [{}, {}]",
                    alg.label(i),
                    alg.label(j)
                )));
            }
        }
    }
    let mut degrees: Vec<i32> = Vec::new();
    for b in alg.basis() {
        if !degrees.contains(&b.degree) {
            degrees.push(b.degree);
        }
    }
    let mut columns = Vec::with_capacity(n);
    let mut basis = Vec::with_capacity(n);
    for d in degrees {
        for c in greedy_real_basis(&alg.indices_of_degree(d), sigma)? {
            basis.push(BasisElement::new(c.kind.label(alg.label(c.source)), d));
            columns.push(c.vector);
        }
    }
    let b = ExactMatrix::from_columns(n, &columns)?;
    let b_inv = b.inverse()?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = b_inv.mul_vec(&alg.bracket_vec(&columns[i], &columns[j]))?;
            if v.iter().any(|c| !c.is_real()) {
                return Err(AlgebraError::NotSelfConjugate(format!(
                    "bracket [{}, {}] is not real",
                    basis[i].label, basis[j].label
                )));
            }
            if v.iter().any(|c| !c.is_zero()) {
                entries.push((i, j, v));
            }
        }
    }
    let mut real = GradedLieAlgebra::from_brackets(basis, entries)?.with_meta(alg.meta.clone());
    if let Some(j) = alg.complex_structure() {
        let mut full = ExactMatrix::zeros(n, n);
        for (c, &src) in j.indices().iter().enumerate() {
            for (r, &dst) in j.indices().iter().enumerate() {
                full[(dst, src)] = j.matrix()[(r, c)].clone();
            }
        }
        let conj_j = b_inv.mul(&full)?.mul(&b)?;
        let idx = real.indices_of_degree(-1);
        let mut m = ExactMatrix::zeros(idx.len(), idx.len());
        for (r, &a) in idx.iter().enumerate() {
            for (c, &bb) in idx.iter().enumerate() {
                let v = conj_j[(a, bb)].clone();
                if !v.is_real() {
                    return Err(AlgebraError::NotSelfConjugate("J does not commute with conjugation".into()));
                }
                m[(r, c)] = v;
            }
        }
        real = real.with_complex_structure(m)?;
    }
    Ok(RealForm { algebra: real, basis_change: b })
}

/// Complexification of a real algebra: same constants, conjugation = identity.
pub fn complexify(alg: &GradedLieAlgebra) -> Result<GradedLieAlgebra, AlgebraError> {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            if alg.bracket(i, j).iter().any(|c| !c.is_real()) {
                return Err(AlgebraError::NotSelfConjugate("structure constants are not real".into()));
            }
        }
    }
    alg.clone().with_conjugation(ExactMatrix::identity(n))
}
