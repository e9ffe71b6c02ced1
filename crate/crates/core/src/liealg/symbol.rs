use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::real::{greedy_real_basis, realify, RealForm};
use super::{AlgebraError, AlgebraMeta, BasisElement, GradedLieAlgebra, MatrixDoc};
use crate::exact::{kernel_basis, solve_linear, ExactMatrix, Scalar, Vector};
use crate::freelie::{cumulative_dim, min_length_for_codim, parse_word, word_to_string, witt_dim, HallBasis, Word};

/// How the top layer of the free nilpotent algebra is cut down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientSpec {
    /// Identity when nothing has to be cut; otherwise keep the first real
    /// combinations of top words in Hall order (see [`build_symbol_algebra`]).
    Default,
    /// Keep these top-length Lyndon words and kill the rest.
    KeepWords(Vec<Word>),
    /// Explicit `q × w` projection onto the surviving top elements.
    Matrix(ExactMatrix),
    /// Projection read off a model's frame.
    Frame { model: String, matrix: ExactMatrix },
}

impl QuotientSpec {
    pub fn label(&self) -> String {
        match self {
            QuotientSpec::Default => "default".into(),
            QuotientSpec::KeepWords(ws) => {
                format!("keep:{}", ws.iter().map(|w| word_to_string(w)).collect::<Vec<_>>().join(","))
            }
            QuotientSpec::Matrix(_) => "matrix".into(),
            QuotientSpec::Frame { model, .. } => format!("frame:{model}"),
        }
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for QuotientSpec {
    type Err = AlgebraError;

    /// `default`, `keep:11212,12122`, or `matrix:[["1","0",...],...]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "default" {
            return Ok(QuotientSpec::Default);
        }
        if let Some(rest) = s.strip_prefix("keep:") {
            let words = rest
                .split(',')
                .map(|w| parse_word(w.trim()).map_err(|e| AlgebraError::BadQuotient(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(QuotientSpec::KeepWords(words));
        }
        if let Some(rest) = s.strip_prefix("matrix:") {
            let doc: MatrixDoc =
                serde_json::from_str(rest).map_err(|e| AlgebraError::BadQuotient(format!("matrix json: {e}")))?;
            return Ok(QuotientSpec::Matrix(doc.to_matrix()?));
        }
        Err(AlgebraError::BadQuotient(format!("unrecognised quotient `{s}`")))
    }
}

/// Symbol algebra of codimension `k`: the free nilpotent algebra on two
/// conjugate generators, truncated at the shortest length reaching
/// dimension `2 + k`, with its top layer cut down to the right size.
#[derive(Debug, Clone)]
pub struct SymbolAlgebra {
    k: usize,
    rho: usize,
    algebra: GradedLieAlgebra,
    hall: HallBasis,
    projection: ExactMatrix,
    quotient: QuotientSpec,
    lower_dim: usize,
    top_lifts: Vec<Vector>,
}

impl SymbolAlgebra {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Complex form, in the Hall basis, with conjugation and `J`.
    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn hall(&self) -> &HallBasis {
        &self.hall
    }

    /// `q × w` projection from top Hall words onto the survivors.
    pub fn projection(&self) -> &ExactMatrix {
        &self.projection
    }

    pub fn quotient(&self) -> &QuotientSpec {
        &self.quotient
    }

    /// Number of basis elements below the top degree; they coincide with the
    /// first Hall words.
    pub fn lower_dim(&self) -> usize {
        self.lower_dim
    }

    /// A preimage of each surviving top element, in top Hall coordinates.
    pub fn top_lifts(&self) -> &[Vector] {
        &self.top_lifts
    }

    /// Whether the quotient is stable under the generator swap.
    pub fn is_self_conjugate(&self) -> bool {
        self.algebra.conjugation().is_some()
    }

    /// Real form, with degree −1 relabelled `x = g1 + g2`, `y = i(g1 − g2)`.
    pub fn real_form(&self) -> Result<RealForm, AlgebraError> {
        let mut real = realify(&self.algebra)?;
        real.algebra.relabel(0, "x");
        real.algebra.relabel(1, "y");
        Ok(real)
    }

    /// Coordinates in this algebra of a Hall-basis element (lengths ≤ ρ).
    pub fn from_hall(&self, hall_coords: &[Scalar]) -> Vector {
        let n = self.algebra.dim();
        let mut out = vec![Scalar::zero(); n];
        out[..self.lower_dim].clone_from_slice(&hall_coords[..self.lower_dim]);
        let top = self.projection.mul_vec(&hall_coords[self.lower_dim..]).expect("top length");
        out[self.lower_dim..].clone_from_slice(&top);
        out
    }
}

fn hall_label(hall: &HallBasis, i: usize) -> String {
    hall.word(i).tree.to_string()
}

/// Build the symbol algebra of codimension `k ≥ 1`.
///
/// With `ρ` the least length whose cumulative Hall dimension reaches `2 + k`,
/// the result is `F(2, ρ)` with the top layer projected onto
/// `q = 2 + k − cumulative_dim(ρ − 1)` survivors. The conjugation swaps the
/// generators; it is attached only when the kernel of the projection is
/// swap-stable. `J` acts by `i` on generator 1 and `−i` on generator 2.
///
/// The default projection is the identity when `q` equals the top dimension.
/// Otherwise the top layer gets a swap-stable basis built greedily in Hall
/// order from `h + σh`, `i(h − σh)` (or `h`, `i·h` when `σh = ±h`), the
/// first `q` of these survive and the rest are killed.
pub fn build_symbol_algebra(k: usize, quotient: QuotientSpec) -> Result<SymbolAlgebra, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::BadQuotient("codimension must be at least 1".into()));
    }
    let rho = min_length_for_codim(k);
    let hall = HallBasis::new(rho);
    let lower_dim = cumulative_dim(rho - 1);
    let w = witt_dim(rho);
    let q = 2 + k - lower_dim;
    let top = hall.indices_of_length(rho);
    debug_assert_eq!(top.len(), w);

    let mut swap_top = ExactMatrix::zeros(w, w);
    for (c, hi) in top.clone().enumerate() {
        for (h, coeff) in hall.swap_image(hi) {
            swap_top[(h - top.start, c)] = Scalar::from_int(coeff);
        }
    }

    let (projection, labels, lifts): (ExactMatrix, Vec<String>, Vec<Vector>) = match &quotient {
        QuotientSpec::Default if q == w => (
            ExactMatrix::identity(w),
            top.clone().map(|i| hall_label(&hall, i)).collect(),
            (0..w).map(|s| unit(w, s)).collect(),
        ),
        QuotientSpec::Default => {
            let idx: Vec<usize> = (0..w).collect();
            let cands = greedy_real_basis(&idx, &swap_top)?;
            let basis = ExactMatrix::from_columns(w, &cands.iter().map(|c| c.vector.clone()).collect::<Vec<_>>())?;
            let inv = basis.inverse()?;
            let rows: Vec<Vector> = (0..q).map(|r| inv.row(r).to_vec()).collect();
            (
                ExactMatrix::from_rows(rows)?,
                cands[..q].iter().map(|c| c.kind.label(&hall_label(&hall, top.start + c.source))).collect(),
                cands[..q].iter().map(|c| c.vector.clone()).collect(),
            )
        }
        QuotientSpec::KeepWords(words) => {
            if words.len() != q {
                return Err(AlgebraError::BadQuotient(format!("expected {q} kept words, got {}", words.len())));
            }
            let mut p = ExactMatrix::zeros(q, w);
            let mut labels = Vec::new();
            let mut lifts = Vec::new();
            for (s, word) in words.iter().enumerate() {
                let hi = hall
                    .index_of(word)
                    .filter(|i| top.contains(i))
                    .ok_or_else(|| {
                        AlgebraError::BadQuotient(format!("{} is not a Lyndon word of length {rho}", word_to_string(word)))
                    })?;
                if p.column(hi - top.start).iter().any(|c| !c.is_zero()) {
                    return Err(AlgebraError::BadQuotient(format!("{} kept twice", word_to_string(word))));
                }
                p[(s, hi - top.start)] = Scalar::one();
                labels.push(hall_label(&hall, hi));
                lifts.push(unit(w, hi - top.start));
            }
            (p, labels, lifts)
        }
        QuotientSpec::Matrix(p) | QuotientSpec::Frame { matrix: p, .. } => {
            if p.rows() != q || p.cols() != w {
                return Err(AlgebraError::BadQuotient(format!(
                    "projection must be {q}×{w}, got {}×{}",
                    p.rows(),
                    p.cols()
                )));
            }
            if p.rank() != q {
                return Err(AlgebraError::BadQuotient("projection is not surjective".into()));
            }
            let labels = (0..q)
                .map(|s| {
                    (0..w)
                        .find(|&c| p.column(c) == unit(q, s))
                        .map(|c| hall_label(&hall, top.start + c))
                        .unwrap_or_else(|| format!("p{}", s + 1))
                })
                .collect();
            let lifts = (0..q).map(|s| solve_linear(p, &unit(q, s))).collect::<Result<Vec<_>, _>>()?;
            (p.clone(), labels, lifts)
        }
    };

    let n = lower_dim + q;
    let mut basis: Vec<BasisElement> =
        (0..lower_dim).map(|i| BasisElement::new(hall_label(&hall, i), -(hall.word(i).len() as i32))).collect();
    basis.extend(labels.into_iter().map(|l| BasisElement::new(l, -(rho as i32))));

    let to_symbol = |elem: &crate::freelie::LieElement| -> Vector {
        let mut out = vec![Scalar::zero(); n];
        let mut top_coords = vec![Scalar::zero(); w];
        for (&h, &c) in elem {
            if h < lower_dim {
                out[h] = Scalar::from_int(c);
            } else {
                top_coords[h - top.start] = Scalar::from_int(c);
            }
        }
        if top_coords.iter().any(|c| !c.is_zero()) {
            for (s, v) in projection.mul_vec(&top_coords).expect("top length").into_iter().enumerate() {
                out[lower_dim + s] = v;
            }
        }
        out
    };

    let mut entries = Vec::new();
    for i in 0..lower_dim {
        for j in i + 1..lower_dim {
            if let Some(b) = hall.bracket_basis(i, j) {
                if !b.is_empty() {
                    entries.push((i, j, to_symbol(b)));
                }
            }
        }
    }
    let mut algebra = GradedLieAlgebra::from_brackets(basis, entries)?;

    // conjugation, when the kernel of the projection is swap-stable
    let stable = kernel_basis(&projection).iter().all(|kv| {
        let image = swap_top.mul_vec(&kv.iter().map(Scalar::conj).collect::<Vec<_>>()).expect("w");
        projection.mul_vec(&image).expect("w").iter().all(Zero::is_zero)
    });
    if stable {
        let mut sigma = ExactMatrix::zeros(n, n);
        for i in 0..lower_dim {
            for (h, c) in hall.swap_image(i) {
                sigma[(h, i)] = Scalar::from_int(c);
            }
        }
        for (s, lift) in lifts.iter().enumerate() {
            let conj: Vector = lift.iter().map(Scalar::conj).collect();
            let image = projection.mul_vec(&swap_top.mul_vec(&conj)?)?;
            for (r, v) in image.into_iter().enumerate() {
                sigma[(lower_dim + r, lower_dim + s)] = v;
            }
        }
        algebra = algebra.with_conjugation(sigma)?;
    }
    let j = ExactMatrix::from_rows(vec![
        vec![Scalar::i(), Scalar::zero()],
        vec![Scalar::zero(), -Scalar::i()],
    ])?;
    algebra = algebra.with_complex_structure(j)?.with_meta(AlgebraMeta {
        k: Some(k),
        rho: Some(rho),
        quotient: Some(quotient.label()),
        flavor: None,
    });

    if !algebra.is_fundamental() {
        return Err(AlgebraError::Invalid("symbol algebra is not fundamental".into()));
    }
    if !algebra.is_nondegenerate() {
        return Err(AlgebraError::Invalid("symbol algebra is degenerate".into()));
    }
    Ok(SymbolAlgebra { k, rho, algebra, hall, projection, quotient, lower_dim, top_lifts: lifts })
}

fn unit(len: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); len];
    v[i] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for k in 1..=12 {
            let s = build_symbol_algebra(k, QuotientSpec::Default).unwrap();
            assert_eq!(s.algebra().dim(), 2 + k, "k = {k}");
            assert_eq!(s.rho(), min_length_for_codim(k));
            assert!(s.algebra().check_jacobi().passed());
            assert_eq!(s.algebra().is_pseudocomplex(), Ok(true));
        }
    }

    #[test]
    fn default_quotient_is_self_conjugate() {
        for k in 1..=12 {
            let s = build_symbol_algebra(k, QuotientSpec::Default).unwrap();
            assert!(s.is_self_conjugate(), "k = {k}");
            let real = s.real_form().unwrap();
            assert_eq!(real.algebra.is_pseudocomplex(), Ok(true));
            assert!(real.algebra.check_jacobi().passed());
        }
    }

    #[test]
    fn trailing_words_are_not_swap_stable() {
        // keeping [1,[1,2]] at k = 2 kills its conjugate [[1,2],2]
        let s = build_symbol_algebra(2, QuotientSpec::KeepWords(vec![vec![1, 1, 2]])).unwrap();
        assert!(!s.is_self_conjugate());
        assert!(matches!(s.real_form(), Err(AlgebraError::NotSelfConjugate(_))));
    }

    #[test]
    fn heisenberg_symbol() {
        let s = build_symbol_algebra(1, QuotientSpec::Default).unwrap();
        let real = s.real_form().unwrap();
        let a = &real.algebra;
        assert_eq!((a.label(0), a.label(1), a.label(2)), ("x", "y", "i[1,2]"));
        assert_eq!(a.bracket(0, 1), &vec![Scalar::zero(), Scalar::zero(), Scalar::from_int(-2)]);
    }

    #[test]
    fn quotient_parsing() {
        assert_eq!("default".parse::<QuotientSpec>().unwrap(), QuotientSpec::Default);
        assert_eq!(
            "keep:11212, 12122".parse::<QuotientSpec>().unwrap(),
            QuotientSpec::KeepWords(vec![vec![1, 1, 2, 1, 2], vec![1, 2, 1, 2, 2]])
        );
        let m: QuotientSpec = r#"matrix:[["1","0"],["0","i"]]"#.parse().unwrap();
        assert_eq!(m, QuotientSpec::Matrix(ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::i()],
        ]).unwrap()));
        assert!("drop:1".parse::<QuotientSpec>().is_err());
    }

    #[test]
    fn bad_quotients() {
        assert!(matches!(build_symbol_algebra(0, QuotientSpec::Default), Err(AlgebraError::BadQuotient(_))));
        // k = 4 needs 1 of 3 length-4 words
        let err = build_symbol_algebra(4, QuotientSpec::KeepWords(vec![vec![1, 1, 1, 2], vec![1, 1, 2, 2]]));
        assert!(matches!(err, Err(AlgebraError::BadQuotient(_))));
        let err = build_symbol_algebra(4, QuotientSpec::KeepWords(vec![vec![1, 2, 1, 2]]));
        assert!(matches!(err, Err(AlgebraError::BadQuotient(_))));
        let zero = ExactMatrix::zeros(1, 3);
        assert!(matches!(build_symbol_algebra(4, QuotientSpec::Matrix(zero)), Err(AlgebraError::BadQuotient(_))));
    }
}
