//! Tanaka prolongation of a fundamental negatively graded algebra, and the
//! Levi-Tanaka variant whose degree-zero part commutes with `J`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{kernel_basis, solve_linear, ExactMatrix, LinearError, Scalar, Vector};
use crate::liealg::{AlgebraError, BasisElement, GradedLieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProlongError {
    #[error("input must be concentrated in negative degrees")]
    NotNegativelyGraded,
    #[error("input is not generated by its degree −1 part")]
    NotFundamental,
    #[error("Levi-Tanaka prolongation needs a complex structure J")]
    MissingJ,
    #[error("prolongation still nonzero in degree {guard} (dims so far {dims:?})")]
    GuardExceeded { guard: usize, dims: Vec<usize> },
    #[error("positive bracket does not close: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// All degree-preserving derivations in degree 0.
    Tanaka,
    /// Degree-0 derivations that also commute with `J` on degree −1.
    LeviTanaka,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Tanaka => "tanaka",
            Flavor::LeviTanaka => "levi-tanaka",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tanaka" | "full" => Ok(Flavor::Tanaka),
            "levi-tanaka" | "lt" => Ok(Flavor::LeviTanaka),
            other => Err(format!("unknown flavor `{other}`")),
        }
    }
}

type Sparse = BTreeMap<usize, Scalar>;

fn add_into(acc: &mut Sparse, v: &Sparse, c: &Scalar) {
    for (&k, x) in v {
        let e = acc.entry(k).or_insert_with(Scalar::zero);
        *e += &(c * x);
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

fn dense_to_sparse(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Working state: the negative part fixed, positive components appended in
/// order of degree, each element stored by its action on the negative part.
struct State<'a> {
    m: &'a GradedLieAlgebra,
    n: usize,
    degrees: Vec<i32>,
    /// `actions[g - n][i]` is `[e_g, x_i]`.
    actions: Vec<Vec<Sparse>>,
    components: Vec<std::ops::Range<usize>>,
    positive: HashMap<(usize, usize), Sparse>,
}

impl<'a> State<'a> {
    fn new(m: &'a GradedLieAlgebra) -> Self {
        let n = m.dim();
        Self {
            m,
            n,
            degrees: (0..n).map(|i| m.degree(i)).collect(),
            actions: Vec::new(),
            components: Vec::new(),
            positive: HashMap::new(),
        }
    }

    /// Bracket of two global basis elements, for all pairs whose bracket is
    /// already known.
    fn bracket(&self, u: usize, v: usize) -> Sparse {
        let n = self.n;
        match (u < n, v < n) {
            _ if u == v => Sparse::new(),
            (true, true) => dense_to_sparse(self.m.bracket(u, v)),
            (false, true) => self.actions[u - n][v].clone(),
            (true, false) => self.actions[v - n][u].iter().map(|(&k, c)| (k, -c)).collect(),
            (false, false) => {
                if u < v {
                    self.positive[&(u, v)].clone()
                } else {
                    self.positive[&(v, u)].iter().map(|(&k, c)| (k, -c)).collect()
                }
            }
        }
    }

    fn bracket_sparse(&self, a: &Sparse, b: &Sparse) -> Sparse {
        let mut acc = Sparse::new();
        for (&u, cu) in a {
            for (&v, cv) in b {
                add_into(&mut acc, &self.bracket(u, v), &(cu * cv));
            }
        }
        acc
    }

    fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&g| self.degrees[g] == d).collect()
    }

    /// Basis of the degree-`l` component, as actions on the negative part.
    fn component(&self, l: i32, with_j: bool) -> Result<Vec<Vec<Sparse>>, ProlongError> {
        let n = self.n;
        let mut cols: Vec<(usize, usize)> = Vec::new();
        let mut col_of: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..n {
            for g in self.indices_of_degree(self.degrees[i] + l) {
                col_of.insert((i, g), cols.len());
                cols.push((i, g));
            }
        }
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let mut rows: Vec<Sparse> = Vec::new();
        // p([y,z]) − [p(y), z] + [p(z), y] = 0
        for y in 0..n {
            for z in y + 1..n {
                let mut eqs: BTreeMap<usize, Sparse> = BTreeMap::new();
                for (k, c) in dense_to_sparse(self.m.bracket(y, z)) {
                    for g in self.indices_of_degree(self.degrees[k] + l) {
                        add_into(eqs.entry(g).or_default(), &Sparse::from([(col_of[&(k, g)], Scalar::from_int(1))]), &c);
                    }
                }
                for (src, other, sign) in [(y, z, -1i64), (z, y, 1)] {
                    let s = Scalar::from_int(sign);
                    for g in self.indices_of_degree(self.degrees[src] + l) {
                        let col = col_of[&(src, g)];
                        for (r, c) in self.bracket(g, other) {
                            add_into(eqs.entry(r).or_default(), &Sparse::from([(col, c)]), &s);
                        }
                    }
                }
                rows.extend(eqs.into_values().filter(|r| !r.is_empty()));
            }
        }
        if with_j {
            let j = self.m.complex_structure().ok_or(ProlongError::MissingJ)?;
            let idx = j.indices();
            let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &g)| (g, p)).collect();
            // p(J x_c) − J p(x_c) = 0
            for (c, &xc) in idx.iter().enumerate() {
                let mut eqs: BTreeMap<usize, Sparse> = BTreeMap::new();
                for (r, &xr) in idx.iter().enumerate() {
                    let jrc = &j.matrix()[(r, c)];
                    if jrc.is_zero() {
                        continue;
                    }
                    for &g in idx {
                        add_into(eqs.entry(g).or_default(), &Sparse::from([(col_of[&(xr, g)], jrc.clone())]), &Scalar::from_int(1));
                    }
                }
                for &v in idx {
                    let col = col_of[&(xc, v)];
                    for (r, &g) in idx.iter().enumerate() {
                        let jv = &j.matrix()[(r, pos[&v])];
                        if !jv.is_zero() {
                            add_into(eqs.entry(g).or_default(), &Sparse::from([(col, -jv)]), &Scalar::from_int(1));
                        }
                    }
                }
                rows.extend(eqs.into_values().filter(|r| !r.is_empty()));
            }
        }
        let mut dense = ExactMatrix::zeros(rows.len().max(1), cols.len());
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                dense[(r, c)] = v.clone();
            }
        }
        Ok(kernel_basis(&dense)
            .into_iter()
            .map(|kv| {
                let mut maps = vec![Sparse::new(); n];
                for (col, v) in kv.into_iter().enumerate() {
                    if !v.is_zero() {
                        let (i, g) = cols[col];
                        maps[i].insert(g, v);
                    }
                }
                maps
            })
            .collect())
    }

    fn push_component(&mut self, l: i32, maps: Vec<Vec<Sparse>>) {
        let start = self.degrees.len();
        for m in maps {
            self.degrees.push(l);
            self.actions.push(m);
        }
        self.components.push(start..self.degrees.len());
    }

    /// Action of `[p, q]` on the negative part.
    fn commutator_action(&self, p: usize, q: usize) -> Vec<Sparse> {
        (0..self.n)
            .map(|i| {
                let x = Sparse::from([(i, Scalar::from_int(1))]);
                let qx = self.bracket_sparse(&Sparse::from([(q, Scalar::from_int(1))]), &x);
                let px = self.bracket_sparse(&Sparse::from([(p, Scalar::from_int(1))]), &x);
                let mut out = self.bracket_sparse(&Sparse::from([(p, Scalar::from_int(1))]), &qx);
                add_into(&mut out, &self.bracket_sparse(&Sparse::from([(q, Scalar::from_int(1))]), &px), &Scalar::from_int(-1));
                out
            })
            .collect()
    }

    /// Coordinates of an action in the basis of component `l`, if it lies there.
    fn express(&self, l: usize, action: &[Sparse]) -> Result<Sparse, ProlongError> {
        let is_zero = action.iter().all(|s| s.is_empty());
        let Some(range) = self.components.get(l) else {
            return if is_zero { Ok(Sparse::new()) } else { Err(ProlongError::NotClosed(format!("nonzero bracket in degree {l}"))) };
        };
        if is_zero {
            return Ok(Sparse::new());
        }
        let len = self.degrees.len();
        let flatten = |a: &[Sparse]| -> Vector {
            let mut v = vec![Scalar::zero(); self.n * len];
            for (i, s) in a.iter().enumerate() {
                for (&g, c) in s {
                    v[i * len + g] = c.clone();
                }
            }
            v
        };
        let columns: Vec<Vector> = range.clone().map(|g| flatten(&self.actions[g - self.n])).collect();
        let mat = ExactMatrix::from_columns(self.n * len, &columns)?;
        let coeffs = solve_linear(&mat, &flatten(action))
            .map_err(|_| ProlongError::NotClosed(format!("bracket leaves degree {l}")))?;
        Ok(coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (range.start + k, c)).collect())
    }
}

/// A prolongation `m ⊕ G⁰ ⊕ G¹ ⊕ …` with all brackets.
#[derive(Debug, Clone)]
pub struct Prolongation {
    algebra: GradedLieAlgebra,
    negative_dim: usize,
    component_dims: Vec<usize>,
    flavor: Flavor,
}

impl Prolongation {
    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn negative_dim(&self) -> usize {
        self.negative_dim
    }

    /// Dimensions of `G⁰, G¹, …` up to the last nonzero component.
    pub fn component_dims(&self) -> &[usize] {
        &self.component_dims
    }

    pub fn total_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        self.algebra.dims_by_degree()
    }

    /// Basis indices of `G^l`.
    pub fn component_indices(&self, l: usize) -> Vec<usize> {
        self.algebra.indices_of_degree(l as i32)
    }

    pub fn is_transitive(&self) -> bool {
        self.algebra.is_transitive()
    }

    /// Matrix sending each basis element of `self` to its image in `other`,
    /// matching actions on the common negative part degree by degree. Fails
    /// if some element of `self` has no counterpart.
    pub fn embed_into(&self, other: &Prolongation) -> Result<ExactMatrix, ProlongError> {
        let n = self.negative_dim;
        if other.negative_dim != n {
            return Err(ProlongError::NotClosed("negative parts differ".into()));
        }
        let (src, dst) = (&self.algebra, &other.algebra);
        let mut images: Vec<Vector> = (0..n).map(|i| dst.unit(i)).collect();
        for l in 0..self.component_dims.len() {
            let targets = other.component_indices(l);
            let columns: Vec<Vector> =
                targets.iter().map(|&q| (0..n).flat_map(|i| dst.bracket(q, i).clone()).collect()).collect();
            for p in self.component_indices(l) {
                let want: Vector = (0..n)
                    .flat_map(|i| {
                        let act = src.bracket(p, i);
                        let mut img = vec![Scalar::zero(); dst.dim()];
                        for (k, c) in act.iter().enumerate() {
                            if !c.is_zero() {
                                for (t, v) in images[k].iter().enumerate() {
                                    img[t] += &(c * v);
                                }
                            }
                        }
                        img
                    })
                    .collect();
                let coeffs = if targets.is_empty() {
                    if want.iter().all(Zero::is_zero) { Vec::new() } else { return Err(ProlongError::NotClosed(format!("no degree {l} in target"))) }
                } else {
                    solve_linear(&ExactMatrix::from_columns(want.len(), &columns)?, &want)
                        .map_err(|_| ProlongError::NotClosed(format!("{} has no image", src.label(p))))?
                };
                let mut img = vec![Scalar::zero(); dst.dim()];
                for (c, &q) in coeffs.iter().zip(&targets) {
                    img[q] = c.clone();
                }
                images.push(img);
            }
        }
        Ok(ExactMatrix::from_columns(dst.dim(), &images)?)
    }
}

/// Configures and runs a prolongation.
#[derive(Debug, Clone)]
pub struct ProlongationBuilder<'a> {
    m: &'a GradedLieAlgebra,
    flavor: Flavor,
    guard: Option<usize>,
}

impl<'a> ProlongationBuilder<'a> {
    pub fn new(m: &'a GradedLieAlgebra) -> Self {
        Self { m, flavor: Flavor::Tanaka, guard: None }
    }

    pub fn flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    /// Degree at which a still-nonzero component aborts the computation.
    /// Defaults to the depth of the negative part plus three.
    pub fn guard(mut self, guard: usize) -> Self {
        self.guard = Some(guard);
        self
    }

    pub fn build(self) -> Result<Prolongation, ProlongError> {
        let m = self.m;
        if m.dim() == 0 || m.basis().iter().any(|b| b.degree >= 0) {
            return Err(ProlongError::NotNegativelyGraded);
        }
        if !m.is_fundamental() {
            return Err(ProlongError::NotFundamental);
        }
        let with_j = self.flavor == Flavor::LeviTanaka;
        if with_j && m.complex_structure().is_none() {
            return Err(ProlongError::MissingJ);
        }
        let depth = m.basis().iter().map(|b| (-b.degree) as usize).max().unwrap_or(1);
        let guard = self.guard.unwrap_or(depth + 3);

        let mut state = State::new(m);
        let mut dims = Vec::new();
        for l in 0.. {
            let maps = state.component(l as i32, with_j && l == 0)?;
            if maps.is_empty() {
                break;
            }
            dims.push(maps.len());
            if l >= guard {
                return Err(ProlongError::GuardExceeded { guard, dims });
            }
            state.push_component(l as i32, maps);
        }

        // positive brackets by increasing total degree
        let top = dims.len();
        for s in 0..2 * top {
            for a in 0..top.min(s + 1) {
                let b = s - a;
                if b < a || b >= top {
                    continue;
                }
                for p in state.components[a].clone() {
                    for q in state.components[b].clone() {
                        if (a == b && q <= p) || p == q {
                            continue;
                        }
                        let action = state.commutator_action(p, q);
                        let coords = state.express(s, &action)?;
                        let (u, v, c) = if p < q { (p, q, coords) } else { (q, p, coords.into_iter().map(|(k, c)| (k, -c)).collect()) };
                        state.positive.insert((u, v), c);
                    }
                }
            }
        }

        let total = state.degrees.len();
        let mut basis: Vec<BasisElement> = m.basis().to_vec();
        for (l, range) in state.components.iter().enumerate() {
            for (i, _) in range.clone().enumerate() {
                basis.push(BasisElement::new(format!("g{l}.{}", i + 1), l as i32));
            }
        }
        let mut entries = Vec::new();
        for u in 0..total {
            for v in u + 1..total {
                let b = state.bracket(u, v);
                if !b.is_empty() {
                    let mut dense = vec![Scalar::zero(); total];
                    for (k, c) in b {
                        dense[k] = c;
                    }
                    entries.push((u, v, dense));
                }
            }
        }
        let mut meta = m.meta.clone();
        meta.flavor = Some(self.flavor.name().into());
        let mut algebra = GradedLieAlgebra::from_brackets(basis, entries)?.with_meta(meta);
        if let Some(j) = m.complex_structure() {
            algebra = algebra.with_complex_structure(j.matrix().clone())?;
        }
        Ok(Prolongation { algebra, negative_dim: m.dim(), component_dims: dims, flavor: self.flavor })
    }
}

/// Prolongation with the default guard.
pub fn full_prolongation(m: &GradedLieAlgebra, flavor: Flavor) -> Result<Prolongation, ProlongError> {
    ProlongationBuilder::new(m).flavor(flavor).build()
}

/// Degree-zero component alone, as `n × n` matrices acting on the negative
/// part (column `i` is the image of `x_i`).
pub fn grade0(m: &GradedLieAlgebra, flavor: Flavor) -> Result<Vec<ExactMatrix>, ProlongError> {
    if flavor == Flavor::LeviTanaka && m.complex_structure().is_none() {
        return Err(ProlongError::MissingJ);
    }
    let state = State::new(m);
    let maps = state.component(0, flavor == Flavor::LeviTanaka)?;
    let n = m.dim();
    maps.into_iter()
        .map(|cols| {
            let columns: Vec<Vector> = cols
                .iter()
                .map(|s| {
                    let mut v = vec![Scalar::zero(); n];
                    for (&g, c) in s {
                        v[g] = c.clone();
                    }
                    v
                })
                .collect();
            ExactMatrix::from_columns(n, &columns).map_err(ProlongError::from)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_symbol_algebra, QuotientSpec};

    fn real_symbol(k: usize) -> GradedLieAlgebra {
        build_symbol_algebra(k, QuotientSpec::Default).unwrap().real_form().unwrap().algebra
    }

    #[test]
    fn heisenberg_levi_tanaka() {
        let p = full_prolongation(&real_symbol(1), Flavor::LeviTanaka).unwrap();
        assert_eq!(p.component_dims(), &[2, 2, 1]);
        assert_eq!(p.total_dim(), 8);
        assert!(p.algebra().check_jacobi().passed());
        assert!(p.is_transitive());
    }

    #[test]
    fn heisenberg_tanaka_is_infinite() {
        let m = real_symbol(1);
        assert_eq!(grade0(&m, Flavor::Tanaka).unwrap().len(), 4);
        match full_prolongation(&m, Flavor::Tanaka) {
            Err(ProlongError::GuardExceeded { guard: 5, dims }) => assert_eq!(&dims[..3], &[4, 6, 9]),
            other => panic!("expected guard failure, got {other:?}"),
        }
    }

    #[test]
    fn abelian_is_infinite() {
        let m = GradedLieAlgebra::from_brackets(vec![BasisElement::new("a", -1), BasisElement::new("b", -1)], []).unwrap();
        assert!(matches!(
            ProlongationBuilder::new(&m).guard(3).build(),
            Err(ProlongError::GuardExceeded { guard: 3, .. })
        ));
    }

    #[test]
    fn split_g2_and_levi_tanaka_subalgebra() {
        let m = real_symbol(3);
        let full = full_prolongation(&m, Flavor::Tanaka).unwrap();
        assert_eq!(full.component_dims(), &[4, 2, 1, 2]);
        assert_eq!(full.total_dim(), 14);
        assert!(full.algebra().check_jacobi().passed());
        let lt = full_prolongation(&m, Flavor::LeviTanaka).unwrap();
        assert_eq!(lt.component_dims(), &[2]);
        assert_eq!(lt.total_dim(), 7);
        let emb = lt.embed_into(&full).unwrap();
        assert_eq!(emb.rank(), 7);
        assert_eq!(crate::liealg::first_bracket_mismatch(lt.algebra(), full.algebra(), &emb).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let with_zero =
            GradedLieAlgebra::from_brackets(vec![BasisElement::new("a", -1), BasisElement::new("d", 0)], []).unwrap();
        assert_eq!(full_prolongation(&with_zero, Flavor::Tanaka).unwrap_err(), ProlongError::NotNegativelyGraded);
        let m = GradedLieAlgebra::from_brackets(vec![BasisElement::new("a", -1), BasisElement::new("b", -1)], []).unwrap();
        assert_eq!(full_prolongation(&m, Flavor::LeviTanaka).unwrap_err(), ProlongError::MissingJ);
    }
}
