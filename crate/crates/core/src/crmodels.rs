//! Infinitesimal CR automorphism algebras `g₋ ⊕ g₀` of the models and their
//! comparison with Levi-Tanaka prolongations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{kernel_basis, solve_linear, ExactMatrix, LinearError, Scalar, Vector};
use crate::liealg::{
    build_symbol_algebra, first_bracket_mismatch, AlgebraError, BasisElement, GradedLieAlgebra, MatrixDoc,
    QuotientSpec, SymbolAlgebra,
};
use crate::prolong::{full_prolongation, grade0, Flavor, ProlongError, Prolongation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrError {
    #[error("theorem needs ρ ≥ 3, got ρ = {0}")]
    RhoTooSmall(usize),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("dimension mismatch: aut_CR has {aut_cr}, Levi-Tanaka has {levi_tanaka}")]
    DimensionMismatch { aut_cr: usize, levi_tanaka: usize },
    #[error("verification failed on bracket [{}, {}]", .pair.0, .pair.1)]
    VerificationFailed { pair: (String, String) },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Prolong(#[from] ProlongError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// Whether the degree-zero part is spanned by `d` alone or by `d` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    RealAlpha,
    ComplexAlpha,
    Auto,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::RealAlpha => "real-alpha",
            Case::ComplexAlpha => "complex-alpha",
            Case::Auto => "auto",
        }
    }

    pub fn g0_dim(self) -> usize {
        match self {
            Case::ComplexAlpha => 2,
            _ => 1,
        }
    }
}

/// Result of extending a map on degree −1 to a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Derivation(ExactMatrix),
    NotADerivation,
}

impl Extension {
    pub fn matrix(&self) -> Option<&ExactMatrix> {
        match self {
            Extension::Derivation(m) => Some(m),
            Extension::NotADerivation => None,
        }
    }
}

/// Grading derivation: each basis element is scaled by its degree.
pub fn euler_derivation(m: &GradedLieAlgebra) -> ExactMatrix {
    let mut e = ExactMatrix::zeros(m.dim(), m.dim());
    for i in 0..m.dim() {
        e[(i, i)] = Scalar::from_int(m.degree(i) as i64);
    }
    e
}

/// Degree-preserving derivation agreeing with `−J` on degree −1, if any.
pub fn rotation_derivation(m: &GradedLieAlgebra) -> Result<Extension, CrError> {
    let j = m.complex_structure().ok_or(AlgebraError::MissingJ)?;
    let basis = grade0(m, Flavor::Tanaka)?;
    let idx = j.indices();
    let flatten = |d: &ExactMatrix| -> Vector { idx.iter().flat_map(|&c| idx.iter().map(move |&r| d[(r, c)].clone())).collect() };
    let target: Vector = (0..idx.len()).flat_map(|c| (0..idx.len()).map(move |r| -&j.matrix()[(r, c)])).collect();
    let columns: Vec<Vector> = basis.iter().map(flatten).collect();
    if columns.is_empty() {
        return Ok(Extension::NotADerivation);
    }
    let sys = ExactMatrix::from_columns(target.len(), &columns)?;
    let Ok(coeffs) = solve_linear(&sys, &target) else {
        return Ok(Extension::NotADerivation);
    };
    let n = m.dim();
    let mut out = ExactMatrix::zeros(n, n);
    for (c, d) in coeffs.iter().zip(&basis) {
        for r in 0..n {
            for s in 0..n {
                out[(r, s)] += &(c * &d[(r, s)]);
            }
        }
    }
    Ok(Extension::Derivation(out))
}

/// Exact Leibniz check of a linear map (column `i` = image of `e_i`).
pub fn is_derivation(m: &GradedLieAlgebra, d: &ExactMatrix) -> bool {
    let cols = d.columns();
    (0..m.dim()).all(|y| {
        (y + 1..m.dim()).all(|z| {
            let lhs = d.mul_vec(m.bracket(y, z)).expect("square");
            let r1 = m.bracket_vec(&cols[y], &m.unit(z));
            let r2 = m.bracket_vec(&m.unit(y), &cols[z]);
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a + b)
        })
    })
}

/// Rotation computed from bidegrees: `−i(n − ñ)` on each Hall word of the
/// complex form, pushed through the top projection and moved to the real
/// basis. `None` when it does not descend to the quotient.
fn rotation_by_bidegree(s: &SymbolAlgebra, basis_change: &ExactMatrix) -> Result<Option<ExactMatrix>, CrError> {
    let hall = s.hall();
    let weight = |h: usize| {
        let (a, b) = hall.word(h).bidegree;
        Scalar::from_ints(0, -(a as i64 - b as i64))
    };
    let lower = s.lower_dim();
    let n = s.algebra().dim();
    let top = hall.indices_of_length(s.rho());
    let p = s.projection();
    let scale_top = |v: &[Scalar]| -> Vector { v.iter().zip(top.clone()).map(|(c, h)| c * &weight(h)).collect() };
    for kv in kernel_basis(p) {
        if p.mul_vec(&scale_top(&kv))?.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
    }
    let mut rc = ExactMatrix::zeros(n, n);
    for i in 0..lower {
        rc[(i, i)] = weight(i);
    }
    for (sidx, lift) in s.top_lifts().iter().enumerate() {
        for (r, v) in p.mul_vec(&scale_top(lift))?.into_iter().enumerate() {
            rc[(lower + r, lower + sidx)] = v;
        }
    }
    let real = basis_change.inverse()?.mul(&rc)?.mul(basis_change)?;
    if (0..n).any(|r| (0..n).any(|c| !real[(r, c)].is_real())) {
        return Ok(None);
    }
    Ok(Some(real))
}

/// `aut_CR = g₋ ⊕ g₀` with `g₀ = ⟨d⟩` or `⟨d, r⟩` acting by derivations.
#[derive(Debug, Clone)]
pub struct AutCrAlgebra {
    algebra: GradedLieAlgebra,
    case: Case,
    negative_dim: usize,
}

impl AutCrAlgebra {
    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    /// Resolved case, never [`Case::Auto`].
    pub fn case(&self) -> Case {
        self.case
    }

    pub fn negative_dim(&self) -> usize {
        self.negative_dim
    }

    pub fn d_index(&self) -> usize {
        self.negative_dim
    }

    pub fn r_index(&self) -> Option<usize> {
        (self.case == Case::ComplexAlpha).then_some(self.negative_dim + 1)
    }

    /// Copy with one bracket replaced, for negative controls.
    pub fn with_bracket_overridden(&self, i: usize, j: usize, value: Vector) -> Result<Self, CrError> {
        Ok(Self { algebra: self.algebra.with_bracket_overridden(i, j, value)?, ..self.clone() })
    }
}

/// Build `aut_CR` on the real form of `s`.
///
/// With [`Case::Auto`] the rotation is included exactly when it descends to
/// the quotient; asking for [`Case::ComplexAlpha`] when it does not is a
/// [`CrError::CaseMismatch`].
pub fn build_aut_cr(s: &SymbolAlgebra, case: Case) -> Result<AutCrAlgebra, CrError> {
    let real = s.real_form()?;
    let m = real.algebra;
    let n = m.dim();
    let rotation = rotation_by_bidegree(s, &real.basis_change)?;
    let case = match (case, &rotation) {
        (Case::ComplexAlpha, None) => {
            return Err(CrError::CaseMismatch("rotation is not a derivation of this quotient".into()))
        }
        (Case::Auto, Some(_)) => Case::ComplexAlpha,
        (Case::Auto, None) => Case::RealAlpha,
        (c, _) => c,
    };
    let mut derivations = vec![("d", euler_derivation(&m))];
    if case == Case::ComplexAlpha {
        derivations.push(("r", rotation.expect("checked above")));
    }
    let total = n + derivations.len();
    let mut basis = m.basis().to_vec();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut v = m.bracket(a, b).clone();
            v.resize(total, Scalar::zero());
            entries.push((a, b, v));
        }
    }
    for (k, (label, d)) in derivations.iter().enumerate() {
        basis.push(BasisElement::new(*label, 0));
        for x in 0..n {
            let mut v = d.column(x);
            v.resize(total, Scalar::zero());
            entries.push((n + k, x, v));
        }
    }
    let mut algebra = GradedLieAlgebra::from_brackets(basis, entries)?.with_meta(m.meta.clone());
    if let Some(j) = m.complex_structure() {
        algebra = algebra.with_complex_structure(j.matrix().clone())?;
    }
    if !algebra.check_jacobi().passed() {
        return Err(CrError::CaseMismatch("g₀ does not act by derivations".into()));
    }
    Ok(AutCrAlgebra { algebra, case, negative_dim: n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// `g₀ ⊆ G⁰(g₋)` and the reverse count, plus vanishing of higher components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inclusion {
    pub g0_dim: usize,
    pub levi_tanaka_g0_dim: usize,
    pub g0_included: bool,
    pub reverse_inclusion: bool,
    pub higher_components_vanish: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub model: String,
    pub k: usize,
    pub rho: usize,
    pub quotient: String,
    pub case: Case,
    pub aut_cr_dims: BTreeMap<i32, usize>,
    pub levi_tanaka_dims: BTreeMap<i32, usize>,
    pub aut_cr_dim: usize,
    pub levi_tanaka_dim: usize,
    pub isomorphism: MatrixDoc,
    pub inclusion: Inclusion,
    pub checks: Vec<Check>,
    pub verdict: String,
}

impl TheoremReport {
    pub fn confirmed(&self) -> bool {
        self.verdict == "confirmed"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let fmt_dims = |d: &BTreeMap<i32, usize>| {
            let neg: Vec<String> = d.iter().filter(|(k, _)| **k < 0).map(|(_, v)| v.to_string()).collect();
            let pos: Vec<String> = d.iter().filter(|(k, _)| **k >= 0).map(|(_, v)| v.to_string()).collect();
            format!("({} | {})", neg.join(","), pos.join(","))
        };
        let _ = writeln!(s, "model     {}", self.model);
        let _ = writeln!(s, "k, rho    {}, {}", self.k, self.rho);
        let _ = writeln!(s, "quotient  {}", self.quotient);
        let _ = writeln!(s, "case      {}", self.case.name());
        let _ = writeln!(s, "aut_CR    dim {:>3}  {}", self.aut_cr_dim, fmt_dims(&self.aut_cr_dims));
        let _ = writeln!(s, "LT        dim {:>3}  {}", self.levi_tanaka_dim, fmt_dims(&self.levi_tanaka_dims));
        for c in &self.checks {
            let _ = writeln!(s, "  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
        let _ = writeln!(s, "verdict   {}", self.verdict);
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Coordinates in `G⁰` of the derivation `d` of the negative part.
fn g0_coordinates(p: &Prolongation, d: &ExactMatrix) -> Result<Option<Vector>, CrError> {
    let n = p.negative_dim();
    let g0 = p.component_indices(0);
    let alg = p.algebra();
    let columns: Vec<Vector> = g0.iter().map(|&q| (0..n).flat_map(|x| alg.bracket(q, x)[..n].to_vec()).collect()).collect();
    let target: Vector = (0..n).flat_map(|x| d.column(x)).collect();
    if columns.is_empty() {
        return Ok(None);
    }
    Ok(solve_linear(&ExactMatrix::from_columns(target.len(), &columns)?, &target).ok())
}

/// Map from `aut_CR` into `P`: identity on `g₋`, `d` and `r` to their
/// coordinates in `G⁰`.
fn comparison_map(aut: &AutCrAlgebra, p: &Prolongation) -> Result<(ExactMatrix, bool), CrError> {
    let n = aut.negative_dim();
    let a = aut.algebra();
    let mut images: Vec<Vector> = (0..n).map(|i| p.algebra().unit(i)).collect();
    let mut included = true;
    for g in n..a.dim() {
        let d = ExactMatrix::from_columns(n, &(0..n).map(|x| a.bracket(g, x)[..n].to_vec()).collect::<Vec<_>>())?;
        let mut img = vec![Scalar::zero(); p.total_dim()];
        match g0_coordinates(p, &d)? {
            Some(c) => {
                for (coef, q) in c.into_iter().zip(p.component_indices(0)) {
                    img[q] = coef;
                }
            }
            None => included = false,
        }
        images.push(img);
    }
    Ok((ExactMatrix::from_columns(p.total_dim(), &images)?, included))
}

/// Check that the comparison map `aut_CR → P` is a bijective bracket
/// homomorphism and return it.
pub fn compare_with_prolongation(aut: &AutCrAlgebra, p: &Prolongation) -> Result<ExactMatrix, CrError> {
    if aut.algebra().dim() != p.total_dim() {
        return Err(CrError::DimensionMismatch { aut_cr: aut.algebra().dim(), levi_tanaka: p.total_dim() });
    }
    let (map, included) = comparison_map(aut, p)?;
    if !included {
        return Err(CrError::VerificationFailed { pair: ("g0".into(), "G0".into()) });
    }
    if let Some((a, b)) = first_bracket_mismatch(aut.algebra(), p.algebra(), &map)? {
        return Err(CrError::VerificationFailed {
            pair: (aut.algebra().label(a).to_string(), aut.algebra().label(b).to_string()),
        });
    }
    if map.rank() != p.total_dim() {
        return Err(CrError::VerificationFailed { pair: ("map".into(), "rank".into()) });
    }
    Ok(map)
}

fn model_id(s: &SymbolAlgebra) -> String {
    format!("k{:02}-{}", s.k(), s.quotient().label())
}

/// Compare `aut_CR(g₋)` with the Levi-Tanaka prolongation of `g₋` and
/// construct an explicit isomorphism.
pub fn verify_theorem(s: &SymbolAlgebra) -> Result<TheoremReport, CrError> {
    verify_theorem_named(s, &model_id(s))
}

pub fn verify_theorem_named(s: &SymbolAlgebra, model: &str) -> Result<TheoremReport, CrError> {
    if s.rho() < 3 {
        return Err(CrError::RhoTooSmall(s.rho()));
    }
    let m = s.real_form()?.algebra;
    let p = full_prolongation(&m, Flavor::LeviTanaka)?;
    let lt_g0 = p.component_dims()[0];
    let case = match lt_g0 {
        1 => Case::RealAlpha,
        2 => Case::ComplexAlpha,
        other => return Err(CrError::CaseMismatch(format!("Levi-Tanaka degree 0 has dimension {other}"))),
    };
    let aut = build_aut_cr(s, case)?;
    let auto = build_aut_cr(s, Case::Auto)?.case();
    let map = compare_with_prolongation(&aut, &p)?;
    let higher_vanish = p.component_dims().len() == 1;
    let a = aut.algebra();
    let euler_ok = (0..aut.negative_dim()).all(|x| {
        let mut v = vec![Scalar::zero(); a.dim()];
        v[x] = Scalar::from_int(a.degree(x) as i64);
        *a.bracket(aut.d_index(), x) == v
    });
    let g0_abelian = aut.r_index().is_none_or(|r| a.bracket(aut.d_index(), r).iter().all(Zero::is_zero));
    let checks = vec![
        Check { name: "aut_CR Jacobi".into(), passed: a.check_jacobi().passed() },
        Check { name: "Levi-Tanaka Jacobi".into(), passed: p.algebra().check_jacobi().passed() },
        Check { name: "aut_CR transitive".into(), passed: a.is_transitive() },
        Check { name: "aut_CR nondegenerate".into(), passed: a.is_nondegenerate() },
        Check { name: "[d, v] = deg(v)·v".into(), passed: euler_ok },
        Check { name: "g0 abelian".into(), passed: g0_abelian },
        Check { name: "case agrees with rotation descent".into(), passed: auto == case },
        Check { name: "map bijective".into(), passed: true },
        Check { name: "map preserves all brackets".into(), passed: true },
    ];
    let all_ok = checks.iter().all(|c| c.passed);
    Ok(TheoremReport {
        model: model.to_string(),
        k: s.k(),
        rho: s.rho(),
        quotient: s.quotient().label(),
        case,
        aut_cr_dims: a.dims_by_degree(),
        levi_tanaka_dims: p.dims_by_degree(),
        aut_cr_dim: a.dim(),
        levi_tanaka_dim: p.total_dim(),
        isomorphism: MatrixDoc::from_matrix(&map),
        inclusion: Inclusion {
            g0_dim: case.g0_dim(),
            levi_tanaka_g0_dim: lt_g0,
            g0_included: true,
            reverse_inclusion: lt_g0 <= case.g0_dim(),
            higher_components_vanish: higher_vanish,
        },
        checks,
        verdict: if all_ok { "confirmed".into() } else { "failed".into() },
    })
}

/// The `k = 1` case: the Levi-Tanaka prolongation of the Heisenberg symbol,
/// with `aut_CR(g₋ ⊕ g₀)` embedded in it.
pub fn verify_heisenberg() -> Result<TheoremReport, CrError> {
    verify_length_two(&build_symbol_algebra(1, QuotientSpec::Default)?, "heisenberg")
}

/// [`verify_heisenberg`] for a given length-two symbol.
pub fn verify_length_two(s: &SymbolAlgebra, model: &str) -> Result<TheoremReport, CrError> {
    if s.rho() != 2 {
        return Err(CrError::CaseMismatch(format!("expected length 2, got {}", s.rho())));
    }
    let m = s.real_form()?.algebra;
    let p = full_prolongation(&m, Flavor::LeviTanaka)?;
    let aut = build_aut_cr(&s, Case::Auto)?;
    let (map, included) = comparison_map(&aut, &p)?;
    let mismatch = first_bracket_mismatch(aut.algebra(), p.algebra(), &map)?;
    let alg = p.algebra();
    let checks = vec![
        Check { name: "total dimension 8".into(), passed: p.total_dim() == 8 },
        Check { name: "Jacobi".into(), passed: alg.check_jacobi().passed() },
        Check { name: "transitive".into(), passed: alg.is_transitive() },
        Check { name: "Killing form nondegenerate".into(), passed: alg.killing_form().rank() == alg.dim() },
        Check { name: "aut_CR(g- + g0) embeds".into(), passed: included && mismatch.is_none() && map.rank() == aut.algebra().dim() },
    ];
    let all_ok = checks.iter().all(|c| c.passed);
    Ok(TheoremReport {
        model: model.into(),
        k: 1,
        rho: 2,
        quotient: s.quotient().label(),
        case: aut.case(),
        aut_cr_dims: aut.algebra().dims_by_degree(),
        levi_tanaka_dims: p.dims_by_degree(),
        aut_cr_dim: aut.algebra().dim(),
        levi_tanaka_dim: p.total_dim(),
        isomorphism: MatrixDoc::from_matrix(&map),
        inclusion: Inclusion {
            g0_dim: aut.case().g0_dim(),
            levi_tanaka_g0_dim: p.component_dims()[0],
            g0_included: included,
            reverse_inclusion: p.component_dims()[0] <= aut.case().g0_dim(),
            higher_components_vanish: p.component_dims().len() == 1,
        },
        checks,
        verdict: if all_ok { "confirmed".into() } else { "failed".into() },
    })
}

/// [`verify_length_two`] for `ρ = 2`, [`verify_theorem_named`] otherwise.
pub fn verify_symbol(s: &SymbolAlgebra, model: &str) -> Result<TheoremReport, CrError> {
    if s.rho() == 2 {
        verify_length_two(s, model)
    } else {
        verify_theorem_named(s, model)
    }
}

/// One entry of a sweep: a named symbol algebra to verify.
#[derive(Debug, Clone)]
pub struct SweepJob {
    pub id: String,
    pub k: usize,
    pub quotient: QuotientSpec,
}

#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub id: String,
    pub k: usize,
    pub result: Result<TheoremReport, CrError>,
}

/// Verify many symbol algebras in parallel; results sorted by id.
pub fn sweep(jobs: Vec<SweepJob>) -> Vec<SweepEntry> {
    let mut out: Vec<SweepEntry> = jobs
        .into_par_iter()
        .map(|job| {
            let result = build_symbol_algebra(job.k, job.quotient.clone())
                .map_err(CrError::from)
                .and_then(|s| verify_symbol(&s, &job.id));
            SweepEntry { id: job.id, k: job.k, result }
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Default-quotient sweep over `1..=max_k`.
pub fn default_jobs(max_k: usize) -> Vec<SweepJob> {
    (1..=max_k)
        .map(|k| SweepJob { id: format!("k{k:02}-default"), k, quotient: QuotientSpec::Default })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symbol(k: usize) -> SymbolAlgebra {
        build_symbol_algebra(k, QuotientSpec::Default).unwrap()
    }

    #[test]
    fn euler_on_heisenberg() {
        let m = symbol(1).real_form().unwrap().algebra;
        assert_eq!(euler_derivation(&m), ExactMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -2]]));
        assert!(is_derivation(&m, &euler_derivation(&m)));
    }

    #[test]
    fn rotation_on_heisenberg() {
        let m = symbol(1).real_form().unwrap().algebra;
        let Extension::Derivation(r) = rotation_derivation(&m).unwrap() else { panic!("rotation must exist") };
        // [r, x] = −y, [r, y] = x, center fixed
        assert_eq!(r, ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert!(is_derivation(&m, &r));
    }

    #[test]
    fn rotation_fails_on_mixed_quotient() {
        let m = symbol(4).real_form().unwrap().algebra;
        assert_eq!(rotation_derivation(&m).unwrap(), Extension::NotADerivation);
        assert!(matches!(build_aut_cr(&symbol(4), Case::ComplexAlpha), Err(CrError::CaseMismatch(_))));
    }

    #[test]
    fn aut_cr_shapes() {
        let h = build_aut_cr(&symbol(1), Case::Auto).unwrap();
        assert_eq!((h.algebra().dim(), h.case()), (5, Case::ComplexAlpha));
        let a = h.algebra();
        let r = h.r_index().unwrap();
        assert_eq!(a.bracket(r, 0), &vec![Scalar::zero(), Scalar::from_int(-1), Scalar::zero(), Scalar::zero(), Scalar::zero()]);
        let g = build_aut_cr(&symbol(3), Case::RealAlpha).unwrap();
        assert_eq!(g.algebra().dim(), 6);
        assert!(g.algebra().is_transitive());
    }

    #[test]
    fn bidegree_rotation_matches_leibniz_extension() {
        for k in 1..=8 {
            let s = symbol(k);
            let real = s.real_form().unwrap();
            let by_weight = rotation_by_bidegree(&s, &real.basis_change).unwrap();
            let by_solve = rotation_derivation(&real.algebra).unwrap();
            assert_eq!(by_weight.as_ref(), by_solve.matrix(), "k = {k}");
        }
    }

    #[test]
    fn theorem_small_cases() {
        let r = verify_theorem(&symbol(3)).unwrap();
        assert!(r.confirmed());
        assert_eq!((r.aut_cr_dim, r.levi_tanaka_dim, r.case), (7, 7, Case::ComplexAlpha));
        let r = verify_theorem(&symbol(2)).unwrap();
        assert!(r.confirmed());
        assert_eq!(r.aut_cr_dim, 5);
        assert_eq!(verify_theorem(&symbol(1)).unwrap_err(), CrError::RhoTooSmall(2));
    }

    #[test]
    fn corrupted_bracket_is_reported() {
        let s = symbol(3);
        let p = full_prolongation(&s.real_form().unwrap().algebra, Flavor::LeviTanaka).unwrap();
        let aut = build_aut_cr(&s, Case::ComplexAlpha).unwrap();
        assert!(compare_with_prolongation(&aut, &p).is_ok());
        let doubled: Vector = aut.algebra().bracket(0, 1).iter().map(|c| c * &Scalar::from_int(2)).collect();
        let bad = aut.with_bracket_overridden(0, 1, doubled).unwrap();
        assert_eq!(
            compare_with_prolongation(&bad, &p).unwrap_err(),
            CrError::VerificationFailed { pair: ("x".into(), "y".into()) }
        );
    }

    #[test]
    fn heisenberg_report() {
        let r = verify_heisenberg().unwrap();
        assert!(r.confirmed(), "{}", r.to_text());
        assert_eq!(r.levi_tanaka_dim, 8);
        let dims: Vec<usize> = r.levi_tanaka_dims.values().copied().collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1]);
    }
}
