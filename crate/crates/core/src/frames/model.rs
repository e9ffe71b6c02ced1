use num_traits::Zero;

use super::field::{vf_bracket, Chart, PolyVectorField};
use super::poly::Poly;
use super::FrameError;
use crate::exact::{rank_of, solve_linear, ExactMatrix, Scalar, Vector};
use crate::freelie::{cumulative_dim, min_length_for_codim, word_to_string, HallBasis, Word};
use crate::liealg::{build_symbol_algebra, QuotientSpec, SymbolAlgebra};

/// How a model's CR field is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    /// Rigid graph `Im w_j = φ_j(z, z̄)`; each `φ_j` lives on the full chart.
    Rigid { phis: Vec<Poly> },
    /// The field `L` supplied directly.
    Explicit { field: PolyVectorField },
}

/// A CR model of CR dimension one and codimension `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub id: String,
    pub k: usize,
    pub realization: Realization,
}

impl ModelSpec {
    /// Rigid model from its defining polynomials. Each `φ_j` must be real and
    /// homogeneous of weight `w_j`, with weights nondecreasing. Whether the
    /// model is totally nondegenerate is left to [`growth_and_nondegeneracy`].
    pub fn rigid(id: impl Into<String>, phis: Vec<Poly>) -> Result<Self, FrameError> {
        let k = phis.len();
        if k == 0 {
            return Err(FrameError::InvalidModel("a model needs at least one defining function".into()));
        }
        let chart = Chart::Cr { k };
        let perm: Vec<usize> = [1, 0].into_iter().chain(2..2 + k).collect();
        for (j, phi) in phis.iter().enumerate() {
            if phi.nvars() != chart.dim() {
                return Err(FrameError::ChartMismatch(format!("φ{} has {} variables", j + 1, phi.nvars())));
            }
            if (2..2 + k).any(|v| phi.depends_on(v)) {
                return Err(FrameError::NotRigid(format!("φ{} depends on u", j + 1)));
            }
            if phi.conj_permuted(&perm) != *phi {
                return Err(FrameError::InvalidModel(format!("φ{} is not real", j + 1)));
            }
        }
        let model = Self { id: id.into(), k, realization: Realization::Rigid { phis } };
        let weights = model.weights().expect("rigid");
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(FrameError::InvalidModel(format!("weights {weights:?} are not nondecreasing")));
        }
        Ok(model)
    }

    /// Model given by its CR field directly.
    pub fn explicit(id: impl Into<String>, field: PolyVectorField) -> Result<Self, FrameError> {
        let Chart::Cr { k } = *field.chart() else {
            return Err(FrameError::ChartMismatch("explicit field must live on the CR chart".into()));
        };
        Ok(Self { id: id.into(), k, realization: Realization::Explicit { field } })
    }

    /// Weights of the `w_j`: the degrees of the homogeneous `φ_j`.
    pub fn weights(&self) -> Result<Vec<usize>, FrameError> {
        let Realization::Rigid { phis } = &self.realization else {
            return Err(FrameError::NotRigid("weights need defining functions".into()));
        };
        phis.iter()
            .enumerate()
            .map(|(j, phi)| {
                let mut degs = phi.terms().keys().map(|e| e.iter().sum::<u32>() as usize);
                let d = degs.next().unwrap_or(0);
                if degs.any(|e| e != d) {
                    return Err(FrameError::InvalidModel(format!("φ{} is not homogeneous", j + 1)));
                }
                Ok(d)
            })
            .collect()
    }

    pub fn chart(&self) -> Chart {
        Chart::Cr { k: self.k }
    }
}

/// The field `L` spanning `T^{1,0}` of the model.
///
/// For a rigid model, `L = ∂_z + Σ a_j ∂_{u_j}` with `a_j` fixed by
/// `L(u_j − i φ_j) = 0`, so `a_j = i ∂φ_j/∂z`. Tangency of `L̄` to the
/// holomorphic coordinates restricted to the model is checked exactly.
pub fn tangential_cr_field(m: &ModelSpec) -> Result<PolyVectorField, FrameError> {
    let phis = match &m.realization {
        Realization::Explicit { field } => return Ok(field.clone()),
        Realization::Rigid { phis } => phis,
    };
    let chart = m.chart();
    let n = chart.dim();
    let mut comps = vec![Poly::zero(n); n];
    comps[0] = Poly::one(n);
    for (j, phi) in phis.iter().enumerate() {
        // coefficient of ∂_{u_j}: solve a_j · 1 − i ∂_z φ_j = 0
        comps[2 + j] = phi.derivative(0).scale(&Scalar::i());
    }
    let l = PolyVectorField::new(chart, comps)?;
    let lb = l.conj()?;
    let z = Poly::var(n, 0);
    let ok = lb.apply(&z).is_zero()
        && phis.iter().enumerate().all(|(j, phi)| {
            let w = &Poly::var(n, 2 + j) + &phi.scale(&Scalar::i());
            lb.apply(&w).is_zero()
        });
    if !ok {
        return Err(FrameError::InvalidModel("tangency check failed".into()));
    }
    Ok(l)
}

/// Nested spans `D_1 ⊆ D_2 ⊆ …` at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub spans: Vec<Vec<Vector>>,
    pub growth: Vec<usize>,
}

/// Outcome of the total-nondegeneracy check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub totally_nondegenerate: bool,
    /// Least length reaching the full tangent space, if within the bound.
    pub nonholonomy: Option<usize>,
    pub expected_length: usize,
}

/// Fields of all Hall words of length ≤ `max_length` built from `L`, `L̄`.
pub struct HallFrame {
    pub hall: HallBasis,
    pub fields: Vec<PolyVectorField>,
}

impl HallFrame {
    pub fn new(l: &PolyVectorField, max_length: usize) -> Result<Self, FrameError> {
        let hall = HallBasis::new(max_length);
        let mut fields: Vec<PolyVectorField> = Vec::with_capacity(hall.len());
        for i in 0..hall.len() {
            let f = match hall.factors(i) {
                None if i == 0 => l.clone(),
                None => l.conj()?,
                Some((a, b)) => vf_bracket(&fields[a], &fields[b])?,
            };
            fields.push(f);
        }
        Ok(Self { hall, fields })
    }
}

/// Growth vector at the origin and the total-nondegeneracy verdict.
pub fn growth_and_nondegeneracy(m: &ModelSpec) -> Result<(Filtration, Nondegeneracy), FrameError> {
    let l = tangential_cr_field(m)?;
    let rho = min_length_for_codim(m.k);
    let full = m.chart().dim();
    let frame = HallFrame::new(&l, rho + 1)?;
    let mut spans = Vec::new();
    let mut growth = Vec::new();
    let mut current: Vec<Vector> = Vec::new();
    for len in 1..=rho + 1 {
        for i in frame.hall.indices_of_length(len) {
            let v = frame.fields[i].at_origin();
            let mut trial = current.clone();
            trial.push(v);
            if rank_of(&trial, full) > current.len() {
                current = trial;
            }
        }
        spans.push(current.clone());
        growth.push(current.len());
        if current.len() == full {
            break;
        }
    }
    let nonholonomy = growth.iter().position(|&d| d == full).map(|p| p + 1);
    let free_below = (1..rho).all(|len| growth.get(len - 1) == Some(&cumulative_dim(len)));
    let verdict = Nondegeneracy {
        totally_nondegenerate: nonholonomy == Some(rho) && free_below,
        nonholonomy,
        expected_length: rho,
    };
    Ok((Filtration { spans, growth }, verdict))
}

/// Symbol algebra read off a model, with the fields realizing its basis.
#[derive(Debug, Clone)]
pub struct FrameSymbol {
    pub symbol: SymbolAlgebra,
    /// Top-length Hall words kept as basis directions.
    pub survivors: Vec<Word>,
    /// One field per symbol basis element.
    pub fields: Vec<PolyVectorField>,
    pub growth: Vec<usize>,
}

/// The model-induced symbol algebra.
///
/// Top-length Hall words are evaluated at the origin; survivors are picked
/// greedily in Hall order modulo the lower span, and every top word is
/// written in terms of them. The resulting projection is handed to
/// [`build_symbol_algebra`], and the fields are then checked to satisfy the
/// symbol's bracket relations exactly, not only at the origin.
pub fn symbol_from_frame(m: &ModelSpec) -> Result<FrameSymbol, FrameError> {
    let (filtration, verdict) = growth_and_nondegeneracy(m)?;
    if !verdict.totally_nondegenerate {
        return Err(FrameError::NotTotallyNondegenerate { growth: filtration.growth });
    }
    let l = tangential_cr_field(m)?;
    let rho = verdict.expected_length;
    let frame = HallFrame::new(&l, rho)?;
    let full = m.chart().dim();
    let lower = cumulative_dim(rho - 1);
    let top = frame.hall.indices_of_length(rho);

    let mut columns: Vec<Vector> = (0..lower).map(|i| frame.fields[i].at_origin()).collect();
    let mut survivors = Vec::new();
    for h in top.clone() {
        let mut trial = columns.clone();
        trial.push(frame.fields[h].at_origin());
        if rank_of(&trial, full) > columns.len() {
            columns = trial;
            survivors.push(h);
        }
    }
    let q = survivors.len();
    debug_assert_eq!(lower + q, full);
    let basis = ExactMatrix::from_columns(full, &columns)?;
    let mut projection = ExactMatrix::zeros(q, top.len());
    for (c, h) in top.clone().enumerate() {
        let coords = solve_linear(&basis, &frame.fields[h].at_origin())?;
        for s in 0..q {
            projection[(s, c)] = coords[lower + s].clone();
        }
    }
    let symbol = build_symbol_algebra(m.k, QuotientSpec::Frame { model: m.id.clone(), matrix: projection })?;

    let fields: Vec<PolyVectorField> =
        (0..lower).chain(survivors.iter().copied()).map(|i| frame.fields[i].clone()).collect();
    let alg = symbol.algebra();
    let chart = m.chart();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let lhs = vf_bracket(&fields[i], &fields[j])?;
            let coeffs = alg.bracket(i, j);
            let terms: Vec<(Scalar, &PolyVectorField)> =
                coeffs.iter().cloned().zip(fields.iter()).filter(|(c, _)| !c.is_zero()).collect();
            if lhs != PolyVectorField::combination(&chart, &terms)? {
                return Err(FrameError::NotRealized { pair: (alg.label(i).to_string(), alg.label(j).to_string()) });
            }
        }
    }
    Ok(FrameSymbol {
        symbol,
        survivors: survivors.iter().map(|&h| frame.hall.word(h).word.clone()).collect(),
        fields,
        growth: filtration.growth,
    })
}

impl FrameSymbol {
    pub fn survivor_labels(&self) -> Vec<String> {
        self.survivors.iter().map(|w| word_to_string(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::exact::rat;

    fn phi(k: usize, terms: &[((u32, u32), Scalar)]) -> Poly {
        let mut p = Poly::zero(2 + k);
        for ((a, b), c) in terms {
            let mut e = vec![0; 2 + k];
            e[0] = *a;
            e[1] = *b;
            p.add_term(e, c.clone());
        }
        p
    }

    fn half() -> Scalar {
        Scalar::from(rat(1, 2))
    }

    fn re(k: usize, a: u32, b: u32) -> Poly {
        phi(k, &[((a, b), half()), ((b, a), half())])
    }

    fn im(k: usize, a: u32, b: u32) -> Poly {
        phi(k, &[((a, b), -half().mul_i()), ((b, a), half().mul_i())])
    }

    fn heisenberg() -> ModelSpec {
        ModelSpec::rigid("heisenberg", vec![phi(1, &[((1, 1), Scalar::one())])]).unwrap()
    }

    fn cubic(k: usize) -> ModelSpec {
        let mut phis = vec![phi(k, &[((1, 1), Scalar::one())]), re(k, 2, 1)];
        if k == 3 {
            phis.push(im(k, 2, 1));
        }
        ModelSpec::rigid(format!("k{k}"), phis).unwrap()
    }

    #[test]
    fn heisenberg_field() {
        let l = tangential_cr_field(&heisenberg()).unwrap();
        assert_eq!(l.to_string(), "∂/∂z + i z̄ ∂/∂u₁");
    }

    #[test]
    fn flat_and_degenerate() {
        let flat = ModelSpec::rigid("flat", vec![Poly::zero(3)]).unwrap();
        assert_eq!(tangential_cr_field(&flat).unwrap().to_string(), "∂/∂z");
        let levi_flat = ModelSpec::rigid("levi-flat", vec![phi(1, &[((2, 0), Scalar::one()), ((0, 2), Scalar::one())])])
            .unwrap();
        let (f, v) = growth_and_nondegeneracy(&levi_flat).unwrap();
        assert_eq!(f.growth[..2], [2, 2]);
        assert!(!v.totally_nondegenerate);
        assert!(matches!(symbol_from_frame(&levi_flat), Err(FrameError::NotTotallyNondegenerate { .. })));
    }

    #[test]
    fn growth_vectors() {
        let (f, v) = growth_and_nondegeneracy(&heisenberg()).unwrap();
        assert_eq!(f.growth, vec![2, 3]);
        assert!(v.totally_nondegenerate);
        assert_eq!(v.nonholonomy, Some(2));
        let (f, v) = growth_and_nondegeneracy(&cubic(3)).unwrap();
        assert_eq!(f.growth, vec![2, 3, 5]);
        assert!(v.totally_nondegenerate);
        let l = tangential_cr_field(&cubic(3)).unwrap();
        assert_eq!(l.component(4).total_degree(), 2);
    }

    #[test]
    fn model_validation() {
        assert!(matches!(
            ModelSpec::rigid("complex", vec![phi(1, &[((1, 1), Scalar::i())])]),
            Err(FrameError::InvalidModel(_))
        ));
        let mut p = phi(1, &[((1, 1), Scalar::one())]);
        p.add_term(vec![0, 0, 1], Scalar::one());
        assert!(matches!(ModelSpec::rigid("u", vec![p]), Err(FrameError::NotRigid(_))));
        let decreasing = vec![re(2, 2, 1), phi(2, &[((1, 1), Scalar::one())])];
        assert!(matches!(ModelSpec::rigid("dec", decreasing), Err(FrameError::InvalidModel(_))));
    }

    #[test]
    fn heisenberg_symbol_matches_default() {
        let fs = symbol_from_frame(&heisenberg()).unwrap();
        let direct = build_symbol_algebra(1, QuotientSpec::Default).unwrap();
        let (mut a, mut b) = (fs.symbol.algebra().to_doc(), direct.algebra().to_doc());
        a.meta.quotient = None;
        b.meta.quotient = None;
        assert_eq!(a, b);
    }

    #[test]
    fn cubic_symbols() {
        let fs = symbol_from_frame(&cubic(3)).unwrap();
        assert_eq!(fs.symbol.algebra().dim(), 5);
        assert_eq!(fs.survivor_labels(), vec!["112", "122"]);
        let fs = symbol_from_frame(&cubic(2)).unwrap();
        assert_eq!(fs.symbol.algebra().dim(), 4);
        assert_eq!(fs.survivors.len(), 1);
        assert!(fs.symbol.is_self_conjugate());
        assert_eq!(fs.symbol.projection().cols(), 2);
    }
}
