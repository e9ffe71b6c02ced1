use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{vf_bracket, Chart, PolyVectorField};
use super::poly::Poly;
use super::FrameError;
use crate::exact::{Rational, Scalar};
use crate::liealg::GradedLieAlgebra;

type Assoc = BTreeMap<Vec<u8>, Rational>;

/// Coefficients of `log(exp X · exp Y)` in the free associative algebra on
/// letters `0 = X`, `1 = Y`, through degree `n`.
pub fn dynkin_coefficients(n: usize) -> Assoc {
    let mul = |a: &Assoc, b: &Assoc| -> Assoc {
        let mut out = Assoc::new();
        for (u, x) in a {
            for (v, y) in b {
                if u.len() + v.len() <= n {
                    let w: Vec<u8> = u.iter().chain(v).copied().collect();
                    *out.entry(w).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let factorial = |k: usize| -> BigInt { (1..=k as u64).map(BigInt::from).product() };
    // W = exp X exp Y − 1
    let mut w = Assoc::new();
    for p in 0..=n {
        for q in 0..=n - p {
            if p + q > 0 {
                let word: Vec<u8> = std::iter::repeat(0).take(p).chain(std::iter::repeat(1).take(q)).collect();
                w.insert(word, Rational::new(BigInt::one(), factorial(p) * factorial(q)));
            }
        }
    }
    // log(1 + W) = Σ (−1)^{m+1} W^m / m
    let mut out = Assoc::new();
    let mut power = w.clone();
    for m in 1..=n {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let c = Rational::new(BigInt::from(sign), BigInt::from(m));
        for (word, x) in &power {
            *out.entry(word.clone()).or_insert_with(Rational::zero) += x * &c;
        }
        power = mul(&power, &w);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Polynomial group law of a nilpotent algebra in exponential coordinates.
#[derive(Debug, Clone)]
pub struct GroupLaw {
    labels: Vec<String>,
    class: usize,
    /// Nonzero structure constants `[e_i, e_j] ∋ c e_k` for `i < j`.
    constants: Vec<(usize, usize, usize, Scalar)>,
    /// Lie coefficients `c_w / |w|` of left-normed brackets, per word.
    series: Vec<(Vec<u8>, Scalar)>,
    /// `bch(a, b)` with `a` in variables `0..n` and `b` in `n..2n`.
    law: Vec<Poly>,
}

impl GroupLaw {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Components of `bch(a, b)` over `2n` variables.
    pub fn law(&self) -> &[Poly] {
        &self.law
    }

    /// Bracket of two algebra-valued polynomial vectors.
    fn bracket(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let nv = a[0].nvars();
        let mut out = vec![Poly::zero(nv); self.dim()];
        for (i, j, k, c) in &self.constants {
            let (ai, aj, bi, bj) = (&a[*i], &a[*j], &b[*i], &b[*j]);
            if (ai.is_zero() || bj.is_zero()) && (aj.is_zero() || bi.is_zero()) {
                continue;
            }
            let term = &(ai * bj) - &(aj * bi);
            out[*k] = &out[*k] + &term.scale(c);
        }
        out
    }

    /// `bch(a, b)` for arbitrary polynomial arguments in a common ring.
    pub fn product(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let nv = a[0].nvars();
        let mut out: Vec<Poly> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        // left-normed brackets along a prefix tree, reused between words
        let mut cache: BTreeMap<Vec<u8>, Vec<Poly>> = BTreeMap::new();
        cache.insert(vec![0], a.to_vec());
        cache.insert(vec![1], b.to_vec());
        for (word, c) in &self.series {
            let prefix = &word[..word.len() - 1];
            let last = if word[word.len() - 1] == 0 { a } else { b };
            let head = cache.get(prefix).expect("series sorted by length").clone();
            let value = if head.iter().all(Poly::is_zero) { head } else { self.bracket(&head, last) };
            for (o, v) in out.iter_mut().zip(&value) {
                if !v.is_zero() {
                    *o = &*o + &v.scale(c);
                }
            }
            cache.insert(word.clone(), value);
        }
        debug_assert!(out.iter().all(|p| p.nvars() == nv));
        out
    }

    /// Check `bch(bch(a, b), c) = bch(a, bch(b, c))` on generic symbolic
    /// arguments.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let vars = |offset: usize| -> Vec<Poly> { (0..n).map(|i| Poly::var(3 * n, offset + i)).collect() };
        let (a, b, c) = (vars(0), vars(n), vars(2 * n));
        let lhs = self.product(&self.product(&a, &b), &c);
        let rhs = self.product(&a, &self.product(&b, &c));
        lhs == rhs
    }
}

/// BCH group law via the Dynkin series, truncated at the nilpotency class.
pub fn bch_group_law(m: &GradedLieAlgebra) -> Result<GroupLaw, FrameError> {
    if m.dim() == 0 {
        return Err(FrameError::NotNilpotent("empty algebra".into()));
    }
    if let Some(i) = (0..m.dim()).find(|&i| m.degree(i) >= 0) {
        return Err(FrameError::NotNilpotent(format!("{} has degree {}", m.label(i), m.degree(i))));
    }
    let class = (0..m.dim()).map(|i| (-m.degree(i)) as usize).max().unwrap_or(1);
    let n = m.dim();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (k, c) in m.bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    constants.push((i, j, k, c.clone()));
                }
            }
        }
    }
    // the prefix cache in `product` needs every prefix of a word present
    let coeffs = dynkin_coefficients(class);
    let mut words: Vec<Vec<u8>> = Vec::new();
    for w in coeffs.keys().filter(|w| w.len() >= 2) {
        for l in 2..=w.len() {
            words.push(w[..l].to_vec());
        }
    }
    words.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    words.dedup();
    let series = words
        .into_iter()
        .map(|w| {
            let c = coeffs.get(&w).cloned().unwrap_or_else(Rational::zero) / Rational::from_integer(BigInt::from(w.len()));
            (w, Scalar::from(c))
        })
        .collect();
    let mut law = GroupLaw { labels: m.basis().iter().map(|b| b.label.clone()).collect(), class, constants, series, law: Vec::new() };
    let a: Vec<Poly> = (0..n).map(|i| Poly::var(2 * n, i)).collect();
    let b: Vec<Poly> = (0..n).map(|i| Poly::var(2 * n, n + i)).collect();
    law.law = law.product(&a, &b);
    Ok(law)
}

/// Left-invariant fields `X_i(a) = ∂/∂b_i bch(a, b)|_{b=0}` on exponential
/// coordinates, one per basis element.
pub fn left_invariant_frame(law: &GroupLaw) -> Vec<PolyVectorField> {
    let n = law.dim();
    let chart = Chart::Exponential { labels: law.labels.clone() };
    (0..n)
        .map(|i| {
            let comps = law
                .law
                .iter()
                .map(|p| {
                    let mut d = p.derivative(n + i);
                    for v in n..2 * n {
                        d = d.at_zero(v);
                    }
                    d.restrict(n)
                })
                .collect();
            PolyVectorField::new(chart.clone(), comps).expect("chart dimension")
        })
        .collect()
}

/// First pair whose frame bracket differs from the structure constants.
pub fn frame_bracket_mismatch(m: &GradedLieAlgebra, frame: &[PolyVectorField]) -> Result<Option<(usize, usize)>, FrameError> {
    let chart = frame[0].chart().clone();
    for i in 0..m.dim() {
        for j in i + 1..m.dim() {
            let lhs = vf_bracket(&frame[i], &frame[j])?;
            let coeffs = m.bracket(i, j);
            let terms: Vec<(Scalar, &PolyVectorField)> =
                coeffs.iter().cloned().zip(frame.iter()).filter(|(c, _)| !c.is_zero()).collect();
            if lhs != PolyVectorField::combination(&chart, &terms)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::liealg::{build_symbol_algebra, BasisElement, QuotientSpec};

    #[test]
    fn dynkin_low_order() {
        let c = dynkin_coefficients(3);
        assert_eq!(c[&vec![0, 1]], rat(1, 2));
        assert_eq!(c[&vec![1, 0]], rat(-1, 2));
        assert_eq!(c[&vec![0, 0, 1]], rat(1, 12));
        assert_eq!(c[&vec![0, 1, 0]], rat(-1, 6));
        assert!(!c.contains_key(&vec![0, 0]));
    }

    #[test]
    fn heisenberg_law_and_frame() {
        let m = build_symbol_algebra(1, QuotientSpec::Default).unwrap().real_form().unwrap().algebra;
        let law = bch_group_law(&m).unwrap();
        assert_eq!(law.class(), 2);
        // t-coordinate: a_t + b_t − (a_x b_y − a_y b_x), since [x, y] = −2t
        let v = |i| Poly::var(6, i);
        let expected = &(&(&v(2) + &v(5)) - &(&v(0) * &v(4))) + &(&v(1) * &v(3));
        assert_eq!(law.law()[2], expected);
        assert!(law.is_associative());
        let frame = left_invariant_frame(&law);
        assert_eq!(frame[0].to_string(), "∂/∂a[x] + a[y] ∂/∂a[i[1,2]]");
        assert_eq!(frame_bracket_mismatch(&m, &frame).unwrap(), None);
    }

    #[test]
    fn abelian_frame_is_coordinate() {
        let basis = vec![BasisElement::new("p", -1), BasisElement::new("q", -1)];
        let m = GradedLieAlgebra::from_brackets(basis, vec![]).unwrap();
        let law = bch_group_law(&m).unwrap();
        let frame = left_invariant_frame(&law);
        for (i, f) in frame.iter().enumerate() {
            assert_eq!(*f, PolyVectorField::coordinate(f.chart().clone(), i));
        }
    }

    #[test]
    fn free_class_three() {
        let m = build_symbol_algebra(3, QuotientSpec::Default).unwrap();
        let law = bch_group_law(m.algebra()).unwrap();
        assert!(law.is_associative());
        let frame = left_invariant_frame(&law);
        assert_eq!(frame.len(), 5);
        assert_eq!(frame_bracket_mismatch(m.algebra(), &frame).unwrap(), None);
    }

    #[test]
    fn rejects_non_nilpotent() {
        let basis = vec![BasisElement::new("e", 0)];
        let m = GradedLieAlgebra::from_brackets(basis, vec![]).unwrap();
        assert!(matches!(bch_group_law(&m), Err(FrameError::NotNilpotent(_))));
    }
}
