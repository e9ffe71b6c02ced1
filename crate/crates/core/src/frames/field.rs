use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::FrameError;
use crate::exact::{Scalar, Vector};

/// Coordinate system a field lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chart {
    /// `(z, z̄, u₁, …, u_k)` on a codimension-`k` model.
    Cr { k: usize },
    /// Exponential coordinates on a nilpotent group, one per basis label.
    Exponential { labels: Vec<String> },
}

impl Chart {
    pub fn dim(&self) -> usize {
        match self {
            Chart::Cr { k } => 2 + k,
            Chart::Exponential { labels } => labels.len(),
        }
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            Chart::Cr { k } => {
                let mut v = vec!["z".to_string(), "z̄".to_string()];
                v.extend((1..=*k).map(|j| format!("u{}", subscript(j))));
                v
            }
            Chart::Exponential { labels } => labels.iter().map(|l| format!("a[{l}]")).collect(),
        }
    }

    /// Formal conjugation on the CR chart: `z ↔ z̄`, `u` fixed.
    fn conj_perm(&self) -> Option<Vec<usize>> {
        match self {
            Chart::Cr { k } => {
                let mut p = vec![1, 0];
                p.extend(2..2 + k);
                Some(p)
            }
            Chart::Exponential { .. } => None,
        }
    }
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

/// Vector field with polynomial coefficients, one per coordinate direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    chart: Chart,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(chart: Chart) -> Self {
        let n = chart.dim();
        Self { chart, components: vec![Poly::zero(n); n] }
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: Chart, i: usize) -> Self {
        let mut f = Self::zero(chart);
        f.components[i] = Poly::one(f.chart.dim());
        f
    }

    pub fn new(chart: Chart, components: Vec<Poly>) -> Result<Self, FrameError> {
        let n = chart.dim();
        if components.len() != n || components.iter().any(|p| p.nvars() != n) {
            return Err(FrameError::ChartMismatch(format!("expected {n} components in {n} variables")));
        }
        Ok(Self { chart, components })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Derivative of `f` along the field.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(f.nvars());
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { chart: self.chart.clone(), components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FrameError> {
        self.same_chart(other)?;
        Ok(Self {
            chart: self.chart.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    fn same_chart(&self, other: &Self) -> Result<(), FrameError> {
        if self.chart != other.chart {
            return Err(FrameError::ChartMismatch(format!("{:?} vs {:?}", self.chart, other.chart)));
        }
        Ok(())
    }

    /// Value at the origin, as a vector of components.
    pub fn at_origin(&self) -> Vector {
        self.components.iter().map(Poly::constant_term).collect()
    }

    /// Formal conjugate on the CR chart.
    pub fn conj(&self) -> Result<Self, FrameError> {
        let perm = self
            .chart
            .conj_perm()
            .ok_or_else(|| FrameError::ChartMismatch("conjugation needs the CR chart".into()))?;
        let mut components = vec![Poly::zero(self.chart.dim()); self.chart.dim()];
        for (i, c) in self.components.iter().enumerate() {
            components[perm[i]] = c.conj_permuted(&perm);
        }
        Ok(Self { chart: self.chart.clone(), components })
    }

    /// Combination `Σ cᵢ Xᵢ`.
    pub fn combination(chart: &Chart, terms: &[(Scalar, &PolyVectorField)]) -> Result<Self, FrameError> {
        let mut acc = Self::zero(chart.clone());
        for (c, f) in terms {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// Commutator `[a, b] = a∘b − b∘a`, componentwise `a(b_i) − b(a_i)`.
pub fn vf_bracket(a: &PolyVectorField, b: &PolyVectorField) -> Result<PolyVectorField, FrameError> {
    a.same_chart(b)?;
    let components = a.components.iter().zip(&b.components).map(|(ai, bi)| &a.apply(bi) - &b.apply(ai)).collect();
    Ok(PolyVectorField { chart: a.chart.clone(), components })
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.chart.names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut parts = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = format!("∂/∂{}", names[i]);
            let body = c.display_with(&refs);
            let part = if *c == Poly::one(c.nvars()) {
                d
            } else if -c == Poly::one(c.nvars()) {
                format!("-{d}")
            } else if c.terms().len() == 1 {
                format!("{body} {d}")
            } else {
                format!("({body}) {d}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}
