use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::Scalar;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Polynomial over ℚ(i) in a fixed number of variables, stored sparsely in
/// lexicographic monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Monomial, c: Scalar) {
        assert_eq!(exps.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * &Scalar::from_int(e[i] as i64));
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficients conjugated and variables permuted by `perm`
    /// (variable `i` becomes variable `perm[i]`).
    pub fn conj_permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                e2[perm[i]] = x;
            }
            out.add_term(e2, c.conj());
        }
        out
    }

    /// Same polynomial in a ring with more variables; variable `i` maps to
    /// `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Set variable `i` to zero.
    pub fn at_zero(&self, i: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Same polynomial in the first `nvars` variables; the rest must be absent.
    pub fn restrict(&self, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            assert!(e[nvars..].iter().all(|&x| x == 0), "dropped variable still present");
            out.add_term(e[..nvars].to_vec(), c.clone());
        }
        out
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Human-readable form with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].to_string() } else { format!("{}^{x}", names[i]) })
                .collect();
            let coeff = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if (-c).is_one() {
                "-".into()
            } else if c.is_real() || c.re().is_zero() {
                format!("{c} ")
            } else {
                format!("({c}) ")
            };
            parts.push(format!("{coeff}{}", mono.join(" ")));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial rings differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial rings differ");
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Scalar::zero) += &(c1 * c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.derivative(0), x.scale(&Scalar::from_int(2)));
        assert!((&p - &p).is_zero());
        assert_eq!(p.display_with(&["x", "y"]), "x^2 - y^2");
    }

    #[test]
    fn conjugation_swaps_variables() {
        // i z^2 zbar  ↦  −i zbar^2 z
        let p = Poly::monomial(vec![2, 1], Scalar::i());
        let q = p.conj_permuted(&[1, 0]);
        assert_eq!(q, Poly::monomial(vec![1, 2], -Scalar::i()));
    }
}
