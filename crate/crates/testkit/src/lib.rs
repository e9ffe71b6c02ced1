//! Brute-force oracles shared by the test suites.
//!
//! Nothing here depends on the library under test: words are plain byte
//! vectors, trees are this crate's own [`Tree`], and Lie polynomials live in
//! the free associative algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Count words of length `len` over `{1,2}` that are strictly smaller than
/// every proper rotation, i.e. Lyndon words, by exhaustive enumeration.
pub fn count_lyndon_words(len: usize) -> usize {
    (0u64..(1u64 << len))
        .map(|bits| (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 1 { 2u8 } else { 1u8 }).collect::<Vec<_>>())
        .filter(|w| is_lyndon_by_rotation(w))
        .count()
}

pub fn is_lyndon_by_rotation(w: &[u8]) -> bool {
    (1..w.len()).all(|r| {
        let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
        w < rot.as_slice()
    })
}

/// Minimal binary tree over the generators 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    G(u8),
    B(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn br(a: Tree, b: Tree) -> Tree {
        Tree::B(Box::new(a), Box::new(b))
    }
}

/// Element of the free associative algebra over ℤ on letters 1, 2.
pub type Assoc = BTreeMap<Vec<u8>, i64>;

fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend(v);
            *out.entry(w).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn assoc_add(acc: &mut Assoc, x: &Assoc, c: i64) {
    for (w, v) in x {
        *acc.entry(w.clone()).or_insert(0) += c * v;
    }
    acc.retain(|_, c| *c != 0);
}

/// Expand a tree as iterated commutators `[a,b] = ab − ba`.
pub fn expand(t: &Tree) -> Assoc {
    match t {
        Tree::G(g) => Assoc::from([(vec![*g], 1)]),
        Tree::B(a, b) => {
            let (ea, eb) = (expand(a), expand(b));
            let mut out = assoc_mul(&ea, &eb);
            assoc_add(&mut out, &assoc_mul(&eb, &ea), -1);
            out
        }
    }
}

pub fn commutator(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = assoc_mul(a, b);
    assoc_add(&mut out, &assoc_mul(b, a), -1);
    out
}

/// Coordinates of a Lie polynomial in a basis of standard-bracketed Lyndon
/// words, read off triangularly: the smallest word in the support of a Lie
/// polynomial is Lyndon, and the expansion of its standard bracketing has
/// that word as its smallest term with coefficient 1.
///
/// `basis` pairs each Lyndon word with its bracketing. Returns `None` if the
/// polynomial is not in the span.
pub fn lyndon_coordinates(poly: &Assoc, basis: &[(Vec<u8>, Tree)]) -> Option<BTreeMap<usize, i64>> {
    let expansions: Vec<Assoc> = basis.iter().map(|(_, t)| expand(t)).collect();
    let mut rest = poly.clone();
    let mut coords = BTreeMap::new();
    while let Some((w, &c)) = rest.iter().min_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.cmp(b))) {
        let idx = basis.iter().position(|(bw, _)| bw == w)?;
        let lead = expansions[idx].get(w).copied().unwrap_or(0);
        if lead != 1 {
            return None;
        }
        let w = w.clone();
        assoc_add(&mut rest, &expansions[idx], -c);
        debug_assert!(!rest.contains_key(&w));
        coords.insert(idx, c);
    }
    Some(coords)
}

/// Coefficients of `log(exp(X)·exp(Y))` in the truncated free associative
/// algebra on letters 0 (X) and 1 (Y), through degree `n`.
pub fn bch_series(n: usize) -> BTreeMap<Vec<u8>, BigRational> {
    type Poly = BTreeMap<Vec<u8>, BigRational>;
    let fact = |k: usize| -> BigInt { (1..=k as u64).map(BigInt::from).product() };
    let mul = |a: &Poly, b: &Poly| -> Poly {
        let mut out = Poly::new();
        for (u, x) in a {
            for (v, y) in b {
                if u.len() + v.len() > n {
                    continue;
                }
                let mut w = u.clone();
                w.extend(v);
                let e = out.entry(w).or_insert_with(BigRational::zero);
                *e += x * y;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut z = Poly::new();
    for p in 0..=n {
        for q in 0..=(n - p) {
            if p + q == 0 {
                continue;
            }
            let mut w = vec![0u8; p];
            w.extend(vec![1u8; q]);
            z.insert(w, BigRational::new(BigInt::one(), fact(p) * fact(q)));
        }
    }
    let mut log = Poly::new();
    let mut power = z.clone();
    for k in 1..=n {
        let c = BigRational::new(if k % 2 == 1 { BigInt::one() } else { -BigInt::one() }, BigInt::from(k));
        for (w, v) in &power {
            let e = log.entry(w.clone()).or_insert_with(BigRational::zero);
            *e += v * &c;
        }
        power = mul(&power, &z);
    }
    log.retain(|_, c| !c.is_zero());
    log
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts() {
        let counts: Vec<usize> = (1..=7).map(count_lyndon_words).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18]);
    }

    #[test]
    fn bch_low_order() {
        let s = bch_series(3);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(s[&vec![0, 1]], half);
        assert_eq!(s[&vec![1, 0]], -half);
        assert_eq!(s[&vec![0, 0, 1]], BigRational::new(BigInt::one(), BigInt::from(12)));
    }

    #[test]
    fn triangular_reading() {
        let basis = vec![
            (vec![1], Tree::G(1)),
            (vec![2], Tree::G(2)),
            (vec![1, 2], Tree::br(Tree::G(1), Tree::G(2))),
        ];
        let p = commutator(&expand(&Tree::G(2)), &expand(&Tree::G(1)));
        assert_eq!(lyndon_coordinates(&p, &basis), Some(BTreeMap::from([(2, -1)])));
    }
}
