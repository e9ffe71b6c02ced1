//! Free Lie algebra on two generators.
//!
//! The basis is the Lyndon basis with standard bracketing: Lyndon words over
//! the alphabet `1 < 2`, ordered by length and then lexicographically. The
//! generator `1` stands for the holomorphic field 𝓛 and `2` for its conjugate.
//!
//! Brackets are rewritten into this basis using antisymmetry and the Jacobi
//! identity only, so every coefficient is an integer.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

/// A word over the letters `1` and `2`.
pub type Word = Vec<u8>;

/// Integer linear combination of basis words, keyed by basis index.
pub type LieElement = BTreeMap<usize, i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeLieError {
    #[error("bracket of length {length} exceeds the basis maximum {max}")]
    LengthOverflow { length: usize, max: usize },
    #[error("unknown generator {0}; only 1 and 2 exist")]
    UnknownGenerator(u8),
    #[error("`{0}` is not a Lyndon word of the basis")]
    NotInBasis(String),
}

/// A formal bracketing of the generators, e.g. `[1,[1,2]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bracketing {
    Gen(u8),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn bracket(a: Bracketing, b: Bracketing) -> Self {
        Self::Bracket(Box::new(a), Box::new(b))
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Gen(_) => 1,
            Self::Bracket(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letters read left to right.
    pub fn foliage(&self) -> Word {
        match self {
            Self::Gen(g) => vec![*g],
            Self::Bracket(a, b) => {
                let mut w = a.foliage();
                w.extend(b.foliage());
                w
            }
        }
    }

    /// Exchange the two generators.
    pub fn swapped(&self) -> Self {
        match self {
            Self::Gen(g) => Self::Gen(3 - g),
            Self::Bracket(a, b) => Self::bracket(a.swapped(), b.swapped()),
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gen(g) => write!(f, "{g}"),
            Self::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

// JSON form: a generator is an integer, a bracket is a two-element array.
impl Serialize for Bracketing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Gen(g) => s.serialize_u8(*g),
            Self::Bracket(a, b) => {
                let mut t = s.serialize_tuple(2)?;
                t.serialize_element(a.as_ref())?;
                t.serialize_element(b.as_ref())?;
                t.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Bracketing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        fn convert<E: de::Error>(v: &serde_json::Value) -> Result<Bracketing, E> {
            match v {
                serde_json::Value::Number(n) => match n.as_u64() {
                    Some(g @ (1 | 2)) => Ok(Bracketing::Gen(g as u8)),
                    _ => Err(E::custom(format!("generator must be 1 or 2, got {n}"))),
                },
                serde_json::Value::Array(items) if items.len() == 2 => {
                    Ok(Bracketing::bracket(convert(&items[0])?, convert(&items[1])?))
                }
                other => Err(E::custom(format!("expected generator or pair, got {other}"))),
            }
        }
        let v = serde_json::Value::deserialize(d)?;
        convert(&v)
    }
}

/// One element of the Hall basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWord {
    pub word: Word,
    pub tree: Bracketing,
    /// Number of `1`s and `2`s.
    pub bidegree: (u32, u32),
}

impl HallWord {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word_string(&self) -> String {
        word_to_string(&self.word)
    }
}

pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Parse a word such as `"1122"`.
pub fn parse_word(s: &str) -> Result<Word, FreeLieError> {
    s.trim()
        .bytes()
        .map(|b| match b {
            b'1' => Ok(1),
            b'2' => Ok(2),
            other => Err(FreeLieError::UnknownGenerator(other.wrapping_sub(b'0'))),
        })
        .collect()
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`len` part of the free Lie algebra on two
/// generators (Witt's formula `(1/ℓ) Σ_{d|ℓ} μ(d) 2^{ℓ/d}`).
pub fn witt_dim(len: usize) -> usize {
    assert!(len >= 1, "witt_dim is defined for positive lengths");
    let sum: i64 = (1..=len)
        .filter(|d| len % d == 0)
        .map(|d| mobius(d) * (1i64 << (len / d)))
        .sum();
    (sum / len as i64) as usize
}

/// `Σ_{j ≤ len} witt_dim(j)`: the rank reachable with brackets of length at
/// most `len`.
pub fn cumulative_dim(len: usize) -> usize {
    (1..=len).map(witt_dim).sum()
}

/// Smallest length whose cumulative rank reaches `2 + codim`.
pub fn min_length_for_codim(codim: usize) -> usize {
    assert!(codim >= 1, "codimension must be positive");
    (1..).find(|&l| cumulative_dim(l) >= 2 + codim).expect("cumulative_dim is unbounded")
}

/// Codimensions whose minimal length equals `len`, as an inclusive range.
pub fn codim_range_for_length(len: usize) -> Option<(usize, usize)> {
    let lo = if len == 1 { return None } else { cumulative_dim(len - 1) - 1 };
    let hi = cumulative_dim(len) - 2;
    (lo <= hi).then_some((lo, hi))
}

/// Lyndon words over `{1,2}` of every length up to `max`, by length then
/// lexicographic order (Duval's generation).
fn lyndon_words(max: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut w: Vec<u8> = vec![1];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&2) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..].iter().chain(&w[..i]).cmp(w.iter()) == std::cmp::Ordering::Greater)
}

/// Standard factorization `w = u·v` with `v` the longest proper Lyndon suffix.
fn standard_factorization(w: &[u8]) -> (Word, Word) {
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length ≥ 2");
    (w[..split].to_vec(), w[split..].to_vec())
}

/// Hall basis of the free Lie algebra on two generators through a maximal
/// length, with its bracket table.
#[derive(Debug, Clone)]
pub struct HallBasis {
    max_length: usize,
    words: Vec<HallWord>,
    index: HashMap<Word, usize>,
    factors: Vec<Option<(usize, usize)>>,
    table: Vec<Vec<Option<LieElement>>>,
}

impl HallBasis {
    pub fn new(max_length: usize) -> Self {
        assert!(max_length >= 1, "Hall basis needs max_length ≥ 1");
        let lyndon = lyndon_words(max_length);
        let index: HashMap<Word, usize> = lyndon.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut words: Vec<HallWord> = Vec::with_capacity(lyndon.len());
        let mut factors = Vec::with_capacity(lyndon.len());
        for w in &lyndon {
            let bidegree = (
                w.iter().filter(|&&c| c == 1).count() as u32,
                w.iter().filter(|&&c| c == 2).count() as u32,
            );
            let (tree, fac) = if w.len() == 1 {
                (Bracketing::Gen(w[0]), None)
            } else {
                let (u, v) = standard_factorization(w);
                let (iu, iv) = (index[&u], index[&v]);
                (Bracketing::bracket(words[iu].tree.clone(), words[iv].tree.clone()), Some((iu, iv)))
            };
            words.push(HallWord { word: w.clone(), tree, bidegree });
            factors.push(fac);
        }
        let mut basis = Self { max_length, words, index, factors, table: Vec::new() };
        basis.table = basis.build_table();
        basis
    }

    fn build_table(&self) -> Vec<Vec<Option<LieElement>>> {
        let n = self.words.len();
        let mut memo: HashMap<(usize, usize), LieElement> = HashMap::new();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (self.words[i].len() + self.words[j].len() <= self.max_length)
                            .then(|| self.rewrite(i, j, &mut memo))
                    })
                    .collect()
            })
            .collect()
    }

    /// `[P_u, P_v]` in the Lyndon basis; total length must fit the basis.
    fn rewrite(&self, u: usize, v: usize, memo: &mut HashMap<(usize, usize), LieElement>) -> LieElement {
        if let Some(hit) = memo.get(&(u, v)) {
            return hit.clone();
        }
        let result = match self.words[u].word.cmp(&self.words[v].word) {
            std::cmp::Ordering::Equal => LieElement::new(),
            std::cmp::Ordering::Greater => negate(&self.rewrite(v, u, memo)),
            std::cmp::Ordering::Less => match self.factors[u] {
                Some((u1, u2)) if self.words[u2].word < self.words[v].word => {
                    // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
                    let mut acc = LieElement::new();
                    for (w, c) in self.rewrite(u2, v, memo) {
                        add_scaled(&mut acc, &self.rewrite(u1, w, memo), c);
                    }
                    for (w, c) in self.rewrite(u1, v, memo) {
                        add_scaled(&mut acc, &self.rewrite(w, u2, memo), c);
                    }
                    acc
                }
                _ => {
                    let mut uv = self.words[u].word.clone();
                    uv.extend(&self.words[v].word);
                    LieElement::from([(self.index[&uv], 1)])
                }
            },
        };
        memo.insert((u, v), result.clone());
        result
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &HallWord {
        &self.words[i]
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Basis indices of the words of exactly this length.
    pub fn indices_of_length(&self, len: usize) -> std::ops::Range<usize> {
        let start = self.words.iter().position(|w| w.len() >= len).unwrap_or(self.words.len());
        let end = self.words.iter().position(|w| w.len() > len).unwrap_or(self.words.len());
        start..end
    }

    /// Standard factors of a non-generator basis word.
    pub fn factors(&self, i: usize) -> Option<(usize, usize)> {
        self.factors[i]
    }

    /// Bracket of two basis words, `None` when the result is too long.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<&LieElement> {
        self.table[i][j].as_ref()
    }

    /// Bilinear bracket of two elements. With `truncate`, terms longer than
    /// the basis are dropped; otherwise they are an error.
    pub fn bracket(&self, a: &LieElement, b: &LieElement, truncate: bool) -> Result<LieElement, FreeLieError> {
        let mut acc = LieElement::new();
        for (&i, &ci) in a {
            for (&j, &cj) in b {
                match &self.table[i][j] {
                    Some(t) => add_scaled(&mut acc, t, ci * cj),
                    None if truncate => {}
                    None => {
                        return Err(FreeLieError::LengthOverflow {
                            length: self.words[i].len() + self.words[j].len(),
                            max: self.max_length,
                        })
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Expand a formal bracketing into the basis.
    pub fn eval(&self, t: &Bracketing, truncate: bool) -> Result<LieElement, FreeLieError> {
        match t {
            Bracketing::Gen(g @ (1 | 2)) => Ok(LieElement::from([((*g - 1) as usize, 1)])),
            Bracketing::Gen(g) => Err(FreeLieError::UnknownGenerator(*g)),
            Bracketing::Bracket(a, b) => {
                if !truncate && t.len() > self.max_length {
                    return Err(FreeLieError::LengthOverflow { length: t.len(), max: self.max_length });
                }
                let (ea, eb) = (self.eval(a, truncate)?, self.eval(b, truncate)?);
                self.bracket(&ea, &eb, truncate)
            }
        }
    }

    /// Image of a basis word under the generator swap `1 ↔ 2`.
    pub fn swap_image(&self, i: usize) -> LieElement {
        self.eval(&self.words[i].tree.swapped(), false).expect("swap preserves length")
    }
}

/// `[a, b]` for two formal bracketings, rewritten into the Hall basis.
pub fn hall_rewrite(basis: &HallBasis, a: &Bracketing, b: &Bracketing, truncate: bool) -> Result<LieElement, FreeLieError> {
    basis.eval(&Bracketing::bracket(a.clone(), b.clone()), truncate)
}

pub fn add_scaled(acc: &mut LieElement, x: &LieElement, c: i64) {
    if c == 0 {
        return;
    }
    for (&k, &v) in x {
        let e = acc.entry(k).or_insert(0);
        *e += c * v;
        if *e == 0 {
            acc.remove(&k);
        }
    }
}

fn negate(x: &LieElement) -> LieElement {
    x.iter().map(|(&k, &v)| (k, -v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u8) -> Bracketing {
        Bracketing::Gen(i)
    }

    fn br(a: Bracketing, b: Bracketing) -> Bracketing {
        Bracketing::bracket(a, b)
    }

    #[test]
    fn witt_small() {
        let dims: Vec<usize> = (1..=7).map(witt_dim).collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6, 9, 18]);
    }

    #[test]
    fn cumulative_and_lengths() {
        assert_eq!(cumulative_dim(2), 3);
        assert_eq!(cumulative_dim(3), 5);
        assert_eq!(cumulative_dim(4), 8);
        assert_eq!(min_length_for_codim(1), 2);
        assert_eq!(min_length_for_codim(3), 3);
        assert_eq!(min_length_for_codim(7), 5);
        assert_eq!(codim_range_for_length(1), None);
        assert_eq!(codim_range_for_length(2), Some((1, 1)));
        assert_eq!(codim_range_for_length(4), Some((4, 6)));
        assert_eq!(codim_range_for_length(5), Some((7, 12)));
    }

    #[test]
    fn small_bases() {
        let b1 = HallBasis::new(1);
        assert_eq!(b1.words().iter().map(|w| w.tree.clone()).collect::<Vec<_>>(), vec![g(1), g(2)]);
        let b2 = HallBasis::new(2);
        assert_eq!(b2.word(2).tree, br(g(1), g(2)));
        let b3 = HallBasis::new(3);
        assert_eq!(b3.len(), 5);
        assert_eq!(b3.word(3).tree, br(g(1), br(g(1), g(2))));
        assert_eq!(b3.word(4).tree, br(br(g(1), g(2)), g(2)));
        assert_eq!(b3.word(4).bidegree, (1, 2));
    }

    #[test]
    fn rewrite_examples() {
        let b = HallBasis::new(5);
        assert!(hall_rewrite(&b, &g(1), &g(1), false).unwrap().is_empty());
        // [2,[1,2]] = -[[1,2],2]
        let r = hall_rewrite(&b, &g(2), &br(g(1), g(2)), false).unwrap();
        assert_eq!(r, LieElement::from([(b.index_of(&[1, 2, 2]).unwrap(), -1)]));
        // a Hall word bracketed with itself vanishes, Hall words evaluate to themselves
        for (i, w) in b.words().iter().enumerate() {
            assert_eq!(b.eval(&w.tree, false).unwrap(), LieElement::from([(i, 1)]));
        }
    }

    #[test]
    fn overflow_and_truncation() {
        let b = HallBasis::new(2);
        let t = br(g(1), br(g(1), g(2)));
        assert_eq!(b.eval(&t, false), Err(FreeLieError::LengthOverflow { length: 3, max: 2 }));
        assert!(b.eval(&t, true).unwrap().is_empty());
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("1122").unwrap(), vec![1, 1, 2, 2]);
        assert!(parse_word("13").is_err());
    }

    #[test]
    fn bracketing_json() {
        let t = br(g(1), br(g(1), g(2)));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[1,[1,2]]");
        assert_eq!(serde_json::from_str::<Bracketing>(&s).unwrap(), t);
        assert!(serde_json::from_str::<Bracketing>("[1,3]").is_err());
    }

    #[test]
    fn antisymmetry_and_jacobi_exhaustive() {
        let b = HallBasis::new(6);
        let n = b.len();
        let e = |i: usize| LieElement::from([(i, 1)]);
        for i in 0..n {
            for j in 0..n {
                if b.word(i).len() + b.word(j).len() > 6 {
                    continue;
                }
                let ij = b.bracket(&e(i), &e(j), false).unwrap();
                let ji = b.bracket(&e(j), &e(i), false).unwrap();
                let mut sum = ij.clone();
                add_scaled(&mut sum, &ji, 1);
                assert!(sum.is_empty(), "antisymmetry fails for {i},{j}");
                for k in 0..n {
                    if b.word(i).len() + b.word(j).len() + b.word(k).len() > 6 {
                        continue;
                    }
                    let mut jac = LieElement::new();
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                    for (a, bb, c) in cyc {
                        let inner = b.bracket(&e(bb), &e(c), false).unwrap();
                        add_scaled(&mut jac, &b.bracket(&e(a), &inner, false).unwrap(), 1);
                    }
                    assert!(jac.is_empty(), "Jacobi fails for {i},{j},{k}");
                }
            }
        }
    }
}
