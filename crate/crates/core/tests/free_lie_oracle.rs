use std::collections::BTreeMap;

use levi_tanaka::freelie::{add_scaled, hall_rewrite, witt_dim, Bracketing, HallBasis, LieElement};
use levi_tanaka_testkit::{commutator, count_lyndon_words, expand, lyndon_coordinates, Assoc, Tree};
use proptest::prelude::*;

fn to_tree(b: &Bracketing) -> Tree {
    match b {
        Bracketing::Gen(g) => Tree::G(*g),
        Bracketing::Bracket(x, y) => Tree::br(to_tree(x), to_tree(y)),
    }
}

fn to_assoc(basis: &HallBasis, e: &LieElement) -> Assoc {
    let mut out = Assoc::new();
    for (&h, &c) in e {
        for (w, v) in expand(&to_tree(&basis.word(h).tree)) {
            *out.entry(w).or_insert(0) += c * v;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn hall_counts_match_lyndon_enumeration() {
    for len in 1..=7 {
        assert_eq!(witt_dim(len), count_lyndon_words(len), "length {len}");
        assert_eq!(HallBasis::new(7).indices_of_length(len).len(), witt_dim(len));
    }
}

#[test]
fn rewrite_agrees_with_commutator_oracle() {
    let basis = HallBasis::new(5);
    let oracle_basis: Vec<(Vec<u8>, Tree)> =
        basis.words().iter().map(|w| (w.word.clone(), to_tree(&w.tree))).collect();
    let mut pairs = 0;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let (a, b) = (basis.word(i), basis.word(j));
            if a.len() + b.len() > 5 {
                continue;
            }
            let got = hall_rewrite(&basis, &a.tree, &b.tree, false).unwrap();
            let expected = commutator(&expand(&to_tree(&a.tree)), &expand(&to_tree(&b.tree)));
            assert_eq!(to_assoc(&basis, &got), expected, "[{}, {}]", a.word_string(), b.word_string());
            let coords = lyndon_coordinates(&expected, &oracle_basis).expect("Lie polynomial");
            assert_eq!(got, coords, "[{}, {}]", a.word_string(), b.word_string());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 33);
}

#[test]
fn exhaustive_jacobi_through_length_six() {
    let basis = HallBasis::new(6);
    let n = basis.len();
    let unit = |i: usize| LieElement::from([(i, 1)]);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let len = basis.word(i).len() + basis.word(j).len() + basis.word(k).len();
                if len > 6 {
                    continue;
                }
                let mut total = LieElement::new();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = basis.bracket(&unit(y), &unit(z), false).unwrap();
                    let outer = basis.bracket(&unit(x), &inner, false).unwrap();
                    add_scaled(&mut total, &outer, 1);
                }
                assert!(total.is_empty(), "Jacobi fails on ({i}, {j}, {k})");
            }
        }
    }
}

fn element(max_index: usize) -> impl Strategy<Value = LieElement> {
    prop::collection::btree_map(0..max_index, -3i64..=3, 0..4).prop_map(|m: BTreeMap<usize, i64>| {
        m.into_iter().filter(|(_, c)| *c != 0).collect()
    })
}

proptest! {
    #[test]
    fn bracket_is_bilinear_and_antisymmetric(a in element(5), b in element(5), c in element(5), s in -3i64..=3) {
        // indices < 5 have length ≤ 3, so brackets stay within length 6
        let basis = HallBasis::new(6);
        let ab = basis.bracket(&a, &b, false).unwrap();
        let ba = basis.bracket(&b, &a, false).unwrap();
        let mut sum = ab.clone();
        add_scaled(&mut sum, &ba, 1);
        prop_assert!(sum.is_empty());

        let mut a_sc = a.clone();
        add_scaled(&mut a_sc, &c, s);
        let lhs = basis.bracket(&a_sc, &b, false).unwrap();
        let mut rhs = ab;
        add_scaled(&mut rhs, &basis.bracket(&c, &b, false).unwrap(), s);
        prop_assert_eq!(lhs, rhs);
    }
}
