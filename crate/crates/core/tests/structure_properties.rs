use levi_tanaka::crmodels::{build_aut_cr, euler_derivation, is_derivation, Case};
use levi_tanaka::exact::{rank_of, ExactMatrix, Scalar};
use levi_tanaka::freelie::{min_length_for_codim, witt_dim, word_to_string, HallBasis};
use levi_tanaka::liealg::{build_symbol_algebra, GradedLieAlgebra, QuotientSpec};
use levi_tanaka::prolong::{full_prolongation, grade0, Flavor};
use num_traits::Zero;
use proptest::prelude::*;

fn default_symbol(k: usize) -> levi_tanaka::liealg::SymbolAlgebra {
    build_symbol_algebra(k, QuotientSpec::Default).unwrap()
}

#[test]
fn symbol_algebras_through_codimension_twelve() {
    for k in 1..=12 {
        let s = default_symbol(k);
        let a = s.algebra();
        assert_eq!(a.dim(), 2 + k);
        assert!(a.check_jacobi().passed(), "k={k}");
        assert!(a.is_fundamental() && a.is_nondegenerate(), "k={k}");
        let real = s.real_form().unwrap().algebra;
        assert!(real.is_pseudocomplex().unwrap(), "k={k}");
        assert!(real.check_jacobi().passed(), "k={k}");
        let rho = s.rho() as i32;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if a.degree(i) + a.degree(j) < -rho {
                    assert!(a.bracket(i, j).iter().all(Zero::is_zero), "k={k} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn euler_map_lies_in_degree_zero() {
    for k in 1..=6 {
        let m = default_symbol(k).real_form().unwrap().algebra;
        let d = euler_derivation(&m);
        assert!(is_derivation(&m, &d));
        let basis = grade0(&m, Flavor::LeviTanaka).unwrap();
        let mut vectors: Vec<Vec<Scalar>> = basis.iter().map(flatten).collect();
        let r = rank_of(&vectors, m.dim() * m.dim());
        vectors.push(flatten(&d));
        assert_eq!(rank_of(&vectors, m.dim() * m.dim()), r, "k={k}");
    }
}

fn flatten(m: &ExactMatrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

#[test]
fn degree_zero_derivation_residuals_vanish() {
    for k in 2..=5 {
        let m = default_symbol(k).real_form().unwrap().algebra;
        for flavor in [Flavor::Tanaka, Flavor::LeviTanaka] {
            for d in grade0(&m, flavor).unwrap() {
                assert!(is_derivation(&m, &d), "k={k} {}", flavor.name());
            }
        }
    }
}

#[test]
fn levi_tanaka_sits_inside_tanaka() {
    for k in 2..=6 {
        let m = default_symbol(k).real_form().unwrap().algebra;
        let n2 = m.dim() * m.dim();
        let lt: Vec<Vec<Scalar>> = grade0(&m, Flavor::LeviTanaka).unwrap().iter().map(flatten).collect();
        let mut full: Vec<Vec<Scalar>> = grade0(&m, Flavor::Tanaka).unwrap().iter().map(flatten).collect();
        let r = rank_of(&full, n2);
        full.extend(lt);
        assert_eq!(rank_of(&full, n2), r, "k={k}");
    }
    // F(2,3) has a finite full prolongation, so the whole algebra embeds
    let m = default_symbol(3).real_form().unwrap().algebra;
    let lt = full_prolongation(&m, Flavor::LeviTanaka).unwrap();
    let full = full_prolongation(&m, Flavor::Tanaka).unwrap();
    assert!(full.algebra().check_jacobi().passed());
    assert_eq!(lt.embed_into(&full).unwrap().rank(), lt.total_dim());
}

#[test]
fn aut_cr_eigenvalues() {
    for k in 2..=8 {
        let s = default_symbol(k);
        let aut = build_aut_cr(&s, Case::Auto).unwrap();
        let a = aut.algebra();
        for x in 0..aut.negative_dim() {
            let mut v = vec![Scalar::zero(); a.dim()];
            v[x] = Scalar::from_int(a.degree(x) as i64);
            assert_eq!(*a.bracket(aut.d_index(), x), v);
        }
        if let Some(r) = aut.r_index() {
            assert!(a.bracket(aut.d_index(), r).iter().all(Zero::is_zero));
        }
        for y in a.indices_of_degree(-1) {
            assert!(a.ad(y).rank() > 0);
        }
    }
}

/// Random sets of top-length words that keep the right count.
fn keep_words() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=10).prop_flat_map(|k| {
        let rho = min_length_for_codim(k);
        let q = 2 + k - levi_tanaka::freelie::cumulative_dim(rho - 1);
        (Just(k), prop::sample::subsequence((0..witt_dim(rho)).collect::<Vec<_>>(), q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_kept_words_give_a_lie_algebra((k, picks) in keep_words()) {
        let rho = min_length_for_codim(k);
        let hall = HallBasis::new(rho);
        let top = hall.indices_of_length(rho);
        let words: Vec<_> = picks.iter().map(|&p| hall.word(top.start + p).word.clone()).collect();
        let spec: QuotientSpec = format!("keep:{}", words.iter().map(|w| word_to_string(w)).collect::<Vec<_>>().join(","))
            .parse()
            .unwrap();
        let s = build_symbol_algebra(k, spec).unwrap();
        prop_assert!(s.algebra().check_jacobi().passed());
        prop_assert_eq!(s.algebra().dim(), 2 + k);
    }

    #[test]
    fn json_round_trip(k in 1usize..=10, real in any::<bool>()) {
        let s = default_symbol(k);
        let a = if real { s.real_form().unwrap().algebra } else { s.algebra().clone() };
        prop_assert_eq!(GradedLieAlgebra::from_json(&a.to_json()).unwrap(), a);
    }
}
