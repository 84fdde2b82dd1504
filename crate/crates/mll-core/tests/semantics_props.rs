mod common;

use mll_core::di::{check_di, parse_di};
use mll_core::fuzz::{random_di, random_sc, FuzzConfig};
use mll_core::sc::{check_sc, eliminate_cuts, ScDerivation};
use mll_core::semantics::{
    cliques_equal, diagonal_clique, diagonal_product, dual_relation, dual_space, from_concordance, interpret_di,
    interpret_formula, interpret_sc, is_clique_in, is_morphism, orth, par_space, parse_valuation, render_clique,
    tensor_space, to_concordance, CoherenceSpace, Relation, Token, Valuation,
};
use mll_core::syntax::{negate, parse_formula, sequent_to_formula};
use mll_core::translate::{di_to_sc_direct, sc_to_di};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn space(max: usize) -> impl Strategy<Value = CoherenceSpace> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| CoherenceSpace::from_fn(n, |i, j| bits[i * n + j]))
    })
}

fn family(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..(1 << n), 0..6)
}

proptest! {
    #[test]
    fn orth_is_stable(f in family(4)) {
        let once = orth(4, &f, 10).unwrap();
        prop_assert_eq!(orth(4, &orth(4, &once, 10).unwrap(), 10).unwrap(), once);
    }

    #[test]
    fn concordance_round_trip(c in space(5)) {
        prop_assert_eq!(from_concordance(&to_concordance(&c, 10).unwrap()), c);
    }

    #[test]
    fn demorgan_on_the_nose(a in space(3), b in space(3)) {
        prop_assert_eq!(dual_space(&tensor_space(&a, &b)), par_space(&dual_space(&a), &dual_space(&b)));
        prop_assert_eq!(dual_space(&par_space(&a, &b)), tensor_space(&dual_space(&a), &dual_space(&b)));
    }

    #[test]
    fn interpretation_commutes_with_negation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = mll_core::fuzz::random_formula(&mut rng, &FuzzConfig::default(), 3);
        let v = parse_valuation("a : carrier = [0, 1] ; coherent = []\nb : carrier = [0, 1, 2] ; coherent = [(0, 2)]\nc : carrier = [p] ; coherent = []\n").unwrap();
        prop_assert_eq!(interpret_formula(&negate(&f), &v).unwrap(), dual_space(&interpret_formula(&f, &v).unwrap()));
    }

    #[test]
    fn dual_of_dual_is_identity(a in space(3), b in space(3), bits in prop::collection::vec(any::<bool>(), 9)) {
        let pairs = (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).filter(|&(i, j)| bits[i * 3 + j]).collect();
        let rel = Relation { source: a, target: b, pairs };
        prop_assert_eq!(dual_relation(&dual_relation(&rel)), rel.clone());
        if is_morphism(&rel) {
            prop_assert!(is_morphism(&dual_relation(&rel)));
        }
    }

    #[test]
    fn di_interpretations_are_diagonal_products(seed in any::<u64>()) {
        let cfg = FuzzConfig { max_steps: 10, max_pairs: 4, ..FuzzConfig::default() };
        let d = random_di(&mut ChaCha8Rng::seed_from_u64(seed), &cfg);
        let v = Valuation::default();
        let f = check_di(&d).unwrap();
        let c = interpret_di(&d, &v).unwrap();
        prop_assert!(is_clique_in(&f, &v, &c).unwrap());
        prop_assert!(diagonal_product(&f, &v, &c).unwrap().is_some());
        let s = di_to_sc_direct(&d).unwrap();
        prop_assert!(cliques_equal(&f, &c, &interpret_sc(&s, &v).unwrap()).unwrap());
    }

    #[test]
    fn sc_interpretations_survive_translation(seed in any::<u64>()) {
        let cfg = FuzzConfig { max_steps: 10, max_pairs: 4, ..FuzzConfig::default() };
        let d = random_sc(&mut ChaCha8Rng::seed_from_u64(seed), &cfg);
        let v = Valuation::default();
        let f = sequent_to_formula(&check_sc(&d).unwrap()).unwrap();
        let c = interpret_sc(&d, &v).unwrap();
        prop_assert!(is_clique_in(&f, &v, &c).unwrap());
        prop_assert_eq!(&interpret_di(&sc_to_di(&d).unwrap(), &v).unwrap(), &c);
        prop_assert_eq!(&interpret_sc(&eliminate_cuts(&d).unwrap(), &v).unwrap(), &c);
    }
}

#[test]
fn disample_matches_the_oracle() {
    let v = Valuation::default();
    let d = common::disample();
    let f = check_di(&d).unwrap();
    let got = interpret_di(&d, &v).unwrap();
    assert_eq!(got, common::brute_force_clique(&f, 2, &[(0, 1), (2, 3)]));
    assert_eq!(got.len(), 4);
}

#[test]
fn cut_example_matches_the_oracle() {
    let v = Valuation::default();
    let d = common::cut_example();
    let f = sequent_to_formula(&check_sc(&d).unwrap()).unwrap();
    let got = interpret_sc(&d, &v).unwrap();
    assert_eq!(got, common::brute_force_clique(&f, 2, &[(0, 1), (2, 3), (4, 5)]));
    assert_eq!(got.len(), 8);
}

#[test]
fn i_up_recovers_the_context() {
    let v = Valuation::default();
    let a = common::atom("a");
    let d = sc_to_di(&ScDerivation::cut(ScDerivation::ax(&a), ScDerivation::ax(&a))).unwrap();
    assert_eq!(mll_core::di::di_metrics(&d).get("ai-up"), 1);
    assert_eq!(interpret_di(&d, &v).unwrap(), interpret_sc(&ScDerivation::ax(&a), &v).unwrap());
}

#[test]
fn context_is_untouched() {
    let v = Valuation::default();
    let d = parse_di("axiom ai-down b\nai-down R a\n").unwrap();
    let c = interpret_di(&d, &v).unwrap();
    let l = |x| Token::Leaf(x);
    let want: std::collections::BTreeSet<Token> = (0..2)
        .flat_map(|x| (0..2).map(move |y| Token::pair(l(x), Token::pair(l(x), Token::pair(l(y), l(y))))))
        .collect();
    assert_eq!(c, want);
}

#[test]
fn diagonal_and_rendering() {
    let v = parse_valuation("a : carrier = [x, y] ; coherent = []\n").unwrap();
    let f = parse_formula("(~a % a)").unwrap();
    let c = interpret_sc(&ScDerivation::ax(&common::atom("a")), &v).unwrap();
    assert_eq!(c, diagonal_clique(&interpret_formula(&parse_formula("a").unwrap(), &v).unwrap()));
    assert_eq!(render_clique(&f, &v, &c), "clique of (~a % a) (2 tokens)\n(x x)\n(y y)\n");
    assert!(c.contains(&Token::pair(Token::Leaf(1), Token::Leaf(1))));
}

#[test]
fn crossed_links_give_different_cliques() {
    let v = Valuation::default();
    let straight = parse_di("axiom i-down (a * a)\n").unwrap();
    let crossed = parse_di("axiom i-down (a * a)\nsigma-up L\n").unwrap();
    let f = check_di(&straight).unwrap();
    assert_eq!(check_di(&crossed).unwrap(), f);
    let (x, y) = (interpret_di(&straight, &v).unwrap(), interpret_di(&crossed, &v).unwrap());
    assert!(!cliques_equal(&f, &x, &y).unwrap());
    let one = parse_valuation("a : carrier = [u] ; coherent = []\n").unwrap();
    assert_eq!(interpret_di(&straight, &one).unwrap(), interpret_di(&crossed, &one).unwrap());
}
