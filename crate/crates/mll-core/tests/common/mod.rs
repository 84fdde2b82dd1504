#![allow(dead_code)]

use std::collections::BTreeSet;

use mll_core::di::{parse_di, DiDerivation};
use mll_core::sc::{parse_sc, ScDerivation};
use mll_core::semantics::Token;
use mll_core::syntax::{AtomName, Formula, GeneralFormula};
use rand::Rng;

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn disample() -> DiDerivation {
    parse_di(&fixture("disample.di")).unwrap()
}

pub fn cut_example() -> ScDerivation {
    parse_sc(&fixture("cut_example.sc")).unwrap()
}

pub fn atom(n: &str) -> AtomName {
    AtomName::new(n).unwrap()
}

/// Every token of the shape of `f` with each atom ranging over `0..n`,
/// kept when the leaves at each linked position pair are equal.
pub fn brute_force_clique(f: &Formula, n: u32, links: &[(usize, usize)]) -> BTreeSet<Token> {
    fn shapes(f: &Formula, n: u32) -> Vec<Token> {
        match f {
            Formula::PosAtom(_) | Formula::NegAtom(_) => (0..n).map(Token::Leaf).collect(),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                let (xs, ys) = (shapes(a, n), shapes(b, n));
                xs.iter().flat_map(|x| ys.iter().map(move |y| Token::pair(x.clone(), y.clone()))).collect()
            }
        }
    }
    fn leaves(t: &Token, out: &mut Vec<u32>) {
        match t {
            Token::Leaf(x) => out.push(*x),
            Token::Pair(a, b) => {
                leaves(a, out);
                leaves(b, out);
            }
        }
    }
    shapes(f, n)
        .into_iter()
        .filter(|t| {
            let mut v = Vec::new();
            leaves(t, &mut v);
            links.iter().all(|&(i, j)| v[i] == v[j])
        })
        .collect()
}

pub fn random_general(rng: &mut impl Rng, depth: u32) -> GeneralFormula {
    let atoms = ["a", "b", "c"];
    if depth == 0 || rng.gen_bool(0.25) {
        let a = GeneralFormula::Atom(atom(atoms[rng.gen_range(0..3)]));
        return if rng.gen_bool(0.3) { GeneralFormula::Neg(Box::new(a)) } else { a };
    }
    let g = match rng.gen_range(0..3) {
        0 => GeneralFormula::Neg(Box::new(random_general(rng, depth - 1))),
        1 => GeneralFormula::Tensor(Box::new(random_general(rng, depth - 1)), Box::new(random_general(rng, depth - 1))),
        _ => GeneralFormula::Par(Box::new(random_general(rng, depth - 1)), Box::new(random_general(rng, depth - 1))),
    };
    if rng.gen_bool(0.2) {
        GeneralFormula::Neg(Box::new(g))
    } else {
        g
    }
}
