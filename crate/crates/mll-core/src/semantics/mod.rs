//! Coherence-space semantics: derivations are interpreted as cliques of
//! tokens shaped like their conclusion.

mod space;
mod valuation;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::di::{check_di_trace, DiAxiom, DiDerivation, DiRule};
use crate::sc::{check_sc, ScDerivation as Sc};
use crate::syntax::{sequent_to_formula, AtomName, Dir, Formula, Path};

pub use space::{
    concordance_properties, dual_relation, dual_space, from_concordance, is_morphism, is_morphism_coherence,
    is_morphism_concordance, orth, par_space, tensor_space, to_concordance, CoherenceSpace, ConcordanceProperties,
    ConcordanceView, Relation, DEFAULT_LIMIT,
};
pub use valuation::{parse_valuation, AtomSpace, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("no space assigned to atom {0}")]
    MissingAtom(String),
    #[error("token {token} is not in the carrier of {formula}")]
    NotInCarrier { token: String, formula: String },
    #[error("carrier of size {size} exceeds the limit {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Malformed(String),
    #[error("valuation line {line}: {message}")]
    Valuation { line: usize, message: String },
}

/// A carrier element of an interpreted formula: a binary tree with atom
/// carrier indices at the leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Leaf(u32),
    Pair(Box<Token>, Box<Token>),
}

impl Token {
    pub fn pair(a: Token, b: Token) -> Token {
        Token::Pair(Box::new(a), Box::new(b))
    }

    pub fn at(&self, p: &Path) -> Option<&Token> {
        let mut t = self;
        for d in &p.0 {
            t = match (t, d) {
                (Token::Pair(l, _), Dir::L) => l,
                (Token::Pair(_, r), Dir::R) => r,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Rewrites the subtoken at `p` in place.
    pub fn map_at(&mut self, p: &[Dir], f: &mut impl FnMut(Token) -> Token) -> bool {
        match p.split_first() {
            None => {
                let old = std::mem::replace(self, Token::Leaf(0));
                *self = f(old);
                true
            }
            Some((d, rest)) => match (self, d) {
                (Token::Pair(l, _), Dir::L) => l.map_at(rest, f),
                (Token::Pair(_, r), Dir::R) => r.map_at(rest, f),
                _ => false,
            },
        }
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Token::Leaf(x) => out.push(*x),
                Token::Pair(l, r) => stack.extend([&**r, &**l]),
            }
        }
        out
    }

    fn has_shape(&self, f: &Formula) -> bool {
        match (self, f) {
            (Token::Leaf(_), Formula::PosAtom(_) | Formula::NegAtom(_)) => true,
            (Token::Pair(a, b), Formula::Tensor(x, y) | Formula::Par(x, y)) => a.has_shape(x) && b.has_shape(y),
            _ => false,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Leaf(x) => write!(f, "{x}"),
            Token::Pair(a, b) => write!(f, "({a} {b})"),
        }
    }
}

pub type Clique = BTreeSet<Token>;

fn atom_space<'v>(v: &'v Valuation, a: &AtomName) -> Result<&'v AtomSpace, SemError> {
    v.get(a).ok_or_else(|| SemError::MissingAtom(a.to_string()))
}

/// Checks that every atom of `f` has a space.
pub fn check_valuation(f: &Formula, v: &Valuation) -> Result<(), SemError> {
    f.atoms().iter().try_for_each(|a| atom_space(v, a).map(|_| ()))
}

/// All tokens of the shape of `f`, in lexicographic order.
pub fn carrier(f: &Formula, v: &Valuation) -> Result<Vec<Token>, SemError> {
    Ok(match f {
        Formula::PosAtom(a) | Formula::NegAtom(a) => (0..atom_space(v, a)?.len() as u32).map(Token::Leaf).collect(),
        Formula::Tensor(x, y) | Formula::Par(x, y) => {
            let (cx, cy) = (carrier(x, v)?, carrier(y, v)?);
            let mut out = Vec::with_capacity(cx.len() * cy.len());
            for a in &cx {
                for b in &cy {
                    out.push(Token::pair(a.clone(), b.clone()));
                }
            }
            out
        }
    })
}

pub fn carrier_size(f: &Formula, v: &Valuation) -> Result<usize, SemError> {
    Ok(match f {
        Formula::PosAtom(a) | Formula::NegAtom(a) => atom_space(v, a)?.len(),
        Formula::Tensor(x, y) | Formula::Par(x, y) => carrier_size(x, v)?.saturating_mul(carrier_size(y, v)?),
    })
}

pub fn in_carrier(f: &Formula, v: &Valuation, t: &Token) -> Result<bool, SemError> {
    Ok(match (f, t) {
        (Formula::PosAtom(a) | Formula::NegAtom(a), Token::Leaf(x)) => (*x as usize) < atom_space(v, a)?.len(),
        (Formula::Tensor(x, y) | Formula::Par(x, y), Token::Pair(l, r)) => in_carrier(x, v, l)? && in_carrier(y, v, r)?,
        _ => false,
    })
}

/// Coherence in the interpretation of `f`, computed without building the
/// space.
pub fn coherent(f: &Formula, v: &Valuation, x: &Token, y: &Token) -> Result<bool, SemError> {
    Ok(match (f, x, y) {
        (Formula::PosAtom(a), Token::Leaf(i), Token::Leaf(j)) => {
            atom_space(v, a)?.space.coherent_idx(*i as usize, *j as usize)
        }
        (Formula::NegAtom(a), Token::Leaf(i), Token::Leaf(j)) => {
            atom_space(v, a)?.space.incoherent_idx(*i as usize, *j as usize)
        }
        (Formula::Tensor(a, b), Token::Pair(x1, x2), Token::Pair(y1, y2)) => {
            coherent(a, v, x1, y1)? && coherent(b, v, x2, y2)?
        }
        (Formula::Par(a, b), Token::Pair(x1, x2), Token::Pair(y1, y2)) => {
            x == y || !((x1 == y1 || !coherent(a, v, x1, y1)?) && (x2 == y2 || !coherent(b, v, x2, y2)?))
        }
        _ => return Err(SemError::Shape(format!("tokens {x} and {y} do not match {f}"))),
    })
}

/// The interpreted space as an explicit relation.
pub fn interpret_formula(f: &Formula, v: &Valuation) -> Result<CoherenceSpace, SemError> {
    Ok(match f {
        Formula::PosAtom(a) => atom_space(v, a)?.space.clone(),
        Formula::NegAtom(a) => dual_space(&atom_space(v, a)?.space),
        Formula::Tensor(x, y) => tensor_space(&interpret_formula(x, v)?, &interpret_formula(y, v)?),
        Formula::Par(x, y) => par_space(&interpret_formula(x, v)?, &interpret_formula(y, v)?),
    })
}

/// Pairwise coherence in an explicit space.
pub fn is_clique(space: &CoherenceSpace, s: &Clique) -> Result<bool, SemError> {
    let idx = s
        .iter()
        .map(|t| {
            space
                .index_of(t)
                .ok_or_else(|| SemError::NotInCarrier { token: t.to_string(), formula: "the space".into() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(idx.iter().enumerate().all(|(k, &i)| idx[k + 1..].iter().all(|&j| space.coherent_idx(i, j))))
}

/// Pairwise coherence in the interpretation of `f`.
pub fn is_clique_in(f: &Formula, v: &Valuation, s: &Clique) -> Result<bool, SemError> {
    for t in s {
        if !in_carrier(f, v, t)? {
            return Err(SemError::NotInCarrier { token: t.to_string(), formula: f.to_string() });
        }
    }
    let toks: Vec<&Token> = s.iter().collect();
    for (k, x) in toks.iter().enumerate() {
        for y in &toks[k + 1..] {
            if !coherent(f, v, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{(r, r)}` over the elements of `space`.
pub fn diagonal_clique(space: &CoherenceSpace) -> Clique {
    space.elements().iter().map(|r| Token::pair(r.clone(), r.clone())).collect()
}

fn diagonal_of(a: &Formula, v: &Valuation) -> Result<Clique, SemError> {
    Ok(carrier(a, v)?.into_iter().map(|r| Token::pair(r.clone(), r)).collect())
}

fn rebracket(t: Token, rule: DiRule) -> Option<Token> {
    let Token::Pair(x, y) = t else { return None };
    Some(match rule {
        DiRule::SigmaUp | DiRule::SigmaDown => Token::Pair(y, x),
        // (a (b c)) -> ((a b) c)
        DiRule::AlphaUp | DiRule::Switch => {
            let Token::Pair(b, c) = *y else { return None };
            Token::Pair(Box::new(Token::Pair(x, b)), c)
        }
        // ((a b) c) -> (a (b c))
        DiRule::AlphaDown | DiRule::SigmaSwitch => {
            let Token::Pair(a, b) = *x else { return None };
            Token::Pair(a, Box::new(Token::Pair(b, y)))
        }
        _ => return None,
    })
}

pub fn interpret_di(d: &DiDerivation, v: &Valuation) -> Result<Clique, crate::Error> {
    let trace = check_di_trace(d)?;
    check_valuation(trace.last().expect("trace is nonempty"), v)?;
    for s in &d.steps {
        if let Some(p) = &s.param {
            check_valuation(&p.formula(), v)?;
        }
    }
    let mut clique = match &d.axiom {
        DiAxiom::AiDown(a) => diagonal_of(&Formula::PosAtom(a.clone()), v)?,
        DiAxiom::IDown(a) => diagonal_of(a, v)?,
        DiAxiom::Open(f) => {
            return Err(SemError::Shape(format!("cannot interpret an open premise {f}")).into());
        }
    };
    for s in &d.steps {
        let path = &s.path.0;
        let broken = || SemError::Shape(format!("{} at {} does not match the token shape", s.rule, s.path));
        clique = match s.rule {
            DiRule::AiDown | DiRule::IDown => {
                let a = s.param.as_ref().expect("checked").formula();
                let diag: Vec<Token> = diagonal_of(&a, v)?.into_iter().collect();
                let mut out = Clique::new();
                for t in &clique {
                    for r in &diag {
                        let mut t = t.clone();
                        if !t.map_at(path, &mut |x| Token::pair(x, r.clone())) {
                            return Err(broken().into());
                        }
                        out.insert(t);
                    }
                }
                out
            }
            DiRule::AiUp | DiRule::IUp => {
                let mut out = Clique::new();
                for t in clique {
                    let keep = match t.at(&s.path) {
                        Some(Token::Pair(l, _)) => match &**l {
                            Token::Pair(x, y) => x == y,
                            _ => return Err(broken().into()),
                        },
                        _ => return Err(broken().into()),
                    };
                    if keep {
                        let mut t = t;
                        t.map_at(path, &mut |x| match x {
                            Token::Pair(_, b) => *b,
                            other => other,
                        });
                        out.insert(t);
                    }
                }
                out
            }
            rule => {
                let mut out = Clique::new();
                for mut t in clique {
                    let mut ok = true;
                    t.map_at(path, &mut |x| {
                        rebracket(x.clone(), rule).unwrap_or_else(|| {
                            ok = false;
                            x
                        })
                    });
                    if !ok {
                        return Err(broken().into());
                    }
                    out.insert(t);
                }
                out
            }
        };
    }
    Ok(clique)
}

type Components = Vec<Vec<Token>>;

fn sc_components(d: &Sc, v: &Valuation) -> Result<Components, SemError> {
    Ok(match d {
        Sc::Ax(a) => diag_components(&Formula::PosAtom(a.clone()), v)?,
        Sc::Id(a) => diag_components(a, v)?,
        Sc::Exch(i, c) => {
            let mut s = sc_components(c, v)?;
            s.iter_mut().for_each(|t| t.swap(*i, i + 1));
            s
        }
        Sc::Par(i, c) => {
            let mut s = sc_components(c, v)?;
            for t in &mut s {
                let b = t.remove(i + 1);
                let a = std::mem::replace(&mut t[*i], Token::Leaf(0));
                t[*i] = Token::pair(a, b);
            }
            s
        }
        Sc::Tensor(l, r) => {
            let (ls, rs) = (sc_components(l, v)?, sc_components(r, v)?);
            let mut out = Vec::with_capacity(ls.len() * rs.len());
            for x in &ls {
                for y in &rs {
                    let mut t = x.clone();
                    let a = t.pop().expect("checked");
                    t.push(Token::pair(a, y[0].clone()));
                    t.extend(y[1..].iter().cloned());
                    out.push(t);
                }
            }
            out
        }
        Sc::Cut(l, r) => {
            let (ls, rs) = (sc_components(l, v)?, sc_components(r, v)?);
            let mut index: HashMap<&Token, Vec<usize>> = HashMap::new();
            for (k, y) in rs.iter().enumerate() {
                index.entry(&y[0]).or_default().push(k);
            }
            let mut out = BTreeSet::new();
            for x in &ls {
                let last = x.last().expect("checked");
                for &k in index.get(last).map(Vec::as_slice).unwrap_or(&[]) {
                    let mut t = x[..x.len() - 1].to_vec();
                    t.extend(rs[k][1..].iter().cloned());
                    out.insert(t);
                }
            }
            out.into_iter().collect()
        }
    })
}

fn diag_components(a: &Formula, v: &Valuation) -> Result<Components, SemError> {
    Ok(carrier(a, v)?.into_iter().map(|r| vec![r.clone(), r]).collect())
}

fn fold_left(t: Vec<Token>) -> Token {
    let mut it = t.into_iter();
    let first = it.next().expect("nonempty sequent");
    it.fold(first, Token::pair)
}

pub fn interpret_sc(d: &Sc, v: &Valuation) -> Result<Clique, crate::Error> {
    let concl = check_sc(d)?;
    check_valuation(&sequent_to_formula(&concl)?, v)?;
    sc_atoms(d).iter().try_for_each(|a| atom_space(v, a).map(|_| ()))?;
    Ok(sc_components(d, v)?.into_iter().map(fold_left).collect())
}

fn sc_atoms(d: &Sc) -> BTreeSet<AtomName> {
    let mut out = BTreeSet::new();
    let mut stack = vec![d];
    while let Some(d) = stack.pop() {
        match d {
            Sc::Ax(a) => {
                out.insert(a.clone());
            }
            Sc::Id(f) => out.extend(f.atoms()),
            Sc::Exch(_, c) | Sc::Par(_, c) => stack.push(c),
            Sc::Tensor(l, r) | Sc::Cut(l, r) => stack.extend([&**l, &**r]),
        }
    }
    out
}

/// Set equality of two cliques over the same formula shape.
pub fn cliques_equal(f: &Formula, c1: &Clique, c2: &Clique) -> Result<bool, SemError> {
    if let Some(t) = c1.iter().chain(c2).find(|t| !t.has_shape(f)) {
        return Err(SemError::Shape(format!("token {t} does not have the shape of {f}")));
    }
    Ok(c1 == c2)
}

/// A pairing of leaf positions `(positive, negative)` witnessing that a
/// clique is the full product of diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalProduct {
    pub pairs: Vec<(usize, usize)>,
    pub expected_size: usize,
}

/// Finds a perfect matching of dual leaves that are equal in every token
/// and checks that the clique has exactly the product of the pair carrier
/// sizes. Returns `None` when no such structure exists.
pub fn diagonal_product(f: &Formula, v: &Valuation, c: &Clique) -> Result<Option<DiagonalProduct>, SemError> {
    let leaves = f.leaves();
    let n = leaves.len();
    if n % 2 == 1 {
        return Ok(None);
    }
    let rows: Vec<Vec<u32>> = c.iter().map(Token::leaves).collect();
    if rows.iter().any(|r| r.len() != n) {
        return Err(SemError::Shape(format!("clique tokens do not have the shape of {f}")));
    }
    let always_equal = |i: usize, j: usize| rows.iter().all(|r| r[i] == r[j]);
    let pos: Vec<usize> = (0..n).filter(|&i| matches!(leaves[i], Formula::PosAtom(_))).collect();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(pos.len());
    for &i in &pos {
        let a = leaves[i].atom_name();
        candidates.push(
            (0..n)
                .filter(|&j| matches!(leaves[j], Formula::NegAtom(_)) && leaves[j].atom_name() == a && always_equal(i, j))
                .collect(),
        );
    }
    if pos.len() * 2 != n {
        return Ok(None);
    }
    let mut used = vec![false; n];
    let mut chosen = vec![0usize; pos.len()];
    fn search(k: usize, cand: &[Vec<usize>], used: &mut [bool], chosen: &mut [usize]) -> bool {
        if k == cand.len() {
            return true;
        }
        for &j in &cand[k] {
            if !used[j] {
                used[j] = true;
                chosen[k] = j;
                if search(k + 1, cand, used, chosen) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    if !search(0, &candidates, &mut used, &mut chosen) {
        return Ok(None);
    }
    let mut expected = 1usize;
    for &i in &pos {
        expected = expected.saturating_mul(atom_space(v, leaves[i].atom_name().expect("atom"))?.len());
    }
    for t in c {
        if !in_carrier(f, v, t)? {
            return Ok(None);
        }
    }
    if c.len() != expected {
        return Ok(None);
    }
    Ok(Some(DiagonalProduct { pairs: pos.into_iter().zip(chosen).collect(), expected_size: expected }))
}

/// Renders a clique with a header naming the formula, one token per line,
/// using the valuation's element labels.
pub fn render_clique(f: &Formula, v: &Valuation, c: &Clique) -> String {
    fn go(f: &Formula, v: &Valuation, t: &Token, out: &mut String) {
        match (f, t) {
            (Formula::PosAtom(a) | Formula::NegAtom(a), Token::Leaf(x)) => match v.get(a) {
                Some(s) => out.push_str(s.label(*x)),
                None => out.push_str(&x.to_string()),
            },
            (Formula::Tensor(l, r) | Formula::Par(l, r), Token::Pair(x, y)) => {
                out.push('(');
                go(l, v, x, out);
                out.push(' ');
                go(r, v, y, out);
                out.push(')');
            }
            _ => out.push_str(&t.to_string()),
        }
    }
    let mut out = format!("clique of {f} ({} tokens)\n", c.len());
    for t in c {
        go(f, v, t, &mut out);
        out.push('\n');
    }
    out
}

/// The conclusion formula an interpretation of `d` is shaped like.
pub fn sc_formula(d: &Sc) -> Result<Formula, crate::Error> {
    Ok(sequent_to_formula(&check_sc(d)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::di::parse_di;
    use crate::sc::parse_sc;
    use crate::syntax::parse_formula;

    fn leafpair(x: u32, y: u32) -> Token {
        Token::pair(Token::Leaf(x), Token::Leaf(y))
    }

    #[test]
    fn axiom_is_diagonal() {
        let v = Valuation::default();
        let d = parse_di("axiom ai-down a\n").unwrap();
        let c = interpret_di(&d, &v).unwrap();
        assert_eq!(c, [leafpair(0, 0), leafpair(1, 1)].into_iter().collect());
        let f = parse_formula("(~a % a)").unwrap();
        assert!(is_clique_in(&f, &v, &c).unwrap());
        assert!(is_clique(&interpret_formula(&f, &v).unwrap(), &c).unwrap());
        assert_eq!(interpret_sc(&Sc::ax(&AtomName::new("a").unwrap()), &v).unwrap(), c);
    }

    #[test]
    fn disample_has_four_tokens() {
        let v = Valuation::default();
        let d = parse_di("axiom ai-down b\nai-down L a\nsigma-down L\nsigma-switch L\n").unwrap();
        let c = interpret_di(&d, &v).unwrap();
        assert_eq!(c.len(), 4);
        let f = check_di_trace(&d).unwrap().pop().unwrap();
        assert!(diagonal_product(&f, &v, &c).unwrap().is_some());
    }

    #[test]
    fn cut_of_axioms_collapses() {
        let v = Valuation::default();
        let d = parse_sc("(cut (ax a) (ax a))").unwrap();
        assert_eq!(interpret_sc(&d, &v).unwrap(), interpret_sc(&Sc::ax(&AtomName::new("a").unwrap()), &v).unwrap());
    }

    #[test]
    fn crossed_links_differ() {
        let v = Valuation::default();
        let straight = parse_di("axiom i-down (a * a)\n").unwrap();
        let crossed = parse_di("axiom i-down (a * a)\nsigma-up L\n").unwrap();
        let f = check_di_trace(&straight).unwrap().pop().unwrap();
        assert_eq!(f, check_di_trace(&crossed).unwrap().pop().unwrap());
        let (c1, c2) = (interpret_di(&straight, &v).unwrap(), interpret_di(&crossed, &v).unwrap());
        assert!(!cliques_equal(&f, &c1, &c2).unwrap());
        assert_eq!(c1.len(), c2.len());
    }

    #[test]
    fn missing_atom() {
        let v = parse_valuation("a : carrier = [x, y] ; coherent = []\n").unwrap();
        let d = parse_di("axiom ai-down b\n").unwrap();
        assert!(interpret_di(&d, &v).is_err());
        assert!(interpret_di(&parse_di("axiom ai-down a\n").unwrap(), &v).is_ok());
    }

    #[test]
    fn lazy_and_explicit_coherence_agree() {
        let v = parse_valuation("a : carrier = [p, q, r] ; coherent = [(p, q)]\nb : carrier = [u, w] ; coherent = []\n")
            .unwrap();
        let f = parse_formula("((a * ~b) % (~a % b))").unwrap();
        let sp = interpret_formula(&f, &v).unwrap();
        assert_eq!(sp.elements(), carrier(&f, &v).unwrap().as_slice());
        for (i, x) in sp.elements().iter().enumerate() {
            for (j, y) in sp.elements().iter().enumerate() {
                assert_eq!(sp.coherent_idx(i, j), coherent(&f, &v, x, y).unwrap());
            }
        }
    }
}
