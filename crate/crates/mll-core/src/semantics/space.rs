//! Finite coherence spaces, concordance views and relations.

use super::{SemError, Token};

pub const DEFAULT_LIMIT: usize = 10;

/// A finite set with a reflexive symmetric coherence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceSpace {
    elements: Vec<Token>,
    coh: Vec<Vec<bool>>,
}

impl CoherenceSpace {
    /// Builds a space from a symmetric relation; reflexivity is added.
    pub fn new(elements: Vec<Token>, mut coh: Vec<Vec<bool>>) -> Result<Self, SemError> {
        let n = elements.len();
        if coh.len() != n || coh.iter().any(|r| r.len() != n) {
            return Err(SemError::Malformed("coherence matrix has the wrong size".into()));
        }
        for (i, row) in coh.iter_mut().enumerate() {
            row[i] = true;
        }
        for i in 0..n {
            for j in 0..i {
                if coh[i][j] != coh[j][i] {
                    return Err(SemError::Malformed(format!("coherence is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(CoherenceSpace { elements, coh })
    }

    /// `n` leaf elements with coherence given by `f` on distinct indices.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let coh = (0..n).map(|i| (0..n).map(|j| i == j || f(i.min(j), i.max(j))).collect()).collect();
        CoherenceSpace { elements: (0..n as u32).map(Token::Leaf).collect(), coh }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    /// The one-point space.
    pub fn unit() -> Self {
        Self::complete(1)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Token] {
        &self.elements
    }

    pub fn index_of(&self, t: &Token) -> Option<usize> {
        self.elements.iter().position(|e| e == t)
    }

    pub fn coherent_idx(&self, i: usize, j: usize) -> bool {
        self.coh[i][j]
    }

    /// Reflexive closure of the complement.
    pub fn incoherent_idx(&self, i: usize, j: usize) -> bool {
        i == j || !self.coh[i][j]
    }
}

pub fn dual_space(c: &CoherenceSpace) -> CoherenceSpace {
    let n = c.len();
    let coh = (0..n).map(|i| (0..n).map(|j| c.incoherent_idx(i, j)).collect()).collect();
    CoherenceSpace { elements: c.elements.clone(), coh }
}

pub fn tensor_space(a: &CoherenceSpace, b: &CoherenceSpace) -> CoherenceSpace {
    let mut elements = Vec::with_capacity(a.len() * b.len());
    let mut idx = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.elements.iter().enumerate() {
        for (j, y) in b.elements.iter().enumerate() {
            elements.push(Token::pair(x.clone(), y.clone()));
            idx.push((i, j));
        }
    }
    let coh = idx
        .iter()
        .map(|&(i, j)| idx.iter().map(|&(k, l)| a.coh[i][k] && b.coh[j][l]).collect())
        .collect();
    CoherenceSpace { elements, coh }
}

pub fn par_space(a: &CoherenceSpace, b: &CoherenceSpace) -> CoherenceSpace {
    dual_space(&tensor_space(&dual_space(a), &dual_space(b)))
}

/// Subsets of `0..n` as bitmasks.
fn check_limit(n: usize, limit: usize) -> Result<(), SemError> {
    if n > limit || n > 20 {
        Err(SemError::CarrierTooLarge { size: n, limit: limit.min(20) })
    } else {
        Ok(())
    }
}

/// All subsets `x` of an `n`-element carrier meeting every member of
/// `family` in at most one element.
pub fn orth(n: usize, family: &[u32], limit: usize) -> Result<Vec<u32>, SemError> {
    check_limit(n, limit)?;
    Ok((0..1u32 << n).filter(|x| family.iter().all(|u| (u & x).count_ones() <= 1)).collect())
}

/// A concordance space: carrier with its cliques and anticliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordanceView {
    pub elements: Vec<Token>,
    pub cliques: Vec<u32>,
    pub anticliques: Vec<u32>,
}

fn pairwise(n: usize, set: u32, rel: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).filter(|i| set >> i & 1 == 1).all(|i| (i + 1..n).filter(|j| set >> j & 1 == 1).all(|j| rel(i, j)))
}

pub fn to_concordance(c: &CoherenceSpace, limit: usize) -> Result<ConcordanceView, SemError> {
    let n = c.len();
    check_limit(n, limit)?;
    let all = 0..1u32 << n;
    Ok(ConcordanceView {
        elements: c.elements.clone(),
        cliques: all.clone().filter(|&s| pairwise(n, s, |i, j| c.coh[i][j])).collect(),
        anticliques: all.filter(|&s| pairwise(n, s, |i, j| c.incoherent_idx(i, j))).collect(),
    })
}

pub fn from_concordance(v: &ConcordanceView) -> CoherenceSpace {
    let n = v.elements.len();
    let coh = (0..n)
        .map(|i| (0..n).map(|j| v.cliques.contains(&(1 << i | 1 << j))).collect())
        .collect();
    CoherenceSpace { elements: v.elements.clone(), coh }
}

/// The five properties of a concordance space, checked exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConcordanceProperties {
    pub singletons: bool,
    pub downward_closed: bool,
    pub closure_fixpoint: bool,
    pub two_element_dichotomy: bool,
    pub pairwise_criterion: bool,
}

impl ConcordanceProperties {
    pub fn all(&self) -> bool {
        self.singletons
            && self.downward_closed
            && self.closure_fixpoint
            && self.two_element_dichotomy
            && self.pairwise_criterion
    }
}

pub fn concordance_properties(v: &ConcordanceView, limit: usize) -> Result<ConcordanceProperties, SemError> {
    let n = v.elements.len();
    let mut u = v.cliques.clone();
    let mut x = v.anticliques.clone();
    u.sort_unstable();
    x.sort_unstable();
    let has = |fam: &[u32], s: u32| fam.binary_search(&s).is_ok();
    let singletons = (0..n).all(|i| has(&u, 1 << i) && has(&x, 1 << i));
    let closed = |fam: &[u32]| {
        fam.iter().all(|&s| {
            let mut sub = s;
            loop {
                if !has(fam, sub) {
                    return false;
                }
                if sub == 0 {
                    return true;
                }
                sub = (sub - 1) & s;
            }
        })
    };
    let downward_closed = closed(&u) && closed(&x);
    let closure_fixpoint = orth(n, &x, limit)? == u
        && orth(n, &u, limit)? == x
        && orth(n, &orth(n, &u, limit)?, limit)? == u
        && orth(n, &orth(n, &x, limit)?, limit)? == x;
    let mut two_element_dichotomy = true;
    for i in 0..n {
        for j in 0..n {
            let s = 1u32 << i | 1 << j;
            let (cu, cx) = (has(&u, s), has(&x, s));
            if !(cu || cx) || (i != j && cu && cx) {
                two_element_dichotomy = false;
            }
        }
    }
    let pairwise_criterion = (0..1u32 << n).all(|s| {
        has(&u, s) == pairwise(n, s, |i, j| has(&u, 1 << i | 1 << j))
            && has(&x, s) == pairwise(n, s, |i, j| has(&x, 1 << i | 1 << j))
    });
    Ok(ConcordanceProperties { singletons, downward_closed, closure_fixpoint, two_element_dichotomy, pairwise_criterion })
}

/// A relation between the carriers of two spaces, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub source: CoherenceSpace,
    pub target: CoherenceSpace,
    pub pairs: Vec<(usize, usize)>,
}

impl Relation {
    pub fn identity(c: &CoherenceSpace) -> Relation {
        Relation { source: c.clone(), target: c.clone(), pairs: (0..c.len()).map(|i| (i, i)).collect() }
    }

    /// Relates elements whose tokens correspond under `f`.
    pub fn from_token_map(
        source: CoherenceSpace,
        target: CoherenceSpace,
        f: impl Fn(&Token) -> Option<Token>,
    ) -> Relation {
        let pairs = source
            .elements()
            .iter()
            .enumerate()
            .filter_map(|(i, t)| f(t).and_then(|u| target.index_of(&u)).map(|j| (i, j)))
            .collect();
        Relation { source, target, pairs }
    }

    fn direct_image(&self, u: u32) -> u32 {
        self.pairs.iter().filter(|(r, _)| u >> r & 1 == 1).fold(0, |acc, (_, s)| acc | 1 << s)
    }

    fn inverse_image(&self, y: u32) -> u32 {
        self.pairs.iter().filter(|(_, s)| y >> s & 1 == 1).fold(0, |acc, (r, _)| acc | 1 << r)
    }
}

/// Coherence forwards, incoherence backwards.
pub fn is_morphism_coherence(rel: &Relation) -> bool {
    let (a, b) = (&rel.source, &rel.target);
    rel.pairs.iter().all(|&(r, s)| {
        rel.pairs.iter().all(|&(r2, s2)| {
            (!a.coherent_idx(r, r2) || b.coherent_idx(s, s2)) && (!b.incoherent_idx(s, s2) || a.incoherent_idx(r, r2))
        })
    })
}

/// Cliques map to cliques, anticliques of the target pull back to
/// anticliques.
pub fn is_morphism_concordance(rel: &Relation, limit: usize) -> Result<bool, SemError> {
    let src = to_concordance(&rel.source, limit)?;
    let tgt = to_concordance(&rel.target, limit)?;
    let mut v = tgt.cliques.clone();
    let mut x = src.anticliques.clone();
    v.sort_unstable();
    x.sort_unstable();
    Ok(src.cliques.iter().all(|&u| v.binary_search(&rel.direct_image(u)).is_ok())
        && tgt.anticliques.iter().all(|&y| x.binary_search(&rel.inverse_image(y)).is_ok()))
}

/// The coherence check; when both carriers fit the default limit the
/// concordance check is run as well and must agree.
pub fn is_morphism(rel: &Relation) -> bool {
    let by_coherence = is_morphism_coherence(rel);
    if let Ok(by_concordance) = is_morphism_concordance(rel, DEFAULT_LIMIT) {
        assert_eq!(by_coherence, by_concordance, "coherence and concordance morphism checks disagree");
    }
    by_coherence
}

/// The converse relation, from the dual of the target to the dual of the
/// source.
pub fn dual_relation(rel: &Relation) -> Relation {
    Relation {
        source: dual_space(&rel.target),
        target: dual_space(&rel.source),
        pairs: rel.pairs.iter().map(|&(r, s)| (s, r)).collect(),
    }
}
