//! Assignments of finite spaces to atoms, and their text format.

use std::collections::BTreeMap;

use super::{CoherenceSpace, SemError};
use crate::syntax::AtomName;

/// A labelled space for one atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpace {
    pub labels: Vec<String>,
    pub space: CoherenceSpace,
}

impl AtomSpace {
    pub fn new(labels: Vec<String>, space: CoherenceSpace) -> Self {
        AtomSpace { labels, space }
    }

    /// Carrier `{0, .., n-1}` with the given space on indices.
    pub fn numbered(space: CoherenceSpace) -> Self {
        AtomSpace { labels: (0..space.len()).map(|i| i.to_string()).collect(), space }
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn label(&self, i: u32) -> &str {
        &self.labels[i as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    atoms: BTreeMap<AtomName, AtomSpace>,
    fallback: Option<AtomSpace>,
}

impl Default for Valuation {
    /// Every atom gets the complete two-point space.
    fn default() -> Self {
        Valuation::uniform(AtomSpace::numbered(CoherenceSpace::complete(2)))
    }
}

impl Valuation {
    /// No atoms assigned.
    pub fn empty() -> Self {
        Valuation { atoms: BTreeMap::new(), fallback: None }
    }

    /// The same space for every atom.
    pub fn uniform(space: AtomSpace) -> Self {
        Valuation { atoms: BTreeMap::new(), fallback: Some(space) }
    }

    pub fn insert(&mut self, a: AtomName, s: AtomSpace) {
        self.atoms.insert(a, s);
    }

    pub fn get(&self, a: &AtomName) -> Option<&AtomSpace> {
        self.atoms.get(a).or(self.fallback.as_ref())
    }
}

/// Parses lines `atom : carrier = [l1, l2] ; coherent = [(l1, l2)]`.
/// Blank lines and `#` comments are skipped.
pub fn parse_valuation(text: &str) -> Result<Valuation, SemError> {
    let mut v = Valuation::empty();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| SemError::Valuation { line: n + 1, message: m.to_string() };
        let (atom, rest) = line.split_once(':').ok_or_else(|| err("expected `atom :`"))?;
        let atom = AtomName::new(atom.trim()).map_err(|e| err(&e.to_string()))?;
        let (carrier, coherent) = rest.split_once(';').ok_or_else(|| err("expected `;` between carrier and coherent"))?;
        let labels = list_after(carrier, "carrier").ok_or_else(|| err("expected `carrier = [...]`"))?;
        let labels: Vec<String> = split_top(&labels).into_iter().map(|s| s.trim().to_string()).collect();
        if labels.is_empty() || labels.iter().any(|l| l.is_empty()) {
            return Err(err("carrier must list nonempty labels"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(err(&format!("duplicate label {l}")));
            }
        }
        let pairs = list_after(coherent, "coherent").ok_or_else(|| err("expected `coherent = [...]`"))?;
        let mut coh = vec![vec![false; labels.len()]; labels.len()];
        for p in split_top(&pairs) {
            let p = p.trim();
            let inner = p
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| err(&format!("expected a pair, found {p}")))?;
            let (x, y) = inner.split_once(',').ok_or_else(|| err(&format!("expected a pair, found {p}")))?;
            let find = |l: &str| {
                labels.iter().position(|m| m == l.trim()).ok_or_else(|| err(&format!("unknown label {}", l.trim())))
            };
            let (i, j) = (find(x)?, find(y)?);
            coh[i][j] = true;
            coh[j][i] = true;
        }
        if v.atoms.contains_key(&atom) {
            return Err(err(&format!("atom {atom} assigned twice")));
        }
        let n = labels.len();
        let space = CoherenceSpace::from_fn(n, |i, j| coh[i][j]);
        v.insert(atom, AtomSpace::new(labels, space));
    }
    Ok(v)
}

fn list_after(s: &str, key: &str) -> Option<String> {
    let (k, rest) = s.split_once('=')?;
    if k.trim() != key {
        return None;
    }
    let rest = rest.trim();
    Some(rest.strip_prefix('[')?.strip_suffix(']')?.to_string())
}

/// Splits on commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
