//! Formulae, sequents and paths.
//!
//! Formulae are kept in negation normal form. `GeneralFormula` allows
//! negation anywhere and is only used for counting.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("negation on a non-atom at byte {offset}: {subterm}")]
    NnfViolation { offset: usize, subterm: String },
    #[error("invalid atom name {0:?}")]
    BadAtom(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid path {path} in {formula}")]
    Invalid { path: Path, formula: String },
    #[error("empty sequent")]
    EmptySequent,
}

/// An atom name, `[a-z][a-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomName(Arc<str>);

impl AtomName {
    pub fn new(name: &str) -> Result<Self, ParseError> {
        if is_atom_name(name) {
            Ok(AtomName(Arc::from(name)))
        } else {
            Err(ParseError::BadAtom(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl serde::Serialize for AtomName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl fmt::Display for AtomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for AtomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A formula in negation normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    PosAtom(AtomName),
    NegAtom(AtomName),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

/// A formula with unrestricted negation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GeneralFormula {
    Atom(AtomName),
    Neg(Box<GeneralFormula>),
    Tensor(Box<GeneralFormula>, Box<GeneralFormula>),
    Par(Box<GeneralFormula>, Box<GeneralFormula>),
}

impl Formula {
    /// Positive atom. Panics on an invalid name; use [`AtomName::new`] for
    /// untrusted input.
    pub fn pos(name: &str) -> Formula {
        Formula::PosAtom(AtomName::new(name).expect("valid atom name"))
    }

    pub fn neg(name: &str) -> Formula {
        Formula::NegAtom(AtomName::new(name).expect("valid atom name"))
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::PosAtom(_) | Formula::NegAtom(_))
    }

    pub fn atom_name(&self) -> Option<&AtomName> {
        match self {
            Formula::PosAtom(a) | Formula::NegAtom(a) => Some(a),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.size() + b.size(),
            None => 1,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self.children() {
            Some((a, b)) => a.leaf_count() + b.leaf_count(),
            None => 1,
        }
    }

    /// Atom occurrences, left to right.
    pub fn leaves(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f.children() {
                Some((a, b)) => {
                    go(a, out);
                    go(b, out);
                }
                None => out.push(f),
            }
        }
        go(self, &mut out);
        out
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> Vec<AtomName> {
        let mut v: Vec<AtomName> = self
            .leaves()
            .into_iter()
            .filter_map(|l| l.atom_name().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn lift(&self) -> GeneralFormula {
        match self {
            Formula::PosAtom(a) => GeneralFormula::Atom(a.clone()),
            Formula::NegAtom(a) => GeneralFormula::Neg(Box::new(GeneralFormula::Atom(a.clone()))),
            Formula::Tensor(a, b) => GeneralFormula::Tensor(Box::new(a.lift()), Box::new(b.lift())),
            Formula::Par(a, b) => GeneralFormula::Par(Box::new(a.lift()), Box::new(b.lift())),
        }
    }
}

/// DeMorgan negation.
pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::PosAtom(a) => Formula::NegAtom(a.clone()),
        Formula::NegAtom(a) => Formula::PosAtom(a.clone()),
        Formula::Tensor(a, b) => Formula::par(negate(a), negate(b)),
        Formula::Par(a, b) => Formula::tensor(negate(a), negate(b)),
    }
}

/// Pushes negations down to the atoms.
pub fn demorgan_normalize(g: &GeneralFormula) -> Formula {
    fn go(g: &GeneralFormula, negated: bool) -> Formula {
        match g {
            GeneralFormula::Atom(a) if negated => Formula::NegAtom(a.clone()),
            GeneralFormula::Atom(a) => Formula::PosAtom(a.clone()),
            GeneralFormula::Neg(x) => go(x, !negated),
            GeneralFormula::Tensor(a, b) if negated => Formula::par(go(a, true), go(b, true)),
            GeneralFormula::Tensor(a, b) => Formula::tensor(go(a, false), go(b, false)),
            GeneralFormula::Par(a, b) if negated => Formula::tensor(go(a, true), go(b, true)),
            GeneralFormula::Par(a, b) => Formula::par(go(a, false), go(b, false)),
        }
    }
    go(g, false)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::PosAtom(a) => write!(f, "{a}"),
            Formula::NegAtom(a) => write!(f, "~{a}"),
            Formula::Tensor(a, b) => write!(f, "({a} * {b})"),
            Formula::Par(a, b) => write!(f, "({a} % {b})"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GeneralFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralFormula::Atom(a) => write!(f, "{a}"),
            GeneralFormula::Neg(x) => write!(f, "~{x}"),
            GeneralFormula::Tensor(a, b) => write!(f, "({a} * {b})"),
            GeneralFormula::Par(a, b) => write!(f, "({a} % {b})"),
        }
    }
}

pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn render_general(g: &GeneralFormula) -> String {
    g.to_string()
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    General,
}

/// A cursor over formula text. Shared with the derivation readers, which
/// embed formulae inside their own syntax.
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn with_offset(src: &'a str, pos: usize) -> Self {
        Cursor { src, pos }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.into() }
    }

    pub fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    /// A maximal run of identifier characters (possibly empty).
    pub fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn atom(&mut self) -> Result<AtomName, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'))
            .unwrap_or(rest.len());
        let name = &rest[..len];
        if name.is_empty() {
            return Err(match rest.chars().next() {
                Some(c) => self.error(format!("unexpected '{c}'")),
                None => self.error("unexpected end of input"),
            });
        }
        AtomName::new(name).map_err(|_| ParseError::Syntax {
            offset: start,
            message: format!("invalid atom name {name:?}"),
        })
        .inspect(|_| self.pos += len)
    }

    fn connective(&mut self) -> Result<bool, ParseError> {
        match self.peek() {
            Some('*') | Some('⊗') => {
                self.bump();
                Ok(true)
            }
            Some('%') | Some('⅋') => {
                self.bump();
                Ok(false)
            }
            Some(c) => Err(self.error(format!("expected connective, found '{c}'"))),
            None => Err(self.error("expected connective, found end of input")),
        }
    }

    pub fn general(&mut self) -> Result<GeneralFormula, ParseError> {
        match self.peek() {
            Some('~') | Some('¬') => {
                self.bump();
                Ok(GeneralFormula::Neg(Box::new(self.general()?)))
            }
            Some('(') => {
                self.bump();
                let a = self.general()?;
                let tensor = self.connective()?;
                let b = self.general()?;
                self.expect(')')?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if tensor { GeneralFormula::Tensor(a, b) } else { GeneralFormula::Par(a, b) })
            }
            _ => Ok(GeneralFormula::Atom(self.atom()?)),
        }
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('~') | Some('¬') => {
                self.bump();
                let start = self.pos;
                match self.peek() {
                    Some(c) if c.is_ascii_lowercase() => Ok(Formula::NegAtom(self.atom()?)),
                    _ => {
                        let sub = self.general()?;
                        Err(ParseError::NnfViolation { offset: start, subterm: format!("~{sub}") })
                    }
                }
            }
            Some('(') => {
                self.bump();
                let a = self.formula()?;
                let tensor = self.connective()?;
                let b = self.formula()?;
                self.expect(')')?;
                Ok(if tensor { Formula::tensor(a, b) } else { Formula::par(a, b) })
            }
            _ => Ok(Formula::PosAtom(self.atom()?)),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("trailing input starting with '{c}'"))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut c = Cursor::new(text);
    let f = c.formula()?;
    c.finish()?;
    Ok(f)
}

pub fn parse_general(text: &str) -> Result<GeneralFormula, ParseError> {
    let mut c = Cursor::new(text);
    let f = c.general()?;
    c.finish()?;
    Ok(f)
}

/// Either parse result, selected by mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Nnf(Formula),
    General(GeneralFormula),
}

pub fn parse_formula_mode(text: &str, mode: Mode) -> Result<Parsed, ParseError> {
    match mode {
        Mode::Strict => parse_formula(text).map(Parsed::Nnf),
        Mode::General => parse_general(text).map(Parsed::General),
    }
}

// ---------------------------------------------------------------------------
// Sequents

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|-")?;
        for (i, x) in self.0.iter().enumerate() {
            write!(f, "{}{x}", if i == 0 { " " } else { ", " })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.rest().starts_with("|-") {
        c.pos += 2;
    } else if c.rest().starts_with('⊢') {
        c.pos += '⊢'.len_utf8();
    } else {
        return Err(c.error("expected '|-'"));
    }
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(Sequent(out));
    }
    loop {
        out.push(c.formula()?);
        if c.peek() == Some(',') {
            c.bump();
        } else {
            break;
        }
    }
    c.finish()?;
    Ok(Sequent(out))
}

/// Left-bracketed par of the members.
pub fn sequent_to_formula(s: &Sequent) -> Result<Formula, PathError> {
    let mut it = s.0.iter().cloned();
    let first = it.next().ok_or(PathError::EmptySequent)?;
    Ok(it.fold(first, Formula::par))
}

// ---------------------------------------------------------------------------
// Paths

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Path(pub Vec<Dir>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, d: Dir) -> Path {
        let mut v = self.0.clone();
        v.push(d);
        Path(v)
    }

    pub fn join(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }

    /// `L` repeated `n` times.
    pub fn lefts(n: usize) -> Path {
        Path(vec![Dir::L; n])
    }

    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str) -> Result<Path, ParseError> {
        let text = text.trim();
        if text == "." || text.is_empty() {
            return Ok(Path::root());
        }
        text.char_indices()
            .map(|(i, c)| match c {
                'L' => Ok(Dir::L),
                'R' => Ok(Dir::R),
                _ => Err(ParseError::Syntax { offset: i, message: format!("bad path step '{c}'") }),
            })
            .collect::<Result<_, _>>()
            .map(Path)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for d in &self.0 {
            f.write_str(match d {
                Dir::L => "L",
                Dir::R => "R",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn invalid(p: &Path, f: &Formula) -> PathError {
    PathError::Invalid { path: p.clone(), formula: f.to_string() }
}

pub fn subformula_at<'a>(f: &'a Formula, p: &Path) -> Result<&'a Formula, PathError> {
    let mut cur = f;
    for d in &p.0 {
        let (a, b) = cur.children().ok_or_else(|| invalid(p, f))?;
        cur = if *d == Dir::L { a } else { b };
    }
    Ok(cur)
}

pub fn replace_at(f: &Formula, p: &Path, g: Formula) -> Result<Formula, PathError> {
    fn go(f: &Formula, steps: &[Dir], g: Formula) -> Option<Formula> {
        let Some((d, rest)) = steps.split_first() else {
            return Some(g);
        };
        let rebuild = |a: Formula, b: Formula| match f {
            Formula::Tensor(..) => Formula::tensor(a, b),
            _ => Formula::par(a, b),
        };
        let (a, b) = f.children()?;
        Some(match d {
            Dir::L => rebuild(go(a, rest, g)?, b.clone()),
            Dir::R => rebuild(a.clone(), go(b, rest, g)?),
        })
    }
    go(f, &p.0, g).ok_or_else(|| invalid(p, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disample_parses() {
        let f = parse_formula("((~a % (a * ~b)) % b)").unwrap();
        let want = Formula::par(
            Formula::par(Formula::neg("a"), Formula::tensor(Formula::pos("a"), Formula::neg("b"))),
            Formula::pos("b"),
        );
        assert_eq!(f, want);
        assert_eq!(f.to_string(), "((~a % (a * ~b)) % b)");
    }

    #[test]
    fn unicode_input() {
        assert_eq!(parse_formula("(a ⊗ (b ⅋ ~c))").unwrap().to_string(), "(a * (b % ~c))");
    }

    #[test]
    fn strict_rejects_negated_compound() {
        match parse_formula("~(a*b)") {
            Err(ParseError::NnfViolation { subterm, .. }) => assert_eq!(subterm, "~(a * b)"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("~~a"), Err(ParseError::NnfViolation { .. })));
        assert!(parse_general("~(a*b)").is_ok());
    }

    #[test]
    fn syntax_error_offsets() {
        match parse_formula("(a * b") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("(a b)").is_err());
        assert!(parse_formula("a b").is_err());
        assert!(parse_formula("A").is_err());
    }

    #[test]
    fn negate_examples() {
        let t = parse_formula("(a * b)").unwrap();
        assert_eq!(negate(&t).to_string(), "(~a % ~b)");
        assert_eq!(negate(&Formula::neg("a")), Formula::pos("a"));
    }

    #[test]
    fn normalize_examples() {
        let g = parse_general("~(~a % (b * c))").unwrap();
        assert_eq!(demorgan_normalize(&g).to_string(), "(a * (~b % ~c))");
        assert_eq!(demorgan_normalize(&parse_general("~~a").unwrap()), Formula::pos("a"));
    }

    #[test]
    fn paths() {
        let f = parse_formula("((~a % (a * ~b)) % b)").unwrap();
        let p = Path::parse("LR").unwrap();
        assert_eq!(subformula_at(&f, &p).unwrap().to_string(), "(a * ~b)");
        assert_eq!(subformula_at(&f, &Path::root()).unwrap(), &f);
        assert!(subformula_at(&Formula::pos("a"), &Path::parse("L").unwrap()).is_err());
        let g = parse_formula("(~b % b)").unwrap();
        let h = replace_at(&g, &Path::parse("L").unwrap(), parse_formula("(~b * (~a % a))").unwrap());
        assert_eq!(h.unwrap().to_string(), "((~b * (~a % a)) % b)");
        assert_eq!(Path::root().to_string(), ".");
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("|- a, b, c").unwrap();
        assert_eq!(sequent_to_formula(&s).unwrap().to_string(), "((a % b) % c)");
        assert_eq!(s.to_string(), "|- a, b, c");
        assert!(sequent_to_formula(&Sequent::default()).is_err());
        assert_eq!(parse_sequent("|-").unwrap().len(), 0);
    }
}
