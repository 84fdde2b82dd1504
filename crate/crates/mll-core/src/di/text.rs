//! Line-based trace format.
//!
//! ```text
//! axiom ai-down b
//! ai-down L a
//! sigma-down L
//! sigma-switch L
//! ```

use std::fmt::Write;

use super::{DiAxiom, DiDerivation, DiRule, DiStep, Param};
use crate::syntax::{parse_formula, AtomName, ParseError, Path};

fn at_line(line: usize, e: ParseError) -> ParseError {
    let message = match e {
        ParseError::Syntax { offset, message } => format!("line {line}, column {offset}: {message}"),
        ParseError::NnfViolation { offset, subterm } => {
            format!("line {line}, column {offset}: negation on a non-atom: {subterm}")
        }
        ParseError::BadAtom(a) => format!("line {line}: invalid atom name {a:?}"),
    };
    ParseError::Syntax { offset: 0, message }
}

pub fn parse_di(text: &str) -> Result<DiDerivation, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let (n, first) = lines.next().ok_or(ParseError::Syntax { offset: 0, message: "empty trace".into() })?;
    let mut parts = first.splitn(3, char::is_whitespace);
    if parts.next() != Some("axiom") {
        return Err(at_line(n, ParseError::Syntax { offset: 0, message: "expected 'axiom'".into() }));
    }
    let kind = parts.next().unwrap_or("");
    let payload = parts.next().unwrap_or("").trim();
    let axiom = match kind {
        "ai-down" => DiAxiom::AiDown(AtomName::new(payload).map_err(|e| at_line(n, e))?),
        "i-down" => DiAxiom::IDown(parse_formula(payload).map_err(|e| at_line(n, e))?),
        other => {
            return Err(at_line(n, ParseError::Syntax { offset: 0, message: format!("unknown axiom kind {other:?}") }))
        }
    };

    let mut d = DiDerivation::new(axiom);
    for (n, line) in lines {
        let mut parts = line.splitn(3, char::is_whitespace);
        let name = parts.next().unwrap();
        let rule = DiRule::from_name(name)
            .ok_or_else(|| at_line(n, ParseError::Syntax { offset: 0, message: format!("unknown rule {name:?}") }))?;
        let path = parts
            .next()
            .ok_or_else(|| at_line(n, ParseError::Syntax { offset: 0, message: "missing path".into() }))?;
        let path = Path::parse(path).map_err(|e| at_line(n, e))?;
        let rest = parts.next().unwrap_or("").trim();
        let param = match rule {
            DiRule::AiDown => Some(Param::Atom(AtomName::new(rest).map_err(|e| at_line(n, e))?)),
            DiRule::IDown => Some(Param::Formula(parse_formula(rest).map_err(|e| at_line(n, e))?)),
            _ if rest.is_empty() => None,
            _ => {
                return Err(at_line(n, ParseError::Syntax { offset: 0, message: format!("{rule} takes no parameter") }))
            }
        };
        d.push(DiStep { rule, path, param });
    }
    Ok(d)
}

pub fn render_di(d: &DiDerivation) -> String {
    let mut out = String::new();
    match &d.axiom {
        DiAxiom::AiDown(a) => writeln!(out, "axiom ai-down {a}").unwrap(),
        DiAxiom::IDown(f) => writeln!(out, "axiom i-down {f}").unwrap(),
        DiAxiom::Open(f) => writeln!(out, "# open premise {f}").unwrap(),
    }
    for s in &d.steps {
        match &s.param {
            Some(Param::Atom(a)) => writeln!(out, "{} {} {a}", s.rule, s.path).unwrap(),
            Some(Param::Formula(f)) => writeln!(out, "{} {} {f}", s.rule, s.path).unwrap(),
            None => writeln!(out, "{} {}", s.rule, s.path).unwrap(),
        }
    }
    out
}
