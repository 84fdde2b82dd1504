//! S-expression reader and printer for sequent derivations.

use std::fmt::Write;

use super::ScDerivation as Sc;
use crate::syntax::{Cursor, ParseError};

pub fn parse_sc(text: &str) -> Result<Sc, ParseError> {
    let stripped = strip_comments(text);
    let mut c = Cursor::new(&stripped);
    let d = node(&mut c)?;
    if let Some(ch) = c.peek() {
        return Err(c.error(format!("trailing input starting with '{ch}'")));
    }
    Ok(d)
}

/// Blanks out `;` comments, keeping byte offsets intact.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find(';') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn index(c: &mut Cursor<'_>) -> Result<usize, ParseError> {
    let start = c.pos();
    let w = c.word();
    w.parse().map_err(|_| ParseError::Syntax { offset: start, message: format!("expected an index, found {w:?}") })
}

fn node(c: &mut Cursor<'_>) -> Result<Sc, ParseError> {
    c.expect('(')?;
    let start = c.pos();
    let head = c.word();
    let d = match head {
        "ax" => {
            let f = c.formula()?;
            match f {
                crate::syntax::Formula::PosAtom(a) => Sc::Ax(a),
                _ => return Err(ParseError::Syntax { offset: start, message: "ax takes a positive atom".into() }),
            }
        }
        "id" => Sc::Id(c.formula()?),
        "exch" => {
            let i = index(c)?;
            Sc::exch(i, node(c)?)
        }
        "par" => {
            let i = index(c)?;
            Sc::par(i, node(c)?)
        }
        "tensor" => {
            let l = node(c)?;
            Sc::tensor(l, node(c)?)
        }
        "cut" => {
            let l = node(c)?;
            Sc::cut(l, node(c)?)
        }
        other => {
            return Err(ParseError::Syntax { offset: start, message: format!("unknown rule {other:?}") });
        }
    };
    c.expect(')')?;
    Ok(d)
}

/// Indented rendering, one rule per line.
pub fn render_sc(d: &Sc) -> String {
    let mut out = String::new();
    render(d, 0, &mut out);
    out.push('\n');
    out
}

fn render(d: &Sc, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match d {
        Sc::Ax(a) => write!(out, "{pad}(ax {a})").unwrap(),
        Sc::Id(f) => write!(out, "{pad}(id {f})").unwrap(),
        Sc::Exch(i, c) | Sc::Par(i, c) => {
            writeln!(out, "{pad}({} {i}", d.rule_name()).unwrap();
            render(c, depth + 1, out);
            out.push(')');
        }
        Sc::Tensor(l, r) | Sc::Cut(l, r) => {
            writeln!(out, "{pad}({}", d.rule_name()).unwrap();
            render(l, depth + 1, out);
            out.push('\n');
            render(r, depth + 1, out);
            out.push(')');
        }
    }
}
