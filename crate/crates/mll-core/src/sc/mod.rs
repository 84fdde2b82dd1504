//! One-sided sequent calculus derivations.

mod cut;
mod edit;
mod text;

use thiserror::Error;

use crate::metrics::RuleMetrics;
use crate::syntax::{negate, AtomName, Formula, Sequent};

pub use cut::eliminate_cuts;
pub use edit::{concl_len, permute, to_end, to_front};
pub(crate) use edit::{edit_deep, edit_top};
pub use text::{parse_sc, render_sc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error("{rule} index {index} out of range for a sequent of length {len}")]
    IndexOutOfRange { rule: &'static str, index: usize, len: usize },
    #[error("cut mismatch: {left} against {right}")]
    CutMismatch { left: String, right: String },
    #[error("{rule}: premise {side} has an empty conclusion")]
    EmptyPremise { rule: &'static str, side: &'static str },
    #[error("cannot locate occurrence: {0}")]
    Occurrence(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ScDerivation {
    Ax(AtomName),
    Id(Formula),
    Exch(usize, Box<ScDerivation>),
    Par(usize, Box<ScDerivation>),
    Tensor(Box<ScDerivation>, Box<ScDerivation>),
    Cut(Box<ScDerivation>, Box<ScDerivation>),
}

use ScDerivation as Sc;

impl ScDerivation {
    pub fn ax(a: &AtomName) -> Sc {
        Sc::Ax(a.clone())
    }

    pub fn id(f: Formula) -> Sc {
        Sc::Id(f)
    }

    pub fn exch(i: usize, d: Sc) -> Sc {
        Sc::Exch(i, Box::new(d))
    }

    pub fn par(i: usize, d: Sc) -> Sc {
        Sc::Par(i, Box::new(d))
    }

    pub fn tensor(l: Sc, r: Sc) -> Sc {
        Sc::Tensor(Box::new(l), Box::new(r))
    }

    pub fn cut(l: Sc, r: Sc) -> Sc {
        Sc::Cut(Box::new(l), Box::new(r))
    }

    /// `Ax` for a positive atom, `Id` otherwise.
    pub fn identity(f: &Formula) -> Sc {
        match f {
            Formula::PosAtom(a) => Sc::Ax(a.clone()),
            _ => Sc::Id(f.clone()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Sc::Ax(_) | Sc::Id(_) => 1,
            Sc::Exch(_, d) | Sc::Par(_, d) => 1 + d.size(),
            Sc::Tensor(l, r) | Sc::Cut(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Sc::Ax(_) => "ax",
            Sc::Id(_) => "id",
            Sc::Exch(..) => "exch",
            Sc::Par(..) => "par",
            Sc::Tensor(..) => "tensor",
            Sc::Cut(..) => "cut",
        }
    }
}

pub fn check_sc(d: &Sc) -> Result<Sequent, ScError> {
    Ok(Sequent(check_vec(d)?))
}

fn check_vec(d: &Sc) -> Result<Vec<Formula>, ScError> {
    match d {
        Sc::Ax(a) => Ok(vec![Formula::NegAtom(a.clone()), Formula::PosAtom(a.clone())]),
        Sc::Id(f) => Ok(vec![negate(f), f.clone()]),
        Sc::Exch(i, c) => {
            let mut v = check_vec(c)?;
            if i + 1 >= v.len() {
                return Err(ScError::IndexOutOfRange { rule: "exch", index: *i, len: v.len() });
            }
            v.swap(*i, i + 1);
            Ok(v)
        }
        Sc::Par(i, c) => {
            let mut v = check_vec(c)?;
            if i + 1 >= v.len() {
                return Err(ScError::IndexOutOfRange { rule: "par", index: *i, len: v.len() });
            }
            let b = v.remove(i + 1);
            let a = std::mem::replace(&mut v[*i], Formula::pos("x"));
            v[*i] = Formula::par(a, b);
            Ok(v)
        }
        Sc::Tensor(l, r) => {
            let (mut lv, mut rv) = (check_vec(l)?, check_vec(r)?);
            let a = lv.pop().ok_or(ScError::EmptyPremise { rule: "tensor", side: "left" })?;
            if rv.is_empty() {
                return Err(ScError::EmptyPremise { rule: "tensor", side: "right" });
            }
            let b = rv.remove(0);
            lv.push(Formula::tensor(a, b));
            lv.extend(rv);
            Ok(lv)
        }
        Sc::Cut(l, r) => {
            let (mut lv, mut rv) = (check_vec(l)?, check_vec(r)?);
            let a = lv.pop().ok_or(ScError::EmptyPremise { rule: "cut", side: "left" })?;
            if rv.is_empty() {
                return Err(ScError::EmptyPremise { rule: "cut", side: "right" });
            }
            let b = rv.remove(0);
            if b != negate(&a) {
                return Err(ScError::CutMismatch { left: a.to_string(), right: b.to_string() });
            }
            lv.extend(rv);
            Ok(lv)
        }
    }
}

/// Expands every `Id` into axioms on atoms.
pub fn atomize_sc(d: &Sc) -> Sc {
    match d {
        Sc::Ax(_) => d.clone(),
        Sc::Id(f) => atomic_identity(f),
        Sc::Exch(i, c) => Sc::exch(*i, atomize_sc(c)),
        Sc::Par(i, c) => Sc::par(*i, atomize_sc(c)),
        Sc::Tensor(l, r) => Sc::tensor(atomize_sc(l), atomize_sc(r)),
        Sc::Cut(l, r) => Sc::cut(atomize_sc(l), atomize_sc(r)),
    }
}

/// An `Id`-free derivation of `|- negate(f), f`.
pub fn atomic_identity(f: &Formula) -> Sc {
    match f {
        Formula::PosAtom(a) => Sc::Ax(a.clone()),
        Formula::NegAtom(a) => Sc::exch(0, Sc::Ax(a.clone())),
        Formula::Tensor(b, c) => Sc::par(
            0,
            Sc::exch(1, Sc::tensor(atomic_identity(b), Sc::exch(0, atomic_identity(c)))),
        ),
        Formula::Par(b, c) => Sc::par(
            1,
            Sc::exch(0, Sc::tensor(Sc::exch(0, atomic_identity(b)), atomic_identity(c))),
        ),
    }
}

pub fn sc_metrics(d: &Sc) -> RuleMetrics {
    let mut m = RuleMetrics::new();
    let mut stack = vec![d];
    while let Some(d) = stack.pop() {
        m.bump(d.rule_name());
        match d {
            Sc::Ax(_) | Sc::Id(_) => {}
            Sc::Exch(_, c) | Sc::Par(_, c) => stack.push(c),
            Sc::Tensor(l, r) | Sc::Cut(l, r) => stack.extend([&**l, &**r]),
        }
    }
    m
}
