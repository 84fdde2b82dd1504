//! Deep inference derivations as rewrite traces.

mod text;

use std::fmt;

use thiserror::Error;

use crate::metrics::RuleMetrics;
use crate::syntax::{negate, replace_at, subformula_at, AtomName, Dir, Formula, Path, PathError};

pub use text::{parse_di, render_di};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiError {
    #[error("step {step}: {source}")]
    Path { step: usize, source: PathError },
    #[error("step {step}: {rule} at {path} expects {expected}, found {found}")]
    Mismatch { step: usize, rule: DiRule, path: Path, expected: &'static str, found: String },
    #[error("step {step}: {rule} at {path}: {right} is not the negation of {left}")]
    Duality { step: usize, rule: DiRule, path: Path, left: String, right: String },
    #[error("step {step}: {rule} needs {what}")]
    Param { step: usize, rule: DiRule, what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiRule {
    AiDown,
    IDown,
    AiUp,
    IUp,
    SigmaUp,
    SigmaDown,
    AlphaUp,
    AlphaDown,
    Switch,
    SigmaSwitch,
}

impl DiRule {
    pub const ALL: [DiRule; 10] = [
        DiRule::AiDown,
        DiRule::IDown,
        DiRule::AiUp,
        DiRule::IUp,
        DiRule::SigmaUp,
        DiRule::SigmaDown,
        DiRule::AlphaUp,
        DiRule::AlphaDown,
        DiRule::Switch,
        DiRule::SigmaSwitch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiRule::AiDown => "ai-down",
            DiRule::IDown => "i-down",
            DiRule::AiUp => "ai-up",
            DiRule::IUp => "i-up",
            DiRule::SigmaUp => "sigma-up",
            DiRule::SigmaDown => "sigma-down",
            DiRule::AlphaUp => "alpha-up",
            DiRule::AlphaDown => "alpha-down",
            DiRule::Switch => "switch",
            DiRule::SigmaSwitch => "sigma-switch",
        }
    }

    pub fn from_name(s: &str) -> Option<DiRule> {
        DiRule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_introduction(self) -> bool {
        matches!(self, DiRule::AiDown | DiRule::IDown)
    }
}

impl fmt::Display for DiRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Param {
    Atom(AtomName),
    Formula(Formula),
}

impl Param {
    /// The introduced formula `A` of `B => (B * (~A % A))`.
    pub fn formula(&self) -> Formula {
        match self {
            Param::Atom(a) => Formula::PosAtom(a.clone()),
            Param::Formula(f) => f.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiStep {
    pub rule: DiRule,
    pub path: Path,
    pub param: Option<Param>,
}

impl DiStep {
    pub fn new(rule: DiRule, path: Path) -> Self {
        DiStep { rule, path, param: None }
    }

    pub fn ai_down(path: Path, a: AtomName) -> Self {
        DiStep { rule: DiRule::AiDown, path, param: Some(Param::Atom(a)) }
    }

    pub fn i_down(path: Path, f: Formula) -> Self {
        DiStep { rule: DiRule::IDown, path, param: Some(Param::Formula(f)) }
    }

    /// The same step applied inside the subformula at `prefix`.
    pub fn under(&self, prefix: &Path) -> Self {
        DiStep { rule: self.rule, path: prefix.join(&self.path), param: self.param.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DiAxiom {
    AiDown(AtomName),
    IDown(Formula),
    /// Starts from an arbitrary premise. Only used internally.
    Open(Formula),
}

impl DiAxiom {
    pub fn formula(&self) -> Formula {
        match self {
            DiAxiom::AiDown(a) => Formula::par(Formula::NegAtom(a.clone()), Formula::PosAtom(a.clone())),
            DiAxiom::IDown(f) => Formula::par(negate(f), f.clone()),
            DiAxiom::Open(f) => f.clone(),
        }
    }

    /// The axiom as an introduction step at `path`.
    pub fn as_step(&self, path: Path) -> Option<DiStep> {
        match self {
            DiAxiom::AiDown(a) => Some(DiStep::ai_down(path, a.clone())),
            DiAxiom::IDown(f) => Some(DiStep::i_down(path, f.clone())),
            DiAxiom::Open(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiDerivation {
    pub axiom: DiAxiom,
    pub steps: Vec<DiStep>,
}

impl DiDerivation {
    pub fn new(axiom: DiAxiom) -> Self {
        DiDerivation { axiom, steps: Vec::new() }
    }

    pub fn push(&mut self, step: DiStep) {
        self.steps.push(step);
    }
}

fn mismatch(step: usize, s: &DiStep, expected: &'static str, found: &Formula) -> DiError {
    DiError::Mismatch { step, rule: s.rule, path: s.path.clone(), expected, found: found.to_string() }
}

/// Rewrites `f` by one step. `index` only labels errors.
pub fn apply_step(f: &Formula, s: &DiStep, index: usize) -> Result<Formula, DiError> {
    use Formula::{Par, Tensor};
    let here = subformula_at(f, &s.path).map_err(|e| DiError::Path { step: index, source: e })?;
    let new = match s.rule {
        DiRule::AiDown | DiRule::IDown => {
            let a = match (&s.param, s.rule) {
                (Some(Param::Atom(a)), DiRule::AiDown) => Formula::PosAtom(a.clone()),
                (Some(Param::Formula(a)), DiRule::IDown) => a.clone(),
                (_, DiRule::AiDown) => return Err(DiError::Param { step: index, rule: s.rule, what: "an atom" }),
                _ => return Err(DiError::Param { step: index, rule: s.rule, what: "a formula" }),
            };
            Formula::tensor(here.clone(), Formula::par(negate(&a), a))
        }
        DiRule::AiUp | DiRule::IUp => match here {
            Par(l, b) => match &**l {
                Tensor(a, a2) => {
                    if **a2 != negate(a) {
                        return Err(DiError::Duality {
                            step: index,
                            rule: s.rule,
                            path: s.path.clone(),
                            left: a.to_string(),
                            right: a2.to_string(),
                        });
                    }
                    if s.rule == DiRule::AiUp && !a.is_atom() {
                        return Err(mismatch(index, s, "((a * ~a) % B) on an atom", here));
                    }
                    (**b).clone()
                }
                _ => return Err(mismatch(index, s, "((A * ~A) % B)", here)),
            },
            _ => return Err(mismatch(index, s, "((A * ~A) % B)", here)),
        },
        DiRule::SigmaUp => match here {
            Par(a, b) => Formula::Par(b.clone(), a.clone()),
            _ => return Err(mismatch(index, s, "(A % B)", here)),
        },
        DiRule::SigmaDown => match here {
            Tensor(a, b) => Formula::Tensor(b.clone(), a.clone()),
            _ => return Err(mismatch(index, s, "(A * B)", here)),
        },
        DiRule::AlphaUp => match here {
            Par(a, bc) => match &**bc {
                Par(b, c) => Formula::Par(Box::new(Formula::Par(a.clone(), b.clone())), c.clone()),
                _ => return Err(mismatch(index, s, "(A % (B % C))", here)),
            },
            _ => return Err(mismatch(index, s, "(A % (B % C))", here)),
        },
        DiRule::AlphaDown => match here {
            Tensor(ab, c) => match &**ab {
                Tensor(a, b) => Formula::Tensor(a.clone(), Box::new(Formula::Tensor(b.clone(), c.clone()))),
                _ => return Err(mismatch(index, s, "((A * B) * C)", here)),
            },
            _ => return Err(mismatch(index, s, "((A * B) * C)", here)),
        },
        DiRule::Switch => match here {
            Tensor(a, bc) => match &**bc {
                Par(b, c) => Formula::Par(Box::new(Formula::Tensor(a.clone(), b.clone())), c.clone()),
                _ => return Err(mismatch(index, s, "(A * (B % C))", here)),
            },
            _ => return Err(mismatch(index, s, "(A * (B % C))", here)),
        },
        DiRule::SigmaSwitch => match here {
            Tensor(ab, c) => match &**ab {
                Par(a, b) => Formula::Par(a.clone(), Box::new(Formula::Tensor(b.clone(), c.clone()))),
                _ => return Err(mismatch(index, s, "((A % B) * C)", here)),
            },
            _ => return Err(mismatch(index, s, "((A % B) * C)", here)),
        },
    };
    Ok(replace_at(f, &s.path, new).expect("path already validated"))
}

/// Folds the trace; returns every intermediate formula, starting with the
/// axiom formula.
pub fn check_di_trace(d: &DiDerivation) -> Result<Vec<Formula>, DiError> {
    let mut out = Vec::with_capacity(d.steps.len() + 1);
    out.push(d.axiom.formula());
    for (i, s) in d.steps.iter().enumerate() {
        let next = apply_step(out.last().unwrap(), s, i + 1)?;
        out.push(next);
    }
    Ok(out)
}

pub fn check_di(d: &DiDerivation) -> Result<Formula, DiError> {
    let mut f = d.axiom.formula();
    for (i, s) in d.steps.iter().enumerate() {
        f = apply_step(&f, s, i + 1)?;
    }
    Ok(f)
}

/// Replaces each sigma-switch by sigma-down, sigma-up, switch, sigma-up,
/// sigma-down.
pub fn expand_sigma_switch(d: &DiDerivation) -> DiDerivation {
    let mut steps = Vec::with_capacity(d.steps.len());
    for s in &d.steps {
        if s.rule != DiRule::SigmaSwitch {
            steps.push(s.clone());
            continue;
        }
        let p = &s.path;
        let pr = p.child(Dir::R);
        // ((A%B)*C) -> (C*(A%B)) -> (C*(B%A)) -> ((C*B)%A) -> (A%(C*B)) -> (A%(B*C))
        steps.extend([
            DiStep::new(DiRule::SigmaDown, p.clone()),
            DiStep::new(DiRule::SigmaUp, pr.clone()),
            DiStep::new(DiRule::Switch, p.clone()),
            DiStep::new(DiRule::SigmaUp, p.clone()),
            DiStep::new(DiRule::SigmaDown, pr),
        ]);
    }
    DiDerivation { axiom: d.axiom.clone(), steps }
}

/// A derivation of `(negate(A) % A)` using atomic introductions only.
pub fn atomic_introduction(a: &Formula) -> DiDerivation {
    let l = Path(vec![Dir::L]);
    let r = Path(vec![Dir::R]);
    match a {
        Formula::PosAtom(x) => DiDerivation::new(DiAxiom::AiDown(x.clone())),
        Formula::NegAtom(x) => {
            let mut d = DiDerivation::new(DiAxiom::AiDown(x.clone()));
            d.push(DiStep::new(DiRule::SigmaUp, Path::root()));
            d
        }
        Formula::Tensor(b, c) => {
            let mut d = atomic_introduction(b);
            graft(&mut d, &atomic_introduction(c), &r);
            d.push(DiStep::new(DiRule::SigmaUp, Path(vec![Dir::R, Dir::R])));
            d.push(DiStep::new(DiRule::Switch, r.clone()));
            d.push(DiStep::new(DiRule::SigmaUp, r));
            d.push(DiStep::new(DiRule::AlphaUp, Path::root()));
            d
        }
        Formula::Par(b, c) => {
            let mut d = atomic_introduction(b);
            graft(&mut d, &atomic_introduction(c), &l);
            d.push(DiStep::new(DiRule::Switch, l));
            d.push(DiStep::new(DiRule::SigmaUp, Path::root()));
            d.push(DiStep::new(DiRule::SigmaUp, r));
            d.push(DiStep::new(DiRule::AlphaUp, Path::root()));
            d.push(DiStep::new(DiRule::SigmaUp, Path::root()));
            d
        }
    }
}

/// Introduces `inner`'s axiom at `at` and replays its steps inside the new
/// `(~A % A)`, which sits at `at.R`.
pub(crate) fn graft(d: &mut DiDerivation, inner: &DiDerivation, at: &Path) {
    d.push(inner.axiom.as_step(at.clone()).expect("grafted derivation has an axiom"));
    let inside = at.child(Dir::R);
    d.steps.extend(inner.steps.iter().map(|s| s.under(&inside)));
}

/// Replaces every `i-down` (axiom or step) by atomic introductions.
pub fn atomize_di(d: &DiDerivation) -> DiDerivation {
    let mut out = match &d.axiom {
        DiAxiom::IDown(a) => atomic_introduction(a),
        other => DiDerivation::new(other.clone()),
    };
    for s in &d.steps {
        match (&s.rule, &s.param) {
            (DiRule::IDown, Some(Param::Formula(a))) => graft(&mut out, &atomic_introduction(a), &s.path),
            _ => out.push(s.clone()),
        }
    }
    out
}

pub fn di_metrics(d: &DiDerivation) -> RuleMetrics {
    let mut m = RuleMetrics::new();
    match d.axiom {
        DiAxiom::AiDown(_) => m.bump("ai-down"),
        DiAxiom::IDown(_) => m.bump("i-down"),
        DiAxiom::Open(_) => {}
    }
    for s in &d.steps {
        m.bump(s.rule.name());
    }
    m
}
