//! Translations between the two calculi.

mod direct;
mod lemma;

use serde::Serialize;

use crate::di::{check_di, check_di_trace, graft, DiAxiom, DiDerivation, DiRule, DiStep};
use crate::metrics::RuleMetrics;
use crate::sc::{check_sc, ScDerivation as Sc, ScError};
use crate::syntax::{subformula_at, Formula, Path, Sequent};
use crate::Error;

pub use direct::di_to_sc_direct;
pub use lemma::{build_pq_lemma, wrap_in_context};

/// Translates a sequent proof of `|- G` into a deep inference derivation of
/// the left-bracketed par of `G`.
pub fn sc_to_di(d: &Sc) -> Result<DiDerivation, Error> {
    check_sc(d)?;
    Ok(to_di(d)?.0)
}

fn to_di(d: &Sc) -> Result<(DiDerivation, Vec<Formula>), Error> {
    Ok(match d {
        Sc::Ax(a) => {
            let g = check_sc(d)?.0;
            (DiDerivation::new(DiAxiom::AiDown(a.clone())), g)
        }
        Sc::Id(f) => {
            let g = check_sc(d)?.0;
            (DiDerivation::new(DiAxiom::IDown(f.clone())), g)
        }
        Sc::Exch(i, c) => {
            let (mut t, mut g) = to_di(c)?;
            let q = Path::lefts(g.len() - 2 - i);
            t.push(DiStep::new(DiRule::SigmaUp, q.clone()));
            if *i > 0 {
                t.push(DiStep::new(DiRule::AlphaUp, q.clone()));
                t.push(DiStep::new(DiRule::SigmaUp, q.child(crate::syntax::Dir::L)));
            }
            g.swap(*i, i + 1);
            (t, g)
        }
        Sc::Par(i, c) => {
            let (mut t, mut g) = to_di(c)?;
            let q = Path::lefts(g.len() - 2 - i);
            if *i > 0 {
                let qr = q.child(crate::syntax::Dir::R);
                for (rule, p) in [
                    (DiRule::SigmaUp, &q),
                    (DiRule::SigmaUp, &qr),
                    (DiRule::AlphaUp, &q),
                    (DiRule::SigmaUp, &q),
                    (DiRule::SigmaUp, &qr),
                ] {
                    t.push(DiStep::new(rule, p.clone()));
                }
            }
            let b = g.remove(i + 1);
            let a = g[*i].clone();
            g[*i] = Formula::par(a, b);
            (t, g)
        }
        Sc::Tensor(l, r) => {
            let (t0, mut g0) = to_di(l)?;
            let (mut t, g1) = to_di(r)?;
            let q = Path::lefts(g1.len() - 1);
            graft(&mut t, &t0, &q);
            t.push(DiStep::new(DiRule::SigmaDown, q.clone()));
            if g0.len() > 1 {
                t.push(DiStep::new(DiRule::SigmaSwitch, q));
            }
            let a = g0.pop().unwrap();
            g0.push(Formula::tensor(a, g1[0].clone()));
            g0.extend(g1[1..].iter().cloned());
            (t, g0)
        }
        Sc::Cut(l, r) => {
            let (t0, mut g0) = to_di(l)?;
            let (mut t, g1) = to_di(r)?;
            let q = Path::lefts(g1.len() - 1);
            graft(&mut t, &t0, &q);
            t.push(DiStep::new(DiRule::SigmaDown, q.clone()));
            let a = g0.pop().unwrap();
            let up = if a.is_atom() { DiRule::AiUp } else { DiRule::IUp };
            if !g0.is_empty() {
                t.push(DiStep::new(DiRule::SigmaSwitch, q.clone()));
                t.push(DiStep::new(DiRule::SigmaUp, q.clone()));
                t.push(DiStep::new(up, q));
            } else {
                let parent = q.parent().ok_or(ScError::EmptyPremise { rule: "cut", side: "conclusion" })?;
                t.push(DiStep::new(up, parent));
            }
            g0.extend(g1[1..].iter().cloned());
            (t, g0)
        }
    })
}

/// Translates step by step: each rewrite becomes a lemma proof extended
/// through its context and cut against the proof so far.
pub fn di_to_sc_naive(d: &DiDerivation) -> Result<Sc, Error> {
    let trace = check_di_trace(d)?;
    let mut proof = match &d.axiom {
        DiAxiom::AiDown(a) => Sc::par(0, Sc::Ax(a.clone())),
        DiAxiom::IDown(f) => Sc::par(0, Sc::identity(f)),
        DiAxiom::Open(_) => return Err(ScError::Occurrence("derivation has an open premise".into()).into()),
    };
    for (i, s) in d.steps.iter().enumerate() {
        let (before, after) = (&trace[i], &trace[i + 1]);
        let p = subformula_at(before, &s.path)?;
        let q = subformula_at(after, &s.path)?;
        let lemma = build_pq_lemma(s.rule, p, q)?;
        proof = Sc::cut(proof, wrap_in_context(lemma, &s.path, before)?);
    }
    Ok(proof)
}

#[derive(Debug, Clone, Serialize)]
pub struct Equality {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslationReport {
    pub direction: String,
    pub output: String,
    pub input_metrics: RuleMetrics,
    pub output_metrics: RuleMetrics,
    pub equalities: Vec<Equality>,
}

impl TranslationReport {
    pub fn all_hold(&self) -> bool {
        self.equalities.iter().all(|e| e.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn eq(name: &str, holds: bool) -> Equality {
    Equality { name: name.to_string(), holds }
}

fn singleton(f: Formula) -> Sequent {
    Sequent(vec![f])
}

/// The identities relating the metrics of an SC proof and its DI image.
pub fn sc_to_di_equalities(input: &RuleMetrics, output: &RuleMetrics) -> Vec<Equality> {
    let g = |m: &RuleMetrics, k: &str| m.get(k) as i64;
    vec![
        eq("id = i-down", g(input, "id") == g(output, "i-down")),
        eq("ax = ai-down", g(input, "ax") == g(output, "ai-down")),
        eq("cut = i-up + ai-up", input.get("cut") == output.up_family()),
        eq("cut + tensor = switch + sigma-switch", input.get("cut") + input.get("tensor") == output.switch_family()),
        eq(
            "ai-down + i-down - 1 = switch + sigma-switch",
            g(output, "ai-down") + g(output, "i-down") - 1 == output.switch_family() as i64,
        ),
    ]
}

/// The identities relating an atomized DI derivation and its direct SC image.
pub fn direct_equalities(atomized: &RuleMetrics, output: &RuleMetrics) -> Vec<Equality> {
    let g = |m: &RuleMetrics, k: &str| m.get(k) as i64;
    vec![
        eq("ai-down = ax", g(atomized, "ai-down") == g(output, "ax")),
        eq("i-up + ai-up = cut", atomized.up_family() == output.get("cut")),
        eq("ai-down - 1 = tensor + cut", g(atomized, "ai-down") - 1 == g(output, "tensor") + g(output, "cut")),
    ]
}

pub fn sc_identity(m: &RuleMetrics) -> Equality {
    eq("cut + tensor = ax + id - 1", (m.get("cut") + m.get("tensor")) as i64 == (m.get("ax") + m.get("id")) as i64 - 1)
}

pub fn report_sc_to_di(d: &Sc) -> Result<(DiDerivation, TranslationReport), Error> {
    let out = sc_to_di(d)?;
    let (im, om) = (crate::sc::sc_metrics(d), crate::di::di_metrics(&out));
    let mut equalities = sc_to_di_equalities(&im, &om);
    let want = crate::syntax::sequent_to_formula(&check_sc(d)?)?;
    equalities.push(eq("conclusion", check_di(&out)? == want));
    let report = TranslationReport {
        direction: "sc2di".into(),
        output: crate::di::render_di(&out),
        input_metrics: im,
        output_metrics: om,
        equalities,
    };
    Ok((out, report))
}

pub fn report_di_to_sc(d: &DiDerivation, naive: bool) -> Result<(Sc, TranslationReport), Error> {
    let out = if naive { di_to_sc_naive(d)? } else { di_to_sc_direct(d)? };
    let (im, om) = (crate::di::di_metrics(d), crate::sc::sc_metrics(&out));
    let mut equalities = if naive {
        vec![eq("cut = non-axiom steps", om.get("cut") == d.steps.len() as u64)]
    } else {
        let atomized = crate::di::di_metrics(&crate::di::atomize_di(d));
        direct_equalities(&atomized, &om)
    };
    equalities.push(sc_identity(&om));
    equalities.push(eq("conclusion", check_sc(&out)? == singleton(check_di(d)?)));
    let report = TranslationReport {
        direction: if naive { "di2sc-naive" } else { "di2sc" }.into(),
        output: crate::sc::render_sc(&out),
        input_metrics: im,
        output_metrics: om,
        equalities,
    };
    Ok((out, report))
}

pub fn report_cut_elimination(d: &Sc) -> Result<(Sc, TranslationReport), Error> {
    let out = crate::sc::eliminate_cuts(d)?;
    let (im, om) = (crate::sc::sc_metrics(d), crate::sc::sc_metrics(&out));
    let equalities = vec![
        eq("cut = 0", om.get("cut") == 0),
        eq("ax + id = tensor + 1", om.get("ax") + om.get("id") == om.get("tensor") + 1),
        eq("conclusion", check_sc(&out)? == check_sc(d)?),
    ];
    let report = TranslationReport {
        direction: "cutelim".into(),
        output: crate::sc::render_sc(&out),
        input_metrics: im,
        output_metrics: om,
        equalities,
    };
    Ok((out, report))
}
