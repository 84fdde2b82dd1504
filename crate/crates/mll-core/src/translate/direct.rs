//! Deep inference to sequent calculus without cuts on rewrites.
//!
//! Each step edits the proof built so far at the rule that created the
//! rewritten subformula.

use crate::di::{atomize_di, check_di, expand_sigma_switch, DiAxiom, DiDerivation, DiRule, DiStep, Param};
use crate::sc::{concl_len, edit_deep, edit_top, permute, to_end, to_front, ScDerivation as Sc, ScError};
use crate::Error;

fn occurrence(msg: impl Into<String>) -> ScError {
    ScError::Occurrence(msg.into())
}

fn remove_par(node: &Sc, _: usize) -> Result<(Sc, usize), ScError> {
    match node {
        Sc::Par(_, c) => Ok(((**c).clone(), 2)),
        other => Err(occurrence(format!("expected a par rule, found {}", other.rule_name()))),
    }
}

fn edit(node: &Sc, kn: usize, s: &DiStep) -> Result<Sc, ScError> {
    match s.rule {
        DiRule::AiDown => {
            let Some(Param::Atom(a)) = &s.param else { return Err(occurrence("ai-down without an atom")) };
            let n = concl_len(node);
            let t = to_end(node.clone(), n, kn);
            let t = Sc::tensor(t, Sc::par(0, Sc::Ax(a.clone())));
            let mut back: Vec<usize> = (0..kn).collect();
            back.push(n - 1);
            back.extend(kn..n - 1);
            Ok(permute(t, &back))
        }
        DiRule::SigmaUp => match node {
            Sc::Par(j, c) => Ok(Sc::par(*j, Sc::exch(*j, (**c).clone()))),
            _ => Err(occurrence("sigma-up on a formula not created by a par rule")),
        },
        DiRule::SigmaDown => match node {
            Sc::Tensor(l, r) => {
                let (nl, nr) = (concl_len(l), concl_len(r));
                let t = Sc::tensor(to_end((**r).clone(), nr, 0), to_front((**l).clone(), nl, nl - 1));
                // |- D, B * A, G  ->  |- G, B * A, D
                let mut back: Vec<usize> = (nr..nr + nl - 1).collect();
                back.push(nr - 1);
                back.extend(0..nr - 1);
                Ok(permute(t, &back))
            }
            _ => Err(occurrence("sigma-down on a formula not created by a tensor rule")),
        },
        DiRule::AlphaUp => match node {
            Sc::Par(j, c) => {
                let (c, _) = edit_top(c, j + 1, &mut remove_par)?;
                Ok(Sc::par(*j, Sc::par(*j, c)))
            }
            _ => Err(occurrence("alpha-up on a formula not created by a par rule")),
        },
        DiRule::Switch => match node {
            Sc::Tensor(l, r) => {
                let nl = concl_len(l);
                let (r, _) = edit_top(r, 0, &mut remove_par)?;
                Ok(Sc::par(nl - 1, Sc::tensor((**l).clone(), r)))
            }
            _ => Err(occurrence("switch on a formula not created by a tensor rule")),
        },
        DiRule::AlphaDown => match node {
            Sc::Tensor(l, r) => {
                let nl = concl_len(l);
                let nr = concl_len(r);
                let (l, _) = edit_top(l, nl - 1, &mut |inner, _| {
                    let Sc::Tensor(l1, l2) = inner else {
                        return Err(occurrence("alpha-down on a formula not created by a tensor rule"));
                    };
                    let (n1, n2) = (concl_len(l1), concl_len(l2));
                    let (g1, g2, dl) = (n1 - 1, n2 - 1, nr - 1);
                    // |- G2, B * C, D
                    let x = Sc::tensor(to_end((**l2).clone(), n2, 0), (**r).clone());
                    // |- B * C, G2, D
                    let x = to_front(x, g2 + 1 + dl, g2);
                    // |- G1, A * (B * C), G2, D  ->  |- G1, A * (B * C), D, G2
                    let x = Sc::tensor((**l1).clone(), x);
                    let mut t: Vec<usize> = (0..=g1).collect();
                    t.extend(g1 + 1 + g2..g1 + 1 + g2 + dl);
                    t.extend(g1 + 1..g1 + 1 + g2);
                    Ok((permute(x, &t), 1 + dl))
                })?;
                Ok(l)
            }
            _ => Err(occurrence("alpha-down on a formula not created by a tensor rule")),
        },
        DiRule::AiUp | DiRule::IUp => match node {
            Sc::Par(j, c) => {
                let (c, _) = edit_top(c, *j, &mut |inner, _| match inner {
                    Sc::Tensor(l, r) => Ok((Sc::cut((**l).clone(), (**r).clone()), 0)),
                    _ => Err(occurrence("i-up on a pair not created by a tensor rule")),
                })?;
                Ok(c)
            }
            _ => Err(occurrence("i-up on a formula not created by a par rule")),
        },
        DiRule::IDown | DiRule::SigmaSwitch => Err(occurrence(format!("{} must be expanded first", s.rule))),
    }
}

pub fn di_to_sc_direct(d: &DiDerivation) -> Result<Sc, Error> {
    check_di(d)?;
    let d = expand_sigma_switch(&atomize_di(d));
    let mut proof = match &d.axiom {
        DiAxiom::AiDown(a) => Sc::par(0, Sc::Ax(a.clone())),
        DiAxiom::IDown(_) => unreachable!("atomized"),
        DiAxiom::Open(_) => return Err(occurrence("derivation has an open premise").into()),
    };
    for s in &d.steps {
        proof = edit_deep(&proof, 0, &s.path.0, &mut |node, kn| edit(node, kn, s))?;
    }
    Ok(proof)
}
