//! Cut elimination.
//!
//! Cuts are removed innermost first. A cut between cut-free premises is
//! reduced by locating the creation of the cut formula on each side: an
//! axiom on either side is replaced by the other premise, and a par against
//! a tensor is split into two cuts on the immediate subformulae. Locating
//! creations through the occurrence walk performs all commutations with
//! unrelated rules, including exchanges, at once.

use super::edit::{concl_len, creation_kind, edit_top, permute, to_end, to_front, Creation};
use super::{check_sc, ScDerivation as Sc, ScError};

pub fn eliminate_cuts(d: &Sc) -> Result<Sc, ScError> {
    check_sc(d)?;
    elim(d)
}

fn elim(d: &Sc) -> Result<Sc, ScError> {
    Ok(match d {
        Sc::Ax(_) | Sc::Id(_) => d.clone(),
        Sc::Exch(i, c) => Sc::exch(*i, elim(c)?),
        Sc::Par(i, c) => Sc::par(*i, elim(c)?),
        Sc::Tensor(l, r) => Sc::tensor(elim(l)?, elim(r)?),
        Sc::Cut(l, r) => reduce(elim(l)?, elim(r)?)?,
    })
}

/// A cut-free proof of `|- G, D` from cut-free `p1 |- G, A` and `p2 |- ~A, D`.
fn reduce(p1: Sc, p2: Sc) -> Result<Sc, ScError> {
    let n1 = concl_len(&p1);
    let n2 = concl_len(&p2);
    let k1 = n1 - 1;

    if creation_kind(&p1, k1)? == Creation::Leaf {
        // The leaf concludes |- ~A, A or |- A, ~A; its ~A is the cut partner.
        let (out, _) = edit_top(&p1, k1, &mut |_, kn| {
            let q = if kn == 1 { p2.clone() } else { to_end(p2.clone(), n2, 0) };
            Ok((q, n2 - 1))
        })?;
        return Ok(out);
    }
    if creation_kind(&p2, 0)? == Creation::Leaf {
        let (out, _) = edit_top(&p2, 0, &mut |_, kn| {
            let q = if kn == 0 { p1.clone() } else { to_front(p1.clone(), n1, k1) };
            Ok((q, n1 - 1))
        })?;
        return Ok(out);
    }

    match creation_kind(&p1, k1)? {
        Creation::Par => {
            // p1 |- G, X, Y ; the tensor in p2 splits into |- G2, ~X and |- ~Y, D2.
            let (p1x, _) = edit_top(&p1, k1, &mut remove_par)?;
            let g = n1 - 1;
            let (out, _) = edit_top(&p2, 0, &mut |node, _| {
                let Sc::Tensor(l, r) = node else { unreachable!() };
                let (nl, nr) = (concl_len(l), concl_len(r));
                let (g2, d2) = (nl - 1, nr - 1);
                // |- G, X, D2
                let q = reduce(p1x.clone(), (**r).clone())?;
                // |- G, D2, X
                let q = to_end(q, g + 1 + d2, g);
                // |- G, D2, G2
                let q = reduce(q, to_front((**l).clone(), nl, nl - 1))?;
                // |- G2, G, D2
                let mut t: Vec<usize> = (g + d2..g + d2 + g2).collect();
                t.extend(0..g + d2);
                Ok((permute(q, &t), g))
            })?;
            Ok(out)
        }
        Creation::Tensor => {
            let (p2x, _) = edit_top(&p2, 0, &mut remove_par)?;
            let dd = n2 - 1;
            let (out, _) = edit_top(&p1, k1, &mut |node, _| {
                let Sc::Tensor(l, r) = node else { unreachable!() };
                let (nl, nr) = (concl_len(l), concl_len(r));
                let (g1, g2) = (nl - 1, nr - 1);
                // |- G1, ~Y, D
                let q = reduce((**l).clone(), p2x.clone())?;
                // |- ~Y, G1, D
                let q = to_front(q, g1 + 1 + dd, g1);
                // |- G2, G1, D
                let q = reduce(to_end((**r).clone(), nr, 0), q)?;
                // |- G1, D, G2
                let mut t: Vec<usize> = (g2..g2 + g1 + dd).collect();
                t.extend(0..g2);
                Ok((permute(q, &t), dd))
            })?;
            Ok(out)
        }
        Creation::Leaf => unreachable!(),
    }
}

fn remove_par(node: &Sc, _: usize) -> Result<(Sc, usize), ScError> {
    match node {
        Sc::Par(_, c) => Ok(((**c).clone(), 2)),
        other => Err(ScError::Occurrence(format!("expected a par rule, found {}", other.rule_name()))),
    }
}
