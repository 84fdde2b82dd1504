//! Editing a derivation at the node that creates a given occurrence.
//!
//! An occurrence is a top-level position `k` of the conclusion, optionally
//! refined by a path into that formula. Walking upwards, the position is
//! carried through exchanges, pars and the contexts of tensors and cuts until
//! the node that introduces the formula. The edit there may replace the
//! formula by a block of `m` formulas; the nodes below are rebuilt with their
//! indices shifted so the block stays in place.

use super::{ScDerivation as Sc, ScError};
use crate::syntax::Dir;

pub fn concl_len(d: &Sc) -> usize {
    match d {
        Sc::Ax(_) | Sc::Id(_) => 2,
        Sc::Exch(_, c) => concl_len(c),
        Sc::Par(_, c) => concl_len(c) - 1,
        Sc::Tensor(l, r) => concl_len(l) + concl_len(r) - 1,
        Sc::Cut(l, r) => concl_len(l) + concl_len(r) - 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Creation {
    Leaf,
    Par,
    Tensor,
}

/// The node creating the top-level formula at `k`, and its local index.
pub(crate) fn locate(d: &Sc, k: usize) -> Result<(&Sc, usize), ScError> {
    match d {
        Sc::Ax(_) | Sc::Id(_) => Ok((d, k)),
        Sc::Exch(j, c) => {
            let kc = if k == *j { j + 1 } else if k == j + 1 { *j } else { k };
            locate(c, kc)
        }
        Sc::Par(j, c) => {
            if k == *j {
                Ok((d, k))
            } else {
                locate(c, if k < *j { k } else { k + 1 })
            }
        }
        Sc::Tensor(l, r) => {
            let nl = concl_len(l);
            if k + 1 == nl {
                Ok((d, k))
            } else if k + 1 < nl {
                locate(l, k)
            } else {
                locate(r, k + 1 - nl)
            }
        }
        Sc::Cut(l, r) => {
            let nl = concl_len(l);
            if k + 1 < nl {
                locate(l, k)
            } else {
                locate(r, k + 2 - nl)
            }
        }
    }
}

pub(crate) fn creation_kind(d: &Sc, k: usize) -> Result<Creation, ScError> {
    Ok(match locate(d, k)?.0 {
        Sc::Ax(_) | Sc::Id(_) => Creation::Leaf,
        Sc::Par(..) => Creation::Par,
        Sc::Tensor(..) => Creation::Tensor,
        _ => unreachable!("locate stops at creating nodes"),
    })
}

pub(crate) type TopEdit<'a> = dyn FnMut(&Sc, usize) -> Result<(Sc, usize), ScError> + 'a;
pub(crate) type DeepEdit<'a> = dyn FnMut(&Sc, usize) -> Result<Sc, ScError> + 'a;

/// Applies `f` at the creation node of position `k`. Returns the rebuilt
/// derivation and the block size produced by `f`.
pub(crate) fn edit_top(d: &Sc, k: usize, f: &mut TopEdit<'_>) -> Result<(Sc, usize), ScError> {
    match d {
        Sc::Ax(_) | Sc::Id(_) => f(d, k),
        Sc::Exch(j, c) => {
            let j = *j;
            let kc = if k == j { j + 1 } else if k == j + 1 { j } else { k };
            let (c, m) = edit_top(c, kc, f)?;
            let mut t = c;
            if kc < j {
                t = Sc::exch(j + m - 1, t);
            } else if kc == j {
                for i in (j..j + m).rev() {
                    t = Sc::exch(i, t);
                }
            } else if kc == j + 1 {
                for i in j..j + m {
                    t = Sc::exch(i, t);
                }
            } else {
                t = Sc::exch(j, t);
            }
            Ok((t, m))
        }
        Sc::Par(j, c) => {
            let j = *j;
            if k == j {
                return f(d, k);
            }
            let kc = if k < j { k } else { k + 1 };
            let (c, m) = edit_top(c, kc, f)?;
            Ok((Sc::par(if kc < j { j + m - 1 } else { j }, c), m))
        }
        Sc::Tensor(l, r) => {
            let nl = concl_len(l);
            if k + 1 == nl {
                f(d, k)
            } else if k + 1 < nl {
                let (l, m) = edit_top(l, k, f)?;
                Ok((Sc::tensor(l, (**r).clone()), m))
            } else {
                let (r, m) = edit_top(r, k + 1 - nl, f)?;
                Ok((Sc::tensor((**l).clone(), r), m))
            }
        }
        Sc::Cut(l, r) => {
            let nl = concl_len(l);
            if k + 1 < nl {
                let (l, m) = edit_top(l, k, f)?;
                Ok((Sc::cut(l, (**r).clone()), m))
            } else {
                let (r, m) = edit_top(r, k + 2 - nl, f)?;
                Ok((Sc::cut((**l).clone(), r), m))
            }
        }
    }
}

/// Applies `f` at the creation node of the subformula at `path` inside the
/// top-level formula `k`. The edit must keep that position a single formula.
pub(crate) fn edit_deep(d: &Sc, k: usize, path: &[Dir], f: &mut DeepEdit<'_>) -> Result<Sc, ScError> {
    let (out, _) = edit_top(d, k, &mut |node, kn| {
        let Some((dir, rest)) = path.split_first() else {
            return Ok((f(node, kn)?, 1));
        };
        let rebuilt = match node {
            Sc::Par(j, c) => {
                let kc = if *dir == Dir::L { *j } else { j + 1 };
                Sc::par(*j, edit_deep(c, kc, rest, f)?)
            }
            Sc::Tensor(l, r) => match dir {
                Dir::L => Sc::tensor(edit_deep(l, concl_len(l) - 1, rest, f)?, (**r).clone()),
                Dir::R => Sc::tensor((**l).clone(), edit_deep(r, 0, rest, f)?),
            },
            _ => {
                return Err(ScError::Occurrence(format!(
                    "subformula created by an axiom leaf ({})",
                    node.rule_name()
                )))
            }
        };
        Ok((rebuilt, 1))
    })?;
    Ok(out)
}

/// Reorders the conclusion with adjacent exchanges: position `i` of the
/// result holds what was at `target[i]`.
pub fn permute(d: Sc, target: &[usize]) -> Sc {
    let mut cur: Vec<usize> = (0..target.len()).collect();
    let mut d = d;
    for (i, want) in target.iter().enumerate() {
        let pos = cur.iter().position(|x| x == want).expect("target is a permutation");
        for j in (i..pos).rev() {
            d = Sc::exch(j, d);
            cur.swap(j, j + 1);
        }
    }
    d
}

/// Moves position `k` of an `n`-formula conclusion to the end.
pub fn to_end(d: Sc, n: usize, k: usize) -> Sc {
    let mut t: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    t.push(k);
    permute(d, &t)
}

/// Moves position `k` of an `n`-formula conclusion to the front.
pub fn to_front(d: Sc, n: usize, k: usize) -> Sc {
    let mut t = vec![k];
    t.extend((0..n).filter(|&i| i != k));
    permute(d, &t)
}
