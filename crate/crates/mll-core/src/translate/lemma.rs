//! Proofs of `|- ~P, Q` for single rewrite steps, and their extension
//! through a context.

use crate::di::DiRule;
use crate::sc::{check_sc, ScDerivation as Sc};
use crate::syntax::{negate, subformula_at, Dir, Formula, Path};
use crate::Error;

fn id(f: &Formula) -> Sc {
    Sc::identity(f)
}

fn shape_error(rule: DiRule, p: &Formula) -> Error {
    Error::Sc(crate::sc::ScError::Occurrence(format!("{rule} does not apply to {p}")))
}

/// A derivation of `|- negate(p), q` for one step of `rule` rewriting `p`
/// into `q`.
pub fn build_pq_lemma(rule: DiRule, p: &Formula, q: &Formula) -> Result<Sc, Error> {
    use Formula::{Par, Tensor};
    let bad = || shape_error(rule, p);
    let d = match rule {
        DiRule::AiDown | DiRule::IDown => {
            let Tensor(_, r) = q else { return Err(bad()) };
            let Par(_, a) = &**r else { return Err(bad()) };
            Sc::tensor(id(p), Sc::par(0, id(a)))
        }
        DiRule::AiUp | DiRule::IUp => {
            let Par(l, b) = p else { return Err(bad()) };
            let Tensor(a, _) = &**l else { return Err(bad()) };
            Sc::tensor(Sc::par(0, id(a)), id(b))
        }
        DiRule::Switch => {
            let Tensor(a, bc) = p else { return Err(bad()) };
            let Par(b, c) = &**bc else { return Err(bad()) };
            Sc::par(1, Sc::par(0, Sc::exch(1, Sc::tensor(Sc::tensor(id(a), Sc::exch(0, id(b))), id(c)))))
        }
        DiRule::SigmaSwitch => {
            let Tensor(ab, c) = p else { return Err(bad()) };
            let Par(a, b) = &**ab else { return Err(bad()) };
            Sc::par(
                0,
                Sc::exch(
                    1,
                    Sc::par(1, Sc::exch(0, Sc::tensor(Sc::exch(0, id(a)), Sc::tensor(id(b), Sc::exch(0, id(c)))))),
                ),
            )
        }
        DiRule::AlphaDown => {
            let Tensor(ab, c) = p else { return Err(bad()) };
            let Tensor(a, b) = &**ab else { return Err(bad()) };
            Sc::par(
                0,
                Sc::par(
                    0,
                    Sc::exch(2, Sc::exch(1, Sc::tensor(id(a), Sc::exch(0, Sc::tensor(id(b), Sc::exch(0, id(c))))))),
                ),
            )
        }
        DiRule::AlphaUp => {
            let Par(a, bc) = p else { return Err(bad()) };
            let Par(b, c) = &**bc else { return Err(bad()) };
            Sc::par(
                1,
                Sc::par(1, Sc::exch(0, Sc::tensor(Sc::exch(0, id(a)), Sc::exch(0, Sc::tensor(Sc::exch(0, id(b)), id(c)))))),
            )
        }
        DiRule::SigmaUp => {
            let Par(a, b) = p else { return Err(bad()) };
            Sc::par(1, Sc::exch(1, Sc::exch(0, Sc::tensor(Sc::exch(0, id(a)), id(b)))))
        }
        DiRule::SigmaDown => {
            let Tensor(a, b) = p else { return Err(bad()) };
            Sc::par(0, Sc::exch(0, Sc::exch(1, Sc::tensor(id(b), Sc::exch(0, id(a))))))
        }
    };
    let got = check_sc(&d)?;
    if got.0 != [negate(p), q.clone()] {
        return Err(shape_error(rule, p));
    }
    Ok(d)
}

/// Extends a proof of `|- ~P, Q` to `|- ~S{P}, S{Q}` where `S` is `host`
/// with a hole at `hole`.
pub fn wrap_in_context(lemma: Sc, hole: &Path, host: &Formula) -> Result<Sc, Error> {
    let mut d = lemma;
    for depth in (0..hole.len()).rev() {
        let prefix = Path(hole.0[..depth].to_vec());
        let node = subformula_at(host, &prefix)?;
        let (l, r) = node.children().ok_or_else(|| {
            Error::Path(crate::syntax::PathError::Invalid { path: hole.clone(), formula: host.to_string() })
        })?;
        d = match (node, hole.0[depth]) {
            // B * []
            (Formula::Tensor(..), Dir::R) => Sc::par(0, Sc::exch(1, Sc::tensor(id(l), Sc::exch(0, d)))),
            // [] * B
            (Formula::Tensor(..), Dir::L) => Sc::par(0, Sc::exch(1, Sc::tensor(d, Sc::exch(0, id(r))))),
            // B % []
            (Formula::Par(..), Dir::R) => Sc::par(1, Sc::exch(0, Sc::tensor(Sc::exch(0, id(l)), d))),
            // [] % B
            (Formula::Par(..), Dir::L) => Sc::par(1, Sc::exch(0, Sc::tensor(Sc::exch(0, d), id(r)))),
            _ => unreachable!(),
        };
    }
    Ok(d)
}
