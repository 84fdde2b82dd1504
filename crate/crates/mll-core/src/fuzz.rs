//! Seeded random generation of valid derivations.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::di::{apply_step, check_di, DiAxiom, DiDerivation, DiRule, DiStep};
use crate::sc::{atomic_identity, check_sc, ScDerivation as Sc};
use crate::syntax::{AtomName, Dir, Formula, Path};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_steps: usize,
    pub atoms: Vec<AtomName>,
    /// Per rule name; missing rules weigh 1.
    pub weights: BTreeMap<String, f64>,
    /// Upper bound on axiom links per derivation.
    pub max_pairs: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            max_steps: 12,
            atoms: ["a", "b", "c"].iter().map(|a| AtomName::new(a).expect("valid atom")).collect(),
            weights: [("i-down", 0.4), ("id", 0.4), ("i-up", 4.0), ("ai-up", 4.0)]
                .into_iter()
                .map(|(k, w)| (k.to_string(), w))
                .collect(),
            max_pairs: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuzzError {
    #[error("no introduction rule has positive weight")]
    NoIntroduction,
    #[error("atom pool is empty")]
    NoAtoms,
    #[error("max_pairs must be at least 1")]
    NoPairs,
    #[error("weight for {0} is negative or not finite")]
    BadWeight(String),
}

impl FuzzConfig {
    pub fn weight(&self, rule: &str) -> f64 {
        self.weights.get(rule).copied().unwrap_or(1.0)
    }

    pub fn validate(&self) -> Result<(), FuzzError> {
        if let Some((k, _)) = self.weights.iter().find(|(_, w)| !w.is_finite() || **w < 0.0) {
            return Err(FuzzError::BadWeight(k.clone()));
        }
        if self.atoms.is_empty() {
            return Err(FuzzError::NoAtoms);
        }
        if self.max_pairs == 0 {
            return Err(FuzzError::NoPairs);
        }
        if self.weight("ai-down") <= 0.0 && self.weight("i-down") <= 0.0 {
            return Err(FuzzError::NoIntroduction);
        }
        if self.weight("ax") <= 0.0 && self.weight("id") <= 0.0 {
            return Err(FuzzError::NoIntroduction);
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Every node position of `f`, root first.
pub fn all_paths(f: &Formula) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![(f, Path::root())];
    while let Some((g, p)) = stack.pop() {
        if let Some((l, r)) = g.children() {
            stack.push((r, p.child(Dir::R)));
            stack.push((l, p.child(Dir::L)));
        }
        out.push(p);
    }
    out
}

fn random_atom(rng: &mut impl Rng, cfg: &FuzzConfig) -> AtomName {
    cfg.atoms.choose(rng).expect("validated").clone()
}

/// A random formula with exactly `leaves` atom occurrences.
pub fn random_formula(rng: &mut impl Rng, cfg: &FuzzConfig, leaves: usize) -> Formula {
    if leaves <= 1 {
        let a = random_atom(rng, cfg);
        return if rng.gen_bool(0.5) { Formula::PosAtom(a) } else { Formula::NegAtom(a) };
    }
    let k = rng.gen_range(1..leaves);
    let (l, r) = (random_formula(rng, cfg, k), random_formula(rng, cfg, leaves - k));
    if rng.gen_bool(0.5) {
        Formula::tensor(l, r)
    } else {
        Formula::par(l, r)
    }
}

fn pick_weighted<'a, T>(rng: &mut impl Rng, items: &'a [(T, f64)]) -> Option<&'a T> {
    let total: f64 = items.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return None;
    }
    let mut x = rng.gen_range(0.0..total);
    for (t, w) in items {
        if x < *w {
            return Some(t);
        }
        x -= w;
    }
    items.iter().rev().find(|(_, w)| *w > 0.0).map(|(t, _)| t)
}

/// A valid deep inference derivation of at most `max_steps` steps.
pub fn random_di(rng: &mut impl Rng, cfg: &FuzzConfig) -> DiDerivation {
    let want_formula = cfg.weight("i-down") > 0.0 && cfg.max_pairs >= 2;
    let choices = [(false, cfg.weight("ai-down")), (true, if want_formula { cfg.weight("i-down") } else { 0.0 })];
    let axiom = match pick_weighted(rng, &choices) {
        Some(true) => {
            let k = rng.gen_range(1..=cfg.max_pairs.min(2));
            DiAxiom::IDown(random_formula(rng, cfg, k))
        }
        _ => DiAxiom::AiDown(random_atom(rng, cfg)),
    };
    let mut d = DiDerivation::new(axiom);
    let mut f = d.axiom.formula();
    let steps = rng.gen_range(0..=cfg.max_steps);
    for index in 1..=steps {
        let pairs = f.leaf_count() / 2;
        let paths = all_paths(&f);
        let mut options: Vec<(DiRule, f64)> = Vec::new();
        let mut sites: BTreeMap<DiRule, Vec<DiStep>> = BTreeMap::new();
        for rule in DiRule::ALL {
            let w = cfg.weight(rule.name());
            if w <= 0.0 {
                continue;
            }
            let here: Vec<DiStep> = if rule.is_introduction() {
                if pairs >= cfg.max_pairs {
                    continue;
                }
                paths.iter().map(|p| DiStep::new(rule, p.clone())).collect()
            } else {
                paths
                    .iter()
                    .map(|p| DiStep::new(rule, p.clone()))
                    .filter(|s| apply_step(&f, s, index).is_ok())
                    .collect()
            };
            if !here.is_empty() {
                options.push((rule, w));
                sites.insert(rule, here);
            }
        }
        let Some(rule) = pick_weighted(rng, &options).copied() else { break };
        let mut step = sites[&rule].choose(rng).expect("nonempty").clone();
        match rule {
            DiRule::AiDown => step = DiStep::ai_down(step.path, random_atom(rng, cfg)),
            DiRule::IDown => {
                let k = rng.gen_range(1..=(cfg.max_pairs - pairs).min(2));
                step = DiStep::i_down(step.path, random_formula(rng, cfg, k));
            }
            _ => {}
        }
        f = apply_step(&f, &step, index).expect("applicable");
        d.push(step);
    }
    debug_assert!(check_di(&d).is_ok());
    d
}

struct ScGen<'c> {
    cfg: &'c FuzzConfig,
    steps_left: usize,
}

impl ScGen<'_> {
    fn leaf(&mut self, rng: &mut impl Rng, budget: usize) -> Sc {
        let id_ok = self.cfg.weight("id") > 0.0;
        let choices = [(false, self.cfg.weight("ax")), (true, if id_ok { self.cfg.weight("id") } else { 0.0 })];
        if pick_weighted(rng, &choices) == Some(&true) {
            let k = rng.gen_range(1..=budget.clamp(1, 2));
            Sc::Id(random_formula(rng, self.cfg, k))
        } else {
            Sc::Ax(random_atom(rng, self.cfg))
        }
    }

    fn identity(&self, rng: &mut impl Rng, a: &Formula) -> Sc {
        if self.cfg.weight("id") > 0.0 && rng.gen_bool(0.5) {
            Sc::identity(a)
        } else {
            atomic_identity(a)
        }
    }

    fn node(&mut self, rng: &mut impl Rng, budget: usize) -> Sc {
        let mut kinds = vec![("leaf", 1.0)];
        if budget >= 2 && self.steps_left > 0 {
            kinds.push(("tensor", self.cfg.weight("tensor")));
            kinds.push(("cut", self.cfg.weight("cut")));
        }
        let kind = pick_weighted(rng, &kinds).copied().unwrap_or("leaf");
        let d = match kind {
            "tensor" => {
                self.steps_left -= 1;
                let k = rng.gen_range(1..budget);
                let l = self.node(rng, k);
                let r = self.node(rng, budget - k);
                Sc::tensor(l, r)
            }
            "cut" => {
                self.steps_left -= 1;
                let k = rng.gen_range(1..budget);
                let l = self.node(rng, k);
                let a = check_sc(&l).expect("generated proofs check").0.pop().expect("nonempty");
                let rest = budget - k;
                if a.leaf_count() > rest {
                    // cut formula too large for the budget; fall back
                    let r = self.node(rng, rest);
                    Sc::tensor(l, r)
                } else if rest > a.leaf_count() && self.steps_left > 0 && rng.gen_bool(0.6) {
                    self.steps_left -= 1;
                    let r = self.node(rng, rest - a.leaf_count());
                    Sc::cut(l, Sc::tensor(self.identity(rng, &a), r))
                } else {
                    Sc::cut(l, self.identity(rng, &a))
                }
            }
            _ => self.leaf(rng, budget),
        };
        self.wrap(rng, d)
    }

    fn wrap(&mut self, rng: &mut impl Rng, mut d: Sc) -> Sc {
        let n = rng.gen_range(0..=2);
        for _ in 0..n {
            if self.steps_left == 0 {
                break;
            }
            let len = check_sc(&d).expect("generated proofs check").len();
            if len < 2 {
                break;
            }
            let i = rng.gen_range(0..len - 1);
            let choices = [(false, self.cfg.weight("exch")), (true, self.cfg.weight("par"))];
            let Some(&par) = pick_weighted(rng, &choices) else {
                break;
            };
            self.steps_left -= 1;
            d = if par { Sc::par(i, d) } else { Sc::exch(i, d) };
        }
        d
    }
}

/// A valid sequent calculus derivation with at most `max_steps` rule
/// applications above its leaves.
pub fn random_sc(rng: &mut impl Rng, cfg: &FuzzConfig) -> Sc {
    let mut g = ScGen { cfg, steps_left: cfg.max_steps };
    let budget = rng.gen_range(1..=cfg.max_pairs);
    let d = g.node(rng, budget);
    debug_assert!(check_sc(&d).is_ok());
    d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusItem {
    Di(DiDerivation),
    Sc(Sc),
}

/// `count` deep inference and `count` sequent calculus derivations from
/// the configured seed.
pub fn corpus(cfg: &FuzzConfig, count: usize) -> Result<(Vec<DiDerivation>, Vec<Sc>), FuzzError> {
    cfg.validate()?;
    let mut rng = cfg.rng();
    let di = (0..count).map(|_| random_di(&mut rng, cfg)).collect();
    let sc = (0..count).map(|_| random_sc(&mut rng, cfg)).collect();
    Ok((di, sc))
}
