//! Runs every acceptance criterion and prints one PASS/FAIL line each.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use mll_core::counting::{
    count_general, count_formula, count_sequent, di_invariant_holds, sc_invariant_holds,
};
use mll_core::di::{atomize_di, check_di, di_metrics, expand_sigma_switch, DiDerivation};
use mll_core::fuzz::{corpus, random_di, random_formula, random_sc, FuzzConfig};
use mll_core::sc::{atomize_sc, check_sc, eliminate_cuts, sc_metrics, ScDerivation};
use mll_core::semantics::{
    cliques_equal, concordance_properties, diagonal_product, dual_relation, from_concordance, interpret_di,
    interpret_formula, interpret_sc, is_clique, is_clique_in, is_morphism, par_space, tensor_space, to_concordance,
    AtomSpace, Clique, CoherenceSpace, Relation, Token, Valuation, DEFAULT_LIMIT,
};
use mll_core::syntax::{demorgan_normalize, parse_formula, sequent_to_formula, Formula, GeneralFormula};
use mll_core::translate::{
    di_to_sc_direct, di_to_sc_naive, report_cut_elimination, report_di_to_sc, report_sc_to_di, sc_identity, sc_to_di,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_clique, cut_example, disample};

const SEED: u64 = 20_240_601;
const CORPUS: usize = 1000;

/// Interpreting a proof whose axioms create more links than this holds
/// too many tokens before its cuts are resolved.
const MAX_LINKS: usize = 12;

fn links(d: &ScDerivation) -> usize {
    match d {
        ScDerivation::Ax(_) => 1,
        ScDerivation::Id(f) => f.leaf_count(),
        ScDerivation::Exch(_, c) | ScDerivation::Par(_, c) => links(c),
        ScDerivation::Tensor(l, r) | ScDerivation::Cut(l, r) => links(l) + links(r),
    }
}

type Outcome = Result<String, String>;

struct Corpus {
    di: Vec<DiDerivation>,
    sc: Vec<ScDerivation>,
}

fn build_corpus() -> Corpus {
    let cfg = FuzzConfig { seed: SEED, ..FuzzConfig::default() };
    let (mut di, mut sc) = corpus(&cfg, CORPUS / 2).expect("valid config");
    di.push(disample());
    sc.push(cut_example());
    let naive: Vec<ScDerivation> = di
        .iter()
        .map(|d| di_to_sc_naive(d).expect("naive translation"))
        .filter(|s| links(s) <= MAX_LINKS)
        .take(50)
        .collect();
    sc.extend(naive);
    Corpus { di, sc }
}

fn tally(violations: &BTreeMap<String, (usize, String)>, checked: usize) -> Outcome {
    if violations.is_empty() {
        Ok(format!("{checked} checks"))
    } else {
        let parts: Vec<String> =
            violations.iter().map(|(k, (n, ex))| format!("{k}: {n} violations (e.g. {ex})")).collect();
        Err(parts.join("; "))
    }
}

fn note(v: &mut BTreeMap<String, (usize, String)>, key: &str, example: impl FnOnce() -> String) {
    let e = v.entry(key.to_string()).or_insert_with(|| (0, example()));
    e.0 += 1;
}

fn fixture_fidelity() -> Outcome {
    let d = disample();
    let f = check_di(&d).map_err(|e| e.to_string())?;
    if f != parse_formula("((~a % (a * ~b)) % b)").unwrap() {
        return Err(format!("disample concludes {f}"));
    }
    let naive = di_to_sc_naive(&d).map_err(|e| e.to_string())?;
    let m = sc_metrics(&naive);
    let concl = check_sc(&naive).map_err(|e| e.to_string())?;
    if m.get("cut") != 3 {
        return Err(format!("naive translation has {} cuts", m.get("cut")));
    }
    if concl.0 != vec![f] {
        return Err(format!("naive translation concludes {concl}"));
    }
    Ok(format!("3 cuts, {} ax/id leaves, conclusion exact", m.get("ax") + m.get("id")))
}

fn sc_to_di_example() -> Outcome {
    let d = sc_to_di(&cut_example()).map_err(|e| e.to_string())?;
    let m = di_metrics(&d);
    let got: BTreeMap<&str, u64> = m.iter().collect();
    let want: BTreeMap<&str, u64> =
        [("ai-down", 4), ("sigma-down", 3), ("sigma-switch", 3), ("sigma-up", 1), ("ai-up", 1)].into_iter().collect();
    // the axiom counts as one of the twelve
    let steps = d.steps.len() + 1;
    let concl = check_di(&d).map_err(|e| e.to_string())?;
    let printed = parse_formula("(((~a % (a * ~b)) % (b * ~c)) % c)").unwrap();
    if steps != 12 || got != want || concl != printed {
        return Err(format!("{steps} steps, {got:?}, conclusion {concl}"));
    }
    Ok("12 steps, multiset and conclusion exact".into())
}

fn metric_identities(c: &Corpus) -> Outcome {
    let mut v = BTreeMap::new();
    let mut checked = 0;
    for d in &c.sc {
        let id = sc_identity(&sc_metrics(d));
        checked += 1;
        if !id.holds {
            note(&mut v, &format!("sc {}", id.name), || mll_core::sc::render_sc(d));
        }
        match report_sc_to_di(d) {
            Ok((_, r)) => {
                for e in r.equalities {
                    checked += 1;
                    if !e.holds {
                        note(&mut v, &format!("sc2di {}", e.name), || r.output.clone().replace('\n', " "));
                    }
                }
            }
            Err(e) => note(&mut v, "sc2di error", || e.to_string()),
        }
        match report_cut_elimination(d) {
            Ok((_, r)) => {
                for e in r.equalities {
                    checked += 1;
                    if !e.holds {
                        note(&mut v, &format!("cutelim {}", e.name), || mll_core::sc::render_sc(d));
                    }
                }
            }
            Err(e) => note(&mut v, "cutelim error", || e.to_string()),
        }
    }
    for d in &c.di {
        match report_di_to_sc(d, false) {
            Ok((_, r)) => {
                for e in r.equalities {
                    checked += 1;
                    if !e.holds {
                        note(&mut v, &format!("di2sc {}", e.name), || mll_core::di::render_di(d));
                    }
                }
            }
            Err(e) => note(&mut v, "di2sc error", || e.to_string()),
        }
    }
    tally(&v, checked)
}

fn counting(c: &Corpus) -> Outcome {
    let mut v = BTreeMap::new();
    for d in &c.di {
        let f = check_di(d).unwrap();
        if !di_invariant_holds(&f) {
            note(&mut v, "di invariant", || f.to_string());
        }
        let k = count_formula(&f);
        if k.pos_par != k.pos_tensor + 1 {
            note(&mut v, "par = tensor + 1", || f.to_string());
        }
    }
    for d in &c.sc {
        let s = check_sc(d).unwrap();
        if !sc_invariant_holds(&s) {
            note(&mut v, "sc invariant", || s.to_string());
        }
        let k = count_sequent(&s);
        if k.pos_par + k.commas != k.pos_tensor + 1 {
            note(&mut v, "par + commas = tensor + 1", || s.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for _ in 0..10_000 {
        let g = common::random_general(&mut rng, 5);
        let (a, b) = (count_general(&g), count_general(&demorgan_normalize(&g).lift()));
        if a.pos_tensor + a.neg_par != b.pos_tensor + b.neg_par || a.neg_tensor + a.pos_par != b.neg_tensor + b.pos_par {
            note(&mut v, "equivnos", || format!("{g:?}"));
        }
        let n = count_general(&GeneralFormula::Neg(Box::new(g.clone())));
        if n != a.dual() {
            note(&mut v, "dualnos", || format!("{g:?}"));
        }
    }
    tally(&v, c.di.len() + c.sc.len() + 10_000)
}

struct Interpretation {
    formula: Formula,
    clique: Clique,
    label: String,
}

fn di_interp(d: &DiDerivation, label: &str, v: &Valuation) -> Result<Interpretation, String> {
    let formula = check_di(d).map_err(|e| e.to_string())?;
    let clique = interpret_di(d, v).map_err(|e| e.to_string())?;
    Ok(Interpretation { formula, clique, label: label.into() })
}

fn sc_interp(d: &ScDerivation, label: &str, v: &Valuation) -> Result<Interpretation, String> {
    let formula = sequent_to_formula(&check_sc(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let clique = interpret_sc(d, v).map_err(|e| e.to_string())?;
    Ok(Interpretation { formula, clique, label: label.into() })
}

/// Every pipeline image of every corpus item, grouped with its source.
fn pipelines(c: &Corpus, v: &Valuation) -> Vec<Vec<Result<Interpretation, String>>> {
    let mut out = Vec::new();
    for d in &c.di {
        let mut g = vec![di_interp(d, "di", v)];
        g.push(di_to_sc_direct(d).map_err(|e| e.to_string()).and_then(|s| sc_interp(&s, "di2sc", v)));
        g.push(di_to_sc_naive(d).map_err(|e| e.to_string()).and_then(|s| sc_interp(&s, "di2sc-naive", v)));
        g.push(di_interp(&atomize_di(d), "atomize-di", v));
        g.push(di_interp(&expand_sigma_switch(d), "sigma-switch expansion", v));
        out.push(g);
    }
    for d in &c.sc {
        let mut g = vec![sc_interp(d, "sc", v)];
        g.push(sc_to_di(d).map_err(|e| e.to_string()).and_then(|t| di_interp(&t, "sc2di", v)));
        g.push(eliminate_cuts(d).map_err(|e| e.to_string()).and_then(|s| sc_interp(&s, "cutelim", v)));
        g.push(sc_interp(&atomize_sc(d), "atomize-sc", v));
        out.push(g);
    }
    out
}

/// Derivations of a common conclusion drawn from independent fuzz runs.
fn same_conclusion_pairs(want: usize) -> Vec<(Interpretation, Interpretation)> {
    let v = Valuation::default();
    let cfg = FuzzConfig {
        seed: SEED ^ 0x5eed,
        max_steps: 6,
        atoms: vec![common::atom("a"), common::atom("b")],
        max_pairs: 3,
        ..FuzzConfig::default()
    };
    let mut rng = cfg.rng();
    let mut seen: BTreeMap<Formula, Vec<(String, Interpretation)>> = BTreeMap::new();
    let mut pairs = Vec::new();
    for _ in 0..200_000 {
        if pairs.len() >= want {
            break;
        }
        let item = if rng.gen_bool(0.5) {
            let d = random_di(&mut rng, &cfg);
            (mll_core::di::render_di(&d), di_interp(&d, "di", &v))
        } else {
            let d = random_sc(&mut rng, &cfg);
            (mll_core::sc::render_sc(&d), sc_interp(&d, "sc", &v))
        };
        let (text, Ok(i)) = item else { continue };
        let bucket = seen.entry(i.formula.clone()).or_default();
        if bucket.iter().any(|(t, _)| *t == text) {
            continue;
        }
        if let Some((t0, first)) = bucket.first() {
            let first = Interpretation {
                formula: first.formula.clone(),
                clique: first.clique.clone(),
                label: t0.replace('\n', " "),
            };
            let second = Interpretation { formula: i.formula.clone(), clique: i.clique.clone(), label: text.replace('\n', " ") };
            pairs.push((first, second));
        }
        bucket.push((text, i));
    }
    pairs
}

fn semantic_invariance(groups: &[Vec<Result<Interpretation, String>>]) -> Outcome {
    let mut v = BTreeMap::new();
    let mut checked = 0;
    for g in groups {
        let Ok(src) = &g[0] else {
            note(&mut v, "source interpretation", || g[0].as_ref().err().unwrap().clone());
            continue;
        };
        for img in &g[1..] {
            checked += 1;
            match img {
                Ok(i) => match cliques_equal(&src.formula, &src.clique, &i.clique) {
                    Ok(true) => {}
                    Ok(false) => note(&mut v, &i.label, || src.formula.to_string()),
                    Err(e) => note(&mut v, &i.label, || e.to_string()),
                },
                Err(e) => note(&mut v, "pipeline error", || e.clone()),
            }
        }
    }
    let pairs = same_conclusion_pairs(200);
    if pairs.len() < 200 {
        note(&mut v, "independent pairs found", || format!("only {}", pairs.len()));
    }
    for (a, b) in &pairs {
        checked += 1;
        if !cliques_equal(&a.formula, &a.clique, &b.clique).unwrap_or(false) {
            note(&mut v, "independent derivations of one formula", || {
                format!("{} : [{}] vs [{}]", a.formula, a.label, b.label)
            });
        }
    }
    tally(&v, checked)
}

fn clique_structure(groups: &[Vec<Result<Interpretation, String>>]) -> Outcome {
    let val = Valuation::default();
    let mut v = BTreeMap::new();
    let mut checked = 0;
    for i in groups.iter().flatten().flatten() {
        checked += 1;
        if !is_clique_in(&i.formula, &val, &i.clique).unwrap_or(false) {
            note(&mut v, &format!("{} is_clique", i.label), || i.formula.to_string());
        }
        if !matches!(diagonal_product(&i.formula, &val, &i.clique), Ok(Some(_))) {
            note(&mut v, &format!("{} diagonal product", i.label), || i.formula.to_string());
        }
    }
    tally(&v, checked)
}

fn random_space(rng: &mut impl Rng, max: usize) -> CoherenceSpace {
    let n = rng.gen_range(1..=max);
    let p: f64 = rng.gen();
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(p)).collect();
    CoherenceSpace::from_fn(n, |i, j| bits[i * n + j])
}

fn spaces() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut v = BTreeMap::new();
    for _ in 0..500 {
        let c = random_space(&mut rng, 5);
        let view = to_concordance(&c, DEFAULT_LIMIT).unwrap();
        let props = concordance_properties(&view, DEFAULT_LIMIT).unwrap();
        if !props.all() {
            note(&mut v, "cohprop", || format!("{props:?}"));
        }
        if from_concordance(&view) != c {
            note(&mut v, "Coh-Con round trip", || format!("{c:?}"));
        }
    }
    let cfg = FuzzConfig::default();
    for _ in 0..100 {
        let mut val = Valuation::empty();
        for a in &cfg.atoms {
            val.insert(a.clone(), AtomSpace::numbered(random_space(&mut rng, 3)));
        }
        let leaves = rng.gen_range(1..=3);
        let a = random_formula(&mut rng, &cfg, leaves);
        let diag = mll_core::semantics::diagonal_clique(&interpret_formula(&a, &val).unwrap());
        let shape = Formula::par(mll_core::syntax::negate(&a), a.clone());
        let ok = is_clique_in(&shape, &val, &diag).unwrap()
            && (diag.len() > 30 || is_clique(&interpret_formula(&shape, &val).unwrap(), &diag).unwrap());
        if !ok {
            note(&mut v, "diagonal clique", || a.to_string());
        }
    }
    let switch = |a: &CoherenceSpace, b: &CoherenceSpace, c: &CoherenceSpace| {
        Relation::from_token_map(tensor_space(a, &par_space(b, c)), par_space(&tensor_space(a, b), c), |t| match t {
            Token::Pair(x, yz) => match &**yz {
                Token::Pair(y, z) => Some(Token::pair(Token::Pair(x.clone(), y.clone()), (**z).clone())),
                _ => None,
            },
            _ => None,
        })
    };
    let unswitch = |a: &CoherenceSpace, b: &CoherenceSpace, c: &CoherenceSpace| {
        Relation::from_token_map(par_space(&tensor_space(a, b), c), tensor_space(a, &par_space(b, c)), |t| match t {
            Token::Pair(xy, z) => match &**xy {
                Token::Pair(x, y) => Some(Token::pair((**x).clone(), Token::Pair(y.clone(), z.clone()))),
                _ => None,
            },
            _ => None,
        })
    };
    for _ in 0..200 {
        let (a, b, c) = (random_space(&mut rng, 3), random_space(&mut rng, 3), random_space(&mut rng, 3));
        if !is_morphism(&switch(&a, &b, &c)) {
            note(&mut v, "switch morphism", || format!("{a:?} {b:?} {c:?}"));
        }
    }
    let two = [CoherenceSpace::complete(2), CoherenceSpace::discrete(2)];
    let mut triples = Vec::new();
    for a in &two {
        for b in &two {
            for c in &two {
                triples.push((a, b, c));
            }
        }
    }
    let witness = triples.into_iter().find(|(a, b, c)| !is_morphism(&unswitch(a, b, c)));
    if witness.is_none() {
        note(&mut v, "inverse switch witness", || "none among 2-point spaces".into());
    }
    let mut found = 0;
    let mut tries = 0;
    while found < 200 && tries < 100_000 {
        tries += 1;
        let (a, b) = (random_space(&mut rng, 3), random_space(&mut rng, 3));
        let pairs: Vec<(usize, usize)> =
            (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.35)).collect();
        if pairs.is_empty() {
            continue;
        }
        let rel = Relation { source: a, target: b, pairs };
        if !is_morphism(&rel) {
            continue;
        }
        found += 1;
        let dual = dual_relation(&rel);
        if !is_morphism(&dual) || dual_relation(&dual) != rel {
            note(&mut v, "dual morphism", || format!("{rel:?}"));
        }
    }
    if found < 200 {
        note(&mut v, "random morphisms found", || format!("only {found}"));
    }
    let witness = witness.map(|(a, b, c)| format!("{}/{}/{}", kind(a), kind(b), kind(c))).unwrap_or_default();
    tally(&v, 500 + 100 + 200 + found).map(|s| format!("{s}; inverse switch witness {witness}"))
}

fn kind(c: &CoherenceSpace) -> &'static str {
    if c.coherent_idx(0, 1) {
        "complete"
    } else {
        "discrete"
    }
}

fn oracle_agreement() -> Outcome {
    let v = Valuation::default();
    let d = disample();
    let f = check_di(&d).unwrap();
    let got = interpret_di(&d, &v).map_err(|e| e.to_string())?;
    // leaves ~a a ~b b
    let want = brute_force_clique(&f, 2, &[(0, 1), (2, 3)]);
    if got != want || got.len() != 4 {
        return Err(format!("disample: {} tokens, oracle {}", got.len(), want.len()));
    }
    let s = cut_example();
    let f = sequent_to_formula(&check_sc(&s).unwrap()).unwrap();
    let got = interpret_sc(&s, &v).map_err(|e| e.to_string())?;
    // leaves ~a a ~b b ~c c
    let want = brute_force_clique(&f, 2, &[(0, 1), (2, 3), (4, 5)]);
    if got != want || got.len() != 8 {
        return Err(format!("cut example: {} tokens, oracle {}", got.len(), want.len()));
    }
    Ok("disample 4 tokens, cut example 8 tokens".into())
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = std::time::Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &r {
        Ok(m) => println!("PASS {name} ({m}) [{secs:.2}s]"),
        Err(m) => println!("FAIL {name} ({m}) [{secs:.2}s]"),
    }
    r.is_ok()
}

fn main() -> ExitCode {
    let corpus = build_corpus();
    println!("corpus: seed {SEED}, {} di, {} sc", corpus.di.len(), corpus.sc.len());
    let v = Valuation::default();
    let groups = pipelines(&corpus, &v);
    let results = [
        run("1 fixture fidelity", fixture_fidelity),
        run("2 sc2di of the cut example", sc_to_di_example),
        run("3 metric identities", || metric_identities(&corpus)),
        run("4 counting theorems", || counting(&corpus)),
        run("5 semantic invariance", || semantic_invariance(&groups)),
        run("6 clique structure", || clique_structure(&groups)),
        run("7 space-level suite", spaces),
        run("8 brute-force oracle", oracle_agreement),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
