//! `mll`: check, translate, count and interpret MLL derivations.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mll_core::counting::{count_general, count_sequent, derived_p, derived_t, ConnectiveCounts};
use mll_core::di::{atomize_di, check_di, di_metrics, parse_di, render_di, DiDerivation};
use mll_core::fuzz::{corpus, FuzzConfig};
use mll_core::metrics::RuleMetrics;
use mll_core::sc::{atomize_sc, check_sc, parse_sc, render_sc, sc_metrics, ScDerivation};
use mll_core::semantics::{
    cliques_equal, diagonal_product, interpret_di, interpret_sc, is_clique_in, parse_valuation, render_clique, Clique,
    Valuation, DEFAULT_LIMIT,
};
use mll_core::syntax::{parse_general, parse_sequent, sequent_to_formula, AtomName, Formula};
use mll_core::translate::{report_cut_elimination, report_di_to_sc, report_sc_to_di, TranslationReport};

#[derive(Parser)]
#[command(name = "mll", version, about = "Proof tools for unit-free multiplicative linear logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum System {
    Sc,
    Di,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Sc2di,
    Di2sc,
    #[value(name = "di2sc-naive")]
    Di2scNaive,
    Cutelim,
    Atomize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation and print its conclusion and rule counts.
    Check {
        file: PathBuf,
        #[arg(long)]
        system: Option<System>,
    },
    /// Translate a derivation and report the size identities.
    Translate {
        file: PathBuf,
        #[arg(long)]
        to: Direction,
        #[arg(long)]
        system: Option<System>,
        /// Use the step-by-step translation with one cut per step.
        #[arg(long)]
        naive: bool,
        /// Write the derivation and report into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count connectives of a formula or sequent and test the derivability condition.
    Count {
        /// A file, or the formula or sequent text itself.
        input: String,
    },
    /// Print the clique a derivation denotes.
    Interpret {
        file: PathBuf,
        #[arg(long)]
        system: Option<System>,
        #[arg(long)]
        valuation: Option<PathBuf>,
        /// Largest atom carrier accepted.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Compare the cliques of two derivations of the same formula.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        system_a: Option<System>,
        #[arg(long)]
        system_b: Option<System>,
        #[arg(long)]
        valuation: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Generate a seeded corpus of valid derivations.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_steps: usize,
        #[arg(long, default_value_t = 5)]
        max_pairs: usize,
        #[arg(long, value_delimiter = ',', default_value = "a,b,c")]
        atoms: Vec<String>,
        /// Rule weights as `rule=weight`, comma separated.
        #[arg(long, value_delimiter = ',')]
        weight: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print rule counts as JSON.
    Metrics {
        file: PathBuf,
        #[arg(long)]
        system: Option<System>,
    },
}

/// Exit status 1 for logical failures, 2 for usage and parse errors.
struct Failure {
    code: u8,
    message: String,
}

fn usage(m: impl Into<String>) -> Failure {
    Failure { code: 2, message: m.into() }
}

fn logical(m: impl Into<String>) -> Failure {
    Failure { code: 1, message: m.into() }
}

impl From<mll_core::Error> for Failure {
    fn from(e: mll_core::Error) -> Self {
        match e {
            mll_core::Error::Parse(_) => usage(e.to_string()),
            _ => logical(e.to_string()),
        }
    }
}

enum Derivation {
    Sc(ScDerivation),
    Di(DiDerivation),
}

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn infer(path: &FsPath, system: Option<System>) -> Result<System, Failure> {
    if let Some(s) = system {
        return Ok(s);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("sc") => Ok(System::Sc),
        Some("di") => Ok(System::Di),
        _ => Err(usage(format!("{}: cannot infer the system; pass --system sc|di", path.display()))),
    }
}

fn load(path: &FsPath, system: Option<System>) -> Result<Derivation, Failure> {
    let text = read(path)?;
    let parsed = match infer(path, system)? {
        System::Sc => parse_sc(&text).map(Derivation::Sc),
        System::Di => parse_di(&text).map(Derivation::Di),
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn conclusion(d: &Derivation) -> Result<Formula, Failure> {
    Ok(match d {
        Derivation::Sc(s) => sequent_to_formula(&check_sc(s).map_err(mll_core::Error::from)?).map_err(mll_core::Error::from)?,
        Derivation::Di(t) => check_di(t).map_err(mll_core::Error::from)?,
    })
}

fn metrics(d: &Derivation) -> RuleMetrics {
    match d {
        Derivation::Sc(s) => sc_metrics(s),
        Derivation::Di(t) => di_metrics(t),
    }
}

fn check(file: &FsPath, system: Option<System>) -> Result<(), Failure> {
    let d = load(file, system)?;
    match &d {
        Derivation::Sc(s) => println!("{}", check_sc(s).map_err(mll_core::Error::from)?),
        Derivation::Di(t) => println!("{}", check_di(t).map_err(mll_core::Error::from)?),
    }
    println!("{}", metrics(&d));
    Ok(())
}

fn write_atomic(path: &FsPath, text: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| logical(format!("{}: {e}", path.display())))
}

fn atomize_report(d: &Derivation) -> Result<(String, &'static str, TranslationReport), Failure> {
    let (output, ext, im, om, same) = match d {
        Derivation::Sc(s) => {
            let a = atomize_sc(s);
            let same = check_sc(&a).map_err(mll_core::Error::from)? == check_sc(s).map_err(mll_core::Error::from)?;
            (render_sc(&a), "sc", sc_metrics(s), sc_metrics(&a), same)
        }
        Derivation::Di(t) => {
            let a = atomize_di(t);
            let same = check_di(&a).map_err(mll_core::Error::from)? == check_di(t).map_err(mll_core::Error::from)?;
            (render_di(&a), "di", di_metrics(t), di_metrics(&a), same)
        }
    };
    let no_compound = om.get("id") == 0 && om.get("i-down") == 0;
    let equalities = vec![
        mll_core::translate::Equality { name: "id = 0 and i-down = 0".into(), holds: no_compound },
        mll_core::translate::Equality { name: "conclusion".into(), holds: same },
    ];
    let report = TranslationReport {
        direction: "atomize".into(),
        output: output.clone(),
        input_metrics: im,
        output_metrics: om,
        equalities,
    };
    Ok((output, ext, report))
}

fn translate(
    file: &FsPath,
    to: Direction,
    system: Option<System>,
    naive: bool,
    out: Option<&FsPath>,
) -> Result<(), Failure> {
    let d = load(file, system)?;
    let (text, ext, report) = match (to, &d) {
        (Direction::Sc2di, Derivation::Sc(s)) => {
            let (t, r) = report_sc_to_di(s)?;
            (render_di(&t), "di", r)
        }
        (Direction::Di2sc | Direction::Di2scNaive, Derivation::Di(t)) => {
            let (s, r) = report_di_to_sc(t, naive || to == Direction::Di2scNaive)?;
            (render_sc(&s), "sc", r)
        }
        (Direction::Cutelim, Derivation::Sc(s)) => {
            let (e, r) = report_cut_elimination(s)?;
            (render_sc(&e), "sc", r)
        }
        (Direction::Atomize, _) => atomize_report(&d)?,
        _ => return Err(usage("the input system does not match the translation direction")),
    };
    let json = report.to_json();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| logical(format!("{}: {e}", dir.display())))?;
            let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
            let target = dir.join(format!("{stem}.{}.{ext}", report.direction));
            write_atomic(&target, &text)?;
            write_atomic(&dir.join(format!("{stem}.{}.json", report.direction)), &format!("{json}\n"))?;
            println!("{}", target.display());
        }
        None => print!("{text}"),
    }
    eprintln!("{json}");
    let failed: Vec<&str> = report.equalities.iter().filter(|e| !e.holds).map(|e| e.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(logical(format!("equalities do not hold: {}", failed.join(", "))))
    }
}

fn print_counts(c: &ConnectiveCounts) {
    println!(
        "pos-tensor={} neg-tensor={} pos-par={} neg-par={} commas={}",
        c.pos_tensor, c.neg_tensor, c.pos_par, c.neg_par, c.commas
    );
    println!("n_t={} n_p={}", derived_t(c), derived_p(c));
}

fn count(input: &str) -> Result<(), Failure> {
    let text = if FsPath::new(input).is_file() { read(FsPath::new(input))? } else { input.to_string() };
    let text = text.trim();
    let c = if text.starts_with("|-") || text.starts_with('⊢') {
        count_sequent(&parse_sequent(text).map_err(|e| usage(e.to_string()))?)
    } else {
        count_general(&parse_general(text).map_err(|e| usage(e.to_string()))?)
    };
    print_counts(&c);
    if derived_p(&c) - derived_t(&c) == 1 {
        println!("NECESSARY-CONDITION: PASS");
        Ok(())
    } else {
        println!("NECESSARY-CONDITION: FAIL");
        Err(logical("the counting condition for derivability fails"))
    }
}

fn valuation(path: Option<&FsPath>) -> Result<Valuation, Failure> {
    match path {
        None => Ok(Valuation::default()),
        Some(p) => parse_valuation(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))),
    }
}

fn clique(d: &Derivation, v: &Valuation, limit: usize) -> Result<(Formula, Clique), Failure> {
    let f = conclusion(d)?;
    for a in f.atoms() {
        if let Some(s) = v.get(&a) {
            if s.len() > limit {
                return Err(logical(format!("carrier of {a} has {} elements, above the limit {limit}", s.len())));
            }
        }
    }
    let c = match d {
        Derivation::Sc(s) => interpret_sc(s, v)?,
        Derivation::Di(t) => interpret_di(t, v)?,
    };
    Ok((f, c))
}

fn interpret(file: &FsPath, system: Option<System>, val: Option<&FsPath>, limit: usize) -> Result<(), Failure> {
    let d = load(file, system)?;
    let v = valuation(val)?;
    let (f, c) = clique(&d, &v, limit)?;
    print!("{}", render_clique(&f, &v, &c));
    let ok = is_clique_in(&f, &v, &c).map_err(mll_core::Error::from)?;
    let product = diagonal_product(&f, &v, &c).map_err(mll_core::Error::from)?.is_some();
    println!("is-clique: {}", if ok { "yes" } else { "no" });
    println!("diagonal-product: {}", if product { "yes" } else { "no" });
    if ok {
        Ok(())
    } else {
        Err(logical("the interpretation is not a clique"))
    }
}

fn compare(
    a: &FsPath,
    b: &FsPath,
    sa: Option<System>,
    sb: Option<System>,
    val: Option<&FsPath>,
    limit: usize,
) -> Result<(), Failure> {
    let (da, db) = (load(a, sa)?, load(b, sb)?);
    let v = valuation(val)?;
    let (fa, fb) = (conclusion(&da)?, conclusion(&db)?);
    if fa != fb {
        return Err(logical(format!("conclusion mismatch: {fa} vs {fb}")));
    }
    let (_, ca) = clique(&da, &v, limit)?;
    let (_, cb) = clique(&db, &v, limit)?;
    if cliques_equal(&fa, &ca, &cb).map_err(mll_core::Error::from)? {
        println!("EQUAL");
        Ok(())
    } else {
        println!("DIFFER");
        Err(logical(format!("cliques differ: {} against {} tokens", ca.len(), cb.len())))
    }
}

#[allow(clippy::too_many_arguments)]
fn fuzz(
    seed: u64,
    count: usize,
    max_steps: usize,
    max_pairs: usize,
    atoms: &[String],
    weights: &[String],
    out: &FsPath,
) -> Result<(), Failure> {
    let atoms = atoms
        .iter()
        .map(|a| AtomName::new(a.trim()).map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = FuzzConfig { seed, max_steps, max_pairs, atoms, ..FuzzConfig::default() };
    for w in weights {
        let (k, x) = w.split_once('=').ok_or_else(|| usage(format!("weight {w:?} is not rule=number")))?;
        let x: f64 = x.trim().parse().map_err(|_| usage(format!("weight {w:?} is not rule=number")))?;
        cfg.weights.insert(k.trim().to_string(), x);
    }
    let (di, sc) = corpus(&cfg, count).map_err(|e| usage(e.to_string()))?;
    fs::create_dir_all(out).map_err(|e| logical(format!("{}: {e}", out.display())))?;
    let mut files = Vec::new();
    for (i, d) in di.iter().enumerate() {
        let name = format!("di-{i:04}.di");
        write_atomic(&out.join(&name), &render_di(d))?;
        files.push(name);
    }
    for (i, d) in sc.iter().enumerate() {
        let name = format!("sc-{i:04}.sc");
        write_atomic(&out.join(&name), &render_sc(d))?;
        files.push(name);
    }
    let manifest = serde_json::json!({ "config": cfg, "files": files });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_atomic(&out.join("manifest.json"), &format!("{text}\n"))?;
    println!("seed {seed}: wrote {} derivations to {}", files.len(), out.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, system } => check(&file, system),
        Command::Translate { file, to, system, naive, out } => translate(&file, to, system, naive, out.as_deref()),
        Command::Count { input } => count(&input),
        Command::Interpret { file, system, valuation, limit } => interpret(&file, system, valuation.as_deref(), limit),
        Command::Compare { first, second, system_a, system_b, valuation, limit } => {
            compare(&first, &second, system_a, system_b, valuation.as_deref(), limit)
        }
        Command::Fuzz { seed, count, max_steps, max_pairs, atoms, weight, out } => {
            fuzz(seed, count, max_steps, max_pairs, &atoms, &weight, &out)
        }
        Command::Metrics { file, system } => {
            let d = load(&file, system)?;
            conclusion(&d)?;
            println!("{}", serde_json::to_string_pretty(&metrics(&d)).expect("metrics serialize"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
