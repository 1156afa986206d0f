use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use substratum::audit::{self, AuditConfig};
use substratum::automata::{build_direct, build_reverse_semigroup_within, minimize, Dfao};
use substratum::kernel::{brute_force_kernel, enumerate_kernel_within, Side};
use substratum::oracle::expand_within;
use substratum::semigroup::structure_semigroup_within;
use substratum::toeplitz::{Status, ToeplitzAnalysis};
use substratum::{Budget, Error, Substitution};

#[derive(Parser)]
#[command(name = "substratum", version, about = "Analyse constant-length substitutions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the input and summarise its basic properties.
    Validate { file: PathBuf },
    /// Print the simplified power as JSON (exponent on stderr).
    Simplify { file: PathBuf },
    /// Letters of the two-sided fixed point.
    FixedPoint {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i64, i64),
    },
    /// Direct or reverse reading automaton.
    Automaton {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReadingArg::Reverse)]
        reading: ReadingArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Minimize before printing.
        #[arg(long)]
        minimize: bool,
        /// Build the direct machine from the simplified power instead of the
        /// given substitution. The reverse machine always uses it.
        #[arg(long)]
        simplify: bool,
    },
    /// Kernel elements, with a brute-force count up to the given depth.
    Kernel {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Structure semigroup of the substitution.
    Semigroup { file: PathBuf },
    /// Periodic and aperiodic indices of the fixed point.
    Toeplitz {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i64, i64),
        /// Cross-check every verdict against an expanded window.
        #[arg(long)]
        certify: bool,
        /// One line per index.
        #[arg(long)]
        verbose: bool,
    },
    /// Semigroup automaton without its rank-1 states.
    ReducedGraph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
    },
    /// Run the invariant suite.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = AuditConfig::default().range)]
        range: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Direct,
    Reverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Text,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound {lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Input(String),
    Refusal(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_refusal() {
            Failure::Refusal(e.to_string())
        } else if e.is_budget() {
            Failure::Input(format!("{e} (raise it with SUBSTRATUM_BUDGET)"))
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Output = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::from_env();
    match run(cli.verb, &budget) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(report)) => {
            print!("{report}");
            eprintln!("invariant violated");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path) -> Result<Substitution, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(Substitution::from_json(&text)?)
}

fn run(verb: Verb, budget: &Budget) -> Output {
    match verb {
        Verb::Validate { file } => validate(&load(&file)?),
        Verb::Simplify { file } => {
            let (simple, n) = load(&file)?.simplify_within(budget)?;
            eprintln!("exponent {n}");
            Ok(simple.to_json() + "\n")
        }
        Verb::FixedPoint { file, range: (lo, hi) } => {
            let (simple, _) = load(&file)?.simplify_within(budget)?;
            let w = simple.fixed_point_window_within(lo, hi, budget)?;
            let alphabet = simple.alphabet();
            let sep = if alphabet.single_chars() { "" } else { " " };
            let letters: Vec<&str> = w.letters().iter().map(|&a| alphabet.symbol(a)).collect();
            Ok(letters.join(sep) + "\n")
        }
        Verb::Automaton { file, reading, format, minimize: min, simplify } => {
            let sub = load(&file)?;
            let m = match reading {
                ReadingArg::Direct if !simplify => build_direct(&sub)?,
                ReadingArg::Direct => build_direct(&sub.simplify_within(budget)?.0)?,
                ReadingArg::Reverse => {
                    build_reverse_semigroup_within(&sub.simplify_within(budget)?.0, budget)?.dfao
                }
            };
            let m = if min { minimize(&m) } else { m };
            Ok(render_machine(&m, format))
        }
        Verb::Kernel { file, depth } => kernel(&load(&file)?, depth, budget),
        Verb::Semigroup { file } => semigroup(&load(&file)?, budget),
        Verb::Toeplitz { file, range, certify, verbose } => {
            toeplitz(&load(&file)?, range, certify, verbose, budget)
        }
        Verb::ReducedGraph { file, format } => {
            let t = ToeplitzAnalysis::within(&load(&file)?, budget)?;
            let g = t.reduced_graph();
            Ok(match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Text => g.summary(),
            })
        }
        Verb::Check { file, range } => {
            let config = AuditConfig { range, ..AuditConfig::default() };
            let results = audit::run_checks(&load(&file)?, &config, budget)?;
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(out, "{r}");
            }
            if audit::all_passed(&results) {
                Ok(out)
            } else {
                Err(Failure::Invariant(out))
            }
        }
    }
}

fn render_machine(m: &Dfao, format: Format) -> String {
    match format {
        Format::Dot => m.to_dot(),
        Format::Json => m.to_json() + "\n",
        Format::Table => m.to_table(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(sub: &Substitution) -> Output {
    let alphabet = sub.alphabet();
    let mut out = String::from("ok\n");
    let _ = writeln!(out, "alphabet: {}", alphabet.symbols().join(" "));
    let _ = writeln!(out, "length: {}", sub.length());
    match sub.seed() {
        Some(s) => {
            let _ = writeln!(out, "seed: {}·{}", alphabet.symbol(s.left), alphabet.symbol(s.right));
        }
        None => out.push_str("seed: none\n"),
    }
    let _ = writeln!(out, "simplified exponent: {}", sub.simplify_exponent());
    let _ = writeln!(out, "primitive: {}", yes_no(sub.is_primitive()));
    match sub.height() {
        Ok(h) => {
            let _ = writeln!(out, "height: {h}");
        }
        Err(e) => {
            let _ = writeln!(out, "height: n/a ({e})");
        }
    }
    match sub.column_number() {
        Ok(c) => {
            let _ = writeln!(out, "column number: {c}");
        }
        Err(e) => {
            let _ = writeln!(out, "column number: n/a ({e})");
        }
    }
    if sub.seed().is_some() {
        let _ = writeln!(out, "aperiodic (heuristic): {}", yes_no(sub.looks_aperiodic()?));
    }
    Ok(out)
}

fn kernel(sub: &Substitution, depth: usize, budget: &Budget) -> Output {
    let (simple, _) = sub.simplify_within(budget)?;
    let alphabet = simple.alphabet();
    let elements = enumerate_kernel_within(&simple, Side::TwoSided, budget)?;
    let mut out = format!("kernel size: {}\n", elements.len());
    for e in &elements {
        let (lvl, j) = e.witness;
        let _ = writeln!(
            out,
            "e={lvl} j={j} {} {}",
            e.class_map.render(alphabet),
            alphabet.render(&e.sample)
        );
    }
    let w = expand_within(&simple, depth + 2, budget)?;
    let brute = brute_force_kernel(&w, simple.length(), depth)?;
    let _ = writeln!(
        out,
        "brute force, depth {depth}, indices {}..{}: {} distinct",
        brute.range.0, brute.range.1, brute.count
    );
    Ok(out)
}

fn semigroup(sub: &Substitution, budget: &Budget) -> Output {
    let alphabet = sub.alphabet();
    let s = structure_semigroup_within(sub, budget)?;
    let render = |maps: &mut dyn Iterator<Item = &substratum::ColumnMap>| {
        maps.map(|m| m.render(alphabet)).collect::<Vec<_>>().join(" ")
    };
    let m1 = s.graded.generated_monoid(1);
    let mut out = String::new();
    let _ = writeln!(out, "structure semigroup ({}): {}", s.len(), render(&mut s.elements.iter()));
    let _ = writeln!(out, "generated by columns ({}): {}", m1.len(), render(&mut m1.iter()));
    let _ = writeln!(out, "stabilizing exponent: {}", s.stabilizing_exponent);
    let _ = writeln!(out, "group: {}", yes_no(s.is_group()));
    let _ = writeln!(
        out,
        "minimal rank: {}",
        s.elements.iter().map(|m| m.rank()).min().unwrap_or(0)
    );
    for d in &s.diagnostics {
        let _ = writeln!(out, "diagnostic: {d}");
    }
    Ok(out)
}

fn toeplitz(sub: &Substitution, (lo, hi): (i64, i64), certify: bool, verbose: bool, budget: &Budget) -> Output {
    let t = ToeplitzAnalysis::within(sub, budget)?;
    let alphabet = t.working().alphabet();
    let verdicts = t.range(lo, hi)?;
    let mut out = String::new();
    if t.exponent() > 1 {
        let _ = writeln!(out, "working power: {} (length {})", t.exponent(), t.ell());
    }
    if verbose {
        for v in &verdicts {
            let (pos, neg) = (v.evidence.0.render(alphabet), v.evidence.1.render(alphabet));
            match v.status {
                Status::Periodic { period, letter, .. } => {
                    let a = alphabet.symbol(letter);
                    let _ = writeln!(out, "{} periodic {period} {a} {pos} {neg}", v.index);
                }
                Status::Aperiodic => {
                    let _ = writeln!(out, "{} aperiodic - - {pos} {neg}", v.index);
                }
            }
        }
    }
    let aper: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.is_periodic())
        .map(|v| v.index.to_string())
        .collect();
    let _ = writeln!(out, "Aper ∩ [{lo},{hi}] = {{{}}}", aper.join(", "));
    if !t.looks_aperiodic() {
        out.push_str("warning: the fixed point looks periodic\n");
    }
    if certify {
        let max_k = 6;
        let g = t.certification_generations(&verdicts, max_k);
        let w = expand_within(t.working(), g, budget)?;
        let cert = t.certify(&verdicts, &w, max_k)?;
        let _ = writeln!(
            out,
            "certified: {} aperiodic, {} periodic consistent, {} inconsistent, {} uncovered",
            cert.certified_aperiodic,
            cert.consistent_periodic,
            cert.inconsistencies.len(),
            cert.uncovered.len()
        );
        for line in &cert.inconsistencies {
            let _ = writeln!(out, "inconsistent: {line}");
        }
        if !cert.is_clean() {
            return Err(Failure::Invariant(out));
        }
    }
    Ok(out)
}
