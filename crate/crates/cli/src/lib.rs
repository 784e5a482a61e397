//! Command-line front end for the `weilgroup` library.
//!
//! All logic lives in [`run`] so tests can drive it without spawning a
//! process. Exit codes: 0 on success, 1 on a domain error (or a failed
//! verification), 2 on a usage error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weilgroup::classify::{classify_all, classify_at};
use weilgroup::horn::{reduce_system, HornCache, HornTable, HornTriple, StMode};
use weilgroup::oracle::{lr_coefficient, matrix_cokernel_oracle, Strategy};
use weilgroup::poly::{exact_sqrt, parse_coefficients, IntPoly};
use weilgroup::smith::SmithEngine;
use weilgroup::verify::verify_paper_lists;
use weilgroup::weil::{shape_of, validate, Sign};
use weilgroup::{Error, Partition};

/// Default number of matrices the cokernel oracle may evaluate.
const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "weilgroup", version, about = "Groups of points of abelian varieties over finite fields")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached Horn tables (overrides WEILGROUP_CACHE).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Seed for sampled oracle runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Horn triples and inequality reduction.
    #[command(subcommand)]
    Horn(HornCmd),
    /// Smith invariants of block triangular matrices.
    #[command(subcommand)]
    Smith(SmithCmd),
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Admissible l-primary groups of an isogeny class.
    Classify(ClassifyArgs),
    /// Re-derive published inequality lists.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum HornCmd {
    /// List T^n_p, or its restriction to block sizes S,T.
    Triples {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Block sizes, e.g. 4,2.
        #[arg(long, value_parser = parse_pair)]
        st: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Minimal inequality list for block sizes S and T.
    Reduce {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Tilde,
    Strict,
}

#[derive(Subcommand, Debug)]
enum SmithCmd {
    /// Decide whether c can be the invariants for blocks a and b.
    Check {
        #[arg(long, value_parser = parse_partition)]
        a: Partition,
        #[arg(long, value_parser = parse_partition)]
        b: Partition,
        #[arg(long, value_parser = parse_partition)]
        c: Partition,
    },
    /// Every possible c for blocks a and b.
    Enumerate {
        #[arg(long, value_parser = parse_partition)]
        a: Partition,
        #[arg(long, value_parser = parse_partition)]
        b: Partition,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Littlewood-Richardson coefficient c^lambda_{mu,nu}.
    Lr {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
    },
    /// Cokernels of [[A, X], [0, B]] over Z/l^prec by sweeping X.
    Matrix {
        #[arg(long, value_parser = parse_partition)]
        a: Partition,
        #[arg(long, value_parser = parse_partition)]
        b: Partition,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        prec: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    q: u64,
    /// Coefficients, highest degree first, e.g. 1,-1,2.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Only this prime.
    #[arg(long)]
    l: Option<u64>,
    /// Multiply the polynomial by (t + √q)^2 (plus) or (t - √q)^2 (minus).
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Check the published (4, 2) lists and the size-6 remark.
    PaperLists,
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    let parts = parse_coefficients(text).map_err(|e| e.to_string())?;
    Partition::from_signed(&parts).map_err(|e| e.to_string())
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (s, t) = text.split_once(',').ok_or_else(|| format!("expected S,T, got {text:?}"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(s)?, num(t)?))
}

/// `[[I], [J], [K]]`.
fn triple_json(t: &HornTriple) -> [Vec<usize>; 3] {
    [t.i.elems().to_vec(), t.j.elems().to_vec(), t.k.elems().to_vec()]
}

enum Failure {
    Domain(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| Failure::Domain(Error::from(e)))
    };
}

struct Output<'a> {
    json: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) {
        // Write failures (closed pipes) are not worth a distinct exit code.
        let _ = if self.json { writeln!(self.out, "{}", serde_json::to_string(value).expect("results serialize")) } else { writeln!(self.out, "{}", text()) };
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "note: {msg}");
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let cache = cli.cache_dir.clone().map(HornCache::new).or_else(HornCache::from_env);
    let engine = SmithEngine::new(HornTable::new().with_cache(cache));
    let mut io = Output { json: cli.json, out, err };
    match dispatch(&cli, &engine, &mut io) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(io.err, "error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            2
        }
        Err(Failure::Verification) => 1,
    }
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn dispatch(cli: &Cli, engine: &SmithEngine, io: &mut Output<'_>) -> Result<(), Failure> {
    match &cli.command {
        Command::Horn(HornCmd::Triples { n, p, st, mode }) => {
            let triples = match st {
                Some((s, t)) => {
                    if s + t != *n {
                        return Err(Failure::Usage(format!("--st {s},{t} does not add up to --n {n}")));
                    }
                    let mode = match mode {
                        Mode::Tilde => StMode::Tilde,
                        Mode::Strict => StMode::Strict,
                    };
                    domain!(engine.table().enumerate_t_st(*s, *t, *p, mode))?
                }
                None => domain!(engine.table().enumerate_t(*n, *p))?,
            };
            let json: Vec<_> = triples.iter().map(triple_json).collect();
            io.emit(&json, || format!("{}\n{} triples", lines(&triples), triples.len()));
        }
        Command::Horn(HornCmd::Reduce { s, t }) => {
            let red = domain!(reduce_system(engine.table(), *s, *t))?;
            #[derive(Serialize)]
            struct Reduced {
                trace: String,
                kept: Vec<String>,
                removed: Vec<String>,
            }
            let sys = domain!(engine.system(*s, *t))?;
            let value = Reduced {
                trace: sys.trace.clone(),
                kept: red.kept.iter().map(|i| i.text.clone()).collect(),
                removed: red.removed.iter().map(|i| i.text.clone()).collect(),
            };
            io.emit(&value, || format!("{}\n{}\n{} kept, {} removed as redundant", value.trace, value.kept.join("\n"), value.kept.len(), value.removed.len()));
        }
        Command::Smith(SmithCmd::Check { a, b, c }) => {
            let sys = domain!(engine.system(a.len(), b.len()))?;
            let feasible = domain!(sys.feasible(a, b, c))?;
            let violated = if feasible || a.sum() + b.sum() != c.sum() { None } else { domain!(sys.violation(a, b, c))?.map(|i| i.text.clone()) };
            #[derive(Serialize)]
            struct Check {
                feasible: bool,
                violated: Option<String>,
            }
            let value = Check { feasible, violated };
            io.emit(&value, || match (&value.violated, feasible) {
                (_, true) => "feasible".to_string(),
                (Some(v), false) => format!("infeasible: violates {v}"),
                (None, false) => format!("infeasible: sizes break {}", sys.trace),
            });
        }
        Command::Smith(SmithCmd::Enumerate { a, b }) => {
            let cs = domain!(engine.enumerate_cokernels(a, b))?;
            io.emit(&cs, || lines(&cs));
        }
        Command::Oracle(OracleCmd::Lr { mu, nu, lambda }) => {
            let c = lr_coefficient(mu, nu, lambda);
            io.emit(&c, || c.to_string());
        }
        Command::Oracle(OracleCmd::Matrix { a, b, l, prec, budget }) => {
            let report = domain!(matrix_cokernel_oracle(a, b, *l, *prec, *budget, cli.seed))?;
            let how = match report.strategy {
                Strategy::FullSweep => "full sweep",
                Strategy::ReducedSweep => "reduced sweep",
                Strategy::Sampled => "sampled",
            };
            io.emit(&report, || {
                format!("{}\n{how}, {} matrices, {}", lines(&report.cokernels), report.evaluated, if report.complete { "complete" } else { "incomplete" })
            });
        }
        Command::Classify(args) => classify_cmd(args, engine, io)?,
        Command::Verify(VerifyCmd::PaperLists) => {
            let report = domain!(verify_paper_lists(engine))?;
            io.emit(&report, || report.to_string());
            if !report.passes() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn classify_cmd(args: &ClassifyArgs, engine: &SmithEngine, io: &mut Output<'_>) -> Result<(), Failure> {
    let coeffs = domain!(parse_coefficients(&args.poly))?;
    let mut poly = IntPoly::from_descending(&coeffs);
    if let Some(sign) = args.sign {
        let root = exact_sqrt(args.q).ok_or(weilgroup::error::ClassifyError::QNotSquare(args.q)).map_err(Error::from)?;
        let sign = match sign {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        };
        let square = domain!(sign.factor(root).pow(2))?;
        poly = domain!(poly.mul(&square))?;
    }
    let f = domain!(validate(poly, args.q))?;
    if let Some(l) = args.l {
        if l == f.p() {
            io.note(&format!("l = {l} is the characteristic; the result is formal"));
        }
        let dispatch = domain!(shape_of(&f))?;
        let groups = domain!(classify_at(engine, &f, &dispatch, l))?;
        io.emit(&groups, || lines(&groups));
        return Ok(());
    }
    let cls = domain!(classify_all(engine, &f))?;
    if let Some(p) = cls.formal_characteristic {
        io.note(&format!("p = {p} divides f(1) = {}; its entry is formal", cls.order));
    }
    let keyed: BTreeMap<String, &Vec<Partition>> = cls.groups.iter().map(|(l, g)| (l.to_string(), g)).collect();
    io.emit(&keyed, || {
        let mut text = format!("f(1) = {}\n", cls.order);
        for (l, groups) in &cls.groups {
            text.push_str(&format!("l = {l}:\n"));
            for g in groups {
                let gt = weilgroup::classify::GroupType { l: *l, exps: g.clone() };
                text.push_str(&format!("  {g}  {gt}\n"));
            }
        }
        text.trim_end().to_string()
    });
    Ok(())
}
