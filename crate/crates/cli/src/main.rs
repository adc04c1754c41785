//! `nullcert`: search, verify and benchmark Nullstellensatz certificates.
//!
//! Exit status: 0 decided or valid, 1 no solution or invalid, 2 usage error or
//! malformed document, 3 I/O failure or refusal.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nullcert::corpus::{write_corpus, CorpusParams, DEFAULT_SEED};
use nullcert::engine::{system_stats, DEFAULT_BROWNAWELL_LIMIT, DEFAULT_MAX_UNKNOWNS};
use nullcert::frontend::{encode_3sat, encode_kcoloring, parse_dimacs_with, parse_edges};
use nullcert::metrics::{bench_run, format_ratio, write_csv, BenchOptions};
use nullcert::oracle::{
    box_zero_search_with_limit, dense_cert_search_with_limit, DEFAULT_BOX_LIMIT, DEFAULT_DENSE_LIMIT,
};
use nullcert::{
    counted_solve, emit_certificate, emit_system, parse_certificate, parse_system, presort_variables, solve,
    theorem_bound, verify, AnsatzKind, PivotRule, PolySystem, SolveOptions, SolveOutcome, Strategy,
};

#[derive(Parser)]
#[command(name = "nullcert", version, about = "Exact Nullstellensatz certificates over the Gaussian rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for g with Σ f_i g_i = 1 and write a certificate document.
    Solve(SolveArgs),
    /// Check a certificate against a system exactly.
    Verify(VerifyArgs),
    /// Turn a CNF or a graph colouring instance into a system document.
    Encode(EncodeArgs),
    /// Run the brute-force oracles: box search for a common zero and/or dense certificate search.
    Oracle(OracleArgs),
    /// Solve every system document in a directory and write a CSV report.
    Bench(BenchArgs),
    /// Write a seeded random corpus of system documents.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Macaulay,
    Levelwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnsatzArg {
    PaperRank,
    TotalDegree,
    PerVariable,
    Brownawell,
}

#[derive(Clone, Copy, ValueEnum)]
enum PivotArg {
    PaperTuple,
    Markowitz,
}

#[derive(Args, Clone)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "paper-rank")]
    ansatz: AnsatzArg,
    /// Degree bound for --ansatz total-degree.
    #[arg(long)]
    degree: Option<u32>,
    /// Comma-separated exponent caps for --ansatz per-variable.
    #[arg(long, value_delimiter = ',')]
    caps: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "paper-tuple")]
    pivot: PivotArg,
    /// Reorder variables to minimise the step-bound bracket before solving.
    #[arg(long)]
    presort: bool,
    /// Largest Brownawell degree bound accepted before refusing.
    #[arg(long, default_value_t = DEFAULT_BROWNAWELL_LIMIT)]
    brownawell_limit: u32,
    /// Largest number of unknowns in the flat linear system.
    #[arg(long, default_value_t = DEFAULT_MAX_UNKNOWNS)]
    max_unknowns: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// Certificate destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
    /// Report basic-step counts and the bound bracket on stderr.
    #[arg(long)]
    steps: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["sat", "coloring"])))]
struct EncodeArgs {
    /// DIMACS CNF file.
    #[arg(long)]
    sat: Option<PathBuf>,
    /// Accept empty clauses in the CNF.
    #[arg(long, requires = "sat")]
    allow_empty_clauses: bool,
    /// Edge list (`u v` lines or DIMACS `p edge` / `e u v`).
    #[arg(long, requires = "k")]
    coloring: Option<PathBuf>,
    /// Number of colours.
    #[arg(long, requires = "coloring")]
    k: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("search").required(true).multiple(true).args(["box_radius", "dense"])))]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Search |Re z_j|, |Im z_j| ≤ R for a common zero.
    #[arg(long = "box", value_name = "R")]
    box_radius: Option<u32>,
    /// Dense certificate search with every g_i of total degree ≤ D.
    #[arg(long, value_name = "D")]
    dense: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_BOX_LIMIT)]
    box_limit: u64,
    #[arg(long, default_value_t = DEFAULT_DENSE_LIMIT)]
    dense_limit: usize,
    /// Where to write the dense certificate, if one is found.
    #[arg(long, requires = "dense")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_vars: usize,
    #[arg(long, default_value_t = 3)]
    max_polys: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long, default_value_t = 2)]
    coeff_bound: i64,
    #[arg(long, default_value_t = 4)]
    max_terms: usize,
}

/// A failed command: exit status and message for stderr.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn io_or_refusal(message: impl Display) -> Failure {
    Failure { code: 3, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_or_refusal(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_or_refusal(format!("cannot write {}: {e}", path.display())))
}

/// Fails before any work if the output directory does not exist.
fn check_output(path: Option<&PathBuf>) -> Result<(), Failure> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(io_or_refusal(format!("cannot write {}: directory does not exist", p.display())));
        }
    }
    Ok(())
}

fn read_system(path: &Path) -> Result<PolySystem, Failure> {
    let text = read(path)?;
    parse_system(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl EngineArgs {
    fn options(&self, n: Option<usize>) -> Result<SolveOptions, Failure> {
        let ansatz = match self.ansatz {
            AnsatzArg::PaperRank => AnsatzKind::PaperRank,
            AnsatzArg::Brownawell => AnsatzKind::Brownawell,
            AnsatzArg::TotalDegree => {
                AnsatzKind::TotalDegree(self.degree.ok_or_else(|| usage("--ansatz total-degree needs --degree"))?)
            }
            AnsatzArg::PerVariable => {
                let caps = self.caps.clone().ok_or_else(|| usage("--ansatz per-variable needs --caps"))?;
                if let Some(n) = n.filter(|&n| n != caps.len()) {
                    return Err(usage(format!("--caps has {} entries, the system has {n} variables", caps.len())));
                }
                AnsatzKind::PerVariable(caps)
            }
        };
        Ok(SolveOptions {
            strategy: match self.strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Macaulay => Strategy::Macaulay,
                StrategyArg::Levelwise => Strategy::Levelwise,
            },
            ansatz,
            pivot: match self.pivot {
                PivotArg::PaperTuple => PivotRule::PaperTuple,
                PivotArg::Markowitz => PivotRule::Markowitz,
            },
            brownawell_limit: self.brownawell_limit,
            max_unknowns: self.max_unknowns,
        })
    }
}

fn run_solve(args: &SolveArgs) -> Result<u8, Failure> {
    check_output(args.output.as_ref())?;
    let original = read_system(&args.input)?;
    let (sys, perm) = if args.engine.presort {
        let (s, p) = presort_variables(&original);
        (s, Some(p))
    } else {
        (original.clone(), None)
    };
    let mut opts = args.engine.options(Some(sys.nvars()))?;
    if let (Some(p), AnsatzKind::PerVariable(caps)) = (&perm, &opts.ansatz) {
        opts.ansatz = AnsatzKind::PerVariable(p.0.iter().map(|&j| caps[j]).collect());
    }

    let (result, steps) =
        if args.steps { counted_solve(&sys, &opts) } else { (solve(&sys, &opts), Default::default()) };
    if args.steps {
        let bracket = theorem_bound(&system_stats(&sys));
        eprintln!(
            "steps: assignments={} arith={} comparisons={} total={} bracket={} ratio={} bits={}",
            steps.assignments,
            steps.arith_ops,
            steps.comparisons,
            steps.total(),
            bracket,
            format_ratio(steps.total(), &bracket),
            steps.peak_bits
        );
    }
    match result.map_err(io_or_refusal)? {
        SolveOutcome::Certificate(cert) => {
            let cert = match &perm {
                Some(p) => p.restore_certificate(&cert),
                None => cert,
            };
            if !verify(&original, &cert).map_err(io_or_refusal)?.is_zero() {
                return Err(Failure { code: 1, message: "certificate failed verification on the input system".into() });
            }
            emit(args.output.as_ref(), &emit_certificate(&cert))?;
            let via = cert.escalation.as_deref().map(|e| format!(" after escalation: {e}")).unwrap_or_default();
            eprintln!("certificate found by {}{via}", cert.strategy);
            Ok(0)
        }
        SolveOutcome::NoSolution(ns) => {
            println!("{}", ns.message);
            if let Some(e) = &ns.escalation {
                println!("level-wise attempt escalated: {e}");
            }
            Ok(1)
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let sys = read_system(&args.system)?;
    let text = read(&args.cert)?;
    let cert = parse_certificate(&text, &sys).map_err(|e| usage(format!("{}: {e}", args.cert.display())))?;
    let residual = verify(&sys, &cert).map_err(usage)?;
    if residual.is_zero() {
        println!("VALID");
        Ok(0)
    } else {
        println!("INVALID");
        println!("residual has {} terms: {}", residual.poly.len(), residual.poly);
        Ok(1)
    }
}

fn run_encode(args: &EncodeArgs) -> Result<u8, Failure> {
    check_output(args.output.as_ref())?;
    let sys = if let Some(path) = &args.sat {
        let text = read(path)?;
        let cnf = parse_dimacs_with(&text, args.allow_empty_clauses)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        encode_3sat(&cnf).map_err(usage)?
    } else {
        let path = args.coloring.as_ref().expect("required by the argument group");
        let text = read(path)?;
        let graph = parse_edges(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        encode_kcoloring(&graph, args.k.expect("required with --coloring")).map_err(usage)?
    };
    emit(args.output.as_ref(), &emit_system(&sys))?;
    Ok(0)
}

fn run_oracle(args: &OracleArgs) -> Result<u8, Failure> {
    check_output(args.output.as_ref())?;
    let sys = read_system(&args.input)?;
    if let Some(r) = args.box_radius {
        match box_zero_search_with_limit(&sys, r, args.box_limit).map_err(io_or_refusal)? {
            Some(w) => {
                let coords: Vec<String> = w.point.iter().map(ToString::to_string).collect();
                println!("box R={r}: common zero at ({})", coords.join(", "));
            }
            None => println!("box R={r}: no common zero"),
        }
    }
    if let Some(d) = args.dense {
        match dense_cert_search_with_limit(&sys, d, args.dense_limit).map_err(io_or_refusal)? {
            Some(cert) => {
                println!("dense D={d}: certificate found");
                if let Some(p) = &args.output {
                    write(p, &emit_certificate(&cert))?;
                }
            }
            None => println!("dense D={d}: no certificate"),
        }
    }
    Ok(0)
}

fn run_bench(args: &BenchArgs) -> Result<u8, Failure> {
    check_output(args.output.as_ref())?;
    if !args.corpus.is_dir() {
        return Err(io_or_refusal(format!("cannot read {}: not a directory", args.corpus.display())));
    }
    let opts = BenchOptions { solve: args.engine.options(None)?, presort: args.engine.presort, jobs: args.jobs };
    let rows = bench_run(&args.corpus, &opts)
        .map_err(|e| io_or_refusal(format!("cannot read {}: {e}", args.corpus.display())))?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(io_or_refusal)?;
    emit(args.output.as_ref(), &String::from_utf8(buf).expect("CSV is UTF-8"))?;
    Ok(0)
}

fn run_gen(args: &GenArgs) -> Result<u8, Failure> {
    let params = CorpusParams {
        max_vars: args.max_vars,
        max_polys: args.max_polys,
        max_degree: args.max_degree,
        coeff_bound: args.coeff_bound,
        max_terms: args.max_terms,
    };
    if params.max_vars == 0 || params.max_polys == 0 || params.max_terms == 0 || params.coeff_bound <= 0 {
        return Err(usage("--max-vars, --max-polys, --max-terms and --coeff-bound must be positive"));
    }
    let paths = write_corpus(&args.output, args.seed, args.count, &params)
        .map_err(|e| io_or_refusal(format!("cannot write {}: {e}", args.output.display())))?;
    eprintln!("wrote {} systems to {}", paths.len(), args.output.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Encode(a) => run_encode(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Bench(a) => run_bench(a),
        Command::Gen(a) => run_gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
