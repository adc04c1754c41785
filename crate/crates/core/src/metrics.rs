//! Step counting, the step-bound bracket, variable presorting and the
//! benchmark report.
//!
//! Nothing here claims that measured steps stay below the bracket; the ratio
//! is reported as data.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::engine::{
    permute_certificate, solve, system_stats, Certificate, SolveOptions, SolveOutcome, Strategy, SystemStats,
};
use crate::frontend::parse_system;
use crate::poly::PolySystem;
use crate::steps::{measure, StepCounter};
use crate::Error;

pub const CSV_HEADER: [&str; 13] = [
    "id",
    "n",
    "k",
    "m_sigma",
    "d",
    "outcome",
    "strategy",
    "assignments",
    "arith",
    "comparisons",
    "bracket",
    "ratio",
    "bits",
];

/// Runs [`solve`] with basic-step counting enabled.
pub fn counted_solve(sys: &PolySystem, opts: &SolveOptions) -> (Result<SolveOutcome, Error>, StepCounter) {
    measure(|| solve(sys, opts))
}

/// `max(1, ⌈log₂ m⌉)`.
pub fn log_term(m: u64) -> u64 {
    if m <= 2 {
        1
    } else {
        u64::from(64 - (m - 1).leading_zeros())
    }
}

/// The step-bound bracket with unit constant:
///
/// `m_σ² L + min(m^(1)³, d_1³) + Σ_{ℓ=1}^{n−2} N^(ℓ) min(m^(ℓ+1)², d_{ℓ+1}²) + N^(n−1) min(m_σ, d_n)`
///
/// with `L = max(1, ⌈log₂ m_σ⌉)`. For one variable only the first two terms
/// remain, with `m^(1) = m_σ`.
pub fn theorem_bound(stats: &SystemStats) -> BigUint {
    let big = BigUint::from;
    let m = big(stats.m_sigma);
    let mut total = &m * &m * big(log_term(stats.m_sigma));
    let n = stats.n;
    if n == 0 {
        return total;
    }
    let d = |j: usize| big(u64::from(stats.d[j - 1]));
    let m_level = |ell: usize| {
        if ell >= n {
            big(stats.m_sigma)
        } else {
            big(stats.m_sigma_level[ell - 1])
        }
    };
    let cube = |x: BigUint| &x * &x * &x;
    total += cube(m_level(1)).min(cube(d(1)));
    if n >= 2 {
        for ell in 1..=n - 2 {
            let sq = |x: BigUint| &x * &x;
            total += big(stats.n_level[ell - 1]) * sq(m_level(ell + 1)).min(sq(d(ell + 1)));
        }
        total += big(stats.n_level[n - 2]) * m.clone().min(d(n));
    }
    total
}

/// `steps / bracket` rounded half-up to six decimals, or `NA` for a zero bracket.
pub fn format_ratio(steps: u64, bracket: &BigUint) -> String {
    if bracket.is_zero() {
        return "NA".into();
    }
    let scaled = BigUint::from(steps) * BigUint::from(1_000_000u32) * 2u32 + bracket;
    let (q, _) = scaled.div_rem(&(bracket * 2u32));
    let (int, frac) = q.div_rem(&BigUint::from(1_000_000u32));
    format!("{int}.{:06}", frac.to_u32().expect("below one million"))
}

/// A variable reordering: variable `j` of the permuted system is variable
/// `perm[j]` of the original.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &p)| j == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (j, &p) in self.0.iter().enumerate() {
            inv[p] = j;
        }
        Self(inv)
    }

    /// Maps a certificate of the permuted system back to the original variables.
    pub fn restore_certificate(&self, cert: &Certificate) -> Certificate {
        permute_certificate(cert, &self.inverse().0)
    }
}

/// Reorders variables to minimise [`theorem_bound`].
///
/// Up to eight variables every permutation is tried and the lexicographically
/// smallest minimiser wins; beyond that variables are sorted by ascending
/// `d_j`, ties keeping their original order.
pub fn presort_variables(sys: &PolySystem) -> (PolySystem, Permutation) {
    let n = sys.nvars();
    let perm = if n <= 8 {
        let mut current: Vec<usize> = (0..n).collect();
        let mut best = current.clone();
        let mut best_value = theorem_bound(&system_stats(&sys.permute(&current)));
        while next_permutation(&mut current) {
            let value = theorem_bound(&system_stats(&sys.permute(&current)));
            if value < best_value {
                best_value = value;
                best = current.clone();
            }
        }
        best
    } else {
        let d = system_stats(sys).d;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| d[j]);
        order
    };
    (sys.permute(&perm), Permutation(perm))
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchOptions {
    pub solve: SolveOptions,
    pub presort: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

/// One report line; `stats` is `None` when the instance could not be read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub id: String,
    pub stats: Option<SystemStats>,
    pub outcome: String,
    pub strategy: String,
    pub steps: StepCounter,
    pub bracket: Option<BigUint>,
}

impl BenchRow {
    pub fn record(&self) -> Vec<String> {
        let Some(stats) = &self.stats else {
            let mut r = vec![String::new(); CSV_HEADER.len()];
            r[0] = self.id.clone();
            r[5] = self.outcome.clone();
            return r;
        };
        let bracket = self.bracket.clone().unwrap_or_default();
        vec![
            self.id.clone(),
            stats.n.to_string(),
            stats.k.to_string(),
            stats.m_sigma.to_string(),
            stats.d.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            self.outcome.clone(),
            self.strategy.clone(),
            self.steps.assignments.to_string(),
            self.steps.arith_ops.to_string(),
            self.steps.comparisons.to_string(),
            bracket.to_string(),
            format_ratio(self.steps.total(), &bracket),
            self.steps.peak_bits.to_string(),
        ]
    }
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Macaulay => "macaulay",
        Strategy::Levelwise => "levelwise",
        Strategy::Auto => "auto",
    }
}

/// Solves one instance and reports it.
pub fn bench_instance(id: &str, sys: &PolySystem, opts: &BenchOptions) -> BenchRow {
    let (sys, _) =
        if opts.presort { presort_variables(sys) } else { (sys.clone(), Permutation::identity(sys.nvars())) };
    let stats = system_stats(&sys);
    let bracket = theorem_bound(&stats);
    let (result, steps) = counted_solve(&sys, &opts.solve);
    let (outcome, strategy) = match result {
        Ok(SolveOutcome::Certificate(c)) => ("certificate".to_string(), c.strategy.as_str().to_string()),
        Ok(SolveOutcome::NoSolution(_)) => ("no-solution".to_string(), strategy_name(opts.solve.strategy).to_string()),
        Err(_) => ("refused".to_string(), strategy_name(opts.solve.strategy).to_string()),
    };
    BenchRow { id: id.to_string(), stats: Some(stats), outcome, strategy, steps, bracket: Some(bracket) }
}

/// Lists `*.json` files directly inside `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Benchmarks every system document in `dir`. Rows come back in file-name
/// order whatever the thread count; unreadable instances yield an `error` row.
pub fn bench_run(dir: &Path, opts: &BenchOptions) -> io::Result<Vec<BenchRow>> {
    let files = corpus_files(dir)?;
    let work = || -> Vec<BenchRow> {
        files
            .par_iter()
            .map(|path| {
                let id = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                match fs::read_to_string(path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| parse_system(&t).map_err(|e| e.to_string()))
                {
                    Ok(sys) => bench_instance(&id, &sys, opts),
                    Err(_) => BenchRow {
                        id,
                        stats: None,
                        outcome: "error".into(),
                        strategy: String::new(),
                        steps: StepCounter::default(),
                        bracket: None,
                    },
                }
            })
            .collect()
    };
    match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build().map_err(io::Error::other)?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Writes the header and rows as CSV with LF line endings.
pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()
}

pub fn csv_string(rows: &[BenchRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}
