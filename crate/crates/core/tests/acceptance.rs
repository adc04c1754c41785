//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the summary lines always reach the test log.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nullcert::corpus::{generate_corpus, random_3cnf, rng_from_seed, write_corpus, CorpusParams, DEFAULT_SEED};
use nullcert::frontend::{encode_3sat, encode_kcoloring, CnfInstance, Graph};
use nullcert::metrics::{bench_run, csv_string, BenchOptions, CSV_HEADER};
use nullcert::oracle::{box_zero_search, dense_cert_search};
use nullcert::{
    counted_solve, solve, verify, AnsatzKind, Error, GaussianRational, Monomial, PolySystem, SolveOptions, Strategy,
};
use rand::Rng;

const CORPUS_SIZE: usize = 500;
const TIME_BUDGET: Duration = Duration::from_secs(300);

fn corpus() -> Vec<PolySystem> {
    generate_corpus(DEFAULT_SEED, CORPUS_SIZE, &CorpusParams::default())
}

fn configurations() -> Vec<SolveOptions> {
    let kinds = [AnsatzKind::PaperRank, AnsatzKind::TotalDegree(2), AnsatzKind::TotalDegree(3), AnsatzKind::Brownawell];
    let mut out = Vec::new();
    for strategy in [Strategy::Macaulay, Strategy::Levelwise, Strategy::Auto] {
        for kind in &kinds {
            out.push(SolveOptions::new(strategy, kind.clone()));
        }
    }
    out
}

/// Per instance: how many configurations produced a certificate.
struct SweepResult {
    certified: Vec<usize>,
    refusals: usize,
}

fn sweep(systems: &[PolySystem]) -> Result<SweepResult, String> {
    let configs = configurations();
    let mut certified = vec![0; systems.len()];
    let mut refusals = 0;
    for (idx, s) in systems.iter().enumerate() {
        for opts in &configs {
            match solve(s, opts) {
                Ok(out) => {
                    if let Some(cert) = out.certificate() {
                        let residual = verify(s, cert).map_err(|e| format!("instance {idx}: {e}"))?;
                        if !residual.is_zero() {
                            return Err(format!(
                                "instance {idx}, {:?}/{}: nonzero residual",
                                opts.strategy,
                                opts.ansatz.label()
                            ));
                        }
                        certified[idx] += 1;
                    }
                }
                Err(Error::BrownawellLimit { .. }) | Err(Error::SystemTooLarge { .. }) => refusals += 1,
                Err(e) => return Err(format!("instance {idx}: unexpected error {e}")),
            }
        }
    }
    Ok(SweepResult { certified, refusals })
}

fn criterion_1(systems: &[PolySystem]) -> Result<(String, SweepResult), String> {
    let start = Instant::now();
    let result = sweep(systems)?;
    let elapsed = start.elapsed();
    if elapsed > TIME_BUDGET {
        return Err(format!("took {elapsed:?}, budget {TIME_BUDGET:?}"));
    }
    let certs: usize = result.certified.iter().sum();
    let detail = format!(
        "{certs} certificates over {} configurations, all verified; {} refusals; {:.1}s",
        configurations().len(),
        result.refusals,
        elapsed.as_secs_f64()
    );
    Ok((detail, result))
}

fn criterion_2(systems: &[PolySystem], sweep: &SweepResult) -> Result<String, String> {
    let mut witnesses = 0;
    for (idx, s) in systems.iter().enumerate() {
        let witness = box_zero_search(s, 2).map_err(|e| format!("instance {idx}: {e}"))?;
        if let Some(w) = witness {
            witnesses += 1;
            if s.polys().iter().any(|p| !p.eval(&w.point).unwrap().is_zero()) {
                return Err(format!("instance {idx}: reported witness is not a zero"));
            }
            if sweep.certified[idx] > 0 {
                return Err(format!("instance {idx}: certificate despite common zero {:?}", w.point));
            }
        }
    }
    let certified = sweep.certified.iter().filter(|&&c| c > 0).count();
    Ok(format!("{witnesses} witnesses, {certified} certified instances, 0 violations"))
}

fn criterion_3() -> Result<String, String> {
    let params = CorpusParams { max_vars: 2, ..CorpusParams::default() };
    let systems = generate_corpus(DEFAULT_SEED + 1, 200, &params);
    let mut feasible = 0;
    for (idx, s) in systems.iter().enumerate() {
        for d in 0..=3 {
            let sparse = solve(s, &SolveOptions::new(Strategy::Macaulay, AnsatzKind::TotalDegree(d)))
                .map_err(|e| format!("instance {idx}, D={d}: {e}"))?;
            let dense = dense_cert_search(s, d).map_err(|e| format!("instance {idx}, D={d}: {e}"))?;
            if sparse.is_certificate() != dense.is_some() {
                return Err(format!(
                    "instance {idx}, D={d}: sparse {} vs dense {}",
                    sparse.is_certificate(),
                    dense.is_some()
                ));
            }
            feasible += usize::from(dense.is_some());
        }
    }
    Ok(format!("800 comparisons agree, {feasible} feasible"))
}

fn criterion_4() -> Result<String, String> {
    let chain = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
    for (i, e) in chain.iter().enumerate() {
        let mono = Monomial::new(e.to_vec());
        let rank = i as u64 + 1;
        if mono.rank() != rank || Monomial::unrank(rank, 2).ok() != Some(mono.clone()) {
            return Err(format!("chain position {rank} disagrees for {e:?}"));
        }
    }
    const N: usize = 10_000;
    for n in 1..=6usize {
        let mut d = 0;
        let mut listed = enumerate_sorted(n, d);
        while listed.len() < N {
            d += 1;
            listed = enumerate_sorted(n, d);
        }
        for (i, e) in listed.iter().take(N).enumerate() {
            let rank = i as u64 + 1;
            let mono = Monomial::new(e.clone());
            if mono.rank() != rank {
                return Err(format!("n={n}: rank of {e:?} is {}, expected {rank}", mono.rank()));
            }
            if Monomial::unrank(rank, n).ok().as_ref() != Some(&mono) {
                return Err(format!("n={n}: unrank({rank}) disagrees with {e:?}"));
            }
        }
    }
    Ok(format!("chain of 6 matches; {N} ranks checked for n = 1..6"))
}

fn satisfiable(cnf: &CnfInstance) -> bool {
    (0u32..1 << cnf.vars).any(|bits| {
        cnf.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    })
}

fn criterion_5() -> Result<String, String> {
    let contradiction =
        encode_3sat(&CnfInstance { vars: 1, clauses: vec![vec![1], vec![-1]] }).map_err(|e| e.to_string())?;
    let cert = (0..=1)
        .find_map(|d| {
            solve(&contradiction, &SolveOptions::new(Strategy::Macaulay, AnsatzKind::TotalDegree(d)))
                .ok()
                .and_then(|o| o.certificate().cloned())
        })
        .ok_or("no certificate for x1 and not x1 with D <= 1")?;
    if !verify(&contradiction, &cert).map_err(|e| e.to_string())?.is_zero() {
        return Err("contradiction certificate does not verify".into());
    }
    let contradiction_degree = cert_degree(&cert);

    let mut rng = rng_from_seed(DEFAULT_SEED);
    let (zero, one) = (GaussianRational::zero(), GaussianRational::one());
    let mut checked = 0;
    for _ in 0..200 {
        let vars = rng.gen_range(1..=4usize);
        let clauses = rng.gen_range(1..=2 * vars + 2);
        let cnf = random_3cnf(&mut rng, vars, clauses);
        if !satisfiable(&cnf) {
            continue;
        }
        checked += 1;
        let s = encode_3sat(&cnf).map_err(|e| e.to_string())?;
        let witness = box_zero_search(&s, 1).map_err(|e| e.to_string())?.ok_or(format!("{cnf:?}: no witness"))?;
        if !witness.point.iter().all(|x| *x == zero || *x == one) {
            return Err(format!("{cnf:?}: witness {:?} is not 0/1", witness.point));
        }
        if solve(&s, &SolveOptions::default()).map_err(|e| e.to_string())?.is_certificate() {
            return Err(format!("{cnf:?}: certificate for a satisfiable formula"));
        }
    }

    let k3 = Graph { vertices: 3, edges: vec![(1, 2), (2, 3), (1, 3)] };
    let two = encode_kcoloring(&k3, 2).map_err(|e| e.to_string())?;
    let (d, coloring_cert) = (0..=4)
        .find_map(|d| dense_cert_search(&two, d).ok().flatten().map(|c| (d, c)))
        .ok_or("K3 with two colours has no certificate up to D = 4")?;
    if !verify(&two, &coloring_cert).map_err(|e| e.to_string())?.is_zero() {
        return Err("K3 certificate does not verify".into());
    }
    Ok(format!("contradiction at D = {contradiction_degree}, {checked} satisfiable formulas, K3/k=2 at D = {d}"))
}

fn cert_degree(cert: &nullcert::Certificate) -> u64 {
    cert.g.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
}

fn criterion_6(systems: &[PolySystem]) -> Result<String, String> {
    let opts = SolveOptions::default();
    let run = || -> Vec<String> {
        systems
            .iter()
            .map(|s| {
                let (out, steps) = counted_solve(s, &opts);
                format!("{out:?} {steps:?}")
            })
            .collect()
    };
    if run() != run() {
        return Err("counted_solve differs between runs".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    write_corpus(dir.path(), DEFAULT_SEED, CORPUS_SIZE, &CorpusParams::default()).map_err(|e| e.to_string())?;
    let bench = BenchOptions::default();
    let first = csv_string(&bench_run(dir.path(), &bench).map_err(|e| e.to_string())?);
    let second = csv_string(&bench_run(dir.path(), &bench).map_err(|e| e.to_string())?);
    if first != second {
        return Err("bench CSV differs between runs".into());
    }
    Ok(format!("{} counted solves and a {}-byte CSV identical across runs", systems.len(), first.len()))
}

fn criterion_7() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    write_corpus(dir.path(), DEFAULT_SEED, CORPUS_SIZE, &CorpusParams::default()).map_err(|e| e.to_string())?;
    let rows = bench_run(dir.path(), &BenchOptions::default()).map_err(|e| e.to_string())?;
    if rows.len() != CORPUS_SIZE {
        return Err(format!("{} rows, expected {CORPUS_SIZE}", rows.len()));
    }
    let bracket_col = CSV_HEADER.iter().position(|&h| h == "bracket").ok_or("no bracket column")?;
    let ratio_col = CSV_HEADER.iter().position(|&h| h == "ratio").ok_or("no ratio column")?;
    let mut within = 0;
    for row in &rows {
        let record = row.record();
        if record[bracket_col].is_empty() || record[ratio_col].is_empty() {
            return Err(format!("{}: bracket or ratio missing", row.id));
        }
        if record[ratio_col].parse::<f64>().is_ok_and(|r| r <= 1.0) {
            within += 1;
        }
    }
    let again = bench_run(dir.path(), &BenchOptions::default()).map_err(|e| e.to_string())?;
    if csv_string(&rows) != csv_string(&again) {
        return Err("bracket and ratio columns not reproducible".into());
    }
    Ok(format!("{} rows populated; ratio <= 1 on {within} (reported only)", rows.len()))
}

fn report(number: u32, name: &str, result: Result<Result<String, String>, Box<dyn std::any::Any + Send>>) -> bool {
    let outcome = match result {
        Ok(inner) => inner,
        Err(panic) => Err(panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    };
    match outcome {
        Ok(detail) => {
            println!("criterion {number} ({name}): PASS - {detail}");
            true
        }
        Err(why) => {
            println!("criterion {number} ({name}): FAIL - {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let systems = corpus();
    let mut ok = true;

    let first = panic::catch_unwind(AssertUnwindSafe(|| criterion_1(&systems)));
    let swept = match first {
        Ok(Ok((detail, result))) => {
            ok &= report(1, "soundness", Ok(Ok(detail)));
            Some(result)
        }
        Ok(Err(e)) => {
            ok &= report(1, "soundness", Ok(Err(e)));
            None
        }
        Err(p) => {
            ok &= report(1, "soundness", Err(p));
            None
        }
    };
    let second = match &swept {
        Some(result) => panic::catch_unwind(AssertUnwindSafe(|| criterion_2(&systems, result))),
        None => Ok(Err("soundness sweep did not complete".into())),
    };
    ok &= report(2, "box cross-check", second);
    ok &= report(3, "dense vs sparse", panic::catch_unwind(criterion_3));
    ok &= report(4, "natural order", panic::catch_unwind(criterion_4));
    ok &= report(5, "SAT pipeline", panic::catch_unwind(criterion_5));
    ok &= report(6, "determinism", panic::catch_unwind(AssertUnwindSafe(|| criterion_6(&systems))));
    ok &= report(7, "bound probe", panic::catch_unwind(criterion_7));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
