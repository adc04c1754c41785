//! Seeded random instances for tests and benchmarks.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::frontend::{emit_system, CnfInstance};
use crate::monomial::Monomial;
use crate::poly::{PolySystem, Polynomial, Term};
use crate::scalar::GaussianRational;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_vars: usize,
    pub max_polys: usize,
    /// Largest exponent of any single variable.
    pub max_degree: u32,
    /// Bound on `|Re|` and `|Im|` of every coefficient.
    pub coeff_bound: i64,
    pub max_terms: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self { max_vars: 3, max_polys: 3, max_degree: 3, coeff_bound: 2, max_terms: 4 }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coeff<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let re = rng.gen_range(-bound..=bound);
        let im = rng.gen_range(-bound..=bound);
        if re != 0 || im != 0 {
            return GaussianRational::gaussian_integer(re, im);
        }
    }
}

/// A sparse polynomial in `n` variables. Exponents are zero half the time so
/// constants and low-degree terms stay common.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: usize, params: &CorpusParams) -> Polynomial {
    let count = rng.gen_range(1..=params.max_terms.max(1));
    let terms: Vec<Term> = (0..count)
        .map(|_| {
            let exps = (0..n)
                .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=params.max_degree.max(1)) })
                .map(|e| e.min(params.max_degree))
                .collect();
            Term::new(random_coeff(rng, params.coeff_bound), Monomial::new(exps))
        })
        .collect();
    Polynomial::canonicalize(n, terms).expect("arity matches")
}

pub fn random_system<R: Rng>(rng: &mut R, params: &CorpusParams) -> PolySystem {
    let n = rng.gen_range(1..=params.max_vars.max(1));
    random_system_in(rng, n, params)
}

pub fn random_system_in<R: Rng>(rng: &mut R, n: usize, params: &CorpusParams) -> PolySystem {
    let k = rng.gen_range(1..=params.max_polys.max(1));
    let polys = (0..k).map(|_| random_polynomial(rng, n, params)).collect();
    PolySystem::new(n, polys).expect("non-empty, same arity")
}

/// `count` systems from one seeded stream.
pub fn generate_corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<PolySystem> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_system(&mut rng, params)).collect()
}

/// A CNF with clauses of exactly three literals over distinct variables
/// (fewer when `vars < 3`).
pub fn random_3cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize) -> CnfInstance {
    let width = vars.min(3);
    let clauses = (0..clauses)
        .map(|_| {
            let mut picked: Vec<usize> = Vec::with_capacity(width);
            while picked.len() < width {
                let v = rng.gen_range(1..=vars);
                if !picked.contains(&v) {
                    picked.push(v);
                }
            }
            picked.into_iter().map(|v| if rng.gen_bool(0.5) { v as i64 } else { -(v as i64) }).collect()
        })
        .collect();
    CnfInstance { vars, clauses }
}

/// Writes `sys_0000.json`, `sys_0001.json`, … into `dir`.
pub fn write_corpus(dir: &Path, seed: u64, count: usize, params: &CorpusParams) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(count);
    for (i, sys) in generate_corpus(seed, count, params).iter().enumerate() {
        let path = dir.join(format!("sys_{i:04}.json"));
        fs::write(&path, emit_system(sys))?;
        paths.push(path);
    }
    Ok(paths)
}
