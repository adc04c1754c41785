//! Certificate search: ansatz, linear system, exact solve, and the level-wise
//! strategy.
//!
//! Every certificate leaving this module has been re-verified exactly. A
//! `NoSolution` outcome from the flat solve only means no certificate exists
//! within the ansatz that was tried.

pub mod ansatz;
pub mod levelwise;
pub mod linsys;
pub mod solver;
pub mod stats;

use std::fmt;

use crate::monomial::Monomial;
use crate::oracle::verify;
use crate::poly::{PolySystem, Polynomial, Term};
use crate::Error;

pub use ansatz::{make_ansatz, make_ansatz_with_limit, AnsatzKind, AnsatzSpec, DEFAULT_BROWNAWELL_LIMIT};
pub use levelwise::{accumulate_rows, deaccumulate_rows, Identity, LevelSystem};
pub use linsys::{build_linear_system, build_with_rhs, SparseLinearSystem, Unknown};
pub use solver::{solve_sparse, PivotRule, SparseOutcome, SparseSolution};
pub use stats::{system_stats, SystemStats};

use levelwise::{level_solve, LevelFailure};

pub const DEFAULT_MAX_UNKNOWNS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Macaulay,
    Levelwise,
    #[default]
    Auto,
}

/// Which procedure produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyTag {
    Macaulay,
    Levelwise,
    DenseOracle,
}

impl StrategyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            StrategyTag::Macaulay => "macaulay",
            StrategyTag::Levelwise => "levelwise",
            StrategyTag::DenseOracle => "dense-oracle",
        }
    }
}

impl fmt::Display for StrategyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub g: Vec<Polynomial>,
    pub ansatz: AnsatzSpec,
    pub strategy: StrategyTag,
    /// Unknowns that were free in the linear solve and set to zero.
    pub zeroed_params: Vec<Unknown>,
    /// Why a level-wise attempt handed over to the flat solve, if it did.
    pub escalation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoSolution {
    pub level: usize,
    pub equation: usize,
    pub message: String,
    pub escalation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Certificate(Certificate),
    NoSolution(NoSolution),
}

impl SolveOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SolveOutcome::Certificate(c) => Some(c),
            SolveOutcome::NoSolution(_) => None,
        }
    }

    pub fn is_certificate(&self) -> bool {
        self.certificate().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub ansatz: AnsatzKind,
    pub pivot: PivotRule,
    pub brownawell_limit: u32,
    pub max_unknowns: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            ansatz: AnsatzKind::PaperRank,
            pivot: PivotRule::PaperTuple,
            brownawell_limit: DEFAULT_BROWNAWELL_LIMIT,
            max_unknowns: DEFAULT_MAX_UNKNOWNS,
        }
    }
}

impl SolveOptions {
    pub fn new(strategy: Strategy, ansatz: AnsatzKind) -> Self {
        Self { strategy, ansatz, ..Self::default() }
    }
}

fn no_solution_message(level: usize, equation: usize, detail: &str) -> String {
    format!("No solution at Level {level}, Equation {equation} ({detail})")
}

/// Dispatches on `opts.strategy`.
///
/// `Levelwise` escalates to the flat solve with the paper-rank ansatz when the
/// recursion cannot finish; `Auto` escalates to the flat solve with
/// `opts.ansatz`.
pub fn solve(sys: &PolySystem, opts: &SolveOptions) -> Result<SolveOutcome, Error> {
    match opts.strategy {
        Strategy::Macaulay => solve_macaulay(sys, opts),
        Strategy::Levelwise => {
            let fallback = SolveOptions { ansatz: AnsatzKind::PaperRank, ..opts.clone() };
            levelwise_then(sys, &fallback)
        }
        Strategy::Auto => levelwise_then(sys, opts),
    }
}

/// The level-wise strategy on its own, escalating with the paper-rank ansatz.
pub fn solve_levelwise(sys: &PolySystem) -> Result<SolveOutcome, Error> {
    solve(sys, &SolveOptions::new(Strategy::Levelwise, AnsatzKind::PaperRank))
}

fn levelwise_then(sys: &PolySystem, fallback: &SolveOptions) -> Result<SolveOutcome, Error> {
    match levelwise_attempt(sys)? {
        Attempt::Done(outcome) => Ok(outcome),
        Attempt::Escalate(reason) => {
            let mut outcome = solve_macaulay(sys, fallback)?;
            match &mut outcome {
                SolveOutcome::Certificate(c) => c.escalation = Some(reason),
                SolveOutcome::NoSolution(ns) => ns.escalation = Some(reason),
            }
            Ok(outcome)
        }
    }
}

enum Attempt {
    Done(SolveOutcome),
    Escalate(String),
}

fn levelwise_attempt(sys: &PolySystem) -> Result<Attempt, Error> {
    let n = sys.nvars();
    let k = sys.len();

    // A non-zero constant among the f_i is a unit: g = 1/f_i, others zero.
    if let Some((i, c)) =
        sys.polys().iter().enumerate().find_map(|(i, f)| f.as_constant().filter(|c| !c.is_zero()).map(|c| (i, c)))
    {
        let mut g = vec![Polynomial::zero(n); k];
        g[i] = Polynomial::constant(n, c.inv()?);
        return Ok(Attempt::Done(certify(sys, g, Vec::new())?));
    }
    if n == 0 {
        // Only zero constants remain.
        return Ok(Attempt::Done(SolveOutcome::NoSolution(NoSolution {
            level: 1,
            equation: 1,
            message: no_solution_message(1, 1, "every polynomial is zero"),
            escalation: None,
        })));
    }

    match level_solve(sys.polys(), &Polynomial::one(n)) {
        Ok(sol) => match certify(sys, sol.g, sol.zeroed)? {
            outcome @ SolveOutcome::Certificate(_) => Ok(Attempt::Done(outcome)),
            SolveOutcome::NoSolution(_) => Ok(Attempt::Escalate("level-wise candidate failed verification".into())),
        },
        Err(LevelFailure::Infeasible { level, equation, genuine: true }) => {
            Ok(Attempt::Done(SolveOutcome::NoSolution(NoSolution {
                level,
                equation,
                message: no_solution_message(
                    level,
                    equation,
                    "the polynomials have a common zero, so no certificate exists",
                ),
                escalation: None,
            })))
        }
        Err(LevelFailure::Infeasible { level, equation, .. }) => Ok(Attempt::Escalate(format!(
            "level {level}, identity {equation} unsolvable with the zeroed free parameters"
        ))),
        Err(LevelFailure::DeadEnd { level, identity }) => Ok(Attempt::Escalate(format!(
            "level {level}, identity {identity} does not hold for the computed coefficients"
        ))),
        Err(LevelFailure::Engine(e)) => Err(e),
    }
}

/// Verifies a level-wise candidate and wraps it as a certificate whose
/// ansatz is the exponent box spanned by its support and zeroed unknowns.
fn certify(sys: &PolySystem, g: Vec<Polynomial>, zeroed: Vec<Unknown>) -> Result<SolveOutcome, Error> {
    let n = sys.nvars();
    let mut caps = vec![0u32; n];
    let support = g.iter().flat_map(|p| p.terms()).map(|t| &t.mono);
    for mono in support.chain(zeroed.iter().map(|u| &u.mono)) {
        for (cap, &e) in caps.iter_mut().zip(mono.exponents()) {
            *cap = (*cap).max(e);
        }
    }
    let basis = ansatz::capped_basis(&caps);
    let cert = Certificate {
        g,
        ansatz: AnsatzSpec { kind: AnsatzKind::PerVariable(caps), degree: None, bases: vec![basis; sys.len()] },
        strategy: StrategyTag::Levelwise,
        zeroed_params: zeroed,
        escalation: None,
    };
    if verify(sys, &cert)?.is_zero() {
        Ok(SolveOutcome::Certificate(cert))
    } else {
        Ok(SolveOutcome::NoSolution(NoSolution {
            level: n,
            equation: 1,
            message: "level-wise candidate failed verification".into(),
            escalation: None,
        }))
    }
}

/// Flat solve: one linear system over every coefficient of `Σ f_i g_i − 1`.
pub fn solve_macaulay(sys: &PolySystem, opts: &SolveOptions) -> Result<SolveOutcome, Error> {
    let ansatz = make_ansatz_with_limit(sys, &opts.ansatz, opts.brownawell_limit)?;
    if ansatz.unknown_count() > opts.max_unknowns {
        return Err(Error::SystemTooLarge { unknowns: ansatz.unknown_count(), limit: opts.max_unknowns });
    }
    let lin = build_linear_system(sys, &ansatz)?;
    match solve_sparse(&lin, opts.pivot) {
        SparseOutcome::Solved(sol) => {
            let cert = extract_certificate(&sol, &lin, ansatz, sys)?;
            if verify(sys, &cert)?.is_zero() {
                Ok(SolveOutcome::Certificate(cert))
            } else {
                // Only reachable if the constant row were missing.
                Ok(SolveOutcome::NoSolution(NoSolution {
                    level: sys.nvars(),
                    equation: 1,
                    message: "solution of the linear system does not verify".into(),
                    escalation: None,
                }))
            }
        }
        SparseOutcome::Infeasible { row } => {
            let level = sys.nvars().max(1);
            let detail = format!("no certificate within the {} ansatz", opts.ansatz.label());
            Ok(SolveOutcome::NoSolution(NoSolution {
                level,
                equation: row,
                message: no_solution_message(level, row, &detail),
                escalation: None,
            }))
        }
    }
}

/// Reassembles `g_i = Σ_β b_{i,β} z^β` from a solution vector.
pub fn extract_certificate(
    sol: &SparseSolution,
    lin: &SparseLinearSystem,
    ansatz: AnsatzSpec,
    sys: &PolySystem,
) -> Result<Certificate, Error> {
    if sol.values.len() != lin.ncols() {
        return Err(Error::AnsatzMismatch(format!("{} values for {} unknowns", sol.values.len(), lin.ncols())));
    }
    let n = sys.nvars();
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); sys.len()];
    for (u, v) in lin.unknowns.iter().zip(&sol.values) {
        if !v.is_zero() {
            terms[u.poly].push(Term::new(v.clone(), u.mono.clone()));
        }
    }
    let g = terms.into_iter().map(|t| Polynomial::canonicalize(n, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate {
        g,
        ansatz,
        strategy: StrategyTag::Macaulay,
        zeroed_params: sol.zeroed.iter().map(|&c| lin.unknowns[c].clone()).collect(),
        escalation: None,
    })
}

/// Renames variables in a certificate: variable `j` of the result is variable
/// `perm[j]` of the input.
pub fn permute_certificate(cert: &Certificate, perm: &[usize]) -> Certificate {
    let bases = cert
        .ansatz
        .bases
        .iter()
        .map(|b| {
            let mut b: Vec<Monomial> = b.iter().map(|m| m.permute(perm)).collect();
            b.sort();
            b
        })
        .collect();
    let kind = match &cert.ansatz.kind {
        AnsatzKind::PerVariable(caps) => AnsatzKind::PerVariable(perm.iter().map(|&p| caps[p]).collect()),
        other => other.clone(),
    };
    Certificate {
        g: cert.g.iter().map(|p| p.permute(perm)).collect(),
        ansatz: AnsatzSpec { kind, degree: cert.ansatz.degree, bases },
        strategy: cert.strategy,
        zeroed_params: cert
            .zeroed_params
            .iter()
            .map(|u| Unknown { poly: u.poly, mono: u.mono.permute(perm) })
            .collect(),
        escalation: cert.escalation.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn z(n: usize, j: usize) -> Polynomial {
        Polynomial::var(n, j)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, GaussianRational::from(v))
    }

    fn sys(n: usize, polys: Vec<Polynomial>) -> PolySystem {
        PolySystem::new(n, polys).unwrap()
    }

    fn unit_pair() -> PolySystem {
        sys(1, vec![z(1, 0), z(1, 0).sub(&c(1, 1)).unwrap()])
    }

    #[test]
    fn levelwise_unit_pair() {
        let out = solve_levelwise(&unit_pair()).unwrap();
        let cert = out.certificate().expect("certificate");
        assert_eq!(cert.g, vec![c(1, 1), c(1, -1)]);
        assert_eq!(cert.strategy, StrategyTag::Levelwise);
    }

    #[test]
    fn levelwise_no_constant_term() {
        match solve_levelwise(&sys(1, vec![z(1, 0)])).unwrap() {
            SolveOutcome::NoSolution(ns) => {
                assert_eq!((ns.level, ns.equation), (1, 1));
                assert!(ns.message.contains("No solution at Level 1, Equation 1"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn levelwise_constant() {
        let out = solve_levelwise(&sys(1, vec![c(1, 1)])).unwrap();
        assert_eq!(out.certificate().unwrap().g, vec![c(1, 1)]);
    }

    #[test]
    fn macaulay_square_and_shift() {
        let s = sys(1, vec![z(1, 0).mul(&z(1, 0)).unwrap(), z(1, 0).sub(&c(1, 1)).unwrap()]);
        let out = solve(&s, &SolveOptions::new(Strategy::Macaulay, AnsatzKind::PaperRank)).unwrap();
        let cert = out.certificate().expect("certificate");
        assert_eq!(cert.g, vec![c(1, 1), z(1, 0).add(&c(1, 1)).unwrap().neg()]);
    }

    #[test]
    fn common_zero_gives_no_solution() {
        let i = GaussianRational::i();
        let f1 = z(1, 0).mul(&z(1, 0)).unwrap().add(&c(1, 1)).unwrap();
        let f2 = z(1, 0).sub(&Polynomial::constant(1, i)).unwrap();
        let s = sys(1, vec![f1, f2]);
        for strategy in [Strategy::Macaulay, Strategy::Levelwise, Strategy::Auto] {
            for kind in [AnsatzKind::PaperRank, AnsatzKind::TotalDegree(3), AnsatzKind::Brownawell] {
                let out = solve(&s, &SolveOptions::new(strategy, kind)).unwrap();
                assert!(!out.is_certificate());
            }
        }
    }

    #[test]
    fn unit_first_polynomial() {
        let s = sys(1, vec![c(1, 1), z(1, 0)]);
        for strategy in [Strategy::Macaulay, Strategy::Auto] {
            let out = solve(&s, &SolveOptions::new(strategy, AnsatzKind::PaperRank)).unwrap();
            assert_eq!(out.certificate().unwrap().g, vec![c(1, 1), Polynomial::zero(1)]);
        }
    }

    #[test]
    fn extract_rebuilds_constants() {
        let s = sys(1, vec![z(1, 0), z(1, 0).sub(&c(1, 1)).unwrap()]);
        let a = make_ansatz(&s, &AnsatzKind::TotalDegree(0)).unwrap();
        let lin = build_linear_system(&s, &a).unwrap();
        let sol = SparseSolution { values: vec![1.into(), (-1).into()], zeroed: vec![], pivots: vec![] };
        let cert = extract_certificate(&sol, &lin, a.clone(), &s).unwrap();
        assert_eq!(cert.g, vec![c(1, 1), c(1, -1)]);

        let zero = SparseSolution { values: vec![0.into(), 0.into()], zeroed: vec![0, 1], pivots: vec![] };
        let cert = extract_certificate(&zero, &lin, a, &s).unwrap();
        assert!(cert.g.iter().all(Polynomial::is_zero));
        assert!(!verify(&s, &cert).unwrap().is_zero());
    }

    #[test]
    fn levelwise_bivariate_verifies() {
        let s = sys(2, vec![z(2, 0).mul(&z(2, 1)).unwrap().sub(&c(2, 1)).unwrap(), z(2, 0)]);
        let out = solve(&s, &SolveOptions::new(Strategy::Levelwise, AnsatzKind::PaperRank)).unwrap();
        let cert = out.certificate().expect("certificate");
        assert!(verify(&s, cert).unwrap().is_zero());
    }

    #[test]
    fn bivariate_common_zero_never_certified() {
        // Common zero at (0, 1).
        let s = sys(2, vec![z(2, 0), z(2, 1).sub(&c(2, 1)).unwrap(), z(2, 0).mul(&z(2, 1)).unwrap()]);
        for strategy in [Strategy::Macaulay, Strategy::Levelwise, Strategy::Auto] {
            let out = solve(&s, &SolveOptions::new(strategy, AnsatzKind::TotalDegree(2))).unwrap();
            assert!(!out.is_certificate(), "{strategy:?}");
        }
    }
}
