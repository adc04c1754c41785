//! Level-wise reduction on the last variable.
//!
//! Writing `f_i = Σ_j f_ij z_ℓ^j` and `g_i = Σ_j g_ij z_ℓ^j` turns
//! `Σ f_i g_i = h` into one identity per power of `z_ℓ`, each in the
//! remaining `ℓ − 1` variables. After the prefix-sum row transform, identity
//! `r` determines `g_ir` through `Σ_i f_i0 g_ir = (known part)`, which is a
//! problem of the same shape one level down with the fixed polynomials
//! `f_i0`. At level 1 the identity is a univariate linear system solved by
//! [`solve_sparse`] with the tuple pivot rule.
//!
//! Each identity is solved greedily with free parameters set to zero, so the
//! recursion can paint itself into a corner. Callers treat such failures as
//! an escalation signal, not as proof of infeasibility. The only failures
//! reported as genuine are those where the level-1 polynomials `f_i(z_1, 0, …, 0)`
//! already have a common root, which makes the whole system have one.

use std::collections::BTreeMap;

use super::ansatz::AnsatzKind;
use super::ansatz::AnsatzSpec;
use super::linsys::{build_with_rhs, Unknown};
use super::solver::{solve_sparse, PivotRule, SparseOutcome};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::Error;

/// One identity `Σ_{(i,j)} coeff_{ij} · g_ij ≡ rhs` of a level system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    /// Keyed by `(i, j)`: polynomial index and power of the split variable.
    pub terms: BTreeMap<(usize, usize), Polynomial>,
    pub rhs: Polynomial,
}

/// The identities obtained from matching powers of the split variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSystem {
    pub identities: Vec<Identity>,
}

impl LevelSystem {
    /// Builds the per-power identities of `Σ f_i g_i = h`.
    ///
    /// `f_dec[i][j]` is the coefficient of `z_ℓ^j` in `f_i`, `h_dec[r]` that of
    /// `h`, and `g_i` ranges over powers `0..=g_degree`. All polynomials share
    /// the variable count `m` of the coefficient ring.
    pub fn from_decomposition(
        m: usize,
        f_dec: &[Vec<Polynomial>],
        h_dec: &[Polynomial],
        g_degree: usize,
    ) -> LevelSystem {
        let f_degree = f_dec.iter().map(|v| v.len().saturating_sub(1)).max().unwrap_or(0);
        let last = (g_degree + f_degree).max(h_dec.len().saturating_sub(1));
        let identities = (0..=last)
            .map(|r| {
                let mut terms = BTreeMap::new();
                for (i, fi) in f_dec.iter().enumerate() {
                    for j2 in 0..=g_degree.min(r) {
                        if let Some(c) = fi.get(r - j2).filter(|c| !c.is_zero()) {
                            terms.insert((i, j2), c.clone());
                        }
                    }
                }
                let rhs = h_dec.get(r).cloned().unwrap_or_else(|| Polynomial::zero(m));
                Identity { terms, rhs }
            })
            .collect();
        LevelSystem { identities }
    }

    fn nvars(&self) -> usize {
        self.identities.first().map_or(0, |id| id.rhs.nvars())
    }
}

/// Prefix-sum transform: identity `r` becomes the sum of identities `1..=r`.
///
/// Starting from right-hand sides `(1, 0, …, 0)` every identity ends up with
/// right-hand side 1. The transform is invertible, see [`deaccumulate_rows`].
pub fn accumulate_rows(sys: &LevelSystem) -> LevelSystem {
    let m = sys.nvars();
    let mut running = Identity { terms: BTreeMap::new(), rhs: Polynomial::zero(m) };
    let identities = sys
        .identities
        .iter()
        .map(|id| {
            running = add_identities(&running, id, false);
            running.clone()
        })
        .collect();
    LevelSystem { identities }
}

/// Inverse of [`accumulate_rows`]: identity `r` becomes `row_r − row_{r−1}`.
pub fn deaccumulate_rows(sys: &LevelSystem) -> LevelSystem {
    let mut out = Vec::with_capacity(sys.identities.len());
    for (r, id) in sys.identities.iter().enumerate() {
        out.push(match r {
            0 => id.clone(),
            _ => add_identities(id, &sys.identities[r - 1], true),
        });
    }
    LevelSystem { identities: out }
}

fn add_identities(a: &Identity, b: &Identity, subtract: bool) -> Identity {
    let mut terms = a.terms.clone();
    for (key, c) in &b.terms {
        let c = if subtract { c.neg() } else { c.clone() };
        let merged = match terms.remove(key) {
            Some(prev) => prev.add(&c).expect("same arity"),
            None => c,
        };
        if !merged.is_zero() {
            terms.insert(*key, merged);
        }
    }
    let rhs = if subtract { a.rhs.sub(&b.rhs) } else { a.rhs.add(&b.rhs) }.expect("same arity");
    Identity { terms, rhs }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LevelSolution {
    pub g: Vec<Polynomial>,
    pub zeroed: Vec<Unknown>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LevelFailure {
    /// An identity had no solution. `genuine` is set when the failure proves
    /// the polynomials share a common zero.
    Infeasible {
        level: usize,
        equation: usize,
        genuine: bool,
    },
    /// An identity beyond the last unknown power did not hold.
    DeadEnd {
        level: usize,
        identity: usize,
    },
    Engine(Error),
}

impl From<Error> for LevelFailure {
    fn from(e: Error) -> Self {
        LevelFailure::Engine(e)
    }
}

/// Solves `Σ polys_i g_i = rhs` level by level. All inputs share one
/// variable count `ℓ ≥ 1`.
pub(crate) fn level_solve(polys: &[Polynomial], rhs: &Polynomial) -> Result<LevelSolution, LevelFailure> {
    let ell = rhs.nvars();
    let k = polys.len();
    if rhs.is_zero() {
        return Ok(LevelSolution { g: vec![Polynomial::zero(ell); k], zeroed: Vec::new() });
    }
    if ell == 1 {
        return univariate_solve(polys, rhs);
    }

    let f_dec: Vec<Vec<Polynomial>> = polys.iter().map(|f| f.coeffs_dense(ell)).collect::<Result<_, _>>()?;
    let h_dec = rhs.coeffs_dense(ell)?;
    let f_degree = f_dec.iter().map(|v| v.len().saturating_sub(1)).max().unwrap_or(0);
    let g_degree = f_degree + h_dec.len().saturating_sub(1);
    let m = ell - 1;

    let level = LevelSystem::from_decomposition(m, &f_dec, &h_dec, g_degree);
    let acc = accumulate_rows(&level);
    let base: Vec<Polynomial> =
        f_dec.iter().map(|v| v.first().cloned().unwrap_or_else(|| Polynomial::zero(m))).collect();

    let mut g: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(g_degree + 1); k];
    let mut zeroed = Vec::new();
    for r in 0..=g_degree {
        let id = &acc.identities[r];
        let mut target = id.rhs.clone();
        for (&(i, j), c) in &id.terms {
            if j < r {
                target = target.sub(&c.mul(&g[i][j])?)?;
            }
        }
        let sol = match level_solve(&base, &target) {
            Ok(sol) => sol,
            Err(LevelFailure::Infeasible { genuine: true, level, equation }) => {
                return Err(LevelFailure::Infeasible { level, equation, genuine: true })
            }
            Err(LevelFailure::Infeasible { .. }) if r > 0 => {
                return Err(LevelFailure::Infeasible { level: ell, equation: r + 1, genuine: false })
            }
            Err(e) => return Err(e),
        };
        for (gi, new) in g.iter_mut().zip(sol.g) {
            gi.push(new);
        }
        zeroed.extend(sol.zeroed.into_iter().map(|u| Unknown { poly: u.poly, mono: u.mono.insert_var(m, r as u32) }));
    }

    for (r, id) in acc.identities.iter().enumerate().skip(g_degree + 1) {
        let mut residual = id.rhs.neg();
        for (&(i, j), c) in &id.terms {
            residual = residual.add(&c.mul(&g[i][j])?)?;
        }
        if !residual.is_zero() {
            return Err(LevelFailure::DeadEnd { level: ell, identity: r + 1 });
        }
    }

    let g = g
        .into_iter()
        .map(|parts| {
            parts
                .into_iter()
                .enumerate()
                .try_fold(Polynomial::zero(ell), |acc, (r, p)| acc.add(&p.insert_var(m, r as u32)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LevelSolution { g, zeroed })
}

/// Level 1: `Σ f_i(z) g_i(z) = h(z)` with `deg g_i ≤ max deg f + deg h`,
/// which is enough for a solution whenever one exists.
fn univariate_solve(polys: &[Polynomial], rhs: &Polynomial) -> Result<LevelSolution, LevelFailure> {
    let f_degree = polys.iter().filter_map(|p| p.degree_in(0)).max().unwrap_or(0);
    let h_degree = rhs.degree_in(0).unwrap_or(0);
    let g_degree = f_degree + h_degree;
    let basis: Vec<Monomial> = (0..=g_degree).map(|e| Monomial::new(vec![e])).collect();
    let ansatz =
        AnsatzSpec { kind: AnsatzKind::PerVariable(vec![g_degree]), degree: None, bases: vec![basis; polys.len()] };
    let lin = build_with_rhs(polys, &ansatz, rhs)?;
    match solve_sparse(&lin, PivotRule::PaperTuple) {
        SparseOutcome::Solved(sol) => {
            let mut g = vec![Vec::new(); polys.len()];
            for (u, v) in lin.unknowns.iter().zip(&sol.values) {
                if !v.is_zero() {
                    g[u.poly].push(crate::poly::Term::new(v.clone(), u.mono.clone()));
                }
            }
            let g = g.into_iter().map(|terms| Polynomial::canonicalize(1, terms)).collect::<Result<Vec<_>, _>>()?;
            let zeroed = sol.zeroed.iter().map(|&c| lin.unknowns[c].clone()).collect();
            Ok(LevelSolution { g, zeroed })
        }
        SparseOutcome::Infeasible { row } => {
            let genuine = match rhs.as_constant() {
                Some(c) => !c.is_zero(),
                // No combination reaches 1 either: the f_i share a root.
                None => level_solve(polys, &Polynomial::one(1)).is_err(),
            };
            Err(LevelFailure::Infeasible { level: 1, equation: row, genuine })
        }
    }
}
