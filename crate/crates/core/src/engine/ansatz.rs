//! Monomial supports allowed for each unknown `g_i`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::stats::system_stats;
use crate::monomial::{monomials_up_to_degree, Monomial};
use crate::poly::PolySystem;
use crate::Error;

pub const DEFAULT_BROWNAWELL_LIMIT: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnsatzKind {
    /// Level bounds taken from the input: restrictions to `z_1..z_ℓ` rank at
    /// most `N^(ℓ)` and the `z_n` exponent is at most `d_n`.
    PaperRank,
    TotalDegree(u32),
    /// Per-variable exponent caps, one per variable.
    PerVariable(Vec<u32>),
    /// Total degree `(max deg f_i)^n`.
    Brownawell,
}

impl AnsatzKind {
    pub fn label(&self) -> String {
        match self {
            AnsatzKind::PaperRank => "paper-rank".into(),
            AnsatzKind::TotalDegree(d) => format!("total-degree({d})"),
            AnsatzKind::PerVariable(caps) => {
                format!("per-variable({})", caps.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            }
            AnsatzKind::Brownawell => "brownawell".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    /// Resolved total-degree bound for the degree-based kinds.
    pub degree: Option<u32>,
    /// `bases[i]` lists the monomials allowed in `g_i`, in natural order.
    pub bases: Vec<Vec<Monomial>>,
}

impl AnsatzSpec {
    pub fn unknown_count(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    /// Whether `mono` may appear in `g_i`.
    pub fn allows(&self, i: usize, mono: &Monomial) -> bool {
        self.bases.get(i).is_some_and(|b| b.binary_search(mono).is_ok())
    }
}

pub fn make_ansatz(sys: &PolySystem, kind: &AnsatzKind) -> Result<AnsatzSpec, Error> {
    make_ansatz_with_limit(sys, kind, DEFAULT_BROWNAWELL_LIMIT)
}

pub fn make_ansatz_with_limit(sys: &PolySystem, kind: &AnsatzKind, brownawell_limit: u32) -> Result<AnsatzSpec, Error> {
    let n = sys.nvars();
    let (basis, degree) = match kind {
        AnsatzKind::PaperRank => (paper_rank_basis(sys), None),
        AnsatzKind::TotalDegree(d) => (monomials_up_to_degree(n, *d), Some(*d)),
        AnsatzKind::PerVariable(caps) => {
            if caps.len() != n {
                return Err(Error::AnsatzMismatch(format!("{} exponent caps for {} variables", caps.len(), n)));
            }
            (capped_basis(caps), None)
        }
        AnsatzKind::Brownawell => {
            let d = brownawell_degree(sys, brownawell_limit)?;
            (monomials_up_to_degree(n, d), Some(d))
        }
    };
    Ok(AnsatzSpec { kind: kind.clone(), degree, bases: vec![basis; sys.len()] })
}

/// `(max total degree)^n`, refused above `limit`.
pub fn brownawell_degree(sys: &PolySystem, limit: u32) -> Result<u32, Error> {
    let top = sys.polys().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    let mut d = BigUint::one();
    for _ in 0..sys.nvars() {
        d *= top;
    }
    match d.to_u32() {
        Some(v) if v <= limit => Ok(v),
        _ => Err(Error::BrownawellLimit { degree: d.to_string(), limit }),
    }
}

fn paper_rank_basis(sys: &PolySystem) -> Vec<Monomial> {
    let stats = system_stats(sys);
    let n = stats.n;
    if n == 0 {
        return vec![Monomial::one(0)];
    }
    let dn = stats.d[n - 1];
    if n == 1 {
        return (0..=dn).map(|e| Monomial::new(vec![e])).collect();
    }
    let top = stats.n_level[n - 2];
    let mut out = Vec::new();
    for r in 1..=top {
        let sub = Monomial::unrank(r, n - 1).expect("rank ≥ 1");
        let fits = (1..n - 1).all(|ell| sub.restrict(ell).rank() <= stats.n_level[ell - 1]);
        if fits {
            out.extend((0..=dn).map(|e| sub.insert_var(n - 1, e)));
        }
    }
    out.sort();
    out
}

/// Every monomial with `exps[j] ≤ caps[j]`, in natural order.
pub fn capped_basis(caps: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::with_capacity(caps.len())];
    for &cap in caps {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=cap).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    let mut monos: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}
