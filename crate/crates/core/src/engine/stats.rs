use std::collections::BTreeSet;

use crate::monomial::Monomial;
use crate::poly::PolySystem;

/// Size parameters of an instance that drive both the ansatz and the step bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemStats {
    pub n: usize,
    pub k: usize,
    /// Total monomial count `Σ m_i`.
    pub m_sigma: u64,
    pub m_i: Vec<u64>,
    /// `d_j`: largest exponent of `z_j` over all terms, for `j = 1..=n`.
    pub d: Vec<u32>,
    /// `m_σ^(ℓ)` for `ℓ = 1..n-1`: per polynomial, the number of distinct
    /// pairs (sub-monomial in `z_1..z_ℓ`, exponent of `z_{ℓ+1}`), summed.
    pub m_sigma_level: Vec<u64>,
    /// `N^(ℓ)` for `ℓ = 1..n-1`: the largest natural-order rank of any term
    /// restricted to `z_1..z_ℓ`.
    pub n_level: Vec<u64>,
}

pub fn system_stats(sys: &PolySystem) -> SystemStats {
    let n = sys.nvars();
    let m_i: Vec<u64> = sys.polys().iter().map(|p| p.len() as u64).collect();
    let mut d = vec![0u32; n];
    for t in sys.polys().iter().flat_map(|p| p.terms()) {
        for (dj, &e) in d.iter_mut().zip(t.mono.exponents()) {
            *dj = (*dj).max(e);
        }
    }
    let levels = n.saturating_sub(1);
    let mut m_sigma_level = Vec::with_capacity(levels);
    let mut n_level = Vec::with_capacity(levels);
    for ell in 1..=levels {
        let mut pairs_total = 0u64;
        let mut top_rank = 1u64;
        for p in sys.polys() {
            let mut pairs: BTreeSet<(Monomial, u32)> = BTreeSet::new();
            for t in p.terms() {
                let sub = t.mono.restrict(ell);
                top_rank = top_rank.max(sub.rank());
                pairs.insert((sub, t.mono.exponents()[ell]));
            }
            pairs_total += pairs.len() as u64;
        }
        m_sigma_level.push(pairs_total);
        n_level.push(top_rank);
    }
    SystemStats { n, k: sys.len(), m_sigma: m_i.iter().sum(), m_i, d, m_sigma_level, n_level }
}
