//! Coefficient-matching linear system for `Σ f_i g_i = h`.

use std::collections::BTreeMap;
use std::fmt;

use super::ansatz::AnsatzSpec;
use crate::monomial::Monomial;
use crate::poly::{PolySystem, Polynomial};
use crate::scalar::GaussianRational;
use crate::steps;
use crate::Error;

/// The unknown `b_{i,β}`: coefficient of basis monomial `β` in `g_i` (zero-based `poly`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Unknown {
    pub poly: usize,
    pub mono: Monomial,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.mono.exponents().iter().map(u32::to_string).collect();
        write!(f, "g{}[{}]", self.poly + 1, exps.join(","))
    }
}

/// One row per constraint monomial `μ`, one column per unknown.
///
/// Rows are sorted by the natural order of `μ`, so the constant monomial is
/// row 1 and the right-hand side for `h = 1` is `e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLinearSystem {
    pub row_monomials: Vec<Monomial>,
    pub unknowns: Vec<Unknown>,
    /// `rows[r]` holds `(column, value)` pairs sorted by column.
    pub rows: Vec<Vec<(usize, GaussianRational)>>,
    pub rhs: Vec<GaussianRational>,
}

impl SparseLinearSystem {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entry at `(row, col)`, zero when absent.
    pub fn entry(&self, row: usize, col: usize) -> GaussianRational {
        self.rows[row].binary_search_by_key(&col, |(c, _)| *c).map(|k| self.rows[row][k].1.clone()).unwrap_or_default()
    }
}

/// The system for `Σ f_i g_i = 1`.
pub fn build_linear_system(sys: &PolySystem, ansatz: &AnsatzSpec) -> Result<SparseLinearSystem, Error> {
    build_with_rhs(sys.polys(), ansatz, &Polynomial::one(sys.nvars()))
}

/// The system for `Σ f_i g_i = rhs`.
///
/// Rows are `{α + β}` over terms `α` of `f_i` and basis monomials `β` of `g_i`,
/// together with every monomial of `rhs` and the constant monomial.
pub fn build_with_rhs(
    polys: &[Polynomial],
    ansatz: &AnsatzSpec,
    rhs: &Polynomial,
) -> Result<SparseLinearSystem, Error> {
    if ansatz.bases.len() != polys.len() {
        return Err(Error::AnsatzMismatch(format!("{} bases for {} polynomials", ansatz.bases.len(), polys.len())));
    }
    let n = rhs.nvars();
    if let Some(m) = ansatz.bases.iter().flatten().find(|m| m.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.nvars() });
    }

    let mut unknowns = Vec::with_capacity(ansatz.unknown_count());
    let mut rows: BTreeMap<Monomial, Vec<(usize, GaussianRational)>> = BTreeMap::new();
    rows.insert(Monomial::one(n), Vec::new());
    for t in rhs.terms() {
        rows.entry(t.mono.clone()).or_default();
    }
    for (i, (f, basis)) in polys.iter().zip(&ansatz.bases).enumerate() {
        for beta in basis {
            let col = unknowns.len();
            unknowns.push(Unknown { poly: i, mono: beta.clone() });
            for t in f.terms() {
                rows.entry(t.mono.mul(beta)).or_default().push((col, t.coeff.clone()));
                steps::assign(1);
            }
        }
    }

    let mut row_monomials = Vec::with_capacity(rows.len());
    let mut out_rows = Vec::with_capacity(rows.len());
    let mut out_rhs = Vec::with_capacity(rows.len());
    for (mu, entries) in rows {
        // Columns were pushed in increasing order, one entry per column.
        out_rhs.push(rhs.coeff(&mu));
        steps::assign(1);
        row_monomials.push(mu);
        out_rows.push(entries);
    }
    Ok(SparseLinearSystem { row_monomials, unknowns, rows: out_rows, rhs: out_rhs })
}
