//! Exact row-by-row elimination for `A b = rhs`.
//!
//! Equations are processed in row order. Each row is reduced against the
//! pivots chosen so far; a row that reduces to `0 = c ≠ 0` makes the system
//! infeasible, a row that reduces to `0 = 0` is dropped, and otherwise one of
//! its remaining unknowns becomes the row's pivot. Unknowns that never become
//! pivots are free parameters and are set to zero.

use std::collections::BTreeMap;

use super::linsys::SparseLinearSystem;
use crate::scalar::GaussianRational;
use crate::steps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PivotRule {
    /// Walk the sums of each equation in order: terms are grouped by the
    /// monomial `α` of `f_i` they come from (tuples, in natural order of
    /// `α`), and within a tuple by ascending `i`. A cursor remembers the last
    /// tuple position used, so the non-zeros of one tuple are consumed before
    /// the next tuple is considered.
    #[default]
    PaperTuple,
    /// Fewest non-zeros in the original column first, then lowest column.
    Markowitz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSolution {
    pub values: Vec<GaussianRational>,
    /// Columns that were free and set to zero, ascending.
    pub zeroed: Vec<usize>,
    /// Pivot column chosen for each non-redundant row, in processing order.
    pub pivots: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparseOutcome {
    Solved(SparseSolution),
    /// `row` is the 1-based index of the first equation found inconsistent.
    Infeasible {
        row: usize,
    },
}

struct PivotRow {
    col: usize,
    /// Remaining entries with the pivot coefficient normalised to one.
    entries: Vec<(usize, GaussianRational)>,
    rhs: GaussianRational,
}

type TupleKey = (u64, usize);

pub fn solve_sparse(lin: &SparseLinearSystem, rule: PivotRule) -> SparseOutcome {
    let ncols = lin.ncols();
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut pivots: Vec<PivotRow> = Vec::new();
    let mut chosen = Vec::new();
    let mut cursor: TupleKey = (0, 0);

    let col_counts: Vec<usize> = match rule {
        PivotRule::Markowitz => {
            let mut counts = vec![0; ncols];
            for row in &lin.rows {
                for (c, _) in row {
                    counts[*c] += 1;
                }
            }
            counts
        }
        PivotRule::PaperTuple => Vec::new(),
    };

    for (r, original) in lin.rows.iter().enumerate() {
        let mut row: BTreeMap<usize, GaussianRational> = original.iter().cloned().collect();
        let mut rhs = lin.rhs[r].clone();
        steps::assign(original.len() as u64 + 1);

        // Eliminate earlier pivots, oldest first: pivot row p never contains
        // the columns of pivots older than p, so this terminates.
        loop {
            let next = row.keys().filter_map(|&c| pivot_of[c].map(|p| (p, c))).min();
            let Some((p, col)) = next else { break };
            steps::compare(row.len() as u64);
            let factor = row.remove(&col).expect("present");
            let prow = &pivots[p];
            for (c, v) in &prow.entries {
                let delta = &factor * v;
                let slot = row.entry(*c).or_default();
                *slot = &*slot - &delta;
                steps::assign(1);
                steps::compare(1);
                if slot.is_zero() {
                    row.remove(c);
                }
            }
            rhs = &rhs - &(&factor * &prow.rhs);
            steps::assign(1);
        }

        steps::compare(1);
        if row.is_empty() {
            if rhs.is_zero() {
                continue;
            }
            return SparseOutcome::Infeasible { row: r + 1 };
        }

        let col = match rule {
            PivotRule::PaperTuple => {
                let (col, key) = paper_tuple_choice(lin, r, &row, cursor);
                if let Some((rank, poly)) = key {
                    cursor = (rank, poly + 1);
                }
                col
            }
            PivotRule::Markowitz => {
                steps::compare(row.len() as u64);
                *row.keys().min_by_key(|&&c| (col_counts[c], c)).expect("non-empty")
            }
        };

        let lead = row.remove(&col).expect("pivot present");
        let inv = lead.inv().expect("pivot is non-zero");
        let entries: Vec<(usize, GaussianRational)> = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        steps::assign(entries.len() as u64 + 1);
        let rhs = &rhs * &inv;
        pivot_of[col] = Some(pivots.len());
        chosen.push((r, col));
        pivots.push(PivotRow { col, entries, rhs });
    }

    // Free parameters are zero; later pivots never depend on earlier ones.
    let mut values = vec![GaussianRational::zero(); ncols];
    let zeroed: Vec<usize> = (0..ncols).filter(|&c| pivot_of[c].is_none()).collect();
    steps::assign(zeroed.len() as u64);
    for prow in pivots.iter().rev() {
        let mut v = prow.rhs.clone();
        for (c, a) in &prow.entries {
            if !values[*c].is_zero() {
                v = &v - &(a * &values[*c]);
            }
        }
        values[prow.col] = v;
        steps::assign(1);
    }

    check_substitution(lin, &values);
    SparseOutcome::Solved(SparseSolution { values, zeroed, pivots: chosen })
}

/// Picks the pivot column for row `r` under [`PivotRule::PaperTuple`].
///
/// Every remaining column `(i, β)` of the reduced row belongs to the tuple
/// `α = μ_r / β` when `β` divides `μ_r`. The first `(rank α, i)` at or after
/// the cursor wins; if the cursor has passed all of them, the search wraps to
/// the smallest key; columns with no tuple (fill-in) are used last, lowest first.
fn paper_tuple_choice(
    lin: &SparseLinearSystem,
    r: usize,
    row: &BTreeMap<usize, GaussianRational>,
    cursor: TupleKey,
) -> (usize, Option<TupleKey>) {
    let mu = &lin.row_monomials[r];
    let mut at_or_after: Option<(TupleKey, usize)> = None;
    let mut smallest: Option<(TupleKey, usize)> = None;
    for &c in row.keys() {
        let u = &lin.unknowns[c];
        let Some(alpha) = mu.checked_div(&u.mono) else { continue };
        let key = (alpha.rank(), u.poly);
        steps::compare(2);
        if key >= cursor && at_or_after.as_ref().is_none_or(|(k, _)| key < *k) {
            at_or_after = Some((key, c));
        }
        if smallest.as_ref().is_none_or(|(k, _)| key < *k) {
            smallest = Some((key, c));
        }
    }
    match at_or_after.or(smallest) {
        Some((key, c)) => (c, Some(key)),
        None => (*row.keys().next().expect("non-empty"), None),
    }
}

/// Exact substitution check of `A b = rhs`; a mismatch is a solver bug.
fn check_substitution(lin: &SparseLinearSystem, values: &[GaussianRational]) {
    for (r, row) in lin.rows.iter().enumerate() {
        let mut acc = GaussianRational::zero();
        for (c, a) in row {
            if !values[*c].is_zero() {
                acc = &acc + &(a * &values[*c]);
            }
        }
        steps::compare(1);
        assert!(acc == lin.rhs[r], "substitution check failed at row {}", r + 1);
    }
}
