//! Monomials `z^α` under the natural order.
//!
//! The natural order is graded: lower total degree comes first, and among
//! monomials of equal degree the one with the higher exponent on the first
//! variable where they differ comes first. For two variables this gives
//! `1 ≺ z1 ≺ z2 ≺ z1² ≺ z1z2 ≺ z2² ≺ …`.

use std::cmp::Ordering;
use std::fmt;

use crate::steps;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// `z_{j+1}` (zero-based `j`) in `n` variables.
    pub fn var(n: usize, j: usize) -> Self {
        let mut exps = vec![0; n];
        exps[j] = 1;
        Self { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() {
            return None;
        }
        self.exps.iter().zip(&other.exps).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial::new)
    }

    /// The sub-monomial in the first `ell` variables.
    pub fn restrict(&self, ell: usize) -> Monomial {
        Monomial::new(self.exps[..ell].to_vec())
    }

    /// Drops variable `j` (zero-based), returning its exponent and the rest.
    pub fn split_var(&self, j: usize) -> (u32, Monomial) {
        let mut rest = self.exps.clone();
        let e = rest.remove(j);
        (e, Monomial::new(rest))
    }

    /// Inserts a variable at zero-based position `j` with exponent `e`.
    pub fn insert_var(&self, j: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(j, e);
        Monomial::new(exps)
    }

    /// Reorders variables: position `j` of the result holds the exponent of
    /// variable `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        Monomial::new(perm.iter().map(|&p| self.exps[p]).collect())
    }

    pub fn try_cmp(&self, other: &Monomial) -> Result<Ordering, Error> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        Ok(self.cmp(other))
    }

    /// 1-based position in the natural-order enumeration of all monomials in
    /// `nvars()` variables.
    ///
    /// Panics if the rank does not fit in a `u64`.
    pub fn rank(&self) -> u64 {
        let n = self.nvars();
        let t = self.total_degree();
        let mut pos = count_below_degree(n, t);
        let mut left = t;
        for (j, &e) in self.exps.iter().enumerate().take(n.saturating_sub(1)) {
            let e = u64::from(e);
            let rest = n - j - 1;
            // Same prefix, larger exponent here: all of them come first.
            for larger in e + 1..=left {
                pos = pos.checked_add(count_of_degree(rest, left - larger)).expect("monomial rank overflows u64");
            }
            left -= e;
        }
        u64::try_from(pos + 1).expect("monomial rank overflows u64")
    }

    /// Inverse of [`rank`](Self::rank). `rank` must be at least 1.
    pub fn unrank(rank: u64, n: usize) -> Result<Monomial, Error> {
        if rank == 0 {
            return Err(Error::InvalidRank);
        }
        if n == 0 {
            return if rank == 1 { Ok(Monomial::one(0)) } else { Err(Error::InvalidRank) };
        }
        let rank = u128::from(rank);
        let mut t = 0u64;
        while count_below_degree(n, t + 1) < rank {
            t += 1;
        }
        let mut pos = rank - count_below_degree(n, t) - 1;
        let mut left = t;
        let mut exps = Vec::with_capacity(n);
        for j in 0..n - 1 {
            let rest = n - j - 1;
            let mut chosen = 0;
            for e in (0..=left).rev() {
                let c = count_of_degree(rest, left - e);
                if pos < c {
                    chosen = e;
                    break;
                }
                pos -= c;
            }
            exps.push(u32::try_from(chosen).expect("exponent overflows u32"));
            left -= chosen;
        }
        exps.push(u32::try_from(left).expect("exponent overflows u32"));
        Ok(Monomial::new(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        steps::compare(1);
        self.nvars().cmp(&other.nvars()).then_with(|| self.total_degree().cmp(&other.total_degree())).then_with(|| {
            self.exps.iter().zip(&other.exps).find(|(a, b)| a != b).map_or(Ordering::Equal, |(a, b)| b.cmp(a))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "z{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i)).expect("binomial overflows u128") / u128::from(i + 1);
    }
    acc
}

/// Number of monomials of total degree exactly `t` in `n` variables.
pub fn count_of_degree(n: usize, t: u64) -> u128 {
    match n {
        0 => u128::from(t == 0),
        _ => binomial(t + n as u64 - 1, n as u64 - 1),
    }
}

/// Number of monomials of total degree `< t` in `n` variables.
pub fn count_below_degree(n: usize, t: u64) -> u128 {
    match (n, t) {
        (_, 0) => 0,
        (0, _) => 1,
        _ => binomial(n as u64 + t - 1, n as u64),
    }
}

/// All monomials in `n` variables of total degree `≤ max_degree`, in natural order.
pub fn monomials_up_to_degree(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for t in 0..=max_degree {
        let mut prefix = Vec::with_capacity(n);
        push_degree_block(n, t, &mut prefix, &mut out);
    }
    out
}

fn push_degree_block(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 >= n {
        if n == 0 {
            if left == 0 {
                out.push(Monomial::one(0));
            }
            return;
        }
        prefix.push(left);
        out.push(Monomial::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=left).rev() {
        prefix.push(e);
        push_degree_block(n, left - e, prefix, out);
        prefix.pop();
    }
}
