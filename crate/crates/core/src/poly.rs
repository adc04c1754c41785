//! Sparse multivariate polynomials with Gaussian-rational coefficients.
//!
//! Terms are stored in strictly increasing natural order with no zero
//! coefficients; the zero polynomial has no terms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::monomial::Monomial;
use crate::scalar::GaussianRational;
use crate::steps;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: GaussianRational,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: GaussianRational, mono: Monomial) -> Self {
        Self { coeff, mono }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(c, Monomial::one(n))
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn monomial(c: GaussianRational, mono: Monomial) -> Self {
        let n = mono.nvars();
        if c.is_zero() {
            Self::zero(n)
        } else {
            Self { n, terms: vec![Term::new(c, mono)] }
        }
    }

    /// `z_{j+1}` in `n` variables.
    pub fn var(n: usize, j: usize) -> Self {
        Self::monomial(GaussianRational::one(), Monomial::var(n, j))
    }

    /// Builds the canonical polynomial from an arbitrary multiset of terms:
    /// sorted, like monomials merged, zero coefficients dropped.
    pub fn canonicalize(n: usize, raw: impl IntoIterator<Item = Term>) -> Result<Self, Error> {
        let mut raw: Vec<Term> = raw.into_iter().collect();
        if let Some(bad) = raw.iter().find(|t| t.mono.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.mono.nvars() });
        }
        raw.sort_by(|a, b| a.mono.cmp(&b.mono));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = &last.coeff + &t.coeff;
                    steps::assign(1);
                }
                _ => {
                    terms.push(t);
                    steps::assign(1);
                }
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Ok(Self { n, terms })
    }

    /// Like [`canonicalize`](Self::canonicalize) but rejects duplicate
    /// monomials and zero coefficients instead of merging them.
    pub fn from_distinct_terms(n: usize, raw: Vec<Term>) -> Result<Self, Error> {
        let count = raw.len();
        if raw.iter().any(|t| t.coeff.is_zero()) {
            return Err(Error::ZeroCoefficient);
        }
        let p = Self::canonicalize(n, raw)?;
        if p.terms.len() != count {
            return Err(Error::DuplicateMonomial);
        }
        Ok(p)
    }

    pub(crate) fn from_sorted_map(n: usize, map: BTreeMap<Monomial, GaussianRational>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { coeff, mono }).collect();
        Self { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if this polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.total_degree()).max()
    }

    /// Largest exponent of variable `j` (zero-based); `None` for zero.
    pub fn degree_in(&self, j: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.exponents()[j]).max()
    }

    /// Coefficient of `mono`, zero when absent.
    pub fn coeff(&self, mono: &Monomial) -> GaussianRational {
        self.terms.binary_search_by(|t| t.mono.cmp(mono)).map(|i| self.terms[i].coeff.clone()).unwrap_or_default()
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.mono.cmp(&b.mono) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Term::new(c, a.mono.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
            steps::assign(1);
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { n: self.n, terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { n: self.n, terms: self.terms.iter().map(|t| Term::new(-&t.coeff, t.mono.clone())).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let c = &a.coeff * &b.coeff;
                let slot = acc.entry(a.mono.mul(&b.mono)).or_default();
                *slot = &*slot + &c;
                steps::assign(1);
            }
        }
        Ok(Polynomial::from_sorted_map(self.n, acc))
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|t| Term::new(&t.coeff * c, t.mono.clone())).collect() }
    }

    /// Multiplies by a monomial; order is preserved because the natural
    /// order is compatible with multiplication.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, Error> {
        if m.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.nvars() });
        }
        Ok(Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|t| Term::new(t.coeff.clone(), t.mono.mul(m))).collect(),
        })
    }

    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational, Error> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: point.len() });
        }
        let mut sum = GaussianRational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(t.mono.exponents()) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            sum = &sum + &v;
        }
        Ok(sum)
    }

    /// Decomposes `f = Σ_j c_j · z_ℓ^j` for the 1-based variable index `ell`.
    ///
    /// Each `c_j` lives in the remaining `n − 1` variables; only non-zero
    /// coefficients are returned, in increasing `j`.
    pub fn extract_coeffs(&self, ell: usize) -> Result<Vec<(u32, Polynomial)>, Error> {
        if ell == 0 || ell > self.n {
            return Err(Error::InvalidVariable { index: ell, nvars: self.n });
        }
        let mut by_power: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            let (e, rest) = t.mono.split_var(ell - 1);
            by_power.entry(e).or_default().push(Term::new(t.coeff.clone(), rest));
        }
        by_power.into_iter().map(|(e, terms)| Polynomial::canonicalize(self.n - 1, terms).map(|p| (e, p))).collect()
    }

    /// Dense version of [`extract_coeffs`](Self::extract_coeffs): entry `j`
    /// is the coefficient of `z_ℓ^j`, for `j` up to the degree in `z_ℓ`.
    pub fn coeffs_dense(&self, ell: usize) -> Result<Vec<Polynomial>, Error> {
        let sparse = self.extract_coeffs(ell)?;
        let len = sparse.last().map_or(0, |(e, _)| *e as usize + 1);
        let mut out = vec![Polynomial::zero(self.n - 1); len];
        for (e, p) in sparse {
            out[e as usize] = p;
        }
        Ok(out)
    }

    /// Embeds into one more variable inserted at zero-based position `j` with exponent `e`.
    pub fn insert_var(&self, j: usize, e: u32) -> Polynomial {
        // Order is only preserved when appending as the last variable.
        let terms = self.terms.iter().map(|t| Term::new(t.coeff.clone(), t.mono.insert_var(j, e))).collect::<Vec<_>>();
        Polynomial::canonicalize(self.n + 1, terms).expect("arity checked")
    }

    /// Renames variables: variable `j` of the result is variable `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term::new(t.coeff.clone(), t.mono.permute(perm))).collect::<Vec<_>>();
        Polynomial::canonicalize(self.n, terms).expect("arity preserved")
    }

    /// Checks the storage invariant: strictly increasing, zero-free, right arity.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_zero() && t.mono.nvars() == self.n && t.coeff.is_canonical())
            && self.terms.windows(2).all(|w| w[0].mono < w[1].mono)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let complex = !t.coeff.re().is_zero() && !t.coeff.im().is_zero();
            match (t.mono.is_one(), t.coeff.is_one()) {
                (true, _) => write!(f, "{}", t.coeff)?,
                (false, true) => write!(f, "{}", t.mono)?,
                (false, false) if complex => write!(f, "({})*{}", t.coeff, t.mono)?,
                (false, false) => write!(f, "{}*{}", t.coeff, t.mono)?,
            }
        }
        Ok(())
    }
}

/// An instance `{f_i}` sharing one variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolySystem {
    n: usize,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(n: usize, polys: Vec<Polynomial>) -> Result<Self, Error> {
        if polys.is_empty() {
            return Err(Error::EmptySystem);
        }
        if let Some(p) = polys.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
        }
        Ok(Self { n, polys })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Total number of monomials across all polynomials.
    pub fn total_terms(&self) -> usize {
        self.polys.iter().map(Polynomial::len).sum()
    }

    pub fn permute(&self, perm: &[usize]) -> PolySystem {
        PolySystem { n: self.n, polys: self.polys.iter().map(|p| p.permute(perm)).collect() }
    }
}
