//! Ground truth: exact certificate verification, common-zero search over a
//! Gaussian-integer box, and a dense certificate search that shares no
//! elimination code with the engine.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::engine::{AnsatzKind, AnsatzSpec, Certificate, StrategyTag};
use crate::monomial::{monomials_up_to_degree, Monomial};
use crate::poly::{PolySystem, Polynomial, Term};
use crate::scalar::GaussianRational;
use crate::Error;

pub const DEFAULT_BOX_LIMIT: u64 = 100_000_000;
pub const DEFAULT_DENSE_LIMIT: usize = 4_000_000;

/// `Σ f_i g_i − 1`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub poly: Polynomial,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

pub fn verify(sys: &PolySystem, cert: &Certificate) -> Result<Residual, Error> {
    if cert.g.len() != sys.len() {
        return Err(Error::CertificateArity { expected: sys.len(), found: cert.g.len() });
    }
    let n = sys.nvars();
    let mut acc = Polynomial::one(n).neg();
    for (f, g) in sys.polys().iter().zip(&cert.g) {
        acc = acc.add(&f.mul(g)?)?;
    }
    Ok(Residual { poly: acc })
}

/// A common zero with Gaussian-integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroWitness {
    pub point: Vec<GaussianRational>,
    pub values: Vec<GaussianRational>,
}

pub fn box_zero_search(sys: &PolySystem, radius: u32) -> Result<Option<ZeroWitness>, Error> {
    box_zero_search_with_limit(sys, radius, DEFAULT_BOX_LIMIT)
}

/// Scans every point with `|Re z_j|, |Im z_j| ≤ radius`.
///
/// Points are visited lexicographically in `(Re z_1, Im z_1, Re z_2, …)`, each
/// coordinate ascending from `−radius`; the first common zero is returned.
pub fn box_zero_search_with_limit(sys: &PolySystem, radius: u32, limit: u64) -> Result<Option<ZeroWitness>, Error> {
    let n = sys.nvars();
    let side = BigInt::from(2 * u64::from(radius) + 1);
    let points = num_traits::pow(side, 2 * n);
    match points.to_u64() {
        Some(p) if p <= limit => {}
        _ => return Err(Error::BoxTooLarge { points: points.to_string(), limit }),
    }

    let r = i64::from(radius);
    let fast: Vec<Option<FastPoly>> = sys.polys().iter().map(FastPoly::new).collect();
    let mut digits = vec![-r; 2 * n];
    loop {
        let point: Vec<(i64, i64)> = digits.chunks(2).map(|c| (c[0], c[1])).collect();
        let all_zero =
            sys.polys().iter().zip(&fast).all(|(f, fp)| match fp.as_ref().and_then(|fp| fp.eval_is_zero(&point)) {
                Some(z) => z,
                None => exact_point_eval(f, &point).is_zero(),
            });
        if all_zero {
            let point: Vec<GaussianRational> =
                point.iter().map(|&(a, b)| GaussianRational::gaussian_integer(a, b)).collect();
            let values = sys.polys().iter().map(|f| f.eval(&point)).collect::<Result<_, _>>()?;
            return Ok(Some(ZeroWitness { point, values }));
        }
        // Odometer: the last coordinate moves fastest.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if digits[pos] < r {
                digits[pos] += 1;
                break;
            }
            digits[pos] = -r;
        }
    }
}

fn exact_point_eval(f: &Polynomial, point: &[(i64, i64)]) -> GaussianRational {
    let p: Vec<GaussianRational> = point.iter().map(|&(a, b)| GaussianRational::gaussian_integer(a, b)).collect();
    f.eval(&p).expect("point has the system's dimension")
}

/// A polynomial scaled to Gaussian-integer coefficients that fit in `i128`.
struct FastPoly {
    terms: Vec<((i128, i128), Vec<u32>)>,
}

impl FastPoly {
    fn new(f: &Polynomial) -> Option<Self> {
        let mut lcm = BigInt::one();
        for t in f.terms() {
            lcm = num_integer::lcm(lcm, t.coeff.denominator_lcm());
        }
        let scale = GaussianRational::from(num_rational::BigRational::from_integer(lcm));
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let (re, im) = (&t.coeff * &scale).as_gaussian_integer()?;
                Some(((re.to_i128()?, im.to_i128()?), t.mono.exponents().to_vec()))
            })
            .collect::<Option<_>>()?;
        Some(Self { terms })
    }

    /// `None` on overflow.
    fn eval_is_zero(&self, point: &[(i64, i64)]) -> Option<bool> {
        let mut acc = (0i128, 0i128);
        for (c, exps) in &self.terms {
            let mut v = *c;
            for (&(a, b), &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    v = cmul(v, (i128::from(a), i128::from(b)))?;
                }
            }
            acc = (acc.0.checked_add(v.0)?, acc.1.checked_add(v.1)?);
        }
        Some(acc == (0, 0))
    }
}

fn cmul(x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
    let re = x.0.checked_mul(y.0)?.checked_sub(x.1.checked_mul(y.1)?)?;
    let im = x.0.checked_mul(y.1)?.checked_add(x.1.checked_mul(y.0)?)?;
    Some((re, im))
}

pub fn dense_cert_search(sys: &PolySystem, degree: u32) -> Result<Option<Certificate>, Error> {
    dense_cert_search_with_limit(sys, degree, DEFAULT_DENSE_LIMIT)
}

/// Textbook Gauss-Jordan on the full coefficient-matching matrix for
/// `Σ f_i g_i = 1` with every `g_i` of total degree at most `degree`.
pub fn dense_cert_search_with_limit(sys: &PolySystem, degree: u32, limit: usize) -> Result<Option<Certificate>, Error> {
    let n = sys.nvars();
    let basis = monomials_up_to_degree(n, degree);

    // Column (i, β) holds the coefficients of f_i · z^β.
    let mut columns: Vec<(usize, Monomial, Polynomial)> = Vec::new();
    for (i, f) in sys.polys().iter().enumerate() {
        for beta in &basis {
            columns.push((i, beta.clone(), f.mul_monomial(beta)?));
        }
    }
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    row_index.insert(Monomial::one(n), 0);
    for (_, _, p) in &columns {
        for t in p.terms() {
            row_index.entry(t.mono.clone()).or_insert(0);
        }
    }
    for (r, slot) in row_index.values_mut().enumerate() {
        *slot = r;
    }

    let nrows = row_index.len();
    let ncols = columns.len();
    let cells = nrows.saturating_mul(ncols + 1);
    if cells > limit {
        return Err(Error::DenseTooLarge { cells, limit });
    }

    // Augmented matrix [A | e_1].
    let mut m = vec![vec![GaussianRational::zero(); ncols + 1]; nrows];
    for (c, (_, _, p)) in columns.iter().enumerate() {
        for t in p.terms() {
            m[row_index[&t.mono]][c] = t.coeff.clone();
        }
    }
    m[row_index[&Monomial::one(n)]][ncols] = GaussianRational::one();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Ok(None);
    }

    let mut values = vec![GaussianRational::zero(); ncols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        values[c] = m[row][ncols].clone();
    }
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); sys.len()];
    for ((i, beta, _), v) in columns.into_iter().zip(values) {
        if !v.is_zero() {
            terms[i].push(Term::new(v, beta));
        }
    }
    let g = terms.into_iter().map(|t| Polynomial::canonicalize(n, t)).collect::<Result<Vec<_>, _>>()?;
    let cert = Certificate {
        g,
        ansatz: AnsatzSpec {
            kind: AnsatzKind::TotalDegree(degree),
            degree: Some(degree),
            bases: vec![basis; sys.len()],
        },
        strategy: StrategyTag::DenseOracle,
        zeroed_params: Vec::new(),
        escalation: None,
    };
    if verify(sys, &cert)?.is_zero() {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}
