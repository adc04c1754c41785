#![allow(dead_code)]

use std::cmp::Ordering;

use nullcert::{GaussianRational, Monomial, PolySystem, Polynomial, Term};
use proptest::prelude::*;

pub fn z(n: usize, j: usize) -> Polynomial {
    Polynomial::var(n, j)
}

pub fn c(n: usize, v: i64) -> Polynomial {
    Polynomial::constant(n, v.into())
}

pub fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::gaussian_integer(re, im)
}

pub fn poly(n: usize, terms: &[(i64, i64, &[u32])]) -> Polynomial {
    Polynomial::canonicalize(n, terms.iter().map(|(re, im, e)| Term::new(gi(*re, *im), Monomial::new(e.to_vec()))))
        .unwrap()
}

pub fn sys(n: usize, polys: Vec<Polynomial>) -> PolySystem {
    PolySystem::new(n, polys).unwrap()
}

/// The ordering rule written out directly: lower total degree first; otherwise
/// the first variable where the exponents differ decides, higher exponent first.
pub fn prose_order(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Every exponent vector of total degree ≤ `max_degree`, sorted by [`prose_order`].
pub fn enumerate_sorted(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut all = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &all {
            let used: u32 = v.iter().sum();
            for e in 0..=(max_degree - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        all = next;
    }
    all.sort_by(|a, b| prose_order(a, b));
    all
}

pub fn arb_gaussian(bound: i64) -> impl Strategy<Value = GaussianRational> {
    (-bound..=bound, -bound..=bound).prop_map(|(a, b)| gi(a, b))
}

pub fn arb_gaussian_rational() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

pub fn arb_monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

pub fn arb_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_gaussian(3), arb_monomial(n, max_exp)), 0..=max_terms)
        .prop_map(move |terms| Polynomial::canonicalize(n, terms.into_iter().map(|(c, m)| Term::new(c, m))).unwrap())
}

pub fn arb_poly_rational(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_gaussian_rational(), arb_monomial(n, max_exp)), 0..=max_terms)
        .prop_map(move |terms| Polynomial::canonicalize(n, terms.into_iter().map(|(c, m)| Term::new(c, m))).unwrap())
}

/// Systems in 1..=max_n variables with 1..=max_k polynomials of small support.
pub fn arb_system(max_n: usize, max_k: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = PolySystem> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(arb_poly(n, max_exp, max_terms), 1..=max_k)
            .prop_map(move |polys| PolySystem::new(n, polys).unwrap())
    })
}

pub fn arb_point(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(arb_gaussian_rational(), n)
}
