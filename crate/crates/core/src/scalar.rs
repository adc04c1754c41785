//! Exact Gaussian-rational scalars `a/b + (c/d)i`.
//!
//! Both parts are kept as reduced fractions with positive denominators after
//! every operation, so structural equality coincides with numeric equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::steps;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // BigRational reduces on construction and keeps the sign on the numerator.
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::gaussian_integer(n, 0)
    }

    pub fn gaussian_integer(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// `re_num/re_den + (im_num/im_den)i`; panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(BigRational::new(re_num.into(), re_den.into()), BigRational::new(im_num.into(), im_den.into()))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when both parts have denominator 1, i.e. the value lies in ℤ[i].
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Checks the reduced-form invariant directly on the stored fractions.
    pub fn is_canonical(&self) -> bool {
        fn reduced(q: &BigRational) -> bool {
            q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
        }
        reduced(&self.re) && reduced(&self.im)
    }

    pub fn conj(&self) -> Self {
        steps::arith(1);
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        steps::arith(1);
        let n = self.norm_sqr();
        let out = Self::new(&self.re / &n, -(&self.im / &n));
        steps::bits(out.bit_size());
        Ok(out)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.im.is_zero() {
            steps::arith(1);
            let out = Self::new(&self.re / &rhs.re, &self.im / &rhs.re);
            steps::bits(out.bit_size());
            return Ok(out);
        }
        // (a+bi)/(c+di) = (a+bi)(c-di)/(c²+d²), counted as a single division.
        let n = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        steps::arith(1);
        let out = Self::new(re, im);
        steps::bits(out.bit_size());
        Ok(out)
    }

    /// `base^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Total bit length of the four stored integers.
    pub fn bit_size(&self) -> u64 {
        self.re.numer().bits() + self.re.denom().bits() + self.im.numer().bits() + self.im.denom().bits()
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Gaussian-integer parts, if this value lies in ℤ[i].
    pub fn as_gaussian_integer(&self) -> Option<(BigInt, BigInt)> {
        self.is_gaussian_integer().then(|| (self.re.numer().clone(), self.im.numer().clone()))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_negative() {
                    write!(f, "-")?;
                    write_imag(f, &-self.im.clone())
                } else {
                    write!(f, "+")?;
                    write_imag(f, &self.im)
                }
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if *im == -BigRational::one() {
        write!(f, "-i")
    } else {
        write!(f, "{im}i")
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: Self) -> GaussianRational {
        steps::arith(1);
        let out = GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im);
        steps::bits(out.bit_size());
        out
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: Self) -> GaussianRational {
        steps::arith(1);
        let out = GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im);
        steps::bits(out.bit_size());
        out
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: Self) -> GaussianRational {
        steps::arith(1);
        let out = if self.im.is_zero() && rhs.im.is_zero() {
            GaussianRational::new(&self.re * &rhs.re, BigRational::zero())
        } else {
            GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
        };
        steps::bits(out.bit_size());
        out
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        steps::arith(1);
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: Self) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

/// Parses a canonical fraction string: `"a"` for integers, otherwise `"a/b"`
/// with `b ≥ 2` and `gcd(|a|, b) = 1`. Leading `+`, leading zeros, `-0`, and
/// unreduced forms are rejected.
pub fn parse_canonical_fraction(s: &str) -> Result<BigRational, String> {
    fn digits(part: &str, what: &str) -> Result<(), String> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{what} is not a decimal integer"));
        }
        if part.len() > 1 && part.starts_with('0') {
            return Err(format!("{what} has a leading zero"));
        }
        Ok(())
    }

    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let (negative, mag) = match num_str.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, num_str),
    };
    digits(mag, "numerator")?;
    if negative && mag == "0" {
        return Err("negative zero".into());
    }
    let num = BigInt::from_str(num_str).map_err(|e| e.to_string())?;
    match den_str {
        None => Ok(BigRational::from_integer(num)),
        Some(d) => {
            digits(d, "denominator")?;
            let den = BigInt::from_str(d).map_err(|e| e.to_string())?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            if den.is_one() {
                return Err("denominator 1 must be omitted".into());
            }
            if !num.gcd(&den).is_one() {
                return Err("fraction is not in lowest terms".into());
            }
            Ok(BigRational::new_raw(num, den))
        }
    }
}

/// Inverse of [`parse_canonical_fraction`].
pub fn format_canonical_fraction(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
