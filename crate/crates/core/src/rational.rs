//! Exact rationals and the `"p/q"` string form used by every JSON schema.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
pub type Q = BigRational;

/// Longest accepted numerator or denominator, in characters.
const MAX_DIGITS: usize = 4096;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Whitespace around the parts is not accepted.
pub fn parse_q(s: &str) -> Result<Q> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num = parse_int(num, s)?;
    let den = match den {
        Some(d) if !d.starts_with('-') => parse_int(d, s)?,
        Some(_) => return Err(Error::Parse(format!("negative denominator in {s:?}"))),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

fn parse_int(part: &str, whole: &str) -> Result<BigInt> {
    let digits = part.strip_prefix('-').unwrap_or(part);
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a rational: {whole:?}")));
    }
    part.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not a rational: {whole:?}")))
}

/// Renders in lowest terms; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Parses a comma-separated list, e.g. `"5/6,5/6"`.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|p| parse_q(p.trim())).collect()
}

/// Approximate decimal rendering. Never used in any computation.
pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient with the convention `C(a, b) = 0` when `a < b`,
/// `a < 0` or `b < 0`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= BigInt::from(a - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Binomial `C(x, i)` as a polynomial in a rational argument.
pub fn binom_poly(x: &Q, i: usize) -> Q {
    let mut acc = Q::one();
    for j in 0..i {
        acc *= x - q(j as i64);
        acc /= q(j as i64 + 1);
    }
    acc
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales `xs` by a positive rational so that the entries become coprime
/// integers. Returns the scaled integers; the zero vector stays zero.
pub fn primitive_integer(xs: &[Q]) -> Vec<BigInt> {
    let l = lcm_of_denominators(xs);
    let ints: Vec<BigInt> = xs
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// A vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QVec(pub Vec<Q>);

impl QVec {
    pub fn new(entries: Vec<Q>) -> Self {
        QVec(entries)
    }

    pub fn zeros(len: usize) -> Self {
        QVec(vec![Q::zero(); len])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVec(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Q> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn dot(&self, other: &QVec) -> Q {
        dot(&self.0, &other.0)
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Q) -> QVec {
        QVec(self.0.iter().map(|a| a * s).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }

    pub fn parse(strings: &[String]) -> Result<QVec> {
        strings
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()
            .map(QVec)
    }

    /// Entrywise sign, used for canonical ordering of rays.
    pub fn first_nonzero_sign(&self) -> i32 {
        for x in &self.0 {
            if x.is_positive() {
                return 1;
            }
            if x.is_negative() {
                return -1;
            }
        }
        0
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl Index<usize> for QVec {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Q {
        &mut self.0[i]
    }
}

impl From<Vec<Q>> for QVec {
    fn from(v: Vec<Q>) -> Self {
        QVec(v)
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
