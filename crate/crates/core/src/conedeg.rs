//! Hilbert functions of complete intersections in `Pⁿ` and the graded
//! pieces of the projective cone degeneration along a hypersurface.
//!
//! Cutting `Pⁿ` by a hypersurface `S` of degree `d` filters the sections of
//! `O(md)` by vanishing order along `S`; the `i`-th graded piece is the
//! space of sections of `O((m - i)d)` on `S`. Summing the pieces gives the
//! Hilbert function of the central fibre, the projective cone over `S`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::binom;

/// `dim H⁰(O(m))` on a complete intersection of the given degrees in `Pⁿ`,
/// by inclusion–exclusion over subsets of the degrees. Zero for `m < 0`.
pub fn ci_hilbert(n: u32, degrees: &[u32], m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    let n = n as i64;
    let k = degrees.len();
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << k) {
        let cut: i64 = (0..k)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| degrees[j] as i64)
            .sum();
        let term = binom(m - cut + n, n);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub n: u32,
    pub degrees: Vec<u32>,
    /// `values[m]` for `m = 0, 1, ...`.
    pub values: Vec<BigInt>,
}

impl HilbertData {
    pub fn compute(n: u32, degrees: &[u32], m_max: u32) -> Self {
        HilbertData {
            n,
            degrees: degrees.to_vec(),
            values: (0..=m_max as i64)
                .map(|m| ci_hilbert(n, degrees, m))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub n: u32,
    pub d: u32,
    pub m_max: u32,
    /// Number of `(m, i)` graded-piece identities verified.
    pub identities_checked: usize,
    /// Hilbert function of the cone in degrees `0..=m_max`.
    pub cone_hilbert: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReportJson {
    pub n: u32,
    pub d: u32,
    pub checks_passed: bool,
    pub cone_hilbert: Vec<String>,
}

impl ConeReport {
    pub fn to_json(&self) -> ConeReportJson {
        ConeReportJson {
            n: self.n,
            d: self.d,
            checks_passed: true,
            cone_hilbert: self.cone_hilbert.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Checks `C((m-i)d + n, n) - C((m-i-1)d + n, n) = h_S((m - i)d)` for all
/// `0 <= i <= m <= m_max`, and accumulates the cone's graded dimensions.
pub fn cone_quotient_check(n: u32, d: u32, m_max: u32) -> Result<ConeReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if d == 0 || d > n + 1 {
        return Err(Error::InvalidInput(format!(
            "degree {d} must lie in 1..={}",
            n + 1
        )));
    }
    if m_max == 0 {
        return Err(Error::InvalidInput("m_max must be at least 1".into()));
    }
    let (n_i, d_i) = (n as i64, d as i64);
    let mut identities_checked = 0;
    let mut cone_hilbert = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max as i64 {
        let mut graded = BigInt::zero();
        for i in 0..=m {
            let quotient = binom((m - i) * d_i + n_i, n_i) - binom((m - i - 1) * d_i + n_i, n_i);
            let on_s = ci_hilbert(n, &[d], (m - i) * d_i);
            if quotient != on_s {
                return Err(Error::Inconsistent(format!(
                    "graded piece (m={m}, i={i}) has dimension {quotient} but h_S = {on_s}"
                )));
            }
            identities_checked += 1;
            graded += on_s;
        }
        cone_hilbert.push(graded);
    }
    if cone_hilbert.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Inconsistent(
            "cone Hilbert function decreases".into(),
        ));
    }
    Ok(ConeReport {
        n,
        d,
        m_max,
        identities_checked,
        cone_hilbert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ci_hilbert(3, &[2], 2), BigInt::from(9));
        for m in 0..10 {
            assert_eq!(ci_hilbert(2, &[1], m), BigInt::from(m + 1));
            assert_eq!(ci_hilbert(4, &[], m), binom(m + 4, 4));
        }
        assert!(ci_hilbert(3, &[2, 2], -1).is_zero());
    }

    #[test]
    fn linear_sections() {
        // a line in P³ cut by two hyperplanes
        for m in 0..10 {
            assert_eq!(ci_hilbert(3, &[1, 1], m), BigInt::from(m + 1));
        }
        // two points from a conic and a line in P²
        for m in 1..10 {
            assert_eq!(ci_hilbert(2, &[1, 2], m), BigInt::from(2));
        }
    }

    #[test]
    fn cone_conic() {
        let r = cone_quotient_check(2, 2, 6).unwrap();
        assert_eq!(r.identities_checked, 28);
        assert_eq!(r.cone_hilbert.len(), 7);
    }

    #[test]
    fn cone_is_flat_limit() {
        // the pieces telescope to dim H⁰(Pⁿ, O(md))
        for n in 1..6u32 {
            for d in 1..=n + 1 {
                let r = cone_quotient_check(n, d, 8).unwrap();
                for (m, h) in r.cone_hilbert.iter().enumerate() {
                    assert_eq!(h, &binom((m as u32 * d + n) as i64, n as i64));
                }
            }
        }
    }

    #[test]
    fn cone_degree_zero_piece() {
        let r = cone_quotient_check(4, 2, 10).unwrap();
        assert_eq!(r.cone_hilbert[0], BigInt::from(1));
    }

    #[test]
    fn preconditions() {
        assert!(cone_quotient_check(2, 4, 3).is_err());
        assert!(cone_quotient_check(2, 0, 3).is_err());
        assert!(cone_quotient_check(2, 2, 0).is_err());
    }
}
