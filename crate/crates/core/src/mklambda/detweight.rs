//! Weights of a diagonal one-parameter subgroup on determinants of spaces
//! of sections.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::githm::{Form, OnePS};
use crate::rational::binom;

/// `Σ ⟨α, w⟩` over all exponent vectors of degree `m` in `w.len()`
/// variables: each coordinate sums to `C(m + n, n + 1)`.
fn weight_sum(w: &[i64], m: u32) -> BigInt {
    let n = w.len() as i64 - 1;
    binom(m as i64 + n, n + 1) * w.iter().sum::<i64>()
}

/// Total weight of `w` on `det H⁰(Pⁿ, O(m))`, or on
/// `det H⁰(O(m)) / f₀·H⁰(O(m - e))` where `f₀` is the lowest-weight part of
/// `f`, i.e. on the sections over the flat limit of `{f = 0}`.
pub fn equivariant_det_weight(
    n: u32,
    w: &OnePS,
    m: u32,
    quotient_by: Option<(&Form, u32)>,
) -> Result<BigInt> {
    let vars = n as usize + 1;
    if w.len() != vars {
        return Err(Error::DimensionMismatch(format!(
            "subgroup of length {} on P^{n}",
            w.len()
        )));
    }
    let full = weight_sum(w.weights(), m);
    let Some((f, e)) = quotient_by else {
        return Ok(full);
    };
    if f.num_vars() != vars {
        return Err(Error::DimensionMismatch(format!(
            "form in {} variables on P^{n}",
            f.num_vars()
        )));
    }
    if f.degree() != e {
        return Err(Error::InvalidInput(format!(
            "form has degree {}, not {e}",
            f.degree()
        )));
    }
    if e > m {
        return Err(Error::InvalidInput(format!(
            "quotient degree {e} exceeds m = {m}"
        )));
    }
    let lowest = f
        .support()
        .map(|a| w.pairing(a))
        .min()
        .expect("forms are nonempty");
    let multiples =
        weight_sum(w.weights(), m - e) + binom((m - e) as i64 + n as i64, n as i64) * lowest;
    Ok(full - multiples)
}
