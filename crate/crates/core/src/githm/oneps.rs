//! Diagonal one-parameter subgroups of `SL(n + 1)` and Hilbert–Mumford
//! weights of forms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::form::Form;
use crate::error::{Error, Result};

/// Integer weights with zero sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OnePS(Vec<i64>);

impl OnePS {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidInput(
                "a one-parameter subgroup needs at least two weights".into(),
            ));
        }
        if weights.iter().map(|&w| w as i128).sum::<i128>() != 0 {
            return Err(Error::InvalidInput(format!(
                "weights {weights:?} do not sum to zero"
            )));
        }
        Ok(OnePS(weights))
    }

    pub fn zero(len: usize) -> Self {
        OnePS(vec![0; len])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Divides out the gcd of the entries; the zero subgroup is unchanged.
    pub fn primitive(&self) -> OnePS {
        let g = self.0.iter().fold(0i64, |g, &w| g.gcd(&w));
        if g == 0 {
            self.clone()
        } else {
            OnePS(self.0.iter().map(|w| w / g).collect())
        }
    }

    pub fn negated(&self) -> OnePS {
        OnePS(self.0.iter().map(|w| -w).collect())
    }

    pub fn pairing(&self, exps: &[u32]) -> i64 {
        self.0.iter().zip(exps).map(|(w, &a)| w * a as i64).sum()
    }
}

impl TryFrom<Vec<i64>> for OnePS {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        OnePS::new(v)
    }
}

impl From<OnePS> for Vec<i64> {
    fn from(w: OnePS) -> Self {
        w.0
    }
}

impl std::fmt::Display for OnePS {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// `μ(f, w) = -min ⟨α, w⟩` over the support of `f`.
pub fn hm_weight(f: &Form, w: &OnePS) -> Result<i64> {
    if f.num_vars() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "form in {} variables, subgroup of length {}",
            f.num_vars(),
            w.len()
        )));
    }
    Ok(-f
        .support()
        .map(|a| w.pairing(a))
        .min()
        .expect("forms are nonempty"))
}
