//! The linearization induced by the CM line bundle on the space of
//! boundary tuples, fitted from sampled weights.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cm::{cm_weight, Beta, EquivariantFamily, Route};
use crate::error::{Error, Result};
use crate::githm::form::monomials;
use crate::githm::{hm_weight, Form, OnePS};
use crate::qgeom::{solve_linear_system, LinearSolution};
use crate::rational::{q, QVec, Q};

pub const MIN_SAMPLES: usize = 20;
const MAX_SAMPLES: usize = 400;
const WEIGHT_BOUND: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveLinearization {
    /// Normalized so that the smallest entry is 1.
    pub gamma: Vec<Q>,
    /// Exact solution before normalization.
    pub raw: Vec<Q>,
    pub samples: usize,
    pub seed: u64,
}

/// Sum-zero weights with entries in `[-5, 5]`, not all zero.
pub fn random_one_ps(vars: usize, rng: &mut impl Rng) -> OnePS {
    loop {
        let mut w: Vec<i64> = (0..vars - 1)
            .map(|_| rng.gen_range(-WEIGHT_BOUND..=WEIGHT_BOUND))
            .collect();
        let last = -w.iter().sum::<i64>();
        if last.abs() > WEIGHT_BOUND {
            continue;
        }
        w.push(last);
        if w.iter().any(|&x| x != 0) {
            return OnePS::new(w).expect("sum zero by construction");
        }
    }
}

/// The vector `γ⃗` with `w(λ_CM) = Σⱼ γⱼ μ(fⱼ, w)` on sampled monomial
/// tuples and subgroups, computed through interpolated section weights.
pub fn effective_linearization(
    n: u32,
    degrees: &[u32],
    multipliers: &[Q],
    seed: u64,
) -> Result<EffectiveLinearization> {
    let k = degrees.len();
    if n == 0 || k == 0 || degrees.contains(&0) {
        return Err(Error::InvalidInput(
            "need n >= 1 and a nonempty list of positive degrees".into(),
        ));
    }
    if multipliers.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{k} degrees but {} multipliers",
            multipliers.len()
        )));
    }
    let vars = n as usize + 1;
    let mons: Vec<Vec<Vec<u32>>> = degrees.iter().map(|&e| monomials(vars, e)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    loop {
        let forms = mons
            .iter()
            .map(|ms| Form::monomial(ms[rng.gen_range(0..ms.len())].clone()))
            .collect::<Result<Vec<_>>>()?;
        let w = random_one_ps(vars, &mut rng);
        let fam = EquivariantFamily::new(n, forms.clone(), multipliers.to_vec(), Beta::Symbolic)?;
        let report = cm_weight(&fam, &w, Route::Def31)?;
        let weight = report.def31.expect("def31 requested");
        if !weight.constant.is_zero() {
            return Err(Error::Inconsistent(format!(
                "CM weight has constant term {} at w = {w}",
                weight.constant
            )));
        }
        rows.push(
            forms
                .iter()
                .map(|f| hm_weight(f, &w).map(q))
                .collect::<Result<Vec<_>>>()?,
        );
        rhs.push(weight.slope);
        if rows.len() < MIN_SAMPLES {
            continue;
        }
        match solve_linear_system(&rows, &QVec(rhs.clone()))? {
            LinearSolution::Unique(raw) => {
                let min = raw.iter().min().expect("k >= 1").clone();
                if !min.is_positive() {
                    return Err(Error::Inconsistent(format!(
                        "fitted linearization {raw} is not positive"
                    )));
                }
                return Ok(EffectiveLinearization {
                    gamma: raw.iter().map(|g| g / &min).collect(),
                    raw: raw.0,
                    samples: rows.len(),
                    seed,
                });
            }
            LinearSolution::Inconsistent => {
                return Err(Error::Inconsistent(
                    "CM weights are not linear in the Hilbert–Mumford weights".into(),
                ))
            }
            LinearSolution::Underdetermined { .. } if rows.len() < MAX_SAMPLES => continue,
            LinearSolution::Underdetermined { .. } => {
                return Err(Error::Inconsistent(format!(
                    "{MAX_SAMPLES} samples do not determine the linearization"
                )))
            }
        }
    }
}

/// Degrees and multipliers of a boundary `ε Σ cⱼ Dⱼ` with `Dⱼ` in the
/// linear system `(1/lⱼ)|-lⱼK|` on `Pⁿ`: `Dⱼ` is `1/lⱼ` times a
/// hypersurface of degree `lⱼ(n + 1)`.
pub fn anticanonical_dictionary(
    n: u32,
    l: &[u32],
    c: &[Q],
    epsilon: &Q,
) -> Result<(Vec<u32>, Vec<Q>)> {
    if l.len() != c.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values of l but {} coefficients",
            l.len(),
            c.len()
        )));
    }
    if l.contains(&0) {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    let degrees = l.iter().map(|&lj| lj * (n + 1)).collect();
    let multipliers = l
        .iter()
        .zip(c)
        .map(|(&lj, cj)| epsilon * cj / q(lj as i64))
        .collect();
    Ok((degrees, multipliers))
}
