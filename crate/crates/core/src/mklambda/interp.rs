//! Exact polynomial interpolation with holdout checking.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qgeom::{solve_linear_system, LinearSolution};
use crate::rational::{binom_poly, q, QVec, Q};

fn check_samples(samples: &[(i64, Q)], degree: usize) -> Result<()> {
    if samples.len() < degree + 2 {
        return Err(Error::Inconsistent(format!(
            "{} samples cannot fit and check a degree {degree} polynomial; at least {} needed",
            samples.len(),
            degree + 2
        )));
    }
    let mut ts: Vec<i64> = samples.iter().map(|s| s.0).collect();
    ts.sort_unstable();
    if ts.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("sample points must be distinct".into()));
    }
    Ok(())
}

fn fit(samples: &[(i64, Q)], degree: usize, basis: impl Fn(&Q, usize) -> Q) -> Result<Vec<Q>> {
    check_samples(samples, degree)?;
    let (fit_set, holdout) = samples.split_at(degree + 1);
    let rows: Vec<Vec<Q>> = fit_set
        .iter()
        .map(|(t, _)| (0..=degree).map(|i| basis(&q(*t), i)).collect())
        .collect();
    let rhs = QVec(fit_set.iter().map(|(_, v)| v.clone()).collect());
    let coeffs = match solve_linear_system(&rows, &rhs)? {
        LinearSolution::Unique(c) => c.0,
        other => {
            return Err(Error::Inconsistent(format!(
                "interpolation system is degenerate: {other:?}"
            )))
        }
    };
    for (t, v) in holdout {
        let t = q(*t);
        let value: Q = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * basis(&t, i))
            .sum();
        if &value != v {
            return Err(Error::Inconsistent(format!(
                "samples are not a degree {degree} polynomial: holdout at {t} is {v}, fit gives {value}"
            )));
        }
    }
    Ok(coeffs)
}

/// Coefficients `cᵢ` of `Σ cᵢ C(t, i)`, `i = 0..=degree`.
pub fn interpolate_binomial(samples: &[(i64, Q)], degree: usize) -> Result<Vec<Q>> {
    fit(samples, degree, binom_poly)
}

/// Coefficients `cᵢ` of `Σ cᵢ tⁱ`, `i = 0..=degree`.
pub fn interpolate_power(samples: &[(i64, Q)], degree: usize) -> Result<Vec<Q>> {
    fit(samples, degree, |t, i| {
        let mut p = Q::from_integer(1.into());
        for _ in 0..i {
            p *= t;
        }
        p
    })
}

/// Evaluates `Σ cᵢ C(t, i)`.
pub fn eval_binomial(coeffs: &[Q], t: i64) -> Q {
    let t = q(t);
    coeffs
        .iter()
        .enumerate()
        .fold(Q::zero(), |acc, (i, c)| acc + c * binom_poly(&t, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn planted_binomial() {
        let planted = vec![q(3), qr(-1, 2), q(0), q(7)];
        let samples: Vec<(i64, Q)> = (2..8).map(|t| (t, eval_binomial(&planted, t))).collect();
        assert_eq!(interpolate_binomial(&samples, 3).unwrap(), planted);
    }

    #[test]
    fn power_basis() {
        // t² - 3t + 1/2
        let samples: Vec<(i64, Q)> = (0..5).map(|t| (t, q(t * t - 3 * t) + qr(1, 2))).collect();
        assert_eq!(
            interpolate_power(&samples, 2).unwrap(),
            vec![qr(1, 2), q(-3), q(1)]
        );
    }

    #[test]
    fn holdout_catches_wrong_degree() {
        let samples: Vec<(i64, Q)> = (0..5).map(|t| (t, q(t * t * t))).collect();
        assert!(matches!(
            interpolate_power(&samples, 2),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn too_few_or_repeated() {
        let samples = vec![(1, q(1)), (2, q(2))];
        assert!(interpolate_power(&samples, 1).is_err());
        let samples = vec![(1, q(1)), (1, q(1)), (2, q(2))];
        assert!(interpolate_power(&samples, 1).is_err());
    }
}
