//! Convex hull membership with self-verifying certificates.

use num_traits::{One, Signed, Zero};

use super::linalg::rank;
use super::lp::{feasible_point, minimize, LpOutcome};
use crate::error::{Error, Result};
use crate::rational::{q, QVec, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullMembership {
    /// Nonnegative weights summing to one that recombine the generators
    /// into the query point.
    Inside { coefficients: Vec<Q> },
    /// `⟨g, normal⟩ >= threshold > ⟨q, normal⟩` for every generator `g`.
    Outside { normal: QVec, threshold: Q },
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside { .. })
    }
}

fn check_dims(point: &QVec, generators: &[QVec]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::InvalidInput(
            "hull membership needs at least one generator".into(),
        ));
    }
    if let Some(g) = generators.iter().find(|g| g.len() != point.len()) {
        return Err(Error::DimensionMismatch(format!(
            "generator has length {}, query point has length {}",
            g.len(),
            point.len()
        )));
    }
    Ok(())
}

/// Columns are the generators, plus a final row of ones.
fn hull_system(point: &QVec, generators: &[QVec]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let d = point.len();
    let mut a: Vec<Vec<Q>> = (0..d)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    a.push(vec![Q::one(); generators.len()]);
    let mut b = point.0.clone();
    b.push(Q::one());
    (a, b)
}

pub fn hull_membership(point: &QVec, generators: &[QVec]) -> Result<HullMembership> {
    check_dims(point, generators)?;
    let d = point.len();
    let (a, b) = hull_system(point, generators);
    let out = match feasible_point(&a, &b) {
        LpOutcome::Optimal { x, .. } => HullMembership::Inside { coefficients: x },
        LpOutcome::Infeasible { farkas } => HullMembership::Outside {
            normal: QVec(farkas[..d].to_vec()),
            threshold: -farkas[d].clone(),
        },
        LpOutcome::Unbounded => unreachable!("feasibility problems have a zero objective"),
    };
    verify(point, generators, &out)?;
    Ok(out)
}

/// Exact check of a membership certificate.
pub fn verify(point: &QVec, generators: &[QVec], cert: &HullMembership) -> Result<()> {
    match cert {
        HullMembership::Inside { coefficients } => {
            if coefficients.len() != generators.len()
                || coefficients.iter().any(Signed::is_negative)
            {
                return Err(Error::Inconsistent("convex coefficients malformed".into()));
            }
            let total: Q = coefficients.iter().sum();
            let mut comb = QVec::zeros(point.len());
            for (c, g) in coefficients.iter().zip(generators) {
                if !c.is_zero() {
                    comb = comb.add(&g.scale(c));
                }
            }
            if !total.is_one() || &comb != point {
                return Err(Error::Inconsistent(
                    "convex coefficients do not reproduce the point".into(),
                ));
            }
        }
        HullMembership::Outside { normal, threshold } => {
            let separated = &point.dot(normal) < threshold
                && generators.iter().all(|g| &g.dot(normal) >= threshold);
            if !separated {
                return Err(Error::Inconsistent(
                    "separating normal does not separate".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Whether `point` is a strictly positive convex combination of all the
/// generators, i.e. lies in the relative interior of their hull.
pub fn in_relative_interior(point: &QVec, generators: &[QVec]) -> Result<bool> {
    check_dims(point, generators)?;
    let m = generators.len();
    let (base, b) = hull_system(point, generators);
    // Weights are s_i + t with s_i, t >= 0; maximise t.
    let a: Vec<Vec<Q>> = base
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(row.iter().sum());
            r
        })
        .collect();
    let mut c = vec![Q::zero(); m + 1];
    c[m] = q(-1);
    Ok(match minimize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => value.is_negative(),
        LpOutcome::Infeasible { .. } => false,
        LpOutcome::Unbounded => unreachable!("t is bounded by 1/m"),
    })
}

/// Dimension of the affine span of a nonempty point set.
pub fn affine_dimension(points: &[QVec]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<Q>> = points[1..].iter().map(|p| p.sub(first).0).collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}
