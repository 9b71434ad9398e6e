//! K-stability invariants of pairs `(Pⁿ, Σ xⱼ Sⱼ)` where `Sⱼ` is a general
//! hypersurface of degree `dⱼ`.
//!
//! With `r = n + 1 - Σ xⱼdⱼ` the anti-log-canonical class is `O(r)`, so
//! `vol(-(K + Δ) - t Sᵢ) = (r - t dᵢ)ⁿ` for `0 <= t <= r/dᵢ`. The
//! S-invariant of `Sᵢ` is obtained by integrating that polynomial exactly,
//! and its log discrepancy is `1 - xᵢ`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgeom::linalg::rank;
use crate::qgeom::{
    polytope_convert, solve_linear_system, Direction, HalfSpace, LinearSolution, QPolytope,
};
use crate::rational::{binom, fmt_q, parse_q, q, QVec, Q};

/// Recorded alongside every K-semistable polytope.
pub const KSS_ASSUMPTION: &str =
    "the polytope is computed from the boundary-divisor beta constraints alone, assuming every Fano complete intersection of these degrees is K-semistable; that hypothesis is not verified";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConfig {
    n: u32,
    degrees: Vec<u32>,
    coefficients: Vec<Q>,
}

impl PairConfig {
    pub fn new(n: u32, degrees: Vec<u32>, coefficients: Vec<Q>) -> Result<Self> {
        validate_degrees(n, &degrees)?;
        if coefficients.len() != degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees but {} coefficients",
                degrees.len(),
                coefficients.len()
            )));
        }
        if let Some(x) = coefficients
            .iter()
            .find(|x| x.is_negative() || **x >= Q::one())
        {
            return Err(Error::InvalidInput(format!(
                "coefficient {x} is outside [0, 1)"
            )));
        }
        Ok(PairConfig {
            n,
            degrees,
            coefficients,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coefficients
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    /// `n + 1 - Σ xⱼdⱼ`; may be nonpositive.
    pub fn r(&self) -> Q {
        let total: Q = self
            .coefficients
            .iter()
            .zip(&self.degrees)
            .map(|(x, &d)| x * q(d as i64))
            .sum();
        q(self.n as i64 + 1) - total
    }

    fn log_fano_r(&self) -> Result<Q> {
        let r = self.r();
        if r.is_positive() {
            Ok(r)
        } else {
            Err(Error::NotLogFano(fmt_q(&r)))
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.k() {
            return Err(Error::InvalidInput(format!(
                "boundary index {} out of range 1..={}",
                i + 1,
                self.k()
            )));
        }
        Ok(())
    }
}

fn validate_degrees(n: u32, degrees: &[u32]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "ambient dimension n must be positive".into(),
        ));
    }
    if degrees.is_empty() {
        return Err(Error::InvalidInput(
            "at least one boundary degree is required".into(),
        ));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidInput("degrees must be positive".into()));
    }
    Ok(())
}

/// Integral of `Σ cᵢ tⁱ` over `[0, upper]`.
fn integrate_poly(coeffs: &[Q], upper: &Q) -> Q {
    let mut acc = Q::zero();
    let mut power = upper.clone();
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * &power / q(i as i64 + 1);
        power *= upper;
    }
    acc
}

/// S-invariant of the boundary divisor `Sᵢ` (0-based index), by exact
/// integration of the volume function.
pub fn s_invariant(cfg: &PairConfig, i: usize) -> Result<Q> {
    cfg.check_index(i)?;
    let r = cfg.log_fano_r()?;
    let n = cfg.n as i64;
    let d = q(cfg.degrees[i] as i64);
    // (r - d t)^n = Σ_j C(n, j) r^(n-j) (-d)^j t^j
    let coeffs: Vec<Q> = (0..=n)
        .map(|j| {
            let mut c = Q::from_integer(binom(n, j));
            for _ in 0..(n - j) {
                c *= &r;
            }
            for _ in 0..j {
                c *= -d.clone();
            }
            c
        })
        .collect();
    let volume_integral = integrate_poly(&coeffs, &(&r / &d));
    let mut r_pow = Q::one();
    for _ in 0..n {
        r_pow *= &r;
    }
    Ok(volume_integral / r_pow)
}

/// `β(Sᵢ) = A(Sᵢ) - S(Sᵢ)` with `A(Sᵢ) = 1 - xᵢ`.
pub fn beta(cfg: &PairConfig, i: usize) -> Result<Q> {
    let s = s_invariant(cfg, i)?;
    Ok(Q::one() - &cfg.coefficients[i] - s)
}

/// `β(Sᵢ)(x) >= 0` written as `normal · x >= offset`, after multiplying
/// through by `(n + 1) dᵢ`.
pub fn beta_halfspace(n: u32, degrees: &[u32], i: usize) -> (QVec, Q) {
    let n1 = n as i64 + 1;
    let di = degrees[i] as i64;
    let normal = degrees
        .iter()
        .enumerate()
        .map(|(j, &dj)| {
            if j == i {
                q(-(n as i64) * di)
            } else {
                q(dj as i64)
            }
        })
        .collect();
    (QVec(normal), q(n1 * (1 - di)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AVector {
    pub values: QVec,
    /// Whether the vector is a vertex of the K-semistable polytope.
    pub extremal: bool,
    pub warnings: Vec<String>,
}

fn check_fano_hypothesis(n: u32, degrees: &[u32]) -> Result<()> {
    validate_degrees(n, degrees)?;
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total > n as u64 {
        return Err(Error::Hypothesis(format!(
            "sum of degrees {total} must be below n + 1 = {}",
            n as u64 + 1
        )));
    }
    Ok(())
}

/// Closed form `aⱼ = (Σdᵢ + (n-k+1)dⱼ - (n+1)) / ((n-k+1)dⱼ)`.
pub fn a_vector_formula(n: u32, degrees: &[u32]) -> QVec {
    let k = degrees.len() as i64;
    let n = n as i64;
    let total: i64 = degrees.iter().map(|&d| d as i64).sum();
    QVec(
        degrees
            .iter()
            .map(|&d| {
                let d = d as i64;
                Q::new(
                    (total + (n - k + 1) * d - (n + 1)).into(),
                    ((n - k + 1) * d).into(),
                )
            })
            .collect(),
    )
}

/// The unique point where every boundary β vanishes.
///
/// Computed twice, from the closed form and by solving the linear system
/// `β(x)ᵢ = 0`; the two must agree. The integrated β-invariants at the
/// result are also checked to vanish.
pub fn a_vector(n: u32, degrees: &[u32]) -> Result<AVector> {
    check_fano_hypothesis(n, degrees)?;
    let k = degrees.len();
    let mut warnings = Vec::new();
    if degrees.iter().all(|&d| d == 1) {
        warnings.push("all degrees equal 1: the a-vector degenerates to zero".to_string());
    }
    let formula = a_vector_formula(n, degrees);

    let (rows, rhs): (Vec<Vec<Q>>, Vec<Q>) = (0..k)
        .map(|i| {
            let (normal, offset) = beta_halfspace(n, degrees, i);
            (normal.0, offset)
        })
        .unzip();
    let solved = match solve_linear_system(&rows, &QVec(rhs))? {
        LinearSolution::Unique(x) => x,
        other => {
            return Err(Error::Inconsistent(format!(
                "beta = 0 system is not uniquely solvable: {other:?}"
            )))
        }
    };
    if solved != formula {
        return Err(Error::Inconsistent(format!(
            "closed-form a-vector {formula} disagrees with the linear solve {solved}"
        )));
    }

    let cfg = PairConfig::new(n, degrees.to_vec(), formula.0.clone())?;
    for i in 0..k {
        let b = beta(&cfg, i)?;
        if !b.is_zero() {
            return Err(Error::Inconsistent(format!(
                "integrated beta at the a-vector is {b} for index {}",
                i + 1
            )));
        }
    }

    let extremal = is_vertex(&kss_constraints(n, degrees)?, &formula);
    Ok(AVector {
        values: formula,
        extremal,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintFamily {
    /// `0 <= xᵢ`
    LowerBound,
    /// `xᵢ <= 1`
    UpperBound,
    /// `β(Sᵢ) >= 0`
    Beta,
    /// `Σ xⱼdⱼ <= n + 1`
    Anticanonical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledConstraint {
    pub family: ConstraintFamily,
    /// 0-based boundary index, absent for the anticanonical bound.
    pub index: Option<usize>,
    pub halfspace: HalfSpace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KssPolytope {
    pub n: u32,
    pub degrees: Vec<u32>,
    /// The three constraint families, as stated, before redundancy removal.
    pub constraints: Vec<LabeledConstraint>,
    /// Canonical polytope carrying both representations.
    pub polytope: QPolytope,
    pub assumption: &'static str,
}

/// K-semistable domain of `(Pⁿ, Σ Sⱼ)` for general hypersurfaces.
pub fn kss_polytope(n: u32, degrees: &[u32]) -> Result<KssPolytope> {
    validate_degrees(n, degrees)?;
    if n < 2 {
        return Err(Error::Hypothesis(
            "the K-semistable polytope needs n >= 2".into(),
        ));
    }
    if let Some(d) = degrees.iter().find(|&&d| d > n + 1) {
        return Err(Error::Hypothesis(format!(
            "degree {d} exceeds n + 1 = {}",
            n + 1
        )));
    }
    kss_polytope_unchecked(n, degrees)
}

/// Feasible, with active constraints of full rank.
fn is_vertex(constraints: &[LabeledConstraint], x: &QVec) -> bool {
    if !constraints.iter().all(|c| c.halfspace.satisfied_by(x)) {
        return false;
    }
    let active: Vec<Vec<Q>> = constraints
        .iter()
        .filter(|c| c.halfspace.slack(x).is_zero())
        .map(|c| c.halfspace.normal().0.clone())
        .collect();
    rank(&active) == x.len()
}

fn kss_constraints(n: u32, degrees: &[u32]) -> Result<Vec<LabeledConstraint>> {
    let k = degrees.len();
    let unit = |i: usize, s: i64| {
        let mut v = QVec::zeros(k);
        v[i] = q(s);
        v
    };
    let mut constraints = Vec::new();
    for i in 0..k {
        constraints.push(LabeledConstraint {
            family: ConstraintFamily::LowerBound,
            index: Some(i),
            halfspace: HalfSpace::ge(unit(i, 1), q(0))?,
        });
        constraints.push(LabeledConstraint {
            family: ConstraintFamily::UpperBound,
            index: Some(i),
            halfspace: HalfSpace::ge(unit(i, -1), q(-1))?,
        });
    }
    for i in 0..k {
        let (normal, offset) = beta_halfspace(n, degrees, i);
        constraints.push(LabeledConstraint {
            family: ConstraintFamily::Beta,
            index: Some(i),
            halfspace: HalfSpace::ge(normal, offset)?,
        });
    }
    let neg_degrees = QVec(degrees.iter().map(|&d| q(-(d as i64))).collect());
    constraints.push(LabeledConstraint {
        family: ConstraintFamily::Anticanonical,
        index: None,
        halfspace: HalfSpace::ge(neg_degrees, q(-(n as i64) - 1))?,
    });
    Ok(constraints)
}

fn kss_polytope_unchecked(n: u32, degrees: &[u32]) -> Result<KssPolytope> {
    let k = degrees.len();
    let constraints = kss_constraints(n, degrees)?;
    let h = constraints.iter().map(|c| c.halfspace.clone()).collect();
    let polytope = polytope_convert(&QPolytope::from_hrep(k, h)?, Direction::HToV)?;
    Ok(KssPolytope {
        n,
        degrees: degrees.to_vec(),
        constraints,
        polytope,
        assumption: KSS_ASSUMPTION,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeStep {
    /// 1-based step.
    pub step: usize,
    pub radius: Q,
    /// `1 - rᵢ/(n - i + 1)`.
    pub a_from_radius: Q,
    pub a_expected: Q,
    pub matches: bool,
    pub positive: bool,
    /// `rᵢ <= n - i + 1`, the admissible range for the cone construction.
    pub within_bound: bool,
}

impl ConeStep {
    pub fn passed(&self) -> bool {
        self.matches && self.positive && self.within_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeChain {
    pub steps: Vec<ConeStep>,
}

impl ConeChain {
    pub fn radii(&self) -> Vec<Q> {
        self.steps.iter().map(|s| s.radius.clone()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(ConeStep::passed)
    }
}

/// Radii of the successive projective-cone degenerations cutting
/// `S_{d₁}, S_{d₂}, ...` in turn, with each step checked against the
/// a-vector.
pub fn cone_chain(n: u32, degrees: &[u32]) -> Result<ConeChain> {
    check_fano_hypothesis(n, degrees)?;
    let a = a_vector_formula(n, degrees);
    let n_i = n as i64;
    let mut steps = Vec::with_capacity(degrees.len());
    for i in 0..degrees.len() {
        let cut: i64 = degrees[..=i].iter().map(|&d| d as i64).sum();
        let rest: Q = degrees[i + 1..]
            .iter()
            .zip(&a.0[i + 1..])
            .map(|(&d, aj)| aj * q(d as i64))
            .sum();
        let radius = (q(n_i + 1 - cut) - rest) / q(degrees[i] as i64);
        let dim_plus_one = q(n_i - i as i64);
        let a_from_radius = Q::one() - &radius / &dim_plus_one;
        steps.push(ConeStep {
            step: i + 1,
            matches: a_from_radius == a[i],
            positive: radius.is_positive(),
            within_bound: radius <= dim_plus_one,
            radius,
            a_from_radius,
            a_expected: a[i].clone(),
        });
    }
    let chain = ConeChain { steps };
    if let Some(bad) = chain.steps.iter().find(|s| !s.passed()) {
        return Err(Error::Inconsistent(format!(
            "cone chain step {} failed: {bad:?}",
            bad.step
        )));
    }
    Ok(chain)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PairConfigJson {
    pub n: u32,
    pub degrees: Vec<u32>,
    #[serde(default)]
    pub coefficients: Vec<String>,
}

impl PairConfigJson {
    pub fn to_config(&self) -> Result<PairConfig> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()?;
        PairConfig::new(self.n, self.degrees.clone(), coeffs)
    }
}

impl From<&PairConfig> for PairConfigJson {
    fn from(c: &PairConfig) -> Self {
        PairConfigJson {
            n: c.n,
            degrees: c.degrees.clone(),
            coefficients: c.coefficients.iter().map(fmt_q).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn cfg(n: u32, d: &[u32], x: &[Q]) -> PairConfig {
        PairConfig::new(n, d.to_vec(), x.to_vec()).unwrap()
    }

    #[test]
    fn s_invariant_conic_in_plane() {
        // ∫₀^{3/2} (3 - 2t)² dt / 9 = (27/6) / 9 = 1/2
        assert_eq!(s_invariant(&cfg(2, &[2], &[q(0)]), 0).unwrap(), qr(1, 2));
    }

    #[test]
    fn s_invariant_two_quadrics() {
        let c = cfg(4, &[2, 2], &[qr(5, 6), qr(5, 6)]);
        assert_eq!(c.r(), qr(5, 3));
        assert_eq!(s_invariant(&c, 0).unwrap(), qr(1, 6));
        assert_eq!(s_invariant(&c, 1).unwrap(), qr(1, 6));
    }

    #[test]
    fn s_invariant_hyperplanes() {
        for n in 1..7u32 {
            for k in 1..=n as usize {
                let c = cfg(n, &vec![1; k], &vec![q(0); k]);
                for i in 0..k {
                    assert_eq!(s_invariant(&c, i).unwrap(), q(1));
                    assert_eq!(beta(&c, i).unwrap(), q(0));
                }
            }
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&cfg(2, &[2], &[qr(3, 4)]), 0).unwrap(), q(0));
        let c = cfg(4, &[2, 2], &[qr(5, 6), qr(5, 6)]);
        assert_eq!(beta(&c, 0).unwrap(), q(0));
        assert_eq!(beta(&c, 1).unwrap(), q(0));
        // x = 0 specialisation: β = 1 - 1/dᵢ
        let c = cfg(5, &[2, 3], &[q(0), q(0)]);
        assert_eq!(beta(&c, 0).unwrap(), qr(1, 2));
        assert_eq!(beta(&c, 1).unwrap(), qr(2, 3));
    }

    #[test]
    fn not_log_fano() {
        // r = 3 - 2·(3/4)·2 = 0
        let c = cfg(2, &[2, 2], &[qr(3, 4), qr(3, 4)]);
        assert!(matches!(s_invariant(&c, 0), Err(Error::NotLogFano(_))));
        assert!(matches!(beta(&c, 1), Err(Error::NotLogFano(_))));
    }

    #[test]
    fn config_validation() {
        assert!(PairConfig::new(2, vec![2], vec![q(1)]).is_err());
        assert!(PairConfig::new(2, vec![2], vec![q(-1)]).is_err());
        assert!(PairConfig::new(2, vec![2, 1], vec![q(0)]).is_err());
        assert!(PairConfig::new(0, vec![1], vec![q(0)]).is_err());
        assert!(PairConfig::new(2, vec![], vec![]).is_err());
        assert!(s_invariant(&cfg(2, &[2], &[q(0)]), 1).is_err());
    }

    #[test]
    fn a_vector_examples() {
        let a = a_vector(4, &[2, 2]).unwrap();
        assert_eq!(a.values, QVec(vec![qr(5, 6), qr(5, 6)]));
        assert!(a.extremal);
        assert!(a.warnings.is_empty());

        for n in 2..9u32 {
            for d in 2..=n {
                let a = a_vector(n, &[d]).unwrap();
                let expected = q(1) - qr(n as i64 + 1 - d as i64, (n * d) as i64);
                assert_eq!(a.values, QVec(vec![expected]));
            }
        }

        let ones = a_vector(5, &[1, 1, 1]).unwrap();
        assert!(ones.values.is_zero());
        assert_eq!(ones.warnings.len(), 1);
    }

    #[test]
    fn a_vector_hypothesis() {
        assert!(matches!(a_vector(3, &[2, 2]), Err(Error::Hypothesis(_))));
        assert!(matches!(cone_chain(3, &[4]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn kss_conic() {
        let p = kss_polytope(2, &[2]).unwrap();
        assert_eq!(
            p.polytope.vertices().unwrap(),
            &[QVec(vec![q(0)]), QVec(vec![qr(3, 4)])]
        );
        assert_eq!(p.constraints.len(), 4);
    }

    #[test]
    fn kss_two_quadrics_has_a_vertex() {
        let p = kss_polytope(4, &[2, 2]).unwrap();
        assert!(p
            .polytope
            .vertices()
            .unwrap()
            .contains(&QVec(vec![qr(5, 6), qr(5, 6)])));
        assert!(p.polytope.representations_agree());
    }

    #[test]
    fn kss_hyperplane_collapses_to_origin() {
        let p = kss_polytope(3, &[1]).unwrap();
        assert_eq!(p.polytope.vertices().unwrap(), &[QVec(vec![q(0)])]);
        assert_eq!(p.polytope.dimension(), Some(0));
    }

    #[test]
    fn kss_preconditions() {
        assert!(kss_polytope(1, &[1]).is_err());
        assert!(kss_polytope(2, &[4]).is_err());
        assert!(kss_polytope(2, &[3]).is_ok());
    }

    #[test]
    fn cone_chain_two_quadrics() {
        let c = cone_chain(4, &[2, 2]).unwrap();
        assert_eq!(c.radii(), vec![qr(2, 3), qr(1, 2)]);
        assert_eq!(c.steps[0].a_from_radius, qr(5, 6));
        assert_eq!(c.steps[1].a_from_radius, qr(5, 6));
        assert!(c.all_passed());
    }

    #[test]
    fn cone_chain_single_and_hyperplanes() {
        // one step: r₁ = (n + 1 - d)/d and a = 1 - r₁/n
        for n in 2..9u32 {
            for d in 1..=n {
                let c = cone_chain(n, &[d]).unwrap();
                assert_eq!(c.steps[0].radius, qr((n + 1 - d) as i64, d as i64));
            }
        }
        let c = cone_chain(5, &[1, 1, 1]).unwrap();
        assert_eq!(c.radii(), vec![q(5), q(4), q(3)]);
        assert!(c.steps.iter().all(|s| s.a_expected.is_zero()));
    }

    #[test]
    fn config_json() {
        let j: PairConfigJson =
            serde_json::from_str(r#"{"n":4,"degrees":[2,2],"coefficients":["5/6","5/6"]}"#)
                .unwrap();
        let c = j.to_config().unwrap();
        assert_eq!(c.r(), qr(5, 3));
        assert_eq!(PairConfigJson::from(&c), j);
    }
}
