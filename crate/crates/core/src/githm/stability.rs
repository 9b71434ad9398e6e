//! Stability of tuples of hypersurfaces under the diagonal torus, and under
//! finitely many changes of coordinates.
//!
//! A tuple `(f₁, ..., f_k)` with linearization `γ⃗` is torus-semistable iff
//! the barycenter `(Σγⱼeⱼ/(n+1))·(1, ..., 1)` lies in the Minkowski sum
//! `Σγⱼ·conv(supp fⱼ)`, and torus-stable iff it lies in its interior. The
//! verdict is cross-checked against the minimum of `Σγⱼμ(fⱼ, w)` over the
//! candidate one-parameter subgroups.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::candidates::{candidate_one_ps, orbit, DEFAULT_CAP};
use super::form::Form;
use super::oneps::{hm_weight, OnePS};
use crate::error::{Error, Result};
use crate::qgeom::hull::affine_dimension;
use crate::qgeom::{hull_membership, in_relative_interior, HullMembership};
use crate::rational::{fmt_q, parse_q, primitive_integer, q, QVec, Q};

/// Minkowski sums larger than this are refused.
pub const MAX_MINKOWSKI_POINTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Unstable,
    StrictlySemistableOnWall,
    SemistableInTestedFrames,
    StableInTestedFrames,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Unstable => "unstable",
            Status::StrictlySemistableOnWall => "strictly-semistable-on-wall",
            Status::SemistableInTestedFrames => "semistable-in-tested-frames",
            Status::StableInTestedFrames => "stable-in-tested-frames",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleConfig {
    forms: Vec<Form>,
    gamma: Vec<Q>,
}

impl TupleConfig {
    pub fn new(forms: Vec<Form>, gamma: Vec<Q>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidInput(
                "a tuple needs at least one form".into(),
            ));
        };
        let vars = first.num_vars();
        if forms.iter().any(|f| f.num_vars() != vars) {
            return Err(Error::DimensionMismatch(
                "forms use different numbers of variables".into(),
            ));
        }
        if gamma.len() != forms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} forms but {} linearization weights",
                forms.len(),
                gamma.len()
            )));
        }
        if let Some(g) = gamma.iter().find(|g| !g.is_positive()) {
            return Err(Error::InvalidInput(format!(
                "linearization weight {g} is not positive"
            )));
        }
        Ok(TupleConfig { forms, gamma })
    }

    pub fn n(&self) -> u32 {
        self.forms[0].num_vars() as u32 - 1
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn gamma(&self) -> &[Q] {
        &self.gamma
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    pub fn with_gamma(&self, gamma: Vec<Q>) -> Result<Self> {
        TupleConfig::new(self.forms.clone(), gamma)
    }

    /// `Σⱼ γⱼ μ(fⱼ, w)`.
    pub fn combined_weight(&self, w: &OnePS) -> Result<Q> {
        combined_weight(&self.forms, &self.gamma, w)
    }
}

fn combined_weight(forms: &[Form], gamma: &[Q], w: &OnePS) -> Result<Q> {
    let mut total = Q::zero();
    for (f, g) in forms.iter().zip(gamma) {
        total += g * q(hm_weight(f, w)?);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub label: String,
    /// `None` for the identity.
    pub matrix: Option<Vec<Vec<Q>>>,
}

impl Frame {
    pub fn identity() -> Self {
        Frame {
            label: "identity".into(),
            matrix: None,
        }
    }

    fn apply(&self, forms: &[Form]) -> Result<Vec<Form>> {
        match &self.matrix {
            None => Ok(forms.to_vec()),
            Some(m) => forms.iter().map(|f| f.substitute(m)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameStrategy {
    Identity,
    Permutations,
    /// Substitution matrices `M`, applied as `f(Mx)`.
    User(Vec<Vec<Vec<Q>>>),
    Random {
        seed: u64,
        count: usize,
    },
}

/// Torus verdict in one frame, with both oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameResult {
    pub label: String,
    pub status: Status,
    pub certificate: Option<OnePS>,
    /// Minimum of the combined weight over the candidate subgroups.
    pub candidate_minimum: Q,
    pub minimizer: OnePS,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: Status,
    pub certificate: Option<OnePS>,
    /// `Σγⱼμ(fⱼ, w)` at the certificate, in the frame where it was found.
    pub certificate_weight: Option<Q>,
    pub certificate_frame: Option<String>,
    pub frames_tested: Vec<FrameResult>,
}

/// All candidate subgroups, expanded over sign and permutation orbits.
pub fn expanded_candidates(n: u32, degrees: &[u32], cap: usize) -> Result<Vec<OnePS>> {
    let mut out = Vec::new();
    for w in candidate_one_ps(n, degrees, cap)? {
        out.extend(orbit(&w));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn exps_point(a: &[u32]) -> QVec {
    QVec(a.iter().map(|&x| q(x as i64)).collect())
}

fn extreme_points(f: &Form) -> Result<Vec<QVec>> {
    let pts: Vec<QVec> = f.support().map(|a| exps_point(a)).collect();
    if pts.len() == 1 {
        return Ok(pts);
    }
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let others: Vec<QVec> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        if !hull_membership(p, &others)?.is_inside() {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn minkowski_points(forms: &[Form], gamma: &[Q]) -> Result<Vec<QVec>> {
    let vars = forms[0].num_vars();
    let mut acc = vec![QVec::zeros(vars)];
    for (f, g) in forms.iter().zip(gamma) {
        let ext = extreme_points(f)?;
        let count = acc.len() as u128 * ext.len() as u128;
        if count > MAX_MINKOWSKI_POINTS as u128 {
            return Err(Error::CapExceeded {
                what: "Minkowski sum points",
                count,
                cap: MAX_MINKOWSKI_POINTS as u128,
            });
        }
        let mut next = Vec::with_capacity(count as usize);
        for a in &acc {
            for e in &ext {
                next.push(a.add(&e.scale(g)));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    Ok(acc)
}

fn separating_one_ps(normal: &QVec) -> Result<OnePS> {
    let mean = normal.iter().sum::<Q>() / q(normal.len() as i64);
    let projected: Vec<Q> = normal.iter().map(|x| x - &mean).collect();
    let ints = primitive_integer(&projected);
    let weights = ints
        .iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Inconsistent("certificate weight overflows i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    OnePS::new(weights)
}

fn torus_frame(
    forms: &[Form],
    gamma: &[Q],
    label: String,
    candidates: &[OnePS],
) -> Result<FrameResult> {
    let vars = forms[0].num_vars();
    let level: Q = forms
        .iter()
        .zip(gamma)
        .map(|(f, g)| g * q(f.degree() as i64))
        .sum::<Q>()
        / q(vars as i64);
    let barycenter = QVec(vec![level; vars]);
    let points = minkowski_points(forms, gamma)?;

    let (status, certificate) = match hull_membership(&barycenter, &points)? {
        HullMembership::Outside { normal, .. } => {
            let w = separating_one_ps(&normal)?;
            if !combined_weight(forms, gamma, &w)?.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "separating subgroup {w} has nonnegative weight"
                )));
            }
            (Status::Unstable, Some(w))
        }
        HullMembership::Inside { .. } => {
            let interior = affine_dimension(&points) == vars - 1
                && in_relative_interior(&barycenter, &points)?;
            if interior {
                (Status::StableInTestedFrames, None)
            } else {
                (Status::StrictlySemistableOnWall, None)
            }
        }
    };

    let mut best: Option<(Q, OnePS)> = None;
    for w in candidates {
        let v = combined_weight(forms, gamma, w)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, w.clone()));
        }
    }
    let (candidate_minimum, minimizer) =
        best.ok_or_else(|| Error::Inconsistent("no candidate subgroups".into()))?;
    let from_candidates = if candidate_minimum.is_negative() {
        Status::Unstable
    } else if candidate_minimum.is_zero() {
        Status::StrictlySemistableOnWall
    } else {
        Status::StableInTestedFrames
    };
    if from_candidates != status {
        return Err(Error::Inconsistent(format!(
            "frame {label}: barycenter test says {status}, candidate minimum {} at {minimizer} says {from_candidates}",
            fmt_q(&candidate_minimum)
        )));
    }
    Ok(FrameResult {
        label,
        status,
        certificate,
        candidate_minimum,
        minimizer,
    })
}

pub fn torus_semistable(t: &TupleConfig) -> Result<StabilityVerdict> {
    torus_semistable_capped(t, DEFAULT_CAP)
}

/// Verdict under the diagonal torus alone: unstable, strictly semistable
/// on a wall, or stable.
pub fn torus_semistable_capped(t: &TupleConfig, cap: usize) -> Result<StabilityVerdict> {
    let candidates = expanded_candidates(t.n(), &t.degrees(), cap)?;
    let r = torus_frame(&t.forms, &t.gamma, "identity".into(), &candidates)?;
    let certificate_weight = match &r.certificate {
        Some(w) => Some(t.combined_weight(w)?),
        None => None,
    };
    Ok(StabilityVerdict {
        status: r.status,
        certificate: r.certificate.clone(),
        certificate_weight,
        certificate_frame: r.certificate.as_ref().map(|_| r.label.clone()),
        frames_tested: vec![r],
    })
}

fn permutation_frames(vars: usize, cap: usize) -> Result<Vec<Frame>> {
    let count: u128 = (1..=vars as u128).product();
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            what: "permutation frames",
            count,
            cap: cap as u128,
        });
    }
    let mut perm: Vec<i64> = (0..vars as i64).collect();
    let mut frames = Vec::new();
    loop {
        let label = format!(
            "permutation[{}]",
            perm.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        let matrix = if perm.iter().enumerate().all(|(i, &p)| i as i64 == p) {
            None
        } else {
            Some(
                (0..vars)
                    .map(|i| {
                        (0..vars)
                            .map(|j| if perm[i] == j as i64 { q(1) } else { q(0) })
                            .collect()
                    })
                    .collect(),
            )
        };
        frames.push(Frame { label, matrix });
        if !next_perm(&mut perm) {
            break;
        }
    }
    Ok(frames)
}

fn next_perm(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Unit lower triangular times unit upper triangular, small integer
/// entries; determinant one.
fn random_unimodular(vars: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    let mut l = vec![vec![0i64; vars]; vars];
    let mut u = vec![vec![0i64; vars]; vars];
    for i in 0..vars {
        l[i][i] = 1;
        u[i][i] = 1;
        for x in &mut l[i][..i] {
            *x = rng.gen_range(-2..=2);
        }
        for x in &mut u[i][i + 1..] {
            *x = rng.gen_range(-2..=2);
        }
    }
    (0..vars)
        .map(|i| {
            (0..vars)
                .map(|j| q((0..vars).map(|s| l[i][s] * u[s][j]).sum()))
                .collect()
        })
        .collect()
}

pub fn build_frames(vars: usize, strategy: &FrameStrategy, cap: usize) -> Result<Vec<Frame>> {
    match strategy {
        FrameStrategy::Identity => Ok(vec![Frame::identity()]),
        FrameStrategy::Permutations => permutation_frames(vars, cap),
        FrameStrategy::User(ms) => {
            if ms.is_empty() {
                return Err(Error::InvalidInput("no user frames supplied".into()));
            }
            Ok(ms
                .iter()
                .enumerate()
                .map(|(i, m)| Frame {
                    label: format!("user[{i}]"),
                    matrix: Some(m.clone()),
                })
                .collect())
        }
        FrameStrategy::Random { seed, count } => {
            if *count > cap {
                return Err(Error::CapExceeded {
                    what: "random frames",
                    count: *count as u128,
                    cap: cap as u128,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..*count)
                .map(|i| Frame {
                    label: format!("random[{i}](seed={seed})"),
                    matrix: Some(random_unimodular(vars, &mut rng)),
                })
                .collect())
        }
    }
}

pub fn git_check(t: &TupleConfig, strategy: &FrameStrategy) -> Result<StabilityVerdict> {
    git_check_capped(t, strategy, DEFAULT_CAP)
}

/// Runs the torus test in each frame. Stops at the first destabilizing
/// subgroup; otherwise reports semistability relative to the frames tried.
pub fn git_check_capped(
    t: &TupleConfig,
    strategy: &FrameStrategy,
    cap: usize,
) -> Result<StabilityVerdict> {
    let vars = t.n() as usize + 1;
    let frames = build_frames(vars, strategy, cap)?;
    git_check_frames(t, &frames, cap)
}

pub fn git_check_frames(t: &TupleConfig, frames: &[Frame], cap: usize) -> Result<StabilityVerdict> {
    if frames.is_empty() {
        return Err(Error::InvalidInput("no frames to test".into()));
    }
    let candidates = expanded_candidates(t.n(), &t.degrees(), cap)?;
    let mut tested = Vec::with_capacity(frames.len());
    for frame in frames {
        let forms = frame.apply(&t.forms)?;
        let r = torus_frame(&forms, &t.gamma, frame.label.clone(), &candidates)?;
        if let Some(w) = r.certificate.clone() {
            let weight = combined_weight(&forms, &t.gamma, &w)?;
            let label = r.label.clone();
            tested.push(r);
            return Ok(StabilityVerdict {
                status: Status::Unstable,
                certificate: Some(w),
                certificate_weight: Some(weight),
                certificate_frame: Some(label),
                frames_tested: tested,
            });
        }
        tested.push(r);
    }
    Ok(StabilityVerdict {
        status: Status::SemistableInTestedFrames,
        certificate: None,
        certificate_weight: None,
        certificate_frame: None,
        frames_tested: tested,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameResultJson {
    pub label: String,
    pub status: Status,
    pub candidate_minimum: String,
    pub minimizer: OnePS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdictJson {
    pub status: Status,
    pub certificate: Option<OnePS>,
    pub certificate_weight: Option<String>,
    pub certificate_frame: Option<String>,
    pub frames_tested: Vec<FrameResultJson>,
}

impl StabilityVerdict {
    pub fn to_json(&self) -> StabilityVerdictJson {
        StabilityVerdictJson {
            status: self.status,
            certificate: self.certificate.clone(),
            certificate_weight: self.certificate_weight.as_ref().map(fmt_q),
            certificate_frame: self.certificate_frame.clone(),
            frames_tested: self
                .frames_tested
                .iter()
                .map(|r| FrameResultJson {
                    label: r.label.clone(),
                    status: r.status,
                    candidate_minimum: fmt_q(&r.candidate_minimum),
                    minimizer: r.minimizer.clone(),
                })
                .collect(),
        }
    }
}

/// Parses a JSON array of square matrices of rational strings.
pub fn parse_frames_json(text: &str) -> Result<Vec<Vec<Vec<Q>>>> {
    let raw: Vec<Vec<Vec<String>>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.iter()
        .map(|m| {
            let size = m.len();
            if size == 0 || m.iter().any(|row| row.len() != size) {
                return Err(Error::DimensionMismatch(
                    "frame matrices must be square and nonempty".into(),
                ));
            }
            m.iter()
                .map(|row| row.iter().map(|s| parse_q(s)).collect())
                .collect()
        })
        .collect()
}
