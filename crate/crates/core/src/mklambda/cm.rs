//! CM line bundle weights of product test configurations of
//! `(Pⁿ, Σ yⱼ{fⱼ = 0})` with polarization `-K = O(n + 1)`, induced by a
//! diagonal one-parameter subgroup.
//!
//! Three routes are computed independently:
//!
//! * `def31`: interpolate the Mumford–Knudsen expansions of the section
//!   determinants from enumerated weights, then assemble
//!   `λ_{n+1}^{(2a₁ - βã₀)/a₀ + n(n+1)} ⊗ λ_n^{-2(n+1)} ⊗ λ̃_n^{β(n+1)}`.
//! * `lem32`: `-(1 + βμn)·L^{n+1} + β(n+1)·LⁿD` with `D ~ -μK` and the
//!   equivariant intersection numbers in closed form.
//! * `lem41`: `Σⱼ β(n+1)·v·yⱼ·μ(fⱼ, w)` with `v = (-K)ⁿ`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::detweight::equivariant_det_weight;
use super::interp::{interpolate_binomial, interpolate_power};
use crate::conedeg::ci_hilbert;
use crate::error::{Error, Result};
use crate::githm::{hm_weight, Form, OnePS};
use crate::rational::{fmt_q, q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkCoefficients {
    /// Weight of `λ_{n+1}`.
    pub lambda_top: Q,
    /// Weight of `λ_n`.
    pub lambda_next: Q,
    /// Weight of `λ̃_n`, when divisor samples were given.
    pub lambda_tilde: Option<Q>,
}

/// Top coefficients of the binomial-basis expansions `Σᵢ C(t, i)·w(λᵢ)`
/// (degree `n + 1`) and `Σᵢ C(t, i)·w(λ̃ᵢ)` (degree `n`). Every sample
/// beyond those needed for the fit is used as a holdout check.
pub fn mk_top_coefficients(
    n: u32,
    samples: &[(i64, Q)],
    divisor_samples: &[(i64, Q)],
) -> Result<MkCoefficients> {
    let n_i = n as i64;
    let min_t = |s: &[(i64, Q)]| s.iter().map(|x| x.0).min();
    if min_t(samples).is_some_and(|t| t < n_i + 1)
        || min_t(divisor_samples).is_some_and(|t| t < n_i + 1)
    {
        return Err(Error::InvalidInput(format!(
            "sample points must be at least n + 1 = {}",
            n + 1
        )));
    }
    let c = interpolate_binomial(samples, n as usize + 1)?;
    let lambda_tilde = if divisor_samples.is_empty() {
        None
    } else {
        Some(interpolate_binomial(divisor_samples, n as usize)?[n as usize].clone())
    };
    Ok(MkCoefficients {
        lambda_top: c[n as usize + 1].clone(),
        lambda_next: c[n as usize].clone(),
        lambda_tilde,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Def31,
    Lem32,
    Lem41,
    All,
}

/// The coupling `β` of the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Beta {
    Symbolic,
    Fixed(Q),
}

/// `constant + slope·β`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearInBeta {
    pub constant: Q,
    pub slope: Q,
}

impl LinearInBeta {
    pub fn at(&self, beta: &Q) -> Q {
        &self.constant + &self.slope * beta
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    fn from_values(at_zero: Q, at_one: Q) -> Self {
        LinearInBeta {
            slope: &at_one - &at_zero,
            constant: at_zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantFamily {
    n: u32,
    forms: Vec<Form>,
    multipliers: Vec<Q>,
    beta: Beta,
}

impl EquivariantFamily {
    pub fn new(n: u32, forms: Vec<Form>, multipliers: Vec<Q>, beta: Beta) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidInput(
                "a family needs at least one boundary form".into(),
            ));
        }
        if let Some(f) = forms.iter().find(|f| f.num_vars() != n as usize + 1) {
            return Err(Error::DimensionMismatch(format!(
                "form in {} variables on P^{n}",
                f.num_vars()
            )));
        }
        if multipliers.len() != forms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} forms but {} multipliers",
                forms.len(),
                multipliers.len()
            )));
        }
        if let Some(y) = multipliers.iter().find(|y| !y.is_positive()) {
            return Err(Error::InvalidInput(format!(
                "multiplier {y} is not positive"
            )));
        }
        if let Beta::Fixed(b) = &beta {
            if !b.is_positive() || b > &Q::one() {
                return Err(Error::InvalidInput(format!("beta {b} outside (0, 1]")));
            }
        }
        Ok(EquivariantFamily {
            n,
            forms,
            multipliers,
            beta,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn multipliers(&self) -> &[Q] {
        &self.multipliers
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    /// `μ` with `D = Σ yⱼ Dⱼ ~ μ·(-K)`.
    pub fn mu(&self) -> Q {
        let total: Q = self
            .multipliers
            .iter()
            .zip(&self.forms)
            .map(|(y, f)| y * q(f.degree() as i64))
            .sum();
        total / q(self.n as i64 + 1)
    }
}

fn pow(base: i64, exp: u32) -> Q {
    let mut p = Q::one();
    for _ in 0..exp {
        p *= q(base);
    }
    p
}

/// Sampling range for the expansion variable `t`, with `m = (n + 1)t`.
fn sample_points(n: u32, max_degree: u32) -> Vec<i64> {
    let n1 = n as i64 + 1;
    let start = n1.max((max_degree as i64 + n1 - 1) / n1);
    (start..start + n1 + 2).collect()
}

fn def31(fam: &EquivariantFamily, w: &OnePS) -> Result<LinearInBeta> {
    let n = fam.n;
    let n1 = n as i64 + 1;
    let ts = sample_points(n, fam.degrees().into_iter().max().unwrap_or(1));
    let mut total = Vec::with_capacity(ts.len());
    let mut dims = Vec::with_capacity(ts.len());
    for &t in &ts {
        let m = (n1 * t) as u32;
        total.push((t, Q::from_integer(equivariant_det_weight(n, w, m, None)?)));
        dims.push((t, Q::from_integer(ci_hilbert(n, &[], m as i64))));
    }
    let mk = mk_top_coefficients(n, &total, &[])?;

    // λ̃_n and ã₀ are additive in the boundary
    let mut lambda_tilde = Q::zero();
    let mut a0_tilde = Q::zero();
    for (f, y) in fam.forms.iter().zip(&fam.multipliers) {
        let mut div = Vec::with_capacity(ts.len());
        let mut div_dims = Vec::with_capacity(ts.len());
        for &t in &ts {
            let m = (n1 * t) as u32;
            div.push((
                t,
                Q::from_integer(equivariant_det_weight(n, w, m, Some((f, f.degree())))?),
            ));
            div_dims.push((t, Q::from_integer(ci_hilbert(n, &[f.degree()], m as i64))));
        }
        let coeff = mk_top_coefficients(n, &total, &div)?
            .lambda_tilde
            .expect("divisor samples given");
        lambda_tilde += y * coeff;
        a0_tilde += y * &interpolate_power(&div_dims, n as usize - 1)?[n as usize - 1];
    }

    let h = interpolate_power(&dims, n as usize)?;
    let a0 = h[n as usize].clone();
    let a1 = h[n as usize - 1].clone();
    let nn1 = q(n as i64 * n1);
    let at = |beta: Q| -> Q {
        let exponent = (q(2) * &a1 - &beta * &a0_tilde) / &a0 + &nn1;
        exponent * &mk.lambda_top - q(2 * n1) * &mk.lambda_next + beta * q(n1) * &lambda_tilde
    };
    Ok(LinearInBeta::from_values(at(Q::zero()), at(Q::one())))
}

/// Equivariant intersection numbers of the product configuration:
/// `w(L^{n+1}) = (n+1)^{n+1}·Σwᵢ` and `w(Lⁿ·Dⱼ) = (n+1)ⁿ·μ(fⱼ, w)` for
/// sum-zero `w`.
fn lem32(fam: &EquivariantFamily, w: &OnePS, mu_hm: &[i64]) -> LinearInBeta {
    let n = fam.n;
    let n1 = n as i64 + 1;
    let sum_w = q(w.weights().iter().sum());
    let l_top = pow(n1, n + 1) * sum_w;
    let l_d: Q = fam
        .multipliers
        .iter()
        .zip(mu_hm)
        .map(|(y, &m)| y * q(m))
        .sum::<Q>()
        * pow(n1, n);
    let mu = fam.mu();
    let at =
        |beta: Q| -> Q { -(Q::one() + &beta * &mu * q(n as i64)) * &l_top + beta * q(n1) * &l_d };
    LinearInBeta::from_values(at(Q::zero()), at(Q::one()))
}

fn lem41(fam: &EquivariantFamily, mu_hm: &[i64]) -> LinearInBeta {
    let n1 = fam.n as i64 + 1;
    let v = pow(n1, fam.n);
    let slope: Q = fam
        .multipliers
        .iter()
        .zip(mu_hm)
        .map(|(y, &m)| q(n1) * &v * y * q(m))
        .sum();
    LinearInBeta {
        constant: Q::zero(),
        slope,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMWeightReport {
    pub def31: Option<LinearInBeta>,
    pub lem32: Option<LinearInBeta>,
    pub lem41: Option<LinearInBeta>,
    pub hm_weights: Vec<i64>,
    /// `def31 = scalar·lem41`, when both were computed and are nonzero.
    pub scalar: Option<Q>,
    /// Filled in by [`super::effective_linearization`] when requested.
    pub effective_linearization: Option<Vec<Q>>,
    pub beta: Beta,
    pub agree: bool,
}

impl CMWeightReport {
    /// The weight at the family's β; for symbolic β, the coefficient of β.
    pub fn value(&self, route: &LinearInBeta) -> Q {
        match &self.beta {
            Beta::Symbolic => route.slope.clone(),
            Beta::Fixed(b) => route.at(b),
        }
    }

    pub fn to_json(&self) -> CMWeightReportJson {
        let show = |r: &Option<LinearInBeta>| r.as_ref().map(|r| fmt_q(&self.value(r)));
        CMWeightReportJson {
            weights: WeightsJson {
                def31: show(&self.def31),
                lem32: show(&self.lem32),
                lem41: show(&self.lem41),
            },
            scalar: self.scalar.as_ref().map(fmt_q),
            gamma: self
                .effective_linearization
                .as_ref()
                .map(|g| g.iter().map(fmt_q).collect()),
            hm_weights: self.hm_weights.clone(),
            beta: match &self.beta {
                Beta::Symbolic => "symbolic".into(),
                Beta::Fixed(b) => fmt_q(b),
            },
            agree: self.agree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub def31: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lem32: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lem41: Option<String>,
}

/// With symbolic β the weights are coefficients of β; every route has
/// zero constant term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMWeightReportJson {
    pub weights: WeightsJson,
    pub scalar: Option<String>,
    pub gamma: Option<Vec<String>>,
    pub hm_weights: Vec<i64>,
    pub beta: String,
    pub agree: bool,
}

/// Ratio `a = s·b` with `s > 0`, or `None` when both vanish; `Err` when
/// not positively proportional.
fn positive_ratio(a: &LinearInBeta, b: &LinearInBeta) -> std::result::Result<Option<Q>, ()> {
    if b.is_zero() {
        return if a.is_zero() { Ok(None) } else { Err(()) };
    }
    let s = if !b.slope.is_zero() {
        &a.slope / &b.slope
    } else {
        &a.constant / &b.constant
    };
    if s.is_positive() && a.slope == &s * &b.slope && a.constant == &s * &b.constant {
        Ok(Some(s))
    } else {
        Err(())
    }
}

pub fn cm_weight(fam: &EquivariantFamily, w: &OnePS, route: Route) -> Result<CMWeightReport> {
    if w.len() != fam.n as usize + 1 {
        return Err(Error::DimensionMismatch(format!(
            "subgroup of length {} on P^{}",
            w.len(),
            fam.n
        )));
    }
    let hm_weights = fam
        .forms
        .iter()
        .map(|f| hm_weight(f, w))
        .collect::<Result<Vec<_>>>()?;
    let want = |r: Route| route == r || route == Route::All;
    let d = if want(Route::Def31) {
        Some(def31(fam, w)?)
    } else {
        None
    };
    let l32 = if want(Route::Lem32) {
        Some(lem32(fam, w, &hm_weights))
    } else {
        None
    };
    let l41 = if want(Route::Lem41) {
        Some(lem41(fam, &hm_weights))
    } else {
        None
    };

    let mut scalar = None;
    let mut agree = true;
    if let (Some(d), Some(l32), Some(l41)) = (&d, &l32, &l41) {
        match (positive_ratio(d, l41), positive_ratio(l32, l41)) {
            (Ok(s), Ok(_)) => scalar = s,
            _ => agree = false,
        }
        if !agree {
            return Err(Error::Inconsistent(format!(
                "CM weight routes disagree for w = {w}: def31 = {} + {}β, lem32 = {} + {}β, lem41 = {} + {}β, μ = {hm_weights:?}",
                fmt_q(&d.constant),
                fmt_q(&d.slope),
                fmt_q(&l32.constant),
                fmt_q(&l32.slope),
                fmt_q(&l41.constant),
                fmt_q(&l41.slope),
            )));
        }
    }
    Ok(CMWeightReport {
        def31: d,
        lem32: l32,
        lem41: l41,
        hm_weights,
        scalar,
        effective_linearization: None,
        beta: fam.beta.clone(),
        agree,
    })
}
