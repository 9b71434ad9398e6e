//! Homogeneous forms with exact rational coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgeom::linalg::rank;
use crate::rational::{fmt_q, parse_q, Q};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    degree: u32,
    /// Terms sorted by exponent vector, lexicographically descending.
    terms: Vec<(Q, Exponents)>,
}

impl Form {
    pub fn new(degree: u32, terms: Vec<(Q, Exponents)>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidInput("a form needs at least one term".into()));
        };
        let vars = first.1.len();
        if vars < 2 {
            return Err(Error::InvalidInput(
                "forms need at least two variables".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in a form with {vars} variables",
                    e.len()
                )));
            }
            if e.iter().map(|&x| x as u64).sum::<u64>() != degree as u64 {
                return Err(Error::InvalidInput(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            if c.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "zero coefficient on monomial {e:?}"
                )));
            }
            if map.insert(e.clone(), c).is_some() {
                return Err(Error::InvalidInput(format!("repeated monomial {e:?}")));
            }
        }
        Ok(Form {
            degree,
            terms: map.into_iter().rev().map(|(e, c)| (c, e)).collect(),
        })
    }

    pub fn monomial(exps: Exponents) -> Result<Self> {
        let degree = u32::try_from(exps.iter().map(|&x| x as u64).sum::<u64>())
            .map_err(|_| Error::InvalidInput(format!("monomial {exps:?} has degree beyond u32")))?;
        Form::new(degree, vec![(Q::one(), exps)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of variables, `n + 1`.
    pub fn num_vars(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn terms(&self) -> &[(Q, Exponents)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponents> {
        self.terms.iter().map(|(_, e)| e)
    }

    /// `f(Mx)`: each variable `xᵢ` is replaced by `Σⱼ Mᵢⱼ xⱼ`.
    pub fn substitute(&self, m: &[Vec<Q>]) -> Result<Form> {
        let vars = self.num_vars();
        if m.len() != vars || m.iter().any(|row| row.len() != vars) {
            return Err(Error::DimensionMismatch(format!(
                "substitution must be a {vars}x{vars} matrix"
            )));
        }
        if rank(m) < vars {
            return Err(Error::InvalidInput(
                "substitution matrix is singular".into(),
            ));
        }
        let rows: Vec<Poly> = m
            .iter()
            .map(|row| {
                let mut p = Poly::new();
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let mut e = vec![0; vars];
                        e[j] = 1;
                        p.insert(e, c.clone());
                    }
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| vec![unit_poly(vars), r.clone()])
            .collect();
        let mut total = Poly::new();
        for (c, e) in &self.terms {
            let mut term = unit_poly(vars);
            for (i, &a) in e.iter().enumerate() {
                while powers[i].len() <= a as usize {
                    let next = poly_mul(powers[i].last().expect("nonempty"), &rows[i]);
                    powers[i].push(next);
                }
                term = poly_mul(&term, &powers[i][a as usize]);
            }
            for (me, mc) in term {
                let entry = total.entry(me).or_insert_with(Q::zero);
                *entry += mc * c;
            }
        }
        let terms: Vec<(Q, Exponents)> = total
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        Form::new(self.degree, terms)
    }

    /// Divides by the leading coefficient.
    pub fn normalized(&self) -> Form {
        let lead = self.terms[0].0.clone();
        Form {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(c, e)| (c / &lead, e.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(c, e)| TermJson {
                    coeff: fmt_q(c),
                    exps: e.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<Form> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((parse_q(&t.coeff)?, t.exps.clone())))
            .collect::<Result<Vec<_>>>()?;
        Form::new(j.degree, terms)
    }
}

type Poly = BTreeMap<Exponents, Q>;

fn unit_poly(vars: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; vars], Q::one());
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Q::zero);
            *entry += ca * cb;
        }
    }
    out
}

/// Whether no two forms are proportional.
pub fn pairwise_distinct(forms: &[Form]) -> bool {
    let normalized: Vec<Form> = forms.iter().map(Form::normalized).collect();
    normalized
        .iter()
        .enumerate()
        .all(|(i, f)| normalized[..i].iter().all(|g| g != f))
}

/// All exponent vectors of the given degree in `vars` variables, in
/// lexicographically descending order.
pub fn monomials(vars: usize, degree: u32) -> Vec<Exponents> {
    fn rec(vars: usize, degree: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=degree).rev() {
            prefix.push(a);
            rec(vars - 1, degree - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

/// Parses a JSON array of forms, all in the same number of variables.
pub fn parse_forms_json(text: &str) -> Result<Vec<Form>> {
    let raw: Vec<FormJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.is_empty() {
        return Err(Error::InvalidInput("forms file lists no forms".into()));
    }
    let forms = raw
        .iter()
        .map(Form::from_json)
        .collect::<Result<Vec<_>>>()?;
    let vars = forms[0].num_vars();
    if forms.iter().any(|f| f.num_vars() != vars) {
        return Err(Error::DimensionMismatch(
            "forms use different numbers of variables".into(),
        ));
    }
    Ok(forms)
}
