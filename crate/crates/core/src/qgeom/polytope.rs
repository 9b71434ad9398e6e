//! Exact rational polyhedra in H- and V-representation.
//!
//! Conversion enumerates bases of active constraints (H→V) and supporting
//! hyperplanes through affinely independent generators (V→H). Both
//! directions finish by computing the other representation again, so a
//! converted polytope always carries both, irredundant and canonically
//! ordered. Ambient dimension is capped at [`MAX_AMBIENT_DIM`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{null_space, rank, solve_linear_system, LinearSolution};
use super::lp::{feasible_point, LpOutcome};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, primitive_integer, q, QVec, Q};

pub const MAX_AMBIENT_DIM: usize = 6;

/// Subsets examined during one conversion before giving up.
const MAX_SUBSETS: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

/// `normal · x >= offset` or `normal · x = offset`.
///
/// Stored scaled to a primitive integer normal. Equalities additionally
/// have a positive leading nonzero entry; an inequality cannot be flipped
/// without changing its meaning, so only its scale is normalised.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    relation: Relation,
    normal: QVec,
    offset: Q,
}

impl HalfSpace {
    pub fn new(normal: QVec, offset: Q, relation: Relation) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidInput(
                "halfspace normal is the zero vector".into(),
            ));
        }
        let ints = primitive_integer(&normal.0);
        let (first, first_int) = normal
            .0
            .iter()
            .zip(&ints)
            .find(|(x, _)| !x.is_zero())
            .expect("normal is nonzero");
        let mut factor = Q::from_integer(first_int.clone()) / first;
        if relation == Relation::Eq && first_int.is_negative() {
            factor = -factor;
        }
        Ok(HalfSpace {
            relation,
            normal: normal.scale(&factor),
            offset: offset * factor,
        })
    }

    pub fn ge(normal: QVec, offset: Q) -> Result<Self> {
        Self::new(normal, offset, Relation::Ge)
    }

    pub fn eq(normal: QVec, offset: Q) -> Result<Self> {
        Self::new(normal, offset, Relation::Eq)
    }

    pub fn normal(&self) -> &QVec {
        &self.normal
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    /// `normal · x - offset`.
    pub fn slack(&self, x: &QVec) -> Q {
        self.normal.dot(x) - &self.offset
    }

    pub fn satisfied_by(&self, x: &QVec) -> bool {
        let s = self.slack(x);
        match self.relation {
            Relation::Eq => s.is_zero(),
            Relation::Ge => !s.is_negative(),
        }
    }

    /// Same hyperplane with the relation replaced.
    pub fn with_relation(&self, relation: Relation) -> HalfSpace {
        HalfSpace::new(self.normal.clone(), self.offset.clone(), relation)
            .expect("normal is nonzero")
    }

    /// `-normal · x >= -offset`.
    pub fn flipped(&self) -> HalfSpace {
        HalfSpace::new(
            self.normal.scale(&q(-1)),
            -self.offset.clone(),
            self.relation,
        )
        .expect("normal is nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HToV,
    VToH,
}

/// A rational polyhedron. Constructed from one representation; after
/// [`polytope_convert`] it carries both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolytope {
    ambient_dim: usize,
    hrep: Option<Vec<HalfSpace>>,
    vertices: Option<Vec<QVec>>,
    rays: Vec<QVec>,
}

impl QPolytope {
    pub fn from_hrep(ambient_dim: usize, hrep: Vec<HalfSpace>) -> Result<Self> {
        check_ambient(ambient_dim)?;
        for h in &hrep {
            if h.normal.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "halfspace normal has length {}, ambient dimension is {ambient_dim}",
                    h.normal.len()
                )));
            }
        }
        Ok(QPolytope {
            ambient_dim,
            hrep: Some(hrep),
            vertices: None,
            rays: Vec::new(),
        })
    }

    pub fn from_vrep(ambient_dim: usize, vertices: Vec<QVec>, rays: Vec<QVec>) -> Result<Self> {
        check_ambient(ambient_dim)?;
        for v in vertices.iter().chain(&rays) {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator has length {}, ambient dimension is {ambient_dim}",
                    v.len()
                )));
            }
        }
        if vertices.is_empty() && !rays.is_empty() {
            return Err(Error::InvalidInput("rays given without any vertex".into()));
        }
        if rays.iter().any(QVec::is_zero) {
            return Err(Error::InvalidInput("zero ray generator".into()));
        }
        Ok(QPolytope {
            ambient_dim,
            hrep: None,
            vertices: Some(vertices),
            rays,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hrep(&self) -> Option<&[HalfSpace]> {
        self.hrep.as_deref()
    }

    pub fn vertices(&self) -> Option<&[QVec]> {
        self.vertices.as_deref()
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    /// Both representations present.
    pub fn is_complete(&self) -> bool {
        self.hrep.is_some() && self.vertices.is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.as_ref().is_some_and(Vec::is_empty)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Affine dimension from the V-representation; `None` when empty or
    /// the V-representation is absent.
    pub fn dimension(&self) -> Option<usize> {
        let verts = self.vertices.as_ref()?;
        let first = verts.first()?;
        let mut rows: Vec<Vec<Q>> = verts[1..].iter().map(|v| v.sub(first).0).collect();
        rows.extend(self.rays.iter().map(|r| r.0.clone()));
        Some(if rows.is_empty() { 0 } else { rank(&rows) })
    }

    /// Membership, via the H-representation when present.
    pub fn contains(&self, x: &QVec) -> bool {
        match &self.hrep {
            Some(h) => h.iter().all(|c| c.satisfied_by(x)),
            None => {
                let full = polytope_convert(self, Direction::VToH).expect("v-rep was validated");
                full.contains(x)
            }
        }
    }

    /// Average of the vertices: a point in the relative interior of a
    /// nonempty bounded polytope.
    pub fn vertex_barycenter(&self) -> Option<QVec> {
        let verts = self.vertices.as_ref()?;
        let first = verts.first()?;
        let mut acc = QVec::zeros(first.len());
        for v in verts {
            acc = acc.add(v);
        }
        Some(acc.scale(&(Q::from_integer(BigInt::from(1)) / q(verts.len() as i64))))
    }
}

fn check_ambient(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidInput(
            "ambient dimension must be positive".into(),
        ));
    }
    if d > MAX_AMBIENT_DIM {
        return Err(Error::CapExceeded {
            what: "polytope ambient dimension",
            count: d as u128,
            cap: MAX_AMBIENT_DIM as u128,
        });
    }
    Ok(())
}

/// Converts between representations. The result carries both, with
/// redundant halfspaces and generators removed.
pub fn polytope_convert(p: &QPolytope, direction: Direction) -> Result<QPolytope> {
    let d = p.ambient_dim;
    match direction {
        Direction::HToV => {
            let h = p
                .hrep
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("H-representation missing".into()))?;
            let Some((verts, rays)) = h_to_v(d, h)? else {
                return Ok(empty_polytope(d));
            };
            let hrep = v_to_h(d, &verts, &rays)?;
            Ok(QPolytope {
                ambient_dim: d,
                hrep: Some(hrep),
                vertices: Some(verts),
                rays,
            })
        }
        Direction::VToH => {
            let verts = p
                .vertices
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("V-representation missing".into()))?;
            if verts.is_empty() {
                return Ok(empty_polytope(d));
            }
            let hrep = v_to_h(d, verts, &p.rays)?;
            let (verts, rays) = h_to_v(d, &hrep)?.expect("nonempty by construction");
            Ok(QPolytope {
                ambient_dim: d,
                hrep: Some(hrep),
                vertices: Some(verts),
                rays,
            })
        }
    }
}

fn empty_polytope(d: usize) -> QPolytope {
    let mut e1 = QVec::zeros(d);
    e1[0] = q(1);
    let hrep = vec![
        HalfSpace::ge(e1.clone(), q(1)).unwrap(),
        HalfSpace::ge(e1.scale(&q(-1)), q(0)).unwrap(),
    ];
    QPolytope {
        ambient_dim: d,
        hrep: Some(hrep),
        vertices: Some(Vec::new()),
        rays: Vec::new(),
    }
}

/// Some point satisfying all constraints, found by linear programming.
pub fn h_feasible_point(d: usize, hs: &[HalfSpace]) -> Option<QVec> {
    // x = u - v with u, v >= 0; one slack per inequality.
    let n_ineq = hs.iter().filter(|h| h.relation == Relation::Ge).count();
    let ncols = 2 * d + n_ineq;
    let mut a = Vec::with_capacity(hs.len());
    let mut b = Vec::with_capacity(hs.len());
    let mut slack = 0;
    for h in hs {
        let mut row = vec![Q::zero(); ncols];
        for (i, c) in h.normal.iter().enumerate() {
            row[i] = c.clone();
            row[d + i] = -c.clone();
        }
        if h.relation == Relation::Ge {
            row[2 * d + slack] = q(-1);
            slack += 1;
        }
        a.push(row);
        b.push(h.offset.clone());
    }
    match feasible_point(&a, &b) {
        LpOutcome::Optimal { x, .. } => Some(QVec((0..d).map(|i| &x[i] - &x[d + i]).collect())),
        _ => None,
    }
}

type VRep = (Vec<QVec>, Vec<QVec>);

fn h_to_v(d: usize, hs: &[HalfSpace]) -> Result<Option<VRep>> {
    let eqs: Vec<&HalfSpace> = hs.iter().filter(|h| h.relation == Relation::Eq).collect();
    let ineqs: Vec<&HalfSpace> = hs.iter().filter(|h| h.relation == Relation::Ge).collect();

    let all_normals: Vec<Vec<Q>> = hs.iter().map(|h| h.normal.0.clone()).collect();
    if rank(&all_normals) < d {
        return match h_feasible_point(d, hs) {
            None => Ok(None),
            Some(_) => Err(Error::InvalidInput(
                "polyhedron contains a line; only pointed polyhedra are supported".into(),
            )),
        };
    }

    let eq_rows: Vec<Vec<Q>> = eqs.iter().map(|h| h.normal.0.clone()).collect();
    let eq_rank = rank(&eq_rows);
    if !eqs.is_empty() {
        let b = QVec(eqs.iter().map(|h| h.offset.clone()).collect());
        if solve_linear_system(&eq_rows, &b)? == LinearSolution::Inconsistent {
            return Ok(None);
        }
    }
    let need = d - eq_rank;
    check_subsets(ineqs.len(), need)?;

    let mut vertices = BTreeSet::new();
    for subset in Combinations::new(ineqs.len(), need) {
        let mut rows = eq_rows.clone();
        let mut rhs: Vec<Q> = eqs.iter().map(|h| h.offset.clone()).collect();
        for &i in &subset {
            rows.push(ineqs[i].normal.0.clone());
            rhs.push(ineqs[i].offset.clone());
        }
        if let LinearSolution::Unique(x) = solve_linear_system(&rows, &QVec(rhs))? {
            if ineqs.iter().all(|h| h.satisfied_by(&x)) {
                vertices.insert(x);
            }
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }

    let mut rays = BTreeSet::new();
    if need >= 1 {
        for subset in Combinations::new(ineqs.len(), need - 1) {
            let mut rows = eq_rows.clone();
            for &i in &subset {
                rows.push(ineqs[i].normal.0.clone());
            }
            let ns = if rows.is_empty() {
                identity_basis(d)
            } else {
                null_space(&rows, d)
            };
            if ns.len() != 1 {
                continue;
            }
            let u = &ns[0];
            for cand in [u.clone(), u.scale(&q(-1))] {
                if ineqs.iter().all(|h| !h.normal.dot(&cand).is_negative()) {
                    rays.insert(primitive_ray(&cand));
                }
            }
        }
    }
    Ok(Some((
        vertices.into_iter().collect(),
        rays.into_iter().collect(),
    )))
}

fn identity_basis(d: usize) -> Vec<QVec> {
    (0..d)
        .map(|i| {
            let mut v = QVec::zeros(d);
            v[i] = q(1);
            v
        })
        .collect()
}

fn primitive_ray(u: &QVec) -> QVec {
    QVec(
        primitive_integer(&u.0)
            .into_iter()
            .map(Q::from_integer)
            .collect(),
    )
}

fn v_to_h(d: usize, verts: &[QVec], rays: &[QVec]) -> Result<Vec<HalfSpace>> {
    // Affine hull: (a, c) with a·p + c = 0 on points and a·r = 0 on rays.
    let mut m: Vec<Vec<Q>> = Vec::new();
    for p in verts {
        let mut row = p.0.clone();
        row.push(q(1));
        m.push(row);
    }
    for r in rays {
        let mut row = r.0.clone();
        row.push(q(0));
        m.push(row);
    }
    let hull_eqs = null_space(&m, d + 1);
    let mut equalities = Vec::new();
    for z in &hull_eqs {
        let a = QVec(z.0[..d].to_vec());
        equalities.push(HalfSpace::eq(a, -z.0[d].clone())?);
    }
    let dim = d - hull_eqs.len();

    let gens: Vec<(&QVec, bool)> = verts
        .iter()
        .map(|v| (v, true))
        .chain(rays.iter().map(|r| (r, false)))
        .collect();
    let mut facets = BTreeSet::new();
    if dim > 0 {
        check_subsets(gens.len(), dim)?;
        for subset in Combinations::new(gens.len(), dim) {
            if !subset.iter().any(|&i| gens[i].1) {
                continue;
            }
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for &i in &subset {
                let (g, is_point) = gens[i];
                let mut row = g.0.clone();
                row.push(if is_point { q(-1) } else { q(0) });
                rows.push(row);
            }
            for e in &equalities {
                let mut row = e.normal.0.clone();
                row.push(q(0));
                rows.push(row);
            }
            let ns = null_space(&rows, d + 1);
            if ns.len() != 1 {
                continue;
            }
            let a = QVec(ns[0].0[..d].to_vec());
            let b = ns[0].0[d].clone();
            if a.is_zero() {
                continue;
            }
            let values: Vec<Q> = gens
                .iter()
                .map(|(g, is_point)| if *is_point { g.dot(&a) - &b } else { g.dot(&a) })
                .collect();
            let h = if values.iter().all(|v| !v.is_negative()) {
                HalfSpace::ge(a, b)?
            } else if values.iter().all(|v| !v.is_positive()) {
                HalfSpace::ge(a.scale(&q(-1)), -b)?
            } else {
                continue;
            };
            facets.insert(h);
        }
    }
    let mut out = equalities;
    out.sort();
    out.extend(facets);
    Ok(out)
}

fn check_subsets(n: usize, k: usize) -> Result<()> {
    let count = n_choose_k(n, k);
    if count > MAX_SUBSETS {
        return Err(Error::CapExceeded {
            what: "polytope conversion subsets",
            count,
            cap: MAX_SUBSETS,
        });
    }
    Ok(())
}

fn n_choose_k(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

// JSON form: {"hrep":[{"normal":[..],"offset":"p/q","rel":">="}], "vrep":[[..]]}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HalfSpaceJson {
    pub normal: Vec<String>,
    pub offset: String,
    pub rel: Relation,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<Vec<HalfSpaceJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<Vec<String>>,
}

impl QPolytope {
    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            hrep: self.hrep.as_ref().map(|h| {
                h.iter()
                    .map(|c| HalfSpaceJson {
                        normal: c.normal.to_strings(),
                        offset: fmt_q(&c.offset),
                        rel: c.relation,
                    })
                    .collect()
            }),
            vrep: self
                .vertices
                .as_ref()
                .map(|v| v.iter().map(QVec::to_strings).collect()),
            rays: self.rays.iter().map(QVec::to_strings).collect(),
        }
    }

    /// Parses the JSON schema. The ambient dimension is taken from the
    /// first normal or vertex; every other entry must agree with it.
    pub fn from_json(j: &PolytopeJson) -> Result<QPolytope> {
        let d = j
            .hrep
            .as_ref()
            .and_then(|h| h.first().map(|c| c.normal.len()))
            .or_else(|| j.vrep.as_ref().and_then(|v| v.first().map(Vec::len)))
            .ok_or_else(|| {
                Error::InvalidInput("polytope JSON has no constraints and no vertices".into())
            })?;
        check_ambient(d)?;
        let hrep = match &j.hrep {
            Some(h) => Some(
                h.iter()
                    .map(|c| {
                        let normal = QVec::parse(&c.normal)?;
                        if normal.len() != d {
                            return Err(Error::DimensionMismatch(
                                "inconsistent normal lengths".into(),
                            ));
                        }
                        HalfSpace::new(normal, parse_q(&c.offset)?, c.rel)
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let parse_points = |pts: &[Vec<String>]| -> Result<Vec<QVec>> {
            pts.iter()
                .map(|p| {
                    let v = QVec::parse(p)?;
                    if v.len() != d {
                        return Err(Error::DimensionMismatch(
                            "inconsistent vertex lengths".into(),
                        ));
                    }
                    Ok(v)
                })
                .collect()
        };
        let vertices = j.vrep.as_deref().map(parse_points).transpose()?;
        let rays = parse_points(&j.rays)?;
        let p = match (hrep, vertices) {
            (Some(h), v) => {
                let mut p = QPolytope::from_hrep(d, h)?;
                if let Some(v) = v {
                    if v.is_empty() && !rays.is_empty() {
                        return Err(Error::InvalidInput("rays given without any vertex".into()));
                    }
                    p.vertices = Some(v);
                    p.rays = rays;
                }
                p
            }
            (None, Some(v)) => QPolytope::from_vrep(d, v, rays)?,
            (None, None) => unreachable!("dimension was found above"),
        };
        Ok(p)
    }

    /// Checks that every listed vertex and ray satisfies every halfspace.
    pub fn representations_agree(&self) -> bool {
        let (Some(h), Some(v)) = (&self.hrep, &self.vertices) else {
            return true;
        };
        v.iter().all(|x| h.iter().all(|c| c.satisfied_by(x)))
            && self.rays.iter().all(|r| {
                h.iter().all(|c| {
                    let s = c.normal.dot(r);
                    match c.relation {
                        Relation::Eq => s.is_zero(),
                        Relation::Ge => !s.is_negative(),
                    }
                })
            })
    }
}
