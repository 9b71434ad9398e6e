//! Walls and chambers of the linearization simplex.
//!
//! At a candidate subgroup `w`, the combined weight of any tuple is
//! `Σγⱼmⱼ` with `mⱼ = -⟨αⱼ, w⟩` for some exponent vector `αⱼ` of degree
//! `eⱼ`. Verdicts can only change where such a sum vanishes with mixed
//! signs, which gives a finite list of hyperplanes through the origin.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::candidates::candidate_one_ps;
use super::form::{monomials, Exponents};
use super::oneps::OnePS;
use crate::error::{Error, Result};
use crate::qgeom::{arrangement_chambers, Arrangement, HalfSpace, QPolytope};
use crate::rational::{primitive_integer, q, QVec};

/// A monomial tuple and subgroup whose combined weight vanishes exactly on
/// the wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub monomials: Vec<Exponents>,
    pub one_ps: OnePS,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// `Σγⱼmⱼ = 0`.
    pub hyperplane: HalfSpace,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VgitChambers {
    pub n: u32,
    pub degrees: Vec<u32>,
    pub walls: Vec<Wall>,
    pub arrangement: Arrangement,
}

/// `{γ >= 0, Σγ = 1}` in `k` coordinates.
pub fn linearization_simplex(k: usize) -> Result<QPolytope> {
    let mut h = Vec::with_capacity(k + 1);
    for i in 0..k {
        let mut e = QVec::zeros(k);
        e[i] = q(1);
        h.push(HalfSpace::ge(e, q(0))?);
    }
    h.push(HalfSpace::eq(QVec(vec![q(1); k]), q(1))?);
    QPolytope::from_hrep(k, h)
}

pub fn vgit_chambers(n: u32, degrees: &[u32], cap: usize) -> Result<VgitChambers> {
    let k = degrees.len();
    if k == 0 {
        return Err(Error::InvalidInput(
            "at least one degree is required".into(),
        ));
    }
    let candidates = candidate_one_ps(n, degrees, cap)?;
    let vars = n as usize + 1;
    let mons: Vec<Vec<Exponents>> = degrees.iter().map(|&e| monomials(vars, e)).collect();

    let budget = cap as u128 * 500;
    let mut walls: BTreeMap<Vec<i64>, Witness> = BTreeMap::new();
    for w in &candidates {
        // distinct values of -⟨α, w⟩ per degree, with one realizing monomial
        let values: Vec<BTreeMap<i64, Exponents>> = mons
            .iter()
            .map(|ms| {
                let mut m = BTreeMap::new();
                for a in ms {
                    m.entry(-w.pairing(a)).or_insert_with(|| a.clone());
                }
                m
            })
            .collect();
        let combos: u128 = values.iter().map(|v| v.len() as u128).product();
        if combos > budget {
            return Err(Error::CapExceeded {
                what: "wall weight combinations",
                count: combos,
                cap: budget,
            });
        }
        let lists: Vec<Vec<(&i64, &Exponents)>> =
            values.iter().map(|v| v.iter().collect()).collect();
        let mut idx = vec![0usize; k];
        loop {
            let m: Vec<i64> = (0..k).map(|j| *lists[j][idx[j]].0).collect();
            if m.iter().any(|&x| x > 0) && m.iter().any(|&x| x < 0) {
                let ints = primitive_integer(&m.iter().map(|&x| q(x)).collect::<Vec<_>>());
                let mut key: Vec<i64> = ints
                    .iter()
                    .map(|x| x.to_i64().expect("small weights"))
                    .collect();
                if key.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    key.iter_mut().for_each(|x| *x = -*x);
                }
                walls.entry(key).or_insert_with(|| Witness {
                    monomials: (0..k).map(|j| lists[j][idx[j]].1.clone()).collect(),
                    one_ps: w.clone(),
                });
                if walls.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "walls",
                        count: walls.len() as u128,
                        cap: cap as u128,
                    });
                }
            }
            let mut j = 0;
            while j < k {
                idx[j] += 1;
                if idx[j] < lists[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
        }
    }

    let walls: Vec<Wall> = walls
        .into_iter()
        .map(|(normal, witness)| {
            Ok(Wall {
                hyperplane: HalfSpace::eq(QVec::from_ints(&normal), q(0))?,
                witness,
            })
        })
        .collect::<Result<_>>()?;
    let ambient = linearization_simplex(k)?;
    let hyperplanes: Vec<HalfSpace> = walls.iter().map(|w| w.hyperplane.clone()).collect();
    let arrangement = arrangement_chambers(&ambient, &hyperplanes)?;
    Ok(VgitChambers {
        n,
        degrees: degrees.to_vec(),
        walls,
        arrangement,
    })
}
