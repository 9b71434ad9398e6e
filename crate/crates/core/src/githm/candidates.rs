//! Finite sets of one-parameter subgroups that certify torus stability.
//!
//! For forms of degrees `e⃗`, every weight `w ↦ Σγⱼ μ(fⱼ, w)` is linear on
//! the cones cut out of the sum-zero space by the hyperplanes
//! `⟨α - α′, w⟩ = 0`, with `α, α′` exponent vectors of a common degree
//! `eⱼ`. These hyperplanes span the dual of the sum-zero space, so each cone
//! is pointed and generated by rays; a ray is the common kernel of `n - 1`
//! independent differences. Checking the rays therefore decides torus
//! (semi)stability for every tuple with these degrees at once.

use std::collections::BTreeSet;

use num_integer::Integer;

use super::form::monomials;
use super::oneps::OnePS;
use crate::error::{Error, Result};
use crate::qgeom::polytope::Combinations;

pub const DEFAULT_CAP: usize = 20_000;

/// Subsets of differences examined per unit of candidate cap.
const WORK_PER_CANDIDATE: u128 = 500;

fn gcd_normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Primitive differences of exponent vectors, up to sign.
pub fn difference_directions(n: u32, degrees: &[u32]) -> Vec<Vec<i64>> {
    let vars = n as usize + 1;
    let mut dirs = BTreeSet::new();
    let distinct: BTreeSet<u32> = degrees.iter().copied().collect();
    for e in distinct {
        let mons = monomials(vars, e);
        for (i, a) in mons.iter().enumerate() {
            for b in &mons[i + 1..] {
                let mut d: Vec<i64> = a
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| x as i64 - y as i64)
                    .collect();
                gcd_normalize(&mut d);
                if d.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    d.iter_mut().for_each(|x| *x = -*x);
                }
                dirs.insert(d);
            }
        }
    }
    dirs.into_iter().collect()
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let size = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..size {
        if m[k][k] == 0 {
            match (k + 1..size).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[size - 1][size - 1]
}

/// Generator of the kernel of `rows` (n rows, n + 1 columns) by signed
/// maximal minors; zero when the rows are dependent.
fn kernel_vector(rows: &[Vec<i64>]) -> Vec<i64> {
    let cols = rows.len() + 1;
    (0..cols)
        .map(|skip| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    (0..cols)
                        .filter(|&c| c != skip)
                        .map(|c| r[c] as i128)
                        .collect()
                })
                .collect();
            let d = det(minor);
            let d = if skip % 2 == 0 { d } else { -d };
            i64::try_from(d).expect("minor of small integer matrix")
        })
        .collect()
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Representative of `w` up to sign and permutation of coordinates.
pub fn weyl_canonical(w: &[i64]) -> Vec<i64> {
    let a = sorted_desc(w);
    let neg: Vec<i64> = w.iter().map(|x| -x).collect();
    let b = sorted_desc(&neg);
    a.min(b)
}

/// Primitive sum-zero rays of the difference arrangement, one per orbit
/// under sign change and coordinate permutation.
pub fn candidate_one_ps(n: u32, degrees: &[u32], cap: usize) -> Result<Vec<OnePS>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidInput(
            "degrees must be a nonempty list of positive integers".into(),
        ));
    }
    if cap == 0 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let vars = n as usize + 1;
    let dirs = difference_directions(n, degrees);
    let choose = n as usize - 1;
    let work = binom_u128(dirs.len() as u128, choose as u128);
    let work_cap = cap as u128 * WORK_PER_CANDIDATE;
    if work > work_cap {
        return Err(Error::CapExceeded {
            what: "difference subsets",
            count: work,
            cap: work_cap,
        });
    }
    let ones = vec![1i64; vars];
    let mut found = BTreeSet::new();
    for subset in Combinations::new(dirs.len(), choose) {
        let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| dirs[i].clone()).collect();
        rows.push(ones.clone());
        let mut w = kernel_vector(&rows);
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        gcd_normalize(&mut w);
        found.insert(weyl_canonical(&w));
        if found.len() > cap {
            return Err(Error::CapExceeded {
                what: "candidate one-parameter subgroups",
                count: found.len() as u128,
                cap: cap as u128,
            });
        }
    }
    found.into_iter().map(OnePS::new).collect()
}

fn binom_u128(a: u128, b: u128) -> u128 {
    if b > a {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..b {
        r = r.saturating_mul(a - i) / (i + 1);
    }
    r
}

fn next_permutation(v: &mut [i64]) -> bool {
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

/// All distinct coordinate permutations of `w` and `-w`, sorted.
pub fn orbit(w: &OnePS) -> Vec<OnePS> {
    let mut out = BTreeSet::new();
    for base in [w.clone(), w.negated()] {
        let mut v = base.weights().to_vec();
        v.sort_unstable();
        loop {
            out.insert(v.clone());
            if !next_permutation(&mut v) {
                break;
            }
        }
    }
    out.into_iter()
        .map(|v| OnePS::new(v).expect("permutation keeps zero sum"))
        .collect()
}
