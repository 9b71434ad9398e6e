//! Two-phase simplex method over the rationals, Bland's pivoting rule.
//!
//! Problems are in standard form: minimise `c·x` subject to `A x = b`,
//! `x >= 0`. Infeasible problems come back with a Farkas certificate `z`
//! satisfying `zᵀA >= 0` and `z·b < 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible { farkas: Vec<Q> },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    /// Reduced costs and the negated objective value.
    cost: Vec<Q>,
    cost_rhs: Q,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.cost_rhs -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over columns `< active`. Returns false when
    /// the objective is unbounded below.
    fn run(&mut self, active: usize) -> bool {
        loop {
            let Some(enter) = (0..active).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub fn minimize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(a.iter().all(|row| row.len() == n));

    // Flip rows so the right-hand side is nonnegative.
    let signs: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = if signs[i] {
            a[i].iter().map(|x| -x).collect()
        } else {
            a[i].clone()
        };
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        rows.push(row);
        rhs.push(if signs[i] {
            -b[i].clone()
        } else {
            b[i].clone()
        });
    }

    // Phase one: minimise the sum of artificials.
    let mut cost = vec![Q::zero(); n + m];
    let mut cost_rhs = Q::zero();
    for i in 0..m {
        for j in 0..n {
            cost[j] -= &rows[i][j];
        }
        cost_rhs -= &rhs[i];
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        cost,
        cost_rhs,
    };
    t.run(n + m);

    let infeasibility = -t.cost_rhs.clone();
    if infeasibility.is_positive() {
        // y' = c_B B^{-1}; B^{-1} sits in the artificial columns.
        let mut y = vec![Q::zero(); m];
        for (i, &bi) in t.basis.iter().enumerate() {
            if bi >= n {
                for (k, yk) in y.iter_mut().enumerate() {
                    *yk += &t.rows[i][n + k];
                }
            }
        }
        let farkas = y
            .into_iter()
            .zip(&signs)
            .map(|(yk, &flipped)| if flipped { yk } else { -yk })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive degenerate artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }

    // Phase two.
    let mut cost: Vec<Q> = c.to_vec();
    let mut cost_rhs = Q::zero();
    for (i, &bi) in t.basis.iter().enumerate() {
        if !c[bi].is_zero() {
            let f = c[bi].clone();
            for (x, p) in cost.iter_mut().zip(&t.rows[i]) {
                *x -= &f * p;
            }
            cost_rhs -= &f * &t.rhs[i];
        }
    }
    t.cost = cost;
    t.cost_rhs = cost_rhs;
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        x[bi] = t.rhs[i].clone();
    }
    let value = crate::rational::dot(c, &x);
    LpOutcome::Optimal { x, value }
}

/// Finds some `x >= 0` with `A x = b`, or a Farkas certificate.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let n = a.first().map_or(0, Vec::len);
    minimize(&vec![Q::zero(); n], a, b)
}
