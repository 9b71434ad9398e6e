//! Cells of a hyperplane arrangement restricted to the relative interior of
//! an ambient polytope.
//!
//! Cells are found by refining one wall at a time. A candidate sign vector
//! is kept when the vertex barycenter of its closure realises exactly that
//! sign vector; the barycenter lies in the relative interior of the
//! closure, which equals the open cell whenever the cell is nonempty.

use num_traits::Signed;

use super::polytope::{polytope_convert, Direction, HalfSpace, QPolytope, Relation};
use crate::error::{Error, Result};
use crate::rational::{QVec, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Sign of `normal · x - offset` for each wall, in wall order.
    pub signs: Vec<i8>,
    pub representative: QVec,
    /// Closure of the cell, both representations.
    pub closure: QPolytope,
}

impl Cell {
    /// Full-dimensional cells avoid every wall.
    pub fn is_chamber(&self) -> bool {
        self.signs.iter().all(|&s| s != 0)
    }

    /// The representative plus points pulled a quarter of the way towards
    /// each closure vertex; all lie in the open cell.
    pub fn sample_points(&self) -> Vec<QVec> {
        let mut pts = vec![self.representative.clone()];
        let three = crate::rational::q(3);
        let quarter = crate::rational::qr(1, 4);
        for v in self.closure.vertices().unwrap_or(&[]) {
            let p = self.representative.scale(&three).add(v).scale(&quarter);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub ambient: QPolytope,
    pub walls: Vec<HalfSpace>,
    pub cells: Vec<Cell>,
}

impl Arrangement {
    pub fn chambers(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.is_chamber())
    }

    pub fn wall_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.is_chamber())
    }

    pub fn sign_vector(&self, x: &QVec) -> Vec<i8> {
        self.walls.iter().map(|w| sign_of(w, x)).collect()
    }
}

fn sign_of(wall: &HalfSpace, x: &QVec) -> i8 {
    let s = wall.slack(x);
    if s.is_positive() {
        1
    } else if s.is_negative() {
        -1
    } else {
        0
    }
}

fn signed_constraint(wall: &HalfSpace, sign: i8) -> HalfSpace {
    match sign {
        0 => wall.with_relation(Relation::Eq),
        1 => wall.with_relation(Relation::Ge),
        _ => wall.with_relation(Relation::Ge).flipped(),
    }
}

pub fn arrangement_chambers(ambient: &QPolytope, walls: &[HalfSpace]) -> Result<Arrangement> {
    let ambient = if ambient.is_complete() {
        ambient.clone()
    } else if ambient.hrep().is_some() {
        polytope_convert(ambient, Direction::HToV)?
    } else {
        polytope_convert(ambient, Direction::VToH)?
    };
    if ambient.is_empty() {
        return Err(Error::InvalidInput(
            "arrangement ambient polytope is empty".into(),
        ));
    }
    if !ambient.is_bounded() {
        return Err(Error::InvalidInput(
            "arrangement ambient polytope must be bounded".into(),
        ));
    }
    let d = ambient.ambient_dim();
    if let Some(w) = walls.iter().find(|w| w.normal().len() != d) {
        return Err(Error::DimensionMismatch(format!(
            "wall normal has length {}, ambient dimension is {d}",
            w.normal().len()
        )));
    }
    if walls.iter().any(|w| w.relation() != Relation::Eq) {
        return Err(Error::InvalidInput(
            "arrangement walls must be hyperplanes (relation =)".into(),
        ));
    }
    let facets: Vec<HalfSpace> = ambient
        .hrep()
        .expect("complete")
        .iter()
        .filter(|h| h.relation() == Relation::Ge)
        .cloned()
        .collect();

    // (signs, representative, closure)
    let mut cells: Vec<(Vec<i8>, QVec, QPolytope)> = vec![(
        Vec::new(),
        ambient.vertex_barycenter().expect("nonempty"),
        ambient.clone(),
    )];
    for wi in 0..walls.len() {
        let wall = &walls[wi];
        let mut next = Vec::new();
        for (signs, rep, closure) in cells {
            let slacks: Vec<Q> = closure
                .vertices()
                .expect("complete")
                .iter()
                .map(|v| wall.slack(v))
                .collect();
            let below = slacks.iter().any(Signed::is_negative);
            let above = slacks.iter().any(Signed::is_positive);
            if !(below && above) {
                // the wall misses the open cell, or contains it
                let mut target = signs;
                target.push(if above {
                    1
                } else if below {
                    -1
                } else {
                    0
                });
                next.push((target, rep, closure));
                continue;
            }
            for s in [-1i8, 0, 1] {
                let mut cons = closure.hrep().expect("complete").to_vec();
                cons.push(signed_constraint(wall, s));
                let child = polytope_convert(&QPolytope::from_hrep(d, cons)?, Direction::HToV)?;
                let Some(child_rep) = child.vertex_barycenter() else {
                    continue;
                };
                let mut target = signs.clone();
                target.push(s);
                let strictly_inside = facets.iter().all(|f| f.slack(&child_rep).is_positive());
                let realised = walls[..=wi]
                    .iter()
                    .zip(&target)
                    .all(|(w, &sg)| sign_of(w, &child_rep) == sg);
                if strictly_inside && realised {
                    next.push((target, child_rep, child));
                }
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let cells = cells
        .into_iter()
        .map(|(signs, representative, closure)| Cell {
            signs,
            representative,
            closure,
        })
        .collect::<Vec<_>>();
    Ok(Arrangement {
        ambient,
        walls: walls.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    /// {γ₁, γ₂ >= 0, γ₁ + γ₂ = 1}
    fn segment() -> QPolytope {
        QPolytope::from_hrep(
            2,
            vec![
                HalfSpace::ge(QVec::from_ints(&[1, 0]), q(0)).unwrap(),
                HalfSpace::ge(QVec::from_ints(&[0, 1]), q(0)).unwrap(),
                HalfSpace::eq(QVec::from_ints(&[1, 1]), q(1)).unwrap(),
            ],
        )
        .unwrap()
    }

    fn wall(a: i64, b: i64) -> HalfSpace {
        HalfSpace::eq(QVec::from_ints(&[a, b]), q(0)).unwrap()
    }

    #[test]
    fn no_walls_single_chamber() {
        let arr = arrangement_chambers(&segment(), &[]).unwrap();
        assert_eq!(arr.cells.len(), 1);
        assert!(arr.cells[0].is_chamber());
        assert_eq!(arr.cells[0].representative, QVec(vec![qr(1, 2), qr(1, 2)]));
    }

    /// Brute-force oracle: sample the open segment on a fine rational grid
    /// and collect the distinct sign vectors seen.
    fn grid_sign_vectors(walls: &[HalfSpace], steps: i64) -> Vec<Vec<i8>> {
        let mut seen = std::collections::BTreeSet::new();
        for i in 1..steps {
            let x = QVec(vec![qr(i, steps), qr(steps - i, steps)]);
            seen.insert(walls.iter().map(|w| sign_of(w, &x)).collect::<Vec<_>>());
        }
        seen.into_iter().collect()
    }

    #[test]
    fn one_wall_two_chambers_one_wall_cell() {
        let walls = vec![wall(1, -1)];
        let arr = arrangement_chambers(&segment(), &walls).unwrap();
        assert_eq!(arr.chambers().count(), 2);
        assert_eq!(arr.wall_cells().count(), 1);
        let found: Vec<Vec<i8>> = arr.cells.iter().map(|c| c.signs.clone()).collect();
        assert_eq!(found, grid_sign_vectors(&walls, 24));
    }

    #[test]
    fn two_walls_three_chambers() {
        let walls = vec![wall(1, -1), wall(1, -3)];
        let arr = arrangement_chambers(&segment(), &walls).unwrap();
        assert_eq!(arr.chambers().count(), 3);
        assert_eq!(arr.wall_cells().count(), 2);
        let found: Vec<Vec<i8>> = arr.cells.iter().map(|c| c.signs.clone()).collect();
        assert_eq!(found, grid_sign_vectors(&walls, 24));
        for c in &arr.cells {
            assert_eq!(arr.sign_vector(&c.representative), c.signs);
            for p in c.sample_points() {
                assert_eq!(arr.sign_vector(&p), c.signs);
            }
        }
    }

    #[test]
    fn wall_missing_the_interior() {
        // γ₁ = 0 only touches the boundary of the open segment.
        let arr = arrangement_chambers(&segment(), &[wall(1, 0)]).unwrap();
        assert_eq!(arr.cells.len(), 1);
        assert_eq!(arr.cells[0].signs, vec![1]);
    }

    #[test]
    fn triangle_with_three_medians() {
        let tri = QPolytope::from_hrep(
            3,
            vec![
                HalfSpace::ge(QVec::from_ints(&[1, 0, 0]), q(0)).unwrap(),
                HalfSpace::ge(QVec::from_ints(&[0, 1, 0]), q(0)).unwrap(),
                HalfSpace::ge(QVec::from_ints(&[0, 0, 1]), q(0)).unwrap(),
                HalfSpace::eq(QVec::from_ints(&[1, 1, 1]), q(1)).unwrap(),
            ],
        )
        .unwrap();
        let walls: Vec<HalfSpace> = [[1, -1, 0], [0, 1, -1], [1, 0, -1]]
            .iter()
            .map(|n| HalfSpace::eq(QVec::from_ints(n), q(0)).unwrap())
            .collect();
        let arr = arrangement_chambers(&tri, &walls).unwrap();
        // 6 chambers, 6 half-median rays, 1 centre point
        assert_eq!(arr.chambers().count(), 6);
        assert_eq!(arr.cells.len(), 13);
    }

    #[test]
    fn inequality_walls_rejected() {
        let w = HalfSpace::ge(QVec::from_ints(&[1, -1]), q(0)).unwrap();
        assert!(arrangement_chambers(&segment(), &[w]).is_err());
    }
}
