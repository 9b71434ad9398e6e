//! Exact rational linear algebra and convex geometry.

pub mod arrangement;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod polytope;

pub use arrangement::{arrangement_chambers, Arrangement, Cell};
pub use hull::{hull_membership, in_relative_interior, HullMembership};
pub use linalg::{solve_linear_system, LinearSolution, QMatrix};
pub use polytope::{polytope_convert, Direction, HalfSpace, PolytopeJson, QPolytope, Relation};
