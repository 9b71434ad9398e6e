//! Exact computations around K-stability of pairs `(Pⁿ, Σ xⱼ Sⱼ)` and the
//! variation of GIT quotients for tuples of hypersurfaces.
//!
//! * [`qgeom`]: rational linear algebra, polytopes, hull certificates,
//!   arrangement cells.
//! * [`logfano`]: S- and β-invariants, the K-semistable polytope, the
//!   extremal a-vector and the cone chain.
//! * [`mklambda`]: CM line bundle weights of product test configurations,
//!   by three independent routes.
//! * [`githm`]: Hilbert–Mumford weights, torus stability and VGIT walls.
//! * [`conedeg`]: Hilbert function identities for projective cones over
//!   complete intersections.

pub mod conedeg;
pub mod error;
pub mod githm;
pub mod logfano;
pub mod mklambda;
pub mod qgeom;
pub mod rational;

pub use error::{Error, ErrorKind, Result};
pub use rational::{QVec, Q};
