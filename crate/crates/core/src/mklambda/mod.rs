//! CM line bundle weights of product test configurations induced by
//! diagonal one-parameter subgroups, and the linearization they induce on
//! tuples of boundary hypersurfaces.

pub mod cm;
pub mod detweight;
pub mod effective;
pub mod interp;

pub use cm::{
    cm_weight, mk_top_coefficients, Beta, CMWeightReport, CMWeightReportJson, EquivariantFamily,
    LinearInBeta, MkCoefficients, Route,
};
pub use detweight::equivariant_det_weight;
pub use effective::{anticanonical_dictionary, effective_linearization, EffectiveLinearization};
