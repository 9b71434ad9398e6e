//! Hilbert–Mumford stability of tuples of hypersurfaces and the variation
//! of GIT walls in the linearization simplex.
//!
//! Sign convention: `μ(f, w) = -min ⟨α, w⟩` over the support of `f`, and a
//! tuple is semistable when `Σγⱼμ(fⱼ, w) >= 0` for every one-parameter
//! subgroup `w`.

pub mod candidates;
pub mod form;
pub mod oneps;
pub mod stability;
pub mod vgit;

pub use candidates::{candidate_one_ps, DEFAULT_CAP};
pub use form::{pairwise_distinct, parse_forms_json, Form, FormJson};
pub use oneps::{hm_weight, OnePS};
pub use stability::{
    git_check, git_check_capped, parse_frames_json, torus_semistable, torus_semistable_capped,
    FrameStrategy, StabilityVerdict, Status, TupleConfig,
};
pub use vgit::{vgit_chambers, VgitChambers, Wall, Witness};
