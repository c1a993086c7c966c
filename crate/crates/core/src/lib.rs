//! Exact Lie-theoretic toolkit for isometric actions on Minkowski space `R^{3,1}`.
//!
//! The crate models the isometry algebra `so(3,1) ⋉ R^{3,1}` and its group,
//! decides closure and normal forms of subalgebras, computes orbit dimensions
//! and causal types with exact rational arithmetic, and certifies (non)properness
//! for a built-in catalog of cohomogeneity-one actions.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod group;
pub mod linalg;
pub mod orbit;
pub mod parse;
pub mod poly;
pub mod properness;
pub mod subalgebra;
pub mod verify;

pub use algebra::{
    adjoint, bracket, fundamental_field, lift_constraints, standard_generator, GeneratorLabel,
    IsoAlgebraElement, LorentzAlgebraElement,
};
pub use catalog::{builtin_catalog, find_entry, CatalogEntry, Params};
pub use error::{Error, Result};
pub use group::{exp_element, exp_element_f64, IsometryElement, Isometry, NumericIsometry};
pub use linalg::{causal_type, mink_inner, solve_linear, CausalClass, CausalKind, Mat4, MinkVector, Scalar};
pub use orbit::{cohomogeneity, orbit_dimension, CohomReport, OrbitReport, OrbitSpaceType};
pub use properness::{build_witness, check_witness, PropernessVerdict, VerdictKind};
pub use subalgebra::{closure_check, match_catalog, one_param_type, OneParamType, Subalgebra};
pub use verify::{verify_all, verify_entry, EntryReport, VerifyOptions};
