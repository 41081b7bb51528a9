//! Combinatorics of marked quiver settings: reduction to normal form, quotient
//! dimensions, smoothness, representation types and local quivers, and the
//! exhaustive classification of reduced singular settings in low dimension.

pub mod canon;
pub mod classify;
pub mod cores;
pub mod cycles;
pub mod dimension;
pub mod error;
pub mod fingerprint;
pub mod format;
pub mod moduli;
pub mod quiver;
pub mod reduction;
pub mod toric;

pub use canon::{are_isomorphic, automorphisms, canonical_form, canonical_key, CanonicalKey};
pub use classify::{
    enumerate_reduced_settings, enumerate_reduced_singularities, is_isolated,
    isolated_dimension, is_smooth, ClassificationTable, SingularityClass,
};
pub use cores::cycle_cores;
pub use cycles::{primitive_cycles, Cycle};
pub use dimension::{quotient_dimension, reduced_dimension};
pub use error::{Error, Result};
pub use fingerprint::{
    equivalent, fingerprint, graded_dimensions, Fingerprint, FingerprintNode, GradedDims, Verdict,
};
pub use moduli::{
    degeneration_leq, is_simple_dimension_vector, local_quiver, representation_types,
    LocalQuiverResult, RepresentationType,
};
pub use quiver::{euler_form, euler_matrix, EulerMatrix, MarkedQuiverSetting};
pub use reduction::{
    applicable_conditions, apply_big_loop_removal, apply_small_loop_removal,
    apply_vertex_removal, reduce, reduce_with_order, Condition, MoveKind, ReductionMove,
    ReductionOutcome,
};
