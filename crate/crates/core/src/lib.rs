//! Exact topological invariants of cyclic branched covers of products of
//! curves, the surface bundles they carry, and bounds on the minimal base
//! genus of surface bundles with given fiber genus and signature.
//!
//! Every quantity is an arbitrary-precision integer or rational. Nothing is
//! rounded: a formula whose exact value is not integral is reported as an
//! error instead.

pub mod bounds;
pub mod cli;
pub mod construction;
mod error;
pub mod monodromy;
pub mod signature;
pub mod surface;
pub mod topology;

pub mod serial;

pub use error::{Error, Result};

pub use bounds::{
    bfm_upper, bounds_table, ekkos_upper, gf_upper, kotschick_lower, BoundKind, BoundReport,
    BoundSource, BoundsRow, BoundsTable, Witness,
};
pub use construction::{
    build_simple_genus2, build_xgn, cross_validate, pullback, BundleRecord, Check,
    ConstructionKind, ConstructionParams, ConstructionReport, CoverStep, CoverTower,
};
pub use monodromy::{cyclic_cover_spec, CoverFile, Perm, PermutationCover};
pub use serial::format_rational;
pub use signature::{hirzebruch_signature, signature_quantum, CyclicCoverSpec};
pub use surface::{BranchClass, GraphDivisor};
pub use topology::{
    branched_cover_euler, euler_from_genus, genus_from_euler, rh_cover_genus, EulerChar, Genus,
    RamificationProfile,
};
