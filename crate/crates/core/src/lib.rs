//! Hypermaps as permutation flag systems: partial duality, genus
//! polynomials over all hyperedge subsets, and the constructions that
//! relate them.

pub mod constructions;
mod dsu;
pub mod duality;
pub mod error;
pub mod generators;
pub mod genus_poly;
pub mod hmf;
pub mod hypermap;
pub mod notation;
pub mod perm;
pub mod report;
pub mod verify;
pub mod walsh;

pub use constructions::{
    add_pendant_vertex, bar_amalgamation, corner_face_count, join, subdivide3, AmalgamationPicks,
    CornerRef,
};
pub use duality::{dual, partial_dual, EdgeSubset};
pub use error::{ClassKind, Error, Result};
pub use generators::{Family, FamilyParams};
pub use genus_poly::{
    euler_genus_polynomial, orientable_genus_polynomial, spectrum_report, Engine, EngineConfig,
    GenusPolynomial,
};
pub use hypermap::{Class, ClassSpec, CountsBundle, Hypermap};
pub use notation::{format_cycles, parse_cycles, parse_permutation, CycleSet, LabelTable};
pub use perm::Permutation;
pub use report::{IdentityCheck, Status};
pub use verify::{verify, VerifyConfig, VerifyReport};
