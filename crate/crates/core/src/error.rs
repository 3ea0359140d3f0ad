use std::fmt;

use serde::Serialize;

/// Which half of the flag system a class belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Vertex,
    Hyperedge,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Vertex => f.write_str("vertex"),
            ClassKind::Hyperedge => f.write_str("hyperedge"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("permutation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("image is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("label {0} appears more than once")]
    RepeatedLabel(u64),
    #[error("label {0} is not declared")]
    UnknownLabel(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("label {label} is missing from the {kind} section")]
    MissingLabel { kind: ClassKind, label: u64 },
    #[error("label {label} appears twice in the {kind} section")]
    DuplicateLabel { kind: ClassKind, label: u64 },
    #[error("{kind} {name}: the two cycles have different lengths")]
    PairLengthMismatch { kind: ClassKind, name: String },
    #[error("{kind} {name}: iota does not map its cycle onto the declared partner")]
    PartnerMismatch { kind: ClassKind, name: String },
    #[error("{kind} orbit through label {label} is its own iota image")]
    SelfPairedOrbit { kind: ClassKind, label: u64 },
    #[error("no side-pairing involution satisfies the mirror axioms")]
    IotaUnsolvable,
    #[error("invalid iota: {0}")]
    InvalidIota(String),
    #[error("hypermap is not connected")]
    NotConnected,
    #[error("hypermap is not orientable")]
    NotOrientable,
    #[error("{edges} hyperedges exceed the enumeration cap of {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("edge cap {0} is above the supported maximum of 62")]
    InvalidEdgeCap(usize),
    #[error("polynomial coefficient overflow")]
    CoefficientOverflow,
    #[error("engines disagree on subset {mask:#b}: direct {direct}, formula {formula}")]
    EngineMismatch {
        mask: u64,
        direct: i64,
        formula: i64,
    },
    #[error("bad corner: {0}")]
    BadCorner(String),
    #[error("vertex {0} is picked twice")]
    DuplicateVertexPick(String),
    #[error("vertex {vertex} is not incident to hyperedge {hyperedge}")]
    PickNotOnHyperedge { vertex: String, hyperedge: String },
    #[error("hyperedge {hyperedge} has {degree} incidences; only 3 is supported")]
    EdgeDegreeUnsupported { hyperedge: String, degree: usize },
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("family {family} does not accept size {n}")]
    InvalidFamilySize { family: String, n: usize },
    #[error("unknown hyperedge {0}")]
    UnknownHyperedge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("subset {mask:#b} does not fit {edges} hyperedges")]
    SubsetOutOfRange { mask: u64, edges: usize },
    #[error("invalid bipartite map: {0}")]
    InvalidBipartite(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::NotABijection(_) => "NotABijection",
            Error::RepeatedLabel(_) => "RepeatedLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::Parse { .. } => "Parse",
            Error::MissingLabel { .. } => "MissingLabel",
            Error::DuplicateLabel { .. } => "DuplicateLabel",
            Error::PairLengthMismatch { .. } => "PairLengthMismatch",
            Error::PartnerMismatch { .. } => "PartnerMismatch",
            Error::SelfPairedOrbit { .. } => "SelfPairedOrbit",
            Error::IotaUnsolvable => "IotaUnsolvable",
            Error::InvalidIota(_) => "InvalidIota",
            Error::NotConnected => "NotConnected",
            Error::NotOrientable => "NotOrientable",
            Error::EdgeCapExceeded { .. } => "EdgeCapExceeded",
            Error::InvalidEdgeCap(_) => "InvalidEdgeCap",
            Error::CoefficientOverflow => "CoefficientOverflow",
            Error::EngineMismatch { .. } => "EngineMismatch",
            Error::BadCorner(_) => "BadCorner",
            Error::DuplicateVertexPick(_) => "DuplicateVertexPick",
            Error::PickNotOnHyperedge { .. } => "PickNotOnHyperedge",
            Error::EdgeDegreeUnsupported { .. } => "EdgeDegreeUnsupported",
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::InvalidFamilySize { .. } => "InvalidFamilySize",
            Error::UnknownHyperedge(_) => "UnknownHyperedge",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::SubsetOutOfRange { .. } => "SubsetOutOfRange",
            Error::InvalidBipartite(_) => "InvalidBipartite",
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
