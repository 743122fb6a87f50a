use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a poset of {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("order contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("poset has {0} elements; at most {max} are supported", max = crate::MAX_ELEMENTS)]
    TooManyElements(usize),
    #[error("joins and meets of the empty set are not taken")]
    EmptySet,
    #[error("the empty set cannot belong to a join-specification")]
    EmptyMember,
    #[error("set {0} has no join")]
    NoJoin(String),
    #[error("cardinal bound must be at least {min}, got {got}")]
    CardinalTooSmall { min: usize, got: String },
    #[error("join-specifications or closure families live on different posets")]
    PosetMismatch,
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("closure family is not intersection-closed: {0}")]
    NotIntersectionClosed(String),
    #[error("closure family does not contain the whole poset")]
    MissingTop,
    #[error("closed set {0} is not a down-set")]
    NotDownSet(String),
    #[error("closure family is not standard at element `{0}`")]
    NotStandard(String),
    #[error("enumeration would exceed the size guard of {limit} items")]
    SizeGuard { limit: u64 },
    #[error("poset is not LMD_{alpha}: a = `{a}`, X = {x}")]
    NotLmd { alpha: String, a: String, x: String },
    #[error("ground set of {0} points exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
