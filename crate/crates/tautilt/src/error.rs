use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation not parallel: {0}")]
    RelationNotParallel(String),
    #[error("relation not admissible: {0}")]
    NotAdmissibleRelation(String),
    #[error("not admissible at bound {bound}: path {path} does not reduce to zero")]
    NotAdmissibleAtBound { bound: usize, path: String },
    #[error("quiver has an oriented cycle")]
    OrientedCycle,
    #[error("unit mismatch: {0}")]
    UnitMismatch(String),
    #[error("not associative: {0}")]
    NotAssociative(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("provenance mismatch: {0}")]
    Provenance(String),
    #[error("zero module where a nonzero one is required")]
    ZeroModule,
    #[error("input is not projective: {0}")]
    NotProjective(String),
    #[error("not in subcategory: {0}")]
    NotInSubcategory(String),
    #[error("enumeration route unavailable: {0}")]
    RouteUnavailable(String),
    #[error("not jointly rigid: {0}")]
    NotJointlyRigid(String),
    #[error("no preimage: {0}")]
    NoPreimage(String),
    #[error("non-unique preimage: {0}")]
    NonUniquePreimage(String),
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("not hereditary: {0}")]
    NotHereditary(String),
    #[error("residue field larger than the rationals: {0}")]
    ResidueField(String),
    #[error("tau-tilting infinite input: {0}")]
    TauTiltingInfinite(String),
    #[error("minimal generating subset not unique: {0}")]
    NonUniqueSplit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
