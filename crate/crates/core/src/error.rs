use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Variants carry a rendered witness so
/// callers (the CLI in particular) can print the exact offending object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid vertex label {0:?}: labels are nonempty and contain no whitespace, brackets, commas or '|'")]
    InvalidLabel(String),
    #[error("cone apex {0} is already a vertex of the complex")]
    VertexClash(String),
    #[error("vertex map is not total: no image for source vertex {0}")]
    IncompleteMap(String),
    #[error("map is not simplicial: image of {0} is not a target simplex")]
    NotSimplicial(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("level mismatch: expected level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("cannot coarsen a star-set from level {from} to level {to}")]
    CannotCoarsen { from: usize, to: usize },
    #[error("subdivision level {requested} exceeds the configured budget {budget}")]
    LevelBudgetExceeded { requested: usize, budget: usize },
    #[error("invalid star-set: {0}")]
    InvalidStarSet(String),
    #[error("invalid cover sequence: {0}")]
    InvalidCover(String),
    #[error("space not covered: vertex {0} lies in no cover element")]
    NoCoverage(String),
    #[error("unknown cover element {0}")]
    UnknownCoverElement(String),
    #[error("kappa must be at least 1")]
    EmptyPrefix,
    #[error("kappa {kappa} exceeds the {levels} available levels")]
    TooFewLevels { kappa: usize, levels: usize },
    #[error("unknown carrier simplex {0}")]
    UnknownCarrier(String),
    #[error("not a refinement: fine element {0} is contained in no coarse element of its level")]
    NotARefinement(String),
    #[error("level {level} is not pairwise-disjoint: {first} and {second} overlap")]
    NotPairwiseDisjoint { level: usize, first: String, second: String },
    #[error("cannot compose maps: {0}")]
    ComposeError(String),
    #[error("map is not canonical: preimage of the star of {0} escapes its cover element")]
    NotCanonical(String),
    #[error("cone witness fails: {0}")]
    WitnessFailure(String),
    #[error("skeleton condition fails: {0}")]
    SkeletonViolation(String),
    #[error("carrier table value for {0} is empty")]
    EmptyValue(String),
    #[error("carrier table is not monotone: {smaller} is a face of {larger} but its value is not contained")]
    NotMonotone { smaller: String, larger: String },
    #[error("invalid carrier table: {0}")]
    InvalidTable(String),
    #[error("arity mismatch: {0}")]
    ArityError(String),
    #[error("mapping sequence has no cone witness")]
    NoConeWitness,
    #[error("constructor needs n >= dim(space) = {dim}, got n = {n}")]
    DimensionTooLow { n: usize, dim: usize },
}
