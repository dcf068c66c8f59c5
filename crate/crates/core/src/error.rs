use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node set is empty")]
    EmptyNodeSet,
    #[error("nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),
    #[error("mapped values of nodes {0} and {1} coincide")]
    DegenerateMap(usize, usize),
    #[error("non-finite scalar value")]
    NonFinite,
    #[error("additive shift step must be nonzero")]
    ZeroStep,
    #[error("multiplicative shift must differ from 1")]
    UnitQ,
    #[error("node {0} is zero")]
    ZeroNode(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no eigen-direction")]
    ZeroVector,
    #[error("operation requires an exact backend")]
    BackendMismatch,
    #[error("coefficient of power {power} has a pole at node {node}")]
    CoefficientPoleAtNode { power: usize, node: usize },
    #[error("operator expression repeats power {0}")]
    RepeatedPower(usize),
    #[error("vanishing denominator in series term {0}")]
    DenominatorPole(usize),
    #[error("coefficient function {0} has a pole at the argument")]
    PoleAtArgument(&'static str),
    #[error("coefficient function {function} has a pole at node {node}")]
    PoleAtNode { function: &'static str, node: usize },
    #[error("leading coefficient of degree-{0} polynomial vanishes")]
    DegenerateLeadingCoefficient(usize),
    #[error("root iteration did not converge after {0} iterations")]
    NonConvergence(usize),
    #[error("zeros {0} and {1} are not separated")]
    MultipleRoot(usize, usize),
    #[error("variable map cannot be inverted at {0}")]
    BranchFailure(String),
    #[error("parameter {0} is invalid: {1}")]
    InvalidParameter(&'static str, String),
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
}
