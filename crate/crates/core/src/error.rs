use thiserror::Error;

/// Every failure the library can report. Witnesses are rendered as strings so
/// errors stay cheap to clone and print; the structured data lives in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("algebra is not of quadratic type: {0}")]
    NotQuadraticType(String),
    #[error("quadratic form is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("quadratic form is isotropic: {0}")]
    Isotropic(String),
    #[error("cannot decide nonisotropy: {0}")]
    UnknownNonisotropy(String),
    #[error("input is not a homogeneous quadratic form: {0}")]
    NotQuadratic(String),
    #[error("associativity fails on basis triple {0}")]
    AssociativityViolation(String),
    #[error("unit is not a two-sided identity: {0}")]
    UnitViolation(String),
    #[error("zero divisor found: {0}")]
    ZeroDivisorFound(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant subspaces are not totally ordered: {0}")]
    NotTotallyOrdered(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("duality map is singular: {0}")]
    SingularDuality(String),
    #[error("form is not sesquilinear: {0}")]
    NotSesquilinear(String),
    #[error("alternator space has dimension {0}, expected 1")]
    AltNotOneDimensional(usize),
    #[error("twisted form is not proportional: {0}")]
    NotProportional(String),
    #[error("space is not target-reduced")]
    NotTargetReduced,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("rows are not collinear: {0}")]
    NotCollinear(String),
    #[error("spanning rank too low: {0}")]
    SpanningRankTooLow(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("hyperplane contains the unit: {0}")]
    HyperplaneContainsUnit(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension is not optimal: {0}")]
    NotOptimalDim(String),
    #[error("spectrum is not trivial: {0}")]
    SpectrumNotTrivial(String),
    #[error("cardinality hypothesis fails: {0}")]
    CardinalityHypothesisFails(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("form is not nonisotropic: {0}")]
    NotNonisotropic(String),
    #[error("characteristic 2 is not allowed here")]
    CharTwo,
    #[error("algebra is not of separable type: {0}")]
    NotSeparableType(String),
    #[error("trace form is degenerate: {0}")]
    DegenerateTrace(String),
    #[error("wrong profile: {0}")]
    WrongProfile(String),
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("classification failed at {location}: {source}")]
    Pipeline {
        location: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), msg: msg.into() }
    }

    pub fn at(self, location: impl Into<String>) -> Self {
        Error::Pipeline { location: location.into(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
