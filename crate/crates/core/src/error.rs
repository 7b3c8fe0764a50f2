use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Why Diophantus' factor-and-split method cannot pick a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inapplicable {
    /// u² − v² does not split into rational linear factors, so the quadric
    /// carries no rational line.
    IrreducibleDifference,
    /// The difference splits but no rational point is known to anchor λ
    /// (neither leading coefficient setup of Heath's cases applies).
    NoLambda,
    /// A first-order equation needs the caller's factor pair.
    FactorsRequired,
    /// First-order equation whose difference is not constant.
    NonConstantDifference,
}

impl core::fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Inapplicable::IrreducibleDifference => "irreducible difference: no rational line on the quadric",
            Inapplicable::NoLambda => "no λ: no rational point at infinity to anchor the pencil",
            Inapplicable::FactorsRequired => "first-order double equation needs a factor pair",
            Inapplicable::NonConstantDifference => "first-order double equation with non-constant difference",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("method inapplicable: {0}")]
    MethodInapplicable(Inapplicable),
    #[error("degenerate secant: a square-root coordinate of the base point is zero")]
    DegenerateSecant,
    #[error("tangential degeneracy: h(x0) = 0")]
    TangentialDegeneracy,
    #[error("solution lies at infinity")]
    PointAtInfinity,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not on the surface {0}")]
    NotOnSurface(String),
    #[error("missing coordinate {0}")]
    MissingCoordinate(String),
    #[error("map is undefined at this point: {0}")]
    Indeterminate(String),
    #[error("bad reduction modulo {0}")]
    BadReduction(u64),
    #[error("prime {0} divides a coefficient denominator")]
    PrimeDividesDenominator(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
    #[error("unknown problem {0:?}")]
    UnknownProblem(String),
}
