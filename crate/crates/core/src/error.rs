use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants carry enough data to name the predicate that failed; the CLI maps
/// them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is too small: the construction needs a prime p >= 5")]
    TooSmall(u64),

    #[error("p = {0} is not prime")]
    NotPrime(u64),

    #[error("p = {p} exceeds the supported word-size bound {max}")]
    TooLarge { p: u64, max: u64 },

    #[error("{value} lies outside X_p = {{1, ..., {max}}}")]
    OutOfRange { value: i64, max: u64 },

    #[error("exponents ({alpha}, {beta}) are degenerate: alpha + beta = 0 mod {p}")]
    Degenerate { alpha: u64, beta: u64, p: u64 },

    #[error("p = {0} is 2 mod 3, so there is no root of g^2 + g + 1 = 0")]
    NoGamma(u64),

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("element {0} does not belong to the group")]
    ForeignElement(String),

    #[error("Riemann-Hurwitz data is inconsistent: {0}")]
    InconsistentRh(String),

    #[error("orbifold covering data is inconsistent: {0}")]
    InconsistentOrbifold(String),

    #[error("subgroup is not contained in H = <a1, a2>")]
    NotSubgroupOfH,

    #[error("no fixed-point count recorded for {0}")]
    FixUndefined(String),

    #[error("no (2, 3, 2p) generating triple found for p = {0}")]
    SearchExhausted(u64),

    #[error("fixed-point count requested for the identity")]
    IdentityInput,

    #[error("substitution left the monomial set: {0}")]
    NonMonomial(String),

    #[error("audit failed: {0}")]
    AuditFail(String),

    #[error("decomposition does not match the group-algebra shape: {0}")]
    ShapeMismatch(String),

    #[error("cannot parse word {0:?}")]
    BadWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
