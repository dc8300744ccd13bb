use thiserror::Error;

pub type Result<T> = std::result::Result<T, FrError>;

#[derive(Debug, Error)]
pub enum FrError {
    // incidence
    #[error("incidence structure is empty: {0}")]
    EmptyStructure(String),
    #[error("point label {0} is listed more than once")]
    DuplicatePointLabel(u64),
    #[error("block {block} contains unknown point label {label}")]
    UnknownPoint { block: usize, label: u64 },
    #[error("block {block} contains point {label} more than once")]
    RepeatedIncidence { block: usize, label: u64 },
    #[error("block {block} has {found} points, expected {expected}")]
    NonUniformBlockSize { block: usize, expected: usize, found: usize },
    #[error("point {point} lies in {found} blocks, expected {expected}")]
    NonUniformPointDegree { point: u64, expected: usize, found: usize },
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    // graphs
    #[error("{n} vertices cannot be split into {r} equal parts")]
    NonDivisible { n: usize, r: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("graph is not regular: vertex {vertex} has degree {found}, expected {expected}")]
    NotRegular { vertex: usize, expected: usize, found: usize },

    // designs
    #[error("no Steiner triple system of order {0} (need order >= 7 and 1 or 3 mod 6)")]
    InadmissibleOrder(u64),
    #[error("code is not a Steiner system: pair ({0}, {1}) is not covered exactly once")]
    NotSteiner(u64, u64),
    #[error("rho = {rho} out of range 1..={max}")]
    RhoOutOfRange { rho: usize, max: usize },
    #[error("rho = {rho} violates the closed-form side condition for q = {q}, m = {m}")]
    SideConditionViolated { q: u64, m: u32, rho: usize },
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("squares {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("Latin square orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    // file size
    #[error("reconstruction degree k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("dual degree l = {ell} out of range 1..={theta}")]
    EllOutOfRange { ell: usize, theta: usize },
    #[error("search exceeded the work budget of {0} nodes")]
    SizeLimitExceeded(u64),

    // distance
    #[error("point {0} has a single replica and cannot be repaired")]
    Unrepairable(u64),
    #[error("file size M = {m} out of range 1..={theta}")]
    FileTooLarge { m: usize, theta: usize },
    #[error("outside theorem range: {0}")]
    OutOfTheoremRange(String),
    #[error("degenerate denominator 8*alpha - 14 for alpha = {0}")]
    DegenerateDenominator(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
