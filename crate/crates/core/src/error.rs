use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("candidate count {0} is outside the supported range 1..={max}", max = crate::MAX_CANDIDATES)]
    CandidateCount(usize),
    #[error("profile needs at least one voter")]
    NoVoters,
    #[error("ranking is not a permutation of {n} candidates: {detail}")]
    NotAPermutation { n: usize, detail: String },
    #[error("ranking has {got} candidates but the profile has {expected}")]
    RankingLength { expected: usize, got: usize },
    #[error("voter {voter} is out of range for a profile with {voters} voters")]
    VoterOutOfRange { voter: usize, voters: usize },
    #[error("pairwise comparison needs two distinct candidates")]
    InvalidPair,
    #[error("cannot restrict a ranking to an empty candidate set")]
    EmptyRestriction,
    #[error("scoring vector has {got} weights for {expected} live candidates")]
    ScoringVectorLength { expected: usize, got: usize },
    #[error("scoring vector must be non-increasing")]
    ScoringVectorOrder,
    #[error("dominance comparison needs nonempty sets")]
    EmptySet,
    #[error("the new ranking is identical to the voter's current ranking")]
    IdenticalRanking,
    #[error("uncertainty set must be nonempty")]
    EmptyUncertaintySet,
    #[error("uncertainty set lists {0} more than once")]
    DuplicateMethod(String),
    #[error("invalid method weights: {0}")]
    Weights(String),
    #[error("notion `single` requires exactly one method, got {0}")]
    SingleNeedsOneMethod(usize),
    #[error("construction requires {expected} candidates, profile has {got}")]
    ConstructionArity { expected: usize, got: usize },
    #[error("profile space ({n}!)^{m} exceeds the budget of {budget} profiles")]
    BudgetExceeded { n: usize, m: usize, budget: u64 },
    #[error("this query needs an exhaustive census; sampling cannot certify a zero count")]
    ExhaustiveRequired,
    #[error("sample count must be at least 1")]
    EmptySample,
    #[error("elimination needs an uncertainty set with at least two methods")]
    EliminationArity,
    #[error("lottery is not normalized: {0}")]
    Lottery(String),
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
