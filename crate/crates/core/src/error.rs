use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which of the three admissibility conditions on an auxiliary choice failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxCondition {
    /// `X ∈ U1 ∈ Γ(G_{X|Y})`.
    U1,
    /// `Y ∈ U2 ∈ Γ(G_{Y|X})`.
    U2,
    /// `(U1, U2) ∈ W ∈ Γ(G_{U1U2})`.
    W,
    /// Time-sharing weights.
    TimeShare,
}

impl fmt::Display for AuxCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuxCondition::U1 => "(i) X ∈ U1 ∈ Γ(G_X|Y)",
            AuxCondition::U2 => "(ii) Y ∈ U2 ∈ Γ(G_Y|X)",
            AuxCondition::W => "(iii) (U1,U2) ∈ W ∈ Γ(G_U1U2)",
            AuxCondition::TimeShare => "time-sharing weights",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("size cap exceeded: {what} needs {needed} > {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error("guard exceeded: {what} on {size} vertices (guard {guard})")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graphs have different vertex sets")]
    VertexMismatch,
    #[error("auxiliary choice violates {condition}: {detail}")]
    AuxChoice {
        condition: AuxCondition,
        detail: String,
    },
    #[error("support of p_XY is not the full product set")]
    NotFullSupport,
    #[error("invalid color cover: {0}")]
    InvalidCover(String),
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("instances do not share the same joint source")]
    SourceMismatch,
}
