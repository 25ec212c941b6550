use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("port {port} out of range for a detector with {ports} ports")]
    PortOutOfRange { port: usize, ports: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("visibility is undefined when max + min is not positive")]
    UndefinedVisibility,

    #[error("fit needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("fringe basis is rank deficient (all phase differences coincide)")]
    RankDeficient,
}
