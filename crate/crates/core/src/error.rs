use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("symplectic family needs an even n, got {0}")]
    OddSymplecticN(usize),

    #[error("character table for S_{d} exceeds the configured bound {bound}")]
    CharacterBound { d: usize, bound: usize },

    #[error("weight {weight} does not fit {algebra} at rank {rank}")]
    WeightDoesNotFit {
        algebra: String,
        rank: usize,
        weight: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sequences are defined over different quivers")]
    QuiverMismatch,

    #[error("invalid point data sequence: {0}")]
    InvalidSequence(String),

    #[error("golden data: {0}")]
    Golden(String),
}

pub type Result<T> = std::result::Result<T, Error>;
