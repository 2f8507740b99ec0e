use thiserror::Error;

use crate::rootsys::LieType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("cannot parse Lie type {0:?} (expected a family letter A-G followed by a rank, e.g. \"D4\")")]
    ParseType(String),

    #[error("vector is not a root of {0}")]
    NotARoot(LieType),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bilinear form is singular")]
    SingularForm,

    #[error("root heights are not weakly decreasing in multiplicity; root system is corrupt")]
    CorruptHeights,

    #[error("Weyl orbit exceeds the cap of {cap} vectors")]
    OrbitCapExceeded { cap: usize },

    #[error("{family} generators are not available for {lie_type}")]
    UnsupportedFamily { family: &'static str, lie_type: LieType },

    #[error("invariant of degree {degree} is identically zero (seed {seed})")]
    ZeroInvariant { degree: u32, seed: String },

    #[error(
        "differentials at the regular point are linearly dependent: rank {rank} < {expected}; \
         first dependent generator is #{index} ({label}). {hint}"
    )]
    Dependent { rank: usize, expected: usize, index: usize, label: String, hint: String },

    #[error("Gram-Schmidt input is linearly dependent at index {index} (zero pivot)")]
    DependentInput { index: usize },

    #[error("vectors do not span a sigma-invariant plane")]
    NotSigmaInvariant,

    #[error("sigma refinement requires type D with even rank, got {0}")]
    NotDEven(LieType),

    #[error("seed weight index {index} out of range for rank {rank}")]
    InvalidSeedWeight { index: usize, rank: usize },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("{0} requires the explicit opt-in flag (full E8 orbit work can approach the orbit cap of {1} vectors)")]
    E8NotAllowed(LieType, usize),

    #[error("orbit cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
