use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bracket error: h({lo}) = {h_lo}, h({hi}) = {h_hi} do not straddle target {target}")]
    Bracket {
        lo: f64,
        hi: f64,
        h_lo: f64,
        h_hi: f64,
        target: f64,
    },

    #[error("exponent is not harmonic: residual {residual:e} exceeds {tolerance:e}")]
    NotHarmonic { residual: f64, tolerance: f64 },

    #[error("branch error: {0}")]
    Branch(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("accuracy error in {what}: residual {residual:e} exceeds {tolerance:e}")]
    Accuracy {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("subordination violated: |omega({z})| = {image_modulus} > {modulus}")]
    Subordination {
        z: String,
        image_modulus: f64,
        modulus: f64,
    },

    #[error("not in space: {0}")]
    NotInSpace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
