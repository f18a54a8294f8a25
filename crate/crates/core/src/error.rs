use thiserror::Error;

/// Failures of the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("undamped Lorentz resonance hit exactly at w = {w}")]
    LorentzPole { w: f64 },

    #[error("slab speed |beta| = {beta} must be strictly below 1")]
    Superluminal { beta: f64 },

    #[error("Cherenkov singularity: |1 - n^2 beta^2| = {gap:e}")]
    CherenkovSingularity { gap: f64 },

    #[error("Green tensor pole: |k_z^2 alpha + w^2 m^2 - n^2 w^2 alpha^2| = {denominator:e}")]
    GreenTensorPole { denominator: f64 },

    #[error("slab denominator vanishes (|d| = {denominator:e}): lossless Fabry-Perot degeneracy")]
    SlabDegeneracy { denominator: f64 },

    #[error("lossless limit: kappa = {kappa:e} leaves the noise normalization undefined")]
    LosslessLimit { kappa: f64 },

    #[error("absorptive part has negative diagonal entry {value:e}")]
    NonPassive { value: f64 },

    #[error("singular matrix in {context}")]
    SingularMatrix { context: &'static str },

    #[error("absorption matrix row norm {row_norm} differs from absorptance {absorptance}")]
    RowNormMismatch { row_norm: f64, absorptance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
