use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mask order: {0}")]
    InvalidOrder(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("truncation depth {required} exceeds cap {cap} for |xi| = {xi:.6e}")]
    DepthExhausted { required: u32, cap: u32, xi: f64 },

    #[error("invalid system configuration: {0}")]
    InvalidConfig(String),

    #[error("tiling coverage gap at frequency ({xi1:.6}, {xi2:.6})")]
    CoverageGap { xi1: f64, xi2: f64 },

    #[error("near-singular frame: min gamma {min_gamma:.3e} below 1e-6 of max gamma {max_gamma:.3e}")]
    NearSingularFrame { min_gamma: f64, max_gamma: f64 },

    #[error("invalid cartoon spec: {0}")]
    InvalidCartoon(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
