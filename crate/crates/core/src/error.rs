use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),

    #[error("kernel evaluated at coincident points ({x}, {y})")]
    CoincidentPoints { x: f64, y: f64 },

    #[error("unsupported quadrature order {0} (expected 1..=64)")]
    QuadratureOrder(usize),

    #[error("matrix is numerically singular: pivot {pivot:.3e} below {threshold:.3e} at column {column}")]
    SingularMatrix { column: usize, pivot: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("evaluation point ({x}, {y}) is not admissible: {reason}")]
    InadmissiblePoint { x: f64, y: f64, reason: String },

    #[error("invalid solver configuration: {0}")]
    Config(String),

    #[error("failed to parse {what}: {message}")]
    Parse { what: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
