use thiserror::Error;

/// Crate-wide error type.
///
/// `ResourceExceeded` is kept distinct from every other failure: resource
/// exhaustion must never be confused with a negative mathematical answer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not elementary abelian")]
    NotElementaryAbelian,
    #[error("not an A-group: Sylow {p}-subgroup is nonabelian")]
    NotAGroup { p: u32 },
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element not in the image of the homomorphism")]
    NotInImage,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
    #[error("resource limit exceeded in {what} (limit {limit})")]
    ResourceExceeded { what: String, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn resource(what: impl Into<String>, limit: u128) -> Self {
        Error::ResourceExceeded { what: what.into(), limit }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. })
    }
}
