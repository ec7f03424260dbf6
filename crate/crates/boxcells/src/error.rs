use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A direction or normal vector was identically zero.
    ZeroDirection,
    /// An operation that needs strictly positive coordinates saw one that is not.
    NonPositiveCoordinate(usize),
    /// Dimension 0, or a mismatch between the dimensions of two arguments.
    DimensionMismatch,
    /// The requested dimension exceeds what the chosen numeric path supports.
    DimensionTooLarge { dim: usize, max: usize },
    /// Box side length must be positive (and integral where counting is involved).
    InvalidBox,
    /// Slab width must be positive.
    InvalidWidth,
    /// A precondition of the operation does not hold; the message says which.
    Precondition(String),
    /// The body (or the region passed to an optimizer) has no feasible point.
    Infeasible,
    /// The basis matrix does not have determinant plus or minus one.
    NotUnimodular,
    /// The strip ellipsoid collapsed; callers fall back to the standard basis.
    DegenerateEllipsoid,
    /// Floating-point breakdown that also survived the exact-arithmetic retry.
    Numerical(String),
    /// A test fixture violated its own certificate (for example K not inside L).
    BadFixture(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDirection => write!(f, "direction vector must be nonzero"),
            Error::NonPositiveCoordinate(i) => {
                write!(f, "coordinate {i} must be strictly positive")
            }
            Error::DimensionMismatch => write!(f, "dimension is zero or arguments disagree"),
            Error::DimensionTooLarge { dim, max } => {
                write!(f, "dimension {dim} exceeds the supported maximum {max}")
            }
            Error::InvalidBox => write!(f, "box side length must be positive"),
            Error::InvalidWidth => write!(f, "slab width must be positive"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Infeasible => write!(f, "the feasible region is empty"),
            Error::NotUnimodular => write!(f, "basis determinant must be +1 or -1"),
            Error::DegenerateEllipsoid => write!(f, "inscribed ellipsoid is degenerate"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::BadFixture(msg) => write!(f, "bad test fixture: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
