use core::fmt;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    OutsideBall {
        norm: f64,
    },
    NotUnitVector {
        norm: f64,
    },
    DegreeExceeded {
        order: u32,
        degree: u32,
    },
    /// Argument within tolerance of a pole of Γ.
    Pole {
        x: f64,
    },
    InvalidParams(&'static str),
    NonConvergent(&'static str),
    RegimeMismatch(&'static str),
    NotLacunary,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::OutsideBall { norm } => write!(f, "point with |z| = {norm} is not inside the ball"),
            Error::NotUnitVector { norm } => write!(f, "expected a unit vector, got |z| = {norm}"),
            Error::DegreeExceeded { order, degree } => {
                write!(f, "term of order {order} exceeds truncation degree {degree}")
            }
            Error::Pole { x } => write!(f, "gamma pole at or near {x}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::NonConvergent(msg) => write!(f, "not convergent: {msg}"),
            Error::RegimeMismatch(msg) => write!(f, "regime mismatch: {msg}"),
            Error::NotLacunary => f.write_str("orders are not lacunary"),
        }
    }
}

impl core::error::Error for Error {}
