use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A size that must be at least one was zero.
    ZeroSize(&'static str),
    /// Operand shapes are incompatible.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// `fold` needs a row count divisible by the slice count.
    Indivisible { rows: usize, p: usize },
    /// Brute-force verification paths are capped in size.
    SizeCap { size: usize, cap: usize },
    /// Backing storage length disagrees with the declared dimensions.
    BadLength { expected: usize, found: usize },
    /// Input outside an operation's domain.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroSize(what) => write!(f, "{what} must be at least 1"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "{op}: incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::Indivisible { rows, p } => {
                write!(f, "cannot fold {rows} rows into {p} slices")
            }
            Error::SizeCap { size, cap } => {
                write!(f, "verification size {size} exceeds cap {cap}")
            }
            Error::BadLength { expected, found } => {
                write!(
                    f,
                    "storage length {found} does not match dimensions ({expected})"
                )
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
