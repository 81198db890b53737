use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    UnsupportedLattice(String),
    NotMinusOneCurve(String),
    IntersectingCurves {
        a: String,
        b: String,
        product: i64,
    },
    ClosureTooLarge(usize),
    UnknownName(String),
    NotInGroup(String),
    NotDegreeFour,
    NotContractible {
        label: String,
        self_int: String,
    },
    UnknownLabel(String),
    Unsupported(String),
    DivisionByZero,
    NotOnSurface(String),
    NoLabeling,
    CurveOfFixedPoints,
    DegreeOutOfRange(i64),
    Mismatch {
        what: String,
        expected: String,
        computed: String,
    },
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::UnsupportedLattice(s) => write!(f, "unsupported lattice: {s}"),
            Error::NotMinusOneCurve(s) => write!(f, "not a (-1)-class: {s}"),
            Error::IntersectingCurves { a, b, product } => {
                write!(f, "curves {a} and {b} meet with multiplicity {product}")
            }
            Error::ClosureTooLarge(n) => write!(f, "group closure exceeded {n} elements"),
            Error::UnknownName(s) => write!(f, "unknown generator name: {s}"),
            Error::NotInGroup(s) => write!(f, "element {s} is not in the ambient group"),
            Error::NotDegreeFour => write!(f, "operation requires the degree-4 Weyl group"),
            Error::NotContractible { label, self_int } => {
                write!(f, "curve {label} has self-intersection {self_int}, not -1")
            }
            Error::UnknownLabel(s) => write!(f, "unknown curve label: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotOnSurface(s) => write!(f, "not on surface: {s}"),
            Error::NoLabeling => write!(
                f,
                "graph is not the line graph of a degree-4 del Pezzo surface"
            ),
            Error::CurveOfFixedPoints => write!(f, "the fixed locus contains a curve"),
            Error::DegreeOutOfRange(d) => write!(f, "degree {d} is outside 4..=9"),
            Error::Mismatch {
                what,
                expected,
                computed,
            } => {
                write!(f, "{what}: expected {expected}, computed {computed}")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
