use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the geometric pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or degenerate input (coincident points, zero triples, bad literals).
    Degenerate(String),
    /// A literal could not be parsed.
    Parse(String),
    /// The graph violates a structural requirement.
    InvalidGraph(String),
    /// A point lies on the infinity line of the chart in use.
    PointAtInfinity { vertex: String },
    /// `line_of_force` was asked for the line of a zero force.
    ZeroForce,
    /// A documented precondition was violated.
    Precondition(String),
    /// A cycle (or framework) is not in general position.
    GeneralPosition { cycle: Vec<String> },
    /// Two adjacent tree edges carry the same line.
    WeakGenericity,
    /// The two forces combined by a surgery cancel.
    SurgeryUndefined,
    /// The force-load is parallelizable at some vertex.
    Parallelizable { vertex: String },
    /// A cycle of the resolution graph closed with a non-matching force.
    Inconsistent { cycle: Vec<String> },
    /// A condition references a free line that has no assignment.
    MissingSlot { vertex: String, slot: usize },
    /// Two line maps do not share the required basis.
    BasisMismatch,
    /// A runtime self-check failed.
    InvariantViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;

fn write_cycle(f: &mut fmt::Formatter<'_>, cycle: &[String]) -> fmt::Result {
    for (k, v) in cycle.iter().enumerate() {
        if k > 0 {
            f.write_str("-")?;
        }
        f.write_str(v)?;
    }
    Ok(())
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::PointAtInfinity { vertex } => {
                write!(f, "point {vertex} lies on the infinity line of the chart")
            }
            Error::ZeroForce => f.write_str("zero force has no line"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GeneralPosition { cycle } => {
                f.write_str("not in general position at cycle ")?;
                write_cycle(f, cycle)
            }
            Error::WeakGenericity => f.write_str("resolution scheme is not weakly generic"),
            Error::SurgeryUndefined => f.write_str("surgery undefined: combined forces cancel"),
            Error::Parallelizable { vertex } => {
                write!(f, "force-load is parallelizable at vertex {vertex}")
            }
            Error::Inconsistent { cycle } => {
                f.write_str("inconsistent quantization at cycle ")?;
                write_cycle(f, cycle)
            }
            Error::MissingSlot { vertex, slot } => {
                write!(f, "no line assigned to slot ({vertex}, {slot})")
            }
            Error::BasisMismatch => f.write_str("line maps use different bases"),
            Error::InvariantViolation(msg) => write!(f, "internal check failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
