use crate::gpd::{ArrowId, ObjectId};
use crate::report::ValidationReport;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Axiom failures of otherwise well-formed tables are not errors; they are
/// collected in a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("object {object} out of range for base of size {base_size}")]
    ObjectOutOfRange { object: usize, base_size: usize },
    #[error("arrow {arrow} out of range ({len} arrows)")]
    ArrowOutOfRange { arrow: usize, len: usize },
    #[error("box {0} out of range")]
    UnknownBox(usize),
    #[error("{what}: expected {expected} entries, found {found}")]
    WrongLength {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("composition entry ({a}, {b}) is not a composable pair")]
    NotComposable { a: usize, b: usize },
    #[error("composition entry ({a}, {b}) appears twice")]
    DuplicateComposite { a: usize, b: usize },
    #[error("arrow {0} has no inverse in the table")]
    NoInverse(usize),
    #[error("no identity found at object {0}")]
    MissingIdentity(usize),
    #[error("groupoids live over different bases ({left} vs {right} objects)")]
    BaseMismatch { left: usize, right: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidCayley(String),
    #[error("invalid action: {0}")]
    InvalidAction(ValidationReport),
    #[error("invalid double groupoid: {0}")]
    InvalidDouble(String),
    #[error("box frame violates the corner condition at box {0}")]
    BadCorners(usize),
    #[error("boxes {0} and {1} share a frame; the double groupoid is not slim")]
    NotSlim(usize, usize),
    #[error("frames are not closed under {0}")]
    NotClosed(&'static str),
    #[error("corner (top {top}, right {right}) has no filler box")]
    FillingFails { top: usize, right: usize },
    #[error("diagonal product depends on the filler box at corner (top {top}, right {right})")]
    FillerDependence { top: usize, right: usize },
    #[error("core element {element} cannot act: moment {moment} differs from its end {end}")]
    MomentMismatch {
        element: usize,
        moment: usize,
        end: usize,
    },
    #[error("the constructed groupoid fails validation: {0}")]
    InvalidConstruction(ValidationReport),
    #[error("word is not a loop (starts at {start}, ends at {end})")]
    NotALoop { start: usize, end: usize },
    #[error("letters {position} and {next} of the word are not composable")]
    WordNotComposable { position: usize, next: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(ValidationReport),
    #[error(
        "diagram is not a factorization: {uncovered} arrows of D are not of the form j(v)i(h)"
    )]
    NotAFactorization { uncovered: usize },
    #[error("{0} is not a subgroup")]
    NotASubgroup(&'static str),
    #[error("enumeration exceeds the limit of {limit} boxes")]
    TooManyBoxes { limit: usize },
}

impl Error {
    pub(crate) fn object(object: ObjectId, base_size: usize) -> Self {
        Error::ObjectOutOfRange {
            object: object.0,
            base_size,
        }
    }

    pub(crate) fn arrow(arrow: ArrowId, len: usize) -> Self {
        Error::ArrowOutOfRange {
            arrow: arrow.0,
            len,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
