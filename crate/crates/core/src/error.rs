use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad error class, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    ResourceCap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("graph is not connected: {0}")]
    Disconnected(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` has nonpositive length")]
    NonPositiveLength(String),
    #[error("graph has no vertices")]
    NoVertices,
    #[error("graph has no edges or rays")]
    NoElements,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("coordinate {coord} out of range on `{element}`")]
    CoordOutOfRange { element: String, coord: String },
    #[error("empty set")]
    EmptySet,
    #[error("malformed interval [{lo},{hi}]")]
    MalformedInterval { lo: String, hi: String },
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("set has {found} components, more than the bound {bound}")]
    ComponentBound { found: usize, bound: usize },
    #[error("parameter {0} outside [0,1]")]
    ParameterOutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("unknown model kind `{0}`")]
    UnknownKind(String),
    #[error("model has no containment locus marker")]
    MissingLocus,
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax { line, column, message: message.into() }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. }
            | Error::Disconnected(_)
            | Error::DuplicateId(_)
            | Error::NonPositiveLength(_)
            | Error::NoVertices
            | Error::NoElements
            | Error::UnknownVertex(_)
            | Error::UnknownElement(_)
            | Error::CoordOutOfRange { .. }
            | Error::EmptySet
            | Error::MalformedInterval { .. }
            | Error::UnknownKind(_) => ErrorClass::Parse,
            Error::ResourceCap(_) => ErrorClass::ResourceCap,
            _ => ErrorClass::Precondition,
        }
    }

    /// Short stable identifier for machine-readable error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::Disconnected(_) => "disconnected",
            Error::DuplicateId(_) => "duplicate_id",
            Error::NonPositiveLength(_) => "nonpositive_length",
            Error::NoVertices => "no_vertices",
            Error::NoElements => "no_elements",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownElement(_) => "unknown_element",
            Error::CoordOutOfRange { .. } => "coord_out_of_range",
            Error::EmptySet => "empty_set",
            Error::MalformedInterval { .. } => "malformed_interval",
            Error::NonPositiveRadius => "nonpositive_radius",
            Error::ComponentBound { .. } => "component_bound",
            Error::ParameterOutOfRange(_) => "parameter_out_of_range",
            Error::Precondition(_) => "precondition",
            Error::ResourceCap(_) => "resource_cap",
            Error::UnknownKind(_) => "unknown_kind",
            Error::MissingLocus => "missing_locus",
        }
    }
}
