//! Error types, grouped per subsystem.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("edge involution fixes a dart")]
    NonInvolutive,
    #[error("dart table is inconsistent (dangling or duplicated dart)")]
    DanglingDart,
    #[error("identified complex is not connected")]
    DisconnectedComplex,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("label {0} appears once but is not declared as boundary")]
    UnpairedLabel(String),
    #[error("label {0} is declared boundary but appears twice")]
    BoundaryLabelPaired(String),
    #[error("label {0} appears more than twice")]
    LabelUsedTooOften(String),
    #[error("gluing is non-orientable at label {0}")]
    NonOrientable(String),
    #[error("scheme has no polygons")]
    EmptyScheme,
    #[error("cannot cut along boundary edge {0}")]
    CutBoundaryEdge(String),
    #[error("edge {0} glues a polygon to itself")]
    SelfGlue(String),
    #[error("cut edge ends at a curve crossing")]
    CutThroughCurveVertex,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("empty word")]
    EmptyWord,
    #[error("word crosses boundary edge {0}")]
    CrossesBoundary(String),
    #[error("diagram is not in minimal position")]
    NotMinimalPosition,
    #[error("location is not a crossing of the diagram")]
    NotACrossing,
    #[error("surface error: {0}")]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("move budget of {0} exceeded")]
    MoveBudgetExceeded(usize),
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("curve does not fill the surface")]
    NotFilling,
    #[error("no face with id {0}")]
    BadFaceId(usize),
    #[error("endpoint count is odd")]
    OddEndpointCount,
    #[error("search budget too small: bound not yet witnessed")]
    BudgetTooSmall,
    #[error("taut error: {0}")]
    Taut(#[from] TautError),
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
    #[error("surface error: {0}")]
    Surface(#[from] SurfaceError),
    #[error("cover error: {0}")]
    Cover(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("no closed lift")]
    NoClosedLift,
    #[error("surface has no boundary")]
    NotBounded,
    #[error("arcs do not cut the surface into a disc")]
    ArcsDontCutToDisc,
    #[error("graph is not a tree")]
    NotATree,
    #[error("surface is not planar")]
    NotPlanar,
    #[error("graph does not cut the surface into a single disc")]
    NotADiscCut,
    #[error("arc is homotopic into the boundary")]
    ArcBoundaryParallel,
    #[error("end-circle condition failed (implementation bug): {0}")]
    ConditionStarFailed(String),
    #[error("no swap automorphism available")]
    NoSwapAutomorphism,
    #[error("class is null-homologous")]
    NullHomologous,
    #[error("surface error: {0}")]
    Surface(#[from] SurfaceError),
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
    #[error("taut error: {0}")]
    Taut(#[from] TautError),
    #[error("measure error: {0}")]
    Measure(String),
}

impl From<MeasureError> for CoverError {
    fn from(e: MeasureError) -> Self {
        CoverError::Measure(e.to_string())
    }
}

impl From<CoverError> for MeasureError {
    fn from(e: CoverError) -> Self {
        MeasureError::Cover(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("degree {0} exceeds the enumeration budget {1}")]
    BudgetExceeded(usize, usize),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}
