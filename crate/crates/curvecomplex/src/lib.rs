//! Combinatorial curves on compact orientable surfaces.
//!
//! Surfaces are polygon gluing schemes; a free homotopy class is the cyclic
//! crossing sequence of a transverse curve against the scheme's edge graph.
//! The crate puts diagrams in minimal position, computes complexity measures
//! (self-intersections, fundamental-region crossing numbers, word lengths,
//! peeling numbers), builds finite covers in which a curve lifts to an
//! embedding (or fails to lift), and checks everything against an exhaustive
//! covering-space oracle at small degree.
//!
//! See the `examples/` directory for one runnable example per capability and
//! the `curvecomplex` binary for batch analysis.

pub mod corpus;
pub mod covers;
pub mod diagram;
pub mod error;
pub mod geom;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod presentation;
pub mod report;
pub mod surface;
pub mod taut;
pub mod word;

pub use diagram::{Arrangement, CurveDiagram};
pub use error::{CoverError, DiagramError, MeasureError, OracleError, SurfaceError, TautError};
pub use presentation::Presentation;
pub use surface::{CombMap, Scheme, SurfaceClass};
pub use word::{Letter, Word};
