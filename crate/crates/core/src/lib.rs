//! Exact Hosoya triangle arithmetic.
//!
//! `H(r, k) = F(k) F(r - k)` is evaluated with arbitrary-precision integers
//! ([`triangle`]), point configurations are laid out on the centred lattice
//! ([`geometry`]), and a catalog of Fibonacci identities is checked exactly,
//! one instance at a time or over whole parameter grids ([`identities`]).
//! [`oracle`] rebuilds the triangle from its two recursions alone and serves
//! as independent ground truth for all of the above.

pub mod fib;
pub mod geometry;
pub mod identities;
pub mod oracle;
pub mod render;
pub mod report;
pub mod triangle;

pub use fib::{fib, lucas, ExactInteger, FibIndex, FibTable};
pub use geometry::{ConfigKind, ConfigSpec, GeometryError, PointSet, Run, Rung, Side};
pub use identities::{
    verify, verify_with, Form, IdentityError, IdentityId, IdentityReport, Params, Status, Sweep,
    SweepReport,
};
pub use oracle::{cross_check, CrossCheck, OracleError, RecursiveTable};
pub use report::{ReportDocument, ReportResult};
pub use triangle::{
    entry, entry_at, ClosedForm, Evaluator, GridPoint, TriangleError, TriangleWindow,
};
