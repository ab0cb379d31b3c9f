//! Second-generation shifted boundary method (SBM) for the Poisson and
//! Stokes problems on non-body-fitted 2D triangle grids.
//!
//! The solver discretizes on a *surrogate domain* (the union of background
//! cells fully inside the true domain) and enforces Dirichlet conditions
//! weakly on the surrogate boundary after transporting them from the true
//! boundary with a first-order Taylor shift `S_h v = v + grad(v) . d`.
//! No cut-cell integration is ever performed.
//!
//! Layout:
//! - [`geometry`]: true-domain polygons, closest-point projection, the
//!   distance-vector map and the surrogate-edge classification/audit.
//! - [`mesh`]: background grids, surrogate extraction, element metrics.
//! - [`fem`]: P1 kernels, quadrature, sparse assembly and linear solvers.
//! - [`poisson`], [`stokes`]: the two SBM discretizations.
//! - [`verify`]: numerical probes for the method's checkable structure.
//! - [`harness`]: manufactured solutions, convergence ladders, reports.

pub mod error;
pub mod fem;
pub mod geometry;
pub mod harness;
pub mod mesh;
pub mod poisson;
pub mod stokes;
pub mod verify;

pub use error::Error;
pub use geometry::{BoundaryTag, DomainGeometry, EdgeBoundaryData, NormalAudit, Vec2};
pub use mesh::{ElementMetrics, Mesh, Orientation, Rect};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
