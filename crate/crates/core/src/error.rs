use thiserror::Error;

/// Errors surfaced by mesh construction, assembly and solves.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate bounding box: width={width}, height={height}")]
    DegenerateBbox { width: f64, height: f64 },

    #[error("degenerate cell {cell}: signed area {area}")]
    DegenerateCell { cell: usize, area: f64 },

    #[error("empty surrogate: no background cell lies inside the domain")]
    EmptySurrogate,

    #[error("surrogate domain is disconnected ({components} components)")]
    DisconnectedSurrogate { components: usize },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("dof index {index} out of range (system has {size} dofs)")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("matrix is singular or factorization failed: {0}")]
    SingularMatrix(String),

    #[error("gmres failed to converge within {iterations} iterations (residual {residual:.3e})")]
    GmresDidNotConverge { iterations: usize, residual: f64 },

    #[error(
        "solver residual {residual:.3e} exceeds tolerance {tolerance:.3e} \
         (alpha={alpha}, cells={cells})"
    )]
    SolverResidual {
        residual: f64,
        tolerance: f64,
        alpha: f64,
        cells: usize,
    },

    #[error("Neumann-tagged surrogate edge is unsupported for the Poisson problem")]
    NeumannEdgeUnsupported,

    #[error("Neumann surrogate edge {edge} is not body-fitted (|d| = {dist:.3e})")]
    NeumannEdgeNotFitted { edge: usize, dist: f64 },

    #[error("zero-mean pressure gauge requires a pure Dirichlet boundary, found Neumann edges")]
    ZeroMeanWithNeumann,

    #[error("convergence ladder needs at least 2 strictly decreasing mesh sizes")]
    LadderTooShort,

    #[error("ladder level {level} (mesh size {size}) failed: {source}")]
    LadderLevelFailed {
        level: usize,
        size: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("report has no rows")]
    EmptyReport,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
