use thiserror::Error;

use crate::golden::Region;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("imaginary part must be positive, got y = {y}")]
    NonPositiveImaginary { y: f64 },

    #[error("parameter ({x}, {y}) is outside the modular domain")]
    OutsideDomain { x: f64, y: f64 },

    #[error("operation requires an interior parameter, but ({x}, {y}) is on the {region}")]
    NotInterior { x: f64, y: f64, region: Region },

    #[error("edge ({a}, {b}) has length {length:e}, below the degeneracy threshold")]
    DegenerateEdge { a: usize, b: usize, length: f64 },

    #[error("deformation parameter must be positive, got t = {t}")]
    NonPositiveT { t: f64 },

    #[error("angle Jacobian is singular (det = {det:e})")]
    SingularJacobian { det: f64 },

    #[error("Newton correction did not converge after {iterations} iterations (defect {theta:e})")]
    NoConvergence { iterations: usize, theta: f64, trace: Vec<f64> },

    #[error("torus is not flat (defect {theta:e} exceeds {tol:e})")]
    NotFlat { theta: f64, tol: f64 },

    #[error("developing map is inconsistent (residual {residual:e})")]
    LayoutInconsistent { residual: f64 },

    #[error("polynomial fit for quadruple {quad:?} failed (held-out residual {residual:e})")]
    FitFailure { quad: [usize; 4], residual: f64 },

    #[error("line clustering is ambiguous: zero-lines of {first:?} and {second:?} differ by {gap:e}")]
    ClusteringFailure { first: [usize; 4], second: [usize; 4], gap: f64 },

    #[error("{0} is not a good-polygon boundary parameter")]
    NotGoodBoundary(String),

    #[error("point set has zero diameter")]
    ZeroDiameter,

    #[error("invalid input: {0}")]
    Invalid(String),
}
