//! Stateless HTTP JSON API over the library.
//!
//! Every handler is a pure function of its query string; bodies use the same
//! 17-digit float encoding as the CLI.

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::extract::rejection::QueryRejection;
use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use crate::error::Error;
use crate::flatten::convergence_probe;
use crate::golden::{ModularParameter, Region};
use crate::mesh::{slice, Mesh, Plane};
use crate::report::{build_report, to_json_string, Mode};

pub const PROBE_TS: [f64; 4] = [0.125, 0.0625, 0.03125, 0.015625];
const CACHE_CONTROL: &str = "public, max-age=86400";

/// Boundary polylines of the domain in the `(x, y)` chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainOutline {
    pub left_edge: Vec<[f64; 2]>,
    pub right_edge: Vec<[f64; 2]>,
    pub arc: Vec<[f64; 2]>,
    pub hex_vertex: [f64; 2],
    pub square_point: [f64; 2],
    pub y_max: f64,
}

/// `x = 0` and `x = 1/2` cut off at `y_max`, and the arc `|z − 1| = 1` from `0` to the hex vertex.
pub fn domain_outline(y_max: f64, arc_points: usize) -> DomainOutline {
    let hex = [0.5, 3f64.sqrt() / 2.0];
    let n = arc_points.max(2);
    // Arc parametrized by angle about 1: from π (the origin) down to 2π/3 (the hex vertex).
    let arc = (0..n)
        .map(|k| {
            let a = std::f64::consts::PI * (1.0 - k as f64 / (3.0 * (n - 1) as f64));
            [1.0 + a.cos(), a.sin().max(0.0)]
        })
        .collect();
    DomainOutline {
        left_edge: vec![[0.0, 0.0], [0.0, y_max]],
        right_edge: vec![hex, [0.5, y_max]],
        arc,
        hex_vertex: hex,
        square_point: [0.0, 1.0],
        y_max,
    }
}

#[derive(Debug, Clone, Serialize)]
struct ErrorBody {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    region: Option<Region>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<f64>>,
}

/// A JSON error with its status: 400 for bad parameters, 422 for failed computations.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn bad_request(message: String) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody {
                error: message,
                region: None,
                trace: None,
            },
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (status, region, trace) = match e {
            Error::OutsideDomain { .. } => (StatusCode::BAD_REQUEST, Some(Region::Outside), None),
            Error::NotInterior { region, .. } => (StatusCode::BAD_REQUEST, Some(region), None),
            Error::NonPositiveImaginary { .. } | Error::NonPositiveT { .. } | Error::Invalid(_) | Error::NotGoodBoundary(_) => {
                (StatusCode::BAD_REQUEST, None, None)
            }
            Error::NoConvergence { trace, .. } => (StatusCode::UNPROCESSABLE_ENTITY, None, Some(trace)),
            _ => (StatusCode::UNPROCESSABLE_ENTITY, None, None),
        };
        Self {
            status,
            body: ErrorBody {
                error: message,
                region,
                trace,
            },
        }
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        Self::bad_request(r.body_text())
    }
}

fn json_response<T: Serialize>(status: StatusCode, value: &T) -> Response {
    match to_json_string(value) {
        Ok(body) => (
            status,
            [(header::CONTENT_TYPE, "application/json"), (header::CACHE_CONTROL, CACHE_CONTROL)],
            body,
        )
            .into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        json_response(self.status, &self.body)
    }
}

type ApiResult = Result<Response, ApiError>;

/// Runs CPU-bound work off the async executor.
async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, Error> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            body: ErrorBody {
                error: e.to_string(),
                region: None,
                trace: None,
            },
        })?
        .map_err(ApiError::from)
}

#[derive(Debug, Clone, Deserialize)]
pub struct DomainQuery {
    pub y_max: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TorusQuery {
    pub x: f64,
    pub y: f64,
    pub t: Option<f64>,
    pub mode: Option<String>,
}

impl TorusQuery {
    /// `t = 0` (or absent) means the golden tent; otherwise the deformation unless `mode` says otherwise.
    fn resolve(&self) -> Result<(ModularParameter, f64, Mode), Error> {
        let z = ModularParameter::classify(self.x, self.y)?;
        if z.region == Region::Outside {
            return Err(Error::OutsideDomain { x: self.x, y: self.y });
        }
        let t = self.t.unwrap_or(0.0);
        let mode = match &self.mode {
            Some(m) => m.parse()?,
            None if t == 0.0 => Mode::Golden,
            None => Mode::Deformed,
        };
        Ok((z, t, mode))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SliceQuery {
    pub x: f64,
    pub y: f64,
    pub t: Option<f64>,
    pub mode: Option<String>,
    pub plane: String,
    pub offset: Option<f64>,
}

impl SliceQuery {
    // Flattening a nested struct would turn the numbers into strings under urlencoding.
    fn torus(&self) -> TorusQuery {
        TorusQuery {
            x: self.x,
            y: self.y,
            t: self.t,
            mode: self.mode.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ProbeQuery {
    pub x: f64,
    pub y: f64,
}

async fn domain(q: Result<Query<DomainQuery>, QueryRejection>) -> ApiResult {
    let Query(q) = q?;
    let y_max = q.y_max.unwrap_or(3.0);
    if !(y_max > 3f64.sqrt() / 2.0) || !y_max.is_finite() {
        return Err(ApiError::bad_request(format!("y_max = {y_max} must exceed the hex vertex height")));
    }
    Ok(json_response(StatusCode::OK, &domain_outline(y_max, 129)))
}

async fn torus(q: Result<Query<TorusQuery>, QueryRejection>) -> ApiResult {
    let Query(q) = q?;
    let report = blocking(move || {
        let (z, t, mode) = q.resolve()?;
        build_report(&z, t, mode)
    })
    .await?;
    Ok(json_response(StatusCode::OK, &report))
}

async fn slice_handler(q: Result<Query<SliceQuery>, QueryRejection>) -> ApiResult {
    let Query(q) = q?;
    let s = blocking(move || {
        let plane: Plane = q.plane.parse()?;
        let (z, t, mode) = q.torus().resolve()?;
        let report = build_report(&z, t, mode)?;
        Ok(slice(&Mesh::of_torus(&report.torus()), plane, q.offset.unwrap_or(0.0)))
    })
    .await?;
    Ok(json_response(StatusCode::OK, &s))
}

async fn probe(q: Result<Query<ProbeQuery>, QueryRejection>) -> ApiResult {
    let Query(q) = q?;
    let table = blocking(move || {
        let z = ModularParameter::classify(q.x, q.y)?;
        convergence_probe(&z, &PROBE_TS)
    })
    .await?;
    Ok(json_response(StatusCode::OK, &table))
}

/// The API routes, plus static files from `static_dir` for everything else.
pub fn router(static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/domain", get(domain))
        .route("/api/torus", get(torus))
        .route("/api/slice", get(slice_handler))
        .route("/api/probe", get(probe));
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(static_dir)).await
}
