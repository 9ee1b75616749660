//! Newton correction of the special deformation to an exactly flat torus
//! `P′(z, t)` by moving only the free heights `(w0, w1, w2)`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::{angle_jacobian, flatness_defect};
use crate::deformation::deform;
use crate::embedding::{embedding_clause, EmbeddingVerdict};
use crate::error::{Error, Result};
use crate::golden::ModularParameter;
use crate::reference::lambda_ref;
use crate::torus::Torus8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iter: usize,
    pub theta_tol: f64,
    /// Maximum number of step halvings per iteration.
    pub max_halvings: usize,
    /// Jacobian difference step relative to the bounding-box diagonal.
    pub jacobian_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iter: 50,
            theta_tol: 1e-13,
            max_halvings: 8,
            jacobian_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatSolveResult {
    pub z: ModularParameter,
    pub t: f64,
    pub torus: Torus8,
    /// `(Δw0, Δw1, Δw2)` relative to `deform(z, t)`.
    pub delta_w: [f64; 3],
    pub theta: f64,
    /// `Θ` of the uncorrected deformation.
    pub theta_start: f64,
    pub iterations: usize,
    /// `Θ` after each iteration, starting with the initial value.
    pub trace: Vec<f64>,
    pub verdict: EmbeddingVerdict,
    pub matches_reference: bool,
}

impl FlatSolveResult {
    /// `‖P − P′‖∞` over the three free heights.
    pub fn height_change(&self) -> f64 {
        self.delta_w.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Damped Newton on `G(w) = (θ0 − 2π, θ1 − 2π, θ2 − 2π)` from `start`.
pub fn newton_flatten(start: &Torus8, opts: &NewtonOptions) -> Result<(Torus8, Vec<f64>)> {
    let residual = |p: &Torus8| -> Result<(Vector3<f64>, f64)> {
        let f = flatness_defect(p)?;
        Ok((Vector3::from(f.defects), f.theta))
    };
    let mut p = *start;
    let (mut g, mut theta) = residual(&p)?;
    let mut trace = vec![theta];
    let h = opts.jacobian_step * p.scale();
    for _ in 0..opts.max_iter {
        if theta <= opts.theta_tol {
            return Ok((p, trace));
        }
        let j = angle_jacobian(&p, Some(h))?;
        let m: Matrix3<f64> = j.matrix();
        let size = m.abs().max();
        let det = m.determinant();
        if !(det.abs() > 1e-14 * size.powi(3)) {
            return Err(Error::SingularJacobian { det });
        }
        let step = m.lu().solve(&(-g)).ok_or(Error::SingularJacobian { det })?;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let w = p.free_heights();
            let trial = p.with_free_heights([
                w[0] + lambda * step[0],
                w[1] + lambda * step[1],
                w[2] + lambda * step[2],
            ]);
            if let Ok((g2, theta2)) = residual(&trial) {
                if theta2 < theta {
                    accepted = Some((trial, g2, theta2));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, g2, theta2)) => {
                p = trial;
                g = g2;
                theta = theta2;
                trace.push(theta);
            }
            None => break,
        }
    }
    if theta <= opts.theta_tol {
        return Ok((p, trace));
    }
    Err(Error::NoConvergence {
        iterations: trace.len() - 1,
        theta,
        trace,
    })
}

pub fn solve_flat(z: &ModularParameter, t: f64) -> Result<FlatSolveResult> {
    solve_flat_with(z, t, &NewtonOptions::default())
}

pub fn solve_flat_with(z: &ModularParameter, t: f64, opts: &NewtonOptions) -> Result<FlatSolveResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveT { t });
    }
    let start = deform(z, t)?;
    let (torus, trace) = newton_flatten(&start, opts)?;
    let w0 = start.free_heights();
    let w1 = torus.free_heights();
    let verdict = embedding_clause(&torus);
    let matches_reference = verdict.signs == *lambda_ref();
    Ok(FlatSolveResult {
        z: *z,
        t,
        torus,
        delta_w: [w1[0] - w0[0], w1[1] - w0[1], w1[2] - w0[2]],
        theta: *trace.last().unwrap_or(&f64::NAN),
        theta_start: trace[0],
        iterations: trace.len() - 1,
        trace,
        verdict,
        matches_reference,
    })
}

/// Recomputes all eight cone angles of a result and returns the largest `|θ_j − 2π|`.
pub fn verify_flat(result: &FlatSolveResult) -> Result<f64> {
    let c = crate::angles::cone_angles(&result.torus)?;
    Ok(c.theta.iter().fold(0.0, |m, t| m.max((t - 2.0 * PI).abs())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub t: f64,
    pub theta_deform: Option<f64>,
    pub height_change: Option<f64>,
    pub iterations: Option<usize>,
    pub embedded: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeTable {
    pub z: ModularParameter,
    pub rows: Vec<ProbeRow>,
    /// Least-squares slope of `log Θ(deform)` against `log t`.
    pub theta_slope: Option<f64>,
    /// Least-squares slope of `log ‖ΔW‖` against `log t`.
    pub height_slope: Option<f64>,
}

/// Slope of the least-squares line through `(log x, log y)` for positive pairs.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn convergence_probe(z: &ModularParameter, ts: &[f64]) -> Result<ProbeTable> {
    z.require_interior()?;
    let rows: Vec<ProbeRow> = ts
        .iter()
        .map(|&t| {
            let theta_deform = deform(z, t).and_then(|p| flatness_defect(&p)).map(|f| f.theta).ok();
            match solve_flat(z, t) {
                Ok(r) => ProbeRow {
                    t,
                    theta_deform,
                    height_change: Some(r.height_change()),
                    iterations: Some(r.iterations),
                    embedded: r.verdict.embedded(),
                    error: None,
                },
                Err(e) => ProbeRow {
                    t,
                    theta_deform,
                    height_change: None,
                    iterations: None,
                    embedded: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let pairs = |f: fn(&ProbeRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter().filter_map(|r| f(r).map(|v| (r.t, v))).collect()
    };
    Ok(ProbeTable {
        z: *z,
        theta_slope: log_log_slope(&pairs(|r| r.theta_deform)),
        height_slope: log_log_slope(&pairs(|r| r.height_change)),
        rows,
    })
}

/// The map `z -> t(z)` choosing the deformation size per parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TSchedule {
    Constant { t: f64 },
    /// `min(cap, d(z, ∂F)²)`.
    BoundaryDecay { cap: f64 },
}

impl Default for TSchedule {
    fn default() -> Self {
        TSchedule::BoundaryDecay { cap: 1e-2 }
    }
}

impl TSchedule {
    pub fn t(&self, z: &ModularParameter) -> f64 {
        match *self {
            TSchedule::Constant { t } => t,
            TSchedule::BoundaryDecay { cap } => cap.min(z.boundary_distance().powi(2)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub z: ModularParameter,
    pub t: f64,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SweepOutcome {
    Solved { result: Box<FlatSolveResult> },
    Failed { error: String },
}

impl SweepEntry {
    pub fn result(&self) -> Option<&FlatSolveResult> {
        match &self.outcome {
            SweepOutcome::Solved { result } => Some(result),
            SweepOutcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: usize,
    pub solved: usize,
    pub embedded: usize,
    pub matching_reference: usize,
    pub worst_theta: f64,
}

impl SweepSummary {
    pub fn success_rate(&self) -> f64 {
        if self.points == 0 {
            0.0
        } else {
            self.solved as f64 / self.points as f64
        }
    }
}

/// Solves every grid point in parallel; results keep grid order.
pub fn sweep(grid: &[ModularParameter], schedule: &TSchedule) -> Vec<SweepEntry> {
    grid.par_iter()
        .map(|z| {
            let t = schedule.t(z);
            let outcome = match solve_flat(z, t) {
                Ok(r) => SweepOutcome::Solved { result: Box::new(r) },
                Err(e) => SweepOutcome::Failed { error: e.to_string() },
            };
            SweepEntry { z: *z, t, outcome }
        })
        .collect()
}

pub fn summarize(entries: &[SweepEntry]) -> SweepSummary {
    let solved: Vec<&FlatSolveResult> = entries.iter().filter_map(SweepEntry::result).collect();
    SweepSummary {
        points: entries.len(),
        solved: solved.len(),
        embedded: solved.iter().filter(|r| r.verdict.embedded()).count(),
        matching_reference: solved.iter().filter(|r| r.matches_reference).count(),
        worst_theta: solved.iter().map(|r| r.theta).fold(0.0, f64::max),
    }
}

/// A `nx × ny` grid over `x ∈ [x0, x1]`, `y` from `margin` above the arc up to `y_max`.
pub fn domain_grid(nx: usize, ny: usize, x_range: (f64, f64), margin: f64, y_max: f64) -> Result<Vec<ModularParameter>> {
    let mut out = Vec::with_capacity(nx * ny);
    let lerp = |a: f64, b: f64, k: usize, n: usize| {
        if n <= 1 {
            a
        } else {
            a + (b - a) * k as f64 / (n - 1) as f64
        }
    };
    for i in 0..nx {
        let x = lerp(x_range.0, x_range.1, i, nx);
        let y_arc = (2.0 * x - x * x).sqrt();
        for j in 0..ny {
            let y = lerp(y_arc + margin, y_max, j, ny);
            out.push(ModularParameter::interior(x, y)?);
        }
    }
    Ok(out)
}

/// One JSON object per line.
pub fn to_json_lines(entries: &[SweepEntry]) -> Result<String> {
    let mut out = String::new();
    for e in entries {
        out.push_str(&crate::report::to_json_string(e)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: f64, y: f64) -> ModularParameter {
        ModularParameter::interior(x, y).unwrap()
    }

    #[test]
    fn solves_at_quarter_plus_i() {
        let r = solve_flat(&z(0.25, 1.0), 1e-2).unwrap();
        assert!(r.theta <= 1e-13, "{}", r.theta);
        assert!(r.verdict.embedded());
        assert!(r.matches_reference);
        assert!(r.torus.is_rho_symmetric(0.0));
        assert!(r.torus.is_normalized(0.0));
        assert!(verify_flat(&r).unwrap() < 1e-12);
    }

    #[test]
    fn zero_t_is_rejected() {
        assert!(matches!(solve_flat(&z(0.25, 1.0), 0.0), Err(Error::NonPositiveT { .. })));
    }

    #[test]
    fn only_free_heights_move() {
        let zz = z(0.2, 1.3);
        let r = solve_flat(&zz, 5e-3).unwrap();
        let start = deform(&zz, 5e-3).unwrap();
        for j in 0..8 {
            assert_eq!(r.torus.vertex(j)[0], start.vertex(j)[0]);
            assert_eq!(r.torus.vertex(j)[1], start.vertex(j)[1]);
        }
        assert_eq!(r.torus.vertex(3), start.vertex(3));
    }

    #[test]
    fn slope_helper() {
        let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0].iter().map(|&t| (t, 5.0 * t * t * t)).collect();
        assert!((log_log_slope(&pts).unwrap() - 3.0).abs() < 1e-12);
        assert!(log_log_slope(&pts[..1]).is_none());
    }

    #[test]
    fn schedule_decays_toward_boundary() {
        let s = TSchedule::default();
        assert_eq!(s.t(&z(0.25, 1.0)), 1e-2);
        assert!(s.t(&z(0.01, 1.5)) <= 1e-4 + 1e-18);
    }

    #[test]
    fn single_point_sweep_reproduces_solve() {
        let zz = z(0.3, 1.2);
        let e = sweep(&[zz], &TSchedule::Constant { t: 1e-2 });
        assert_eq!(e[0].result().unwrap(), &solve_flat(&zz, 1e-2).unwrap());
    }
}
