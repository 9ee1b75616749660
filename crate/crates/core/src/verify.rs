//! A quick self-check of the main invariants, used by `puptent verify`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angles::{angle_jacobian, closed_form_det, cone_angles, flatness_defect};
use crate::deformation::{deform, order2_line_arrangement};
use crate::embedding::{embedding_clause, exact_intersection_oracle, order2_structure, Embedded, OracleVerdict};
use crate::error::Result;
use crate::flatten::{log_log_slope, solve_flat};
use crate::golden::{golden_torus, verify_isometry, ModularParameter};
use crate::reference::{hull_pattern, lambda_ref, pup_torus};
use crate::shape::{convex_hull, modular_distance, modulus_of};
use crate::torus::Torus8;
use crate::triangulation::triangulation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn z(x: f64, y: f64) -> Result<ModularParameter> {
    ModularParameter::interior(x, y)
}

/// Deterministic ρ-symmetric tori near the pup tent.
fn perturbed_tori(n: usize) -> Vec<Torus8> {
    let base = pup_torus();
    (0..n)
        .map(|k| {
            let s = |j: usize| (0.37 * (k * 12 + j) as f64 + 0.11).sin() * 0.3;
            let mut upper = [[0.0; 3]; 4];
            for (j, u) in upper.iter_mut().enumerate() {
                let v = base.vertex(j);
                *u = [v[0] + s(3 * j), v[1] + s(3 * j + 1), v[2] + s(3 * j + 2)];
            }
            Torus8::from_upper_half(upper)
        })
        .collect()
}

pub fn run_checks() -> Vec<Check> {
    vec![
        check("triangulation is a 6-regular torus", || {
            let t = triangulation();
            Ok((
                t.triangles.len() == 16 && t.edges.len() == 24 && t.euler_characteristic() == 0 && (0..8).all(|v| t.degree(v) == 6),
                format!("{} triangles, {} edges", t.triangles.len(), t.edges.len()),
            ))
        }),
        check("golden tents are flat and isometric", || {
            let mut worst: f64 = 0.0;
            let mut iso = true;
            for i in 1..6 {
                for j in 0..5 {
                    let x = 0.5 * i as f64 / 6.0;
                    let zz = z(x, (2.0 * x - x * x).sqrt() + 0.05 + 0.4 * j as f64)?;
                    worst = worst.max(flatness_defect(&golden_torus(&zz)?)?.theta);
                    iso &= verify_isometry(&zz, 1e-12)?.passed;
                }
            }
            Ok((worst < 1e-12 && iso, format!("max theta {worst:e}")))
        }),
        check("upper cone angles sum to 8 pi", || {
            let mut worst: f64 = 0.0;
            for p in perturbed_tori(50) {
                if let Ok(c) = cone_angles(&p) {
                    worst = worst.max((c.upper_sum() - 8.0 * PI).abs());
                }
            }
            Ok((worst < 1e-10, format!("max deviation {worst:e}")))
        }),
        check("angle Jacobian determinant matches closed form", || {
            let zz = z(0.25, 1.0)?;
            let d = angle_jacobian(&golden_torus(&zz)?, None)?.det();
            let exact = closed_form_det(&zz);
            let rel = ((d - exact) / exact).abs();
            Ok((rel < 1e-6, format!("{d:.6} vs {exact:.6}")))
        }),
        check("deformation defect is cubic", || {
            let zz = z(0.25, 1.0)?;
            let pts = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0]
                .iter()
                .map(|&t| Ok((t, flatness_defect(&deform(&zz, t)?)?.theta)))
                .collect::<Result<Vec<_>>>()?;
            let slope = log_log_slope(&pts).unwrap_or(f64::NAN);
            Ok(((slope - 3.0).abs() <= 0.2, format!("slope {slope:.3}")))
        }),
        check("45/6/19 leading-order structure", || {
            let s = order2_structure(&z(0.25, 1.0)?)?;
            Ok((s.counts == [45, 6, 19] && &s.leading_signs == lambda_ref(), format!("{:?}", s.counts)))
        }),
        check("line arrangement places (X1, X2) in the winning cell", || {
            let a = order2_line_arrangement(&z(0.25, 1.0)?)?;
            Ok((a.verified(), format!("{} lines, margin {:e}", a.lines.len(), a.margin)))
        }),
        check("reference tent is embedded and flat", || {
            let p = pup_torus();
            let theta = flatness_defect(&p)?.theta;
            let clause = embedding_clause(&p).embedded;
            let oracle = exact_intersection_oracle(&p);
            let hull = convex_hull(&p).on_hull_triangles;
            Ok((
                theta < 1e-10 && clause == Embedded::Yes && oracle == OracleVerdict::Embedded && hull == hull_pattern(),
                format!("theta {theta:e}, {} hull triangles", hull.len()),
            ))
        }),
        check("golden tent is degenerate, P(1/4+i, 1/8) is embedded", || {
            let zz = z(0.25, 1.0)?;
            let g = embedding_clause(&golden_torus(&zz)?).embedded;
            let d = embedding_clause(&deform(&zz, 0.125)?).embedded;
            Ok((g == Embedded::Degenerate && d == Embedded::Yes, format!("{g:?}, {d:?}")))
        }),
        check("Newton correction matches the reference signs", || {
            let zz = z(0.25, 1.0)?;
            let r = solve_flat(&zz, 1e-2)?;
            Ok((r.theta < 1e-12 && r.verdict.embedded() && r.matches_reference, format!("theta {:e}, {} iterations", r.theta, r.iterations)))
        }),
        check("modulus of the golden tent", || {
            let zz = z(0.25, 1.0)?;
            let m = modulus_of(&golden_torus(&zz)?, 1e-12)?;
            let d = modular_distance(m.tau, zz.z());
            Ok((d < 1e-10, format!("distance {d:e}")))
        }),
    ]
}
