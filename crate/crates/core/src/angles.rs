//! Cone angles, the flatness defect `Θ`, and the Jacobian of the angle map
//! `F(w0, w1, w2) = (θ0, θ1, θ2)` under ρ-symmetric height variation.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{angle_at, dist};
use crate::golden::ModularParameter;
use crate::torus::Torus8;

/// Degenerate-edge threshold relative to the bounding-box diagonal.
pub const TAU_LEN: f64 = 1e-13;
/// Default central-difference step relative to the bounding-box diagonal.
pub const DEFAULT_STEP: f64 = 1e-6;

/// Cone angles at all eight vertices; for ρ-symmetric input `θ_{7−j} = θ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeAngles {
    pub theta: [f64; 8],
}

impl ConeAngles {
    /// `(θ0, θ1, θ2, θ3)`.
    pub fn upper(&self) -> [f64; 4] {
        [self.theta[0], self.theta[1], self.theta[2], self.theta[3]]
    }

    /// `θ0 + θ1 + θ2 + θ3`, which is `8π` for ρ-symmetric tori.
    pub fn upper_sum(&self) -> f64 {
        self.upper().iter().sum()
    }

    pub fn total(&self) -> f64 {
        self.theta.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatnessDefect {
    pub theta: f64,
    /// `θ_j − 2π` for `j = 0, 1, 2`.
    pub defects: [f64; 3],
}

pub fn cone_angles(p: &Torus8) -> Result<ConeAngles> {
    let v = p.vertices();
    let tol = TAU_LEN * p.scale();
    let mut theta = [0.0; 8];
    for t in &p.triangulation().triangles {
        for k in 0..3 {
            let (i, j) = (t[k], t[(k + 1) % 3]);
            let length = dist(v[i], v[j]);
            if length <= tol {
                return Err(Error::DegenerateEdge { a: i.min(j), b: i.max(j), length });
            }
        }
        for k in 0..3 {
            let (i, j, l) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            theta[i] += angle_at(v[i], v[j], v[l]);
        }
    }
    Ok(ConeAngles { theta })
}

pub fn flatness_defect(p: &Torus8) -> Result<FlatnessDefect> {
    let c = cone_angles(p)?;
    let defects = [0, 1, 2].map(|j| c.theta[j] - 2.0 * PI);
    Ok(FlatnessDefect {
        theta: defects.iter().fold(0.0, |m, d| m.max(d.abs())),
        defects,
    })
}

/// `M_ij = ∂θ_i / ∂w_j` with `w_j` and `w_{7−j}` moved together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleJacobian {
    pub m: [[f64; 3]; 3],
    pub step: f64,
}

impl AngleJacobian {
    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.m[i][j])
    }

    pub fn det(&self) -> f64 {
        self.matrix().determinant()
    }

    /// `max |M − Mᵀ|` relative to `max |M|`.
    pub fn asymmetry(&self) -> f64 {
        let mut skew: f64 = 0.0;
        let mut size: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                skew = skew.max((self.m[i][j] - self.m[j][i]).abs());
                size = size.max(self.m[i][j].abs());
            }
        }
        skew / size
    }
}

/// Central differences with step `h`; `None` uses `1e−6 ×` the bounding-box diagonal.
pub fn angle_jacobian(p: &Torus8, h: Option<f64>) -> Result<AngleJacobian> {
    let step = h.unwrap_or(DEFAULT_STEP * p.scale());
    if !(step > 0.0) {
        return Err(Error::Invalid(format!("difference step {step} must be positive")));
    }
    let mut m = [[0.0; 3]; 3];
    for j in 0..3 {
        let plus = cone_angles(&p.shift_free_height(j, step))?;
        let minus = cone_angles(&p.shift_free_height(j, -step))?;
        for i in 0..3 {
            m[i][j] = (plus.theta[i] - minus.theta[i]) / (2.0 * step);
        }
    }
    Ok(AngleJacobian { m, step })
}

/// `det dF = −64 √2 x^{3/2} γ5 / (γ3⁴ γ4)` at the golden tent.
pub fn closed_form_det(z: &ModularParameter) -> f64 {
    let g = z.gammas();
    -64.0 * SQRT_2 * z.x.powf(1.5) * g.g5 / (g.g3.powi(4) * g.g4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::golden_torus;

    #[test]
    fn golden_tent_is_flat() {
        let z = ModularParameter::interior(0.25, 1.0).unwrap();
        let c = cone_angles(&golden_torus(&z).unwrap()).unwrap();
        for t in c.theta {
            assert!((t - 2.0 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_value() {
        let z = ModularParameter::interior(0.25, 1.0).unwrap();
        assert!((closed_form_det(&z) + 1.7734).abs() < 1e-4);
    }

    #[test]
    fn jacobian_matches_closed_form() {
        let z = ModularParameter::interior(0.25, 1.0).unwrap();
        let j = angle_jacobian(&golden_torus(&z).unwrap(), None).unwrap();
        let exact = closed_form_det(&z);
        assert!(((j.det() - exact) / exact).abs() < 1e-6, "{} vs {exact}", j.det());
        assert!(j.asymmetry() < 1e-6);
    }

    #[test]
    fn collapsed_edge_is_reported() {
        let p = Torus8::new([[0.0; 3]; 8]);
        assert!(matches!(cone_angles(&p), Err(Error::DegenerateEdge { .. })));
    }

    #[test]
    fn planar_immersion_has_defect_but_keeps_total() {
        let z = ModularParameter::interior(0.25, 1.0).unwrap();
        let p = golden_torus(&z).unwrap().map(|v| [v[0], v[1], 0.0]);
        let c = cone_angles(&p).unwrap();
        assert!((c.upper_sum() - 8.0 * PI).abs() < 1e-12);
        assert!(flatness_defect(&p).unwrap().theta > 1e-3);
    }
}
