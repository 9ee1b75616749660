use serde::{Deserialize, Serialize};

use crate::geom::{bbox_diameter, Point3};
use crate::triangulation::{triangulation, Triangulation8};

/// The order-2 rotation about the vertical axis, `(u, v, w) -> (-u, -v, w)`.
#[inline]
pub fn rho(p: Point3) -> Point3 {
    [-p[0], -p[1], p[2]]
}

/// Eight labelled vertices on the uniform triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Torus8 {
    vertices: [Point3; 8],
}

impl Torus8 {
    pub fn new(vertices: [Point3; 8]) -> Self {
        Self { vertices }
    }

    /// Builds a ρ-symmetric torus from vertices 0..3; vertex `j >= 4` is `ρ(P_{7-j})`.
    pub fn from_upper_half(upper: [Point3; 4]) -> Self {
        let mut vertices = [[0.0; 3]; 8];
        vertices[..4].copy_from_slice(&upper);
        for j in 4..8 {
            vertices[j] = rho(upper[7 - j]);
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point3; 8] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> Point3 {
        self.vertices[j]
    }

    pub fn triangulation(&self) -> &'static Triangulation8 {
        triangulation()
    }

    /// Bounding-box diagonal, used as the length scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        bbox_diameter(&self.vertices)
    }

    pub fn is_rho_symmetric(&self, tol: f64) -> bool {
        (0..8).all(|j| {
            let r = rho(self.vertices[7 - j]);
            (0..3).all(|k| (self.vertices[j][k] - r[k]).abs() <= tol)
        })
    }

    /// `w_3 = w_4 = 0`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        self.vertices[3][2].abs() <= tol && self.vertices[4][2].abs() <= tol
    }

    /// The three free heights `(w_0, w_1, w_2)`.
    pub fn free_heights(&self) -> [f64; 3] {
        [self.vertices[0][2], self.vertices[1][2], self.vertices[2][2]]
    }

    /// Replaces `w_j` and `w_{7-j}` by `w[j]` for `j = 0, 1, 2`.
    pub fn with_free_heights(&self, w: [f64; 3]) -> Self {
        let mut out = *self;
        for (j, &wj) in w.iter().enumerate() {
            out.vertices[j][2] = wj;
            out.vertices[7 - j][2] = wj;
        }
        out
    }

    /// Moves `w_j` and `w_{7-j}` together by `delta`.
    pub fn shift_free_height(&self, j: usize, delta: f64) -> Self {
        let mut out = *self;
        out.vertices[j][2] += delta;
        if 7 - j != j {
            out.vertices[7 - j][2] += delta;
        }
        out
    }

    /// Max-norm distance between the free heights of two tori: `‖P − P′‖`.
    pub fn height_distance(&self, other: &Torus8) -> f64 {
        (0..3)
            .map(|j| (self.vertices[j][2] - other.vertices[j][2]).abs())
            .fold(0.0, f64::max)
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, f: impl Fn(Point3) -> Point3) -> Self {
        Self {
            vertices: self.vertices.map(f),
        }
    }

    /// Pairs of labels whose vertices coincide within `tol`.
    pub fn coincident_vertices(&self, tol: f64) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                if crate::geom::dist(self.vertices[i], self.vertices[j]) <= tol {
                    out.push([i, j]);
                }
            }
        }
        out
    }
}
