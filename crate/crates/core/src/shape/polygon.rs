//! Good polygons: the limits of collapsing pup tents at the domain boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist, Point3};
use crate::golden::{golden_torus, ModularParameter, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonKind {
    Rectangle,
    Trapezoid,
    EquilateralTriangle,
}

/// A planar convex polygon in 3-space, vertices in boundary order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodPolygon {
    pub kind: PolygonKind,
    pub vertices: Vec<Point3>,
}

impl GoodPolygon {
    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n).map(|k| dist(self.vertices[k], self.vertices[(k + 1) % n])).collect()
    }

    /// The two diagonals of a quadrilateral.
    pub fn diagonals(&self) -> Option<[f64; 2]> {
        let v = &self.vertices;
        (v.len() == 4).then(|| [dist(v[0], v[2]), dist(v[1], v[3])])
    }

    /// Fan triangulation, for distance computations.
    pub fn triangles(&self) -> Vec<[Point3; 3]> {
        let v = &self.vertices;
        (1..v.len() - 1).map(|k| [v[0], v[k], v[k + 1]]).collect()
    }

    /// Largest violation of the defining property of the kind.
    pub fn defect(&self) -> f64 {
        let s = self.side_lengths();
        match self.kind {
            PolygonKind::Rectangle => {
                let [d1, d2] = self.diagonals().unwrap_or([f64::INFINITY, 0.0]);
                (s[0] - s[2]).abs().max((s[1] - s[3]).abs()).max((d1 - d2).abs())
            }
            PolygonKind::Trapezoid => {
                let [d1, d2] = self.diagonals().unwrap_or([f64::INFINITY, 0.0]);
                let long = s.iter().fold(0.0, |m: f64, l| m.max(*l));
                (d1 - long).abs().max((d2 - long).abs())
            }
            PolygonKind::EquilateralTriangle => {
                let hi = s.iter().fold(f64::MIN, |m, l| m.max(*l));
                let lo = s.iter().fold(f64::MAX, |m, l| m.min(*l));
                hi - lo
            }
        }
    }
}

/// The limiting hull polygon at a boundary parameter.
pub fn good_polygon(zeta: &ModularParameter) -> Result<GoodPolygon> {
    match zeta.region {
        Region::LeftEdge | Region::SquarePoint => {
            let (a, b) = (zeta.y * zeta.y, zeta.y);
            Ok(GoodPolygon {
                kind: PolygonKind::Rectangle,
                vertices: vec![[a, b, 0.0], [-a, b, 0.0], [-a, -b, 0.0], [a, -b, 0.0]],
            })
        }
        Region::CircularArc => {
            let p = golden_torus(zeta)?;
            Ok(GoodPolygon {
                kind: PolygonKind::Trapezoid,
                vertices: [1, 6, 0, 7].map(|j| p.vertex(j)).to_vec(),
            })
        }
        Region::HexVertex => {
            let p = golden_torus(zeta)?;
            Ok(GoodPolygon {
                kind: PolygonKind::EquilateralTriangle,
                vertices: vec![p.vertex(0), p.vertex(1), p.vertex(3)],
            })
        }
        Region::RightEdge => Err(Error::NotGoodBoundary(format!(
            "right edge at y = {} collapses to a pyramid, not a good polygon",
            zeta.y
        ))),
        region => Err(Error::NotGoodBoundary(format!("{region} parameter ({}, {})", zeta.x, zeta.y))),
    }
}
