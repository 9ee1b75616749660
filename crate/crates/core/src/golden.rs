//! The golden pup tents: the modular domain, the γ-functions, the explicit
//! vertex family and its intrinsic flat charts.
//!
//! The domain is the closed geodesic triangle
//! `x ≥ 0`, `1 − 2x ≥ 0`, `−2x + x² + y² ≥ 0` (equivalently `|z − 1| ≥ 1`)
//! with vertex `h = 1/2 + (√3/2) i` and cusps at `0` and `∞`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist, Point3};
use crate::torus::Torus8;
use crate::triangulation::{triangulation, Label};

/// Tolerance on the three defining quantities of the domain.
pub const TAU_EDGE: f64 = 1e-12;
/// Chart degeneracy threshold, relative to the squared lattice scale.
pub const TAU_AREA: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Interior,
    LeftEdge,
    RightEdge,
    CircularArc,
    HexVertex,
    SquarePoint,
    Outside,
}

impl Region {
    pub fn is_boundary(self) -> bool {
        !matches!(self, Region::Interior | Region::Outside)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Interior => "interior",
            Region::LeftEdge => "left-edge",
            Region::RightEdge => "right-edge",
            Region::CircularArc => "circular-arc",
            Region::HexVertex => "hex-vertex",
            Region::SquarePoint => "square-point",
            Region::Outside => "outside",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A point `z = x + iy` together with its place in the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularParameter {
    pub x: f64,
    pub y: f64,
    pub region: Region,
}

impl ModularParameter {
    /// Classifies `(x, y)`; exact hits (within [`TAU_EDGE`]) are boundary.
    pub fn classify(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::NonPositiveImaginary { y });
        }
        let left = x;
        let right = 1.0 - 2.0 * x;
        let arc = -2.0 * x + x * x + y * y;
        let region = if left < -TAU_EDGE || right < -TAU_EDGE || arc < -TAU_EDGE {
            Region::Outside
        } else if right.abs() <= TAU_EDGE && arc.abs() <= TAU_EDGE {
            Region::HexVertex
        } else if left.abs() <= TAU_EDGE && (y - 1.0).abs() <= TAU_EDGE {
            Region::SquarePoint
        } else if left.abs() <= TAU_EDGE {
            Region::LeftEdge
        } else if right.abs() <= TAU_EDGE {
            Region::RightEdge
        } else if arc.abs() <= TAU_EDGE {
            Region::CircularArc
        } else {
            Region::Interior
        };
        Ok(Self { x, y, region })
    }

    /// Like [`classify`](Self::classify) but rejects anything not strictly inside.
    pub fn interior(x: f64, y: f64) -> Result<Self> {
        let z = Self::classify(x, y)?;
        z.require_interior()?;
        Ok(z)
    }

    pub fn require_interior(&self) -> Result<()> {
        match self.region {
            Region::Interior => Ok(()),
            Region::Outside => Err(Error::OutsideDomain {
                x: self.x,
                y: self.y,
            }),
            region => Err(Error::NotInterior {
                x: self.x,
                y: self.y,
                region,
            }),
        }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn is_in_closed_domain(&self) -> bool {
        self.region != Region::Outside
    }

    /// Euclidean distance in the `(x, y)` chart to the domain boundary.
    pub fn boundary_distance(&self) -> f64 {
        let arc = (self.z() - 1.0).norm() - 1.0;
        self.x.min(0.5 - self.x).min(arc).max(0.0)
    }

    pub fn gammas(&self) -> GammaValues {
        gammas(self)
    }
}

/// The positive functions γ0..γ5 on the interior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaValues {
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub g5: f64,
}

impl GammaValues {
    pub fn as_array(&self) -> [f64; 6] {
        [self.g0, self.g1, self.g2, self.g3, self.g4, self.g5]
    }

    pub fn all_positive(&self) -> bool {
        self.as_array().iter().all(|g| *g > 0.0)
    }
}

pub fn gammas(z: &ModularParameter) -> GammaValues {
    let (x, y) = (z.x, z.y);
    let r2 = x * x + y * y;
    let g0 = 1.0 - 2.0 * x;
    let g1 = -2.0 * x + r2;
    let g2 = 2.0 * x - x * x + y * y;
    let g3 = 2.0 * x + r2;
    let g4 = 2.0 * x * g0 + (2.0 * x + 1.0) * r2;
    let g5 = 2.0 * x * x * g0 + x * x * g3 + y * y * g3;
    GammaValues {
        g0,
        g1,
        g2,
        g3,
        g4,
        g5,
    }
}

/// The golden pup tent `P(z)`.
pub fn golden_torus(z: &ModularParameter) -> Result<Torus8> {
    if z.region == Region::Outside {
        return Err(Error::OutsideDomain { x: z.x, y: z.y });
    }
    let (x, y) = (z.x, z.y);
    // Slightly negative x within TAU_EDGE is the left edge itself.
    let root = (8.0 * x.max(0.0)).sqrt();
    let p2: Point3 = [2.0 * x - x * x - y * y, 0.0, 0.0];
    let p1: Point3 = [p2[0] - x, -y, 0.0];
    let p3: Point3 = [p2[0] + x, y, 0.0];
    let p0: Point3 = [x * (1.0 - 2.0 * x), y * (1.0 - 2.0 * x), y * root];
    Ok(Torus8::from_upper_half([p0, p1, p2, p3]))
}

/// One planar triangle of the universal cover, with its torus labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartTriangle {
    pub labels: [Label; 3],
    pub points: [Complex64; 3],
}

impl ChartTriangle {
    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.points;
        ((b - a).conj() * (c - a)).im / 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicChart {
    pub q: [Complex64; 4],
    pub l1: Complex64,
    pub l2: Complex64,
    pub triangles: Vec<ChartTriangle>,
    /// Set when some planar triangle has area below `TAU_AREA · scale²`.
    pub degenerate: bool,
    pub min_area: f64,
}

impl IntrinsicChart {
    pub fn lattice_area(&self) -> f64 {
        (self.l1.conj() * self.l2).im.abs()
    }

    pub fn total_area(&self) -> f64 {
        self.triangles.iter().map(|t| t.signed_area().abs()).sum()
    }

    /// Coordinates of `v` in the basis `(L1, L2)`.
    pub fn lattice_coords(&self, v: Complex64) -> (f64, f64) {
        let det = self.l1.re * self.l2.im - self.l2.re * self.l1.im;
        let a = (v.re * self.l2.im - self.l2.re * v.im) / det;
        let b = (self.l1.re * v.im - v.re * self.l1.im) / det;
        (a, b)
    }
}

/// The sixteen planar triangles realizing the flat metric of modulus `z`:
/// eight listed explicitly, eight more by `j -> 7 - j`, `ζ -> −ζ`.
pub fn intrinsic_chart(z: &ModularParameter) -> Result<IntrinsicChart> {
    if z.region == Region::Outside {
        return Err(Error::OutsideDomain { x: z.x, y: z.y });
    }
    let (x, y) = (z.x, z.y);
    let zc = z.z();
    let q2 = Complex64::new(2.0 * x - x * x - y * y, 0.0);
    let q1 = q2 - zc;
    let q3 = q2 + zc;
    let q0 = Complex64::new(-2.0 * x * x - 2.0 * y * y, 0.0) + zc;
    let l1 = Complex64::new(0.0, 4.0 * y);
    let l2 = zc * l1;

    let listed: [([Label; 3], [Complex64; 3]); 8] = [
        ([0, 1, 6], [q0, q1 + l1, -q1 + l2]),
        ([1, 0, 3], [q1 + l1, q0, q3]),
        ([3, 4, 1], [q3, -q3 + l1, q1 + l1]),
        ([0, 7, 2], [q0, -q0 + l2, q2]),
        ([2, 3, 0], [q2, q3, q0]),
        ([3, 2, 5], [q3, q2, -q2]),
        ([5, 6, 3], [-q2, -q1, q3]),
        ([6, 5, 0], [-q1, -q2, q0 - l2]),
    ];
    let mut triangles: Vec<ChartTriangle> = listed
        .iter()
        .map(|&(labels, points)| ChartTriangle { labels, points })
        .collect();
    for &(labels, points) in &listed {
        triangles.push(ChartTriangle {
            labels: labels.map(|j| 7 - j),
            points: points.map(|p| -p),
        });
    }

    let scale = l1.norm().max(l2.norm());
    let min_area = triangles
        .iter()
        .map(|t| t.signed_area().abs())
        .fold(f64::INFINITY, f64::min);
    Ok(IntrinsicChart {
        q: [q0, q1, q2, q3],
        l1,
        l2,
        degenerate: min_area < TAU_AREA * scale * scale,
        min_area,
        triangles,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeMismatch {
    pub labels: [Label; 2],
    pub planar: f64,
    pub spatial: f64,
}

impl EdgeMismatch {
    pub fn error(&self) -> f64 {
        (self.planar - self.spatial).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub comparisons: usize,
    pub worst: EdgeMismatch,
    /// Largest deviation from an integer lattice vector across vertex copies
    /// and across the two copies of each glued edge.
    pub gluing_residual: f64,
    /// The 16 chart triangles cover each torus triangle exactly once.
    pub covers_triangulation: bool,
    /// All chart triangles, listed in the order given, are positively oriented.
    pub consistently_oriented: bool,
    pub passed: bool,
}

/// Compares every planar edge of the chart against the corresponding spatial
/// edge of the golden tent, and checks that the chart glues up under the
/// lattice `⟨L1, L2⟩`.
pub fn verify_isometry(z: &ModularParameter, tol: f64) -> Result<IsometryReport> {
    z.require_interior()?;
    let chart = intrinsic_chart(z)?;
    let torus = golden_torus(z)?;

    let mut comparisons = 0;
    let mut worst = EdgeMismatch {
        labels: [0, 0],
        planar: 0.0,
        spatial: 0.0,
    };
    for tri in &chart.triangles {
        for k in 0..3 {
            let (i, j) = (k, (k + 1) % 3);
            let planar = (tri.points[i] - tri.points[j]).norm();
            let spatial = dist(torus.vertex(tri.labels[i]), torus.vertex(tri.labels[j]));
            comparisons += 1;
            if (planar - spatial).abs() >= worst.error() {
                worst = EdgeMismatch {
                    labels: [tri.labels[i], tri.labels[j]],
                    planar,
                    spatial,
                };
            }
        }
    }

    let lattice_gap = |v: Complex64| {
        let (a, b) = chart.lattice_coords(v);
        let scale = chart.l1.norm().max(chart.l2.norm());
        ((a - a.round()).abs().max((b - b.round()).abs())) * scale
    };

    let mut gluing_residual: f64 = 0.0;
    // Every copy of a vertex differs from every other by a lattice vector.
    for v in 0..8 {
        let copies: Vec<Complex64> = chart
            .triangles
            .iter()
            .flat_map(|t| t.labels.iter().zip(t.points.iter()))
            .filter(|(l, _)| **l == v)
            .map(|(_, p)| *p)
            .collect();
        for c in &copies[1..] {
            gluing_residual = gluing_residual.max(lattice_gap(*c - copies[0]));
        }
    }
    // Each torus edge appears in two chart triangles, related by one translation.
    for e in &triangulation().edges {
        let holders: Vec<(Complex64, Complex64)> = chart
            .triangles
            .iter()
            .filter_map(|t| {
                let ia = t.labels.iter().position(|l| *l == e[0])?;
                let ib = t.labels.iter().position(|l| *l == e[1])?;
                Some((t.points[ia], t.points[ib]))
            })
            .collect();
        if holders.len() != 2 {
            gluing_residual = f64::INFINITY;
            continue;
        }
        let (pa, pb) = holders[0];
        let (qa, qb) = holders[1];
        let shift = qa - pa;
        gluing_residual = gluing_residual
            .max((qb - pb - shift).norm())
            .max(lattice_gap(shift));
    }

    let mut label_sets: Vec<[Label; 3]> = chart
        .triangles
        .iter()
        .map(|t| {
            let mut l = t.labels;
            l.sort_unstable();
            l
        })
        .collect();
    label_sets.sort_unstable();
    let covers_triangulation = label_sets == triangulation().triangles;
    let consistently_oriented = chart.triangles.iter().all(|t| t.signed_area() > 0.0);

    let passed = worst.error() <= tol
        && gluing_residual <= tol.max(1e-12)
        && covers_triangulation
        && consistently_oriented;
    Ok(IsometryReport {
        comparisons,
        worst,
        gluing_residual,
        covers_triangulation,
        consistently_oriented,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: f64, y: f64) -> ModularParameter {
        ModularParameter::classify(x, y).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(z(0.25, 1.0).region, Region::Interior);
        assert_eq!(z(0.5, 3f64.sqrt() / 2.0).region, Region::HexVertex);
        assert_eq!(z(0.25, 7f64.sqrt() / 4.0).region, Region::CircularArc);
        assert_eq!(z(0.0, 1.0).region, Region::SquarePoint);
        assert_eq!(z(0.0, 2.0).region, Region::LeftEdge);
        assert_eq!(z(0.5, 2.0).region, Region::RightEdge);
        assert_eq!(z(0.6, 2.0).region, Region::Outside);
        assert_eq!(z(-0.1, 2.0).region, Region::Outside);
        assert_eq!(z(0.25, 0.5).region, Region::Outside);
        assert!(ModularParameter::classify(0.25, 0.0).is_err());
        assert!(ModularParameter::classify(0.25, -1.0).is_err());
        assert!(ModularParameter::interior(0.5, 2.0).is_err());
    }

    #[test]
    fn gammas_at_quarter_plus_i() {
        let g = gammas(&z(0.25, 1.0));
        let expect = [0.5, 9.0 / 16.0, 23.0 / 16.0, 25.0 / 16.0, 59.0 / 32.0, 441.0 / 256.0];
        for (a, b) in g.as_array().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
        assert!(g.all_positive());
        assert!(gammas(&z(0.25, 7f64.sqrt() / 4.0)).g1.abs() < 1e-15);
        assert_eq!(gammas(&z(0.5, 2.0)).g0, 0.0);
    }

    #[test]
    fn golden_vertices_at_quarter_plus_i() {
        let t = golden_torus(&z(0.25, 1.0)).unwrap();
        let expect = [
            [0.125, 0.5, 2f64.sqrt()],
            [-0.8125, -1.0, 0.0],
            [-0.5625, 0.0, 0.0],
            [-0.3125, 1.0, 0.0],
        ];
        for j in 0..4 {
            for k in 0..3 {
                assert!((t.vertex(j)[k] - expect[j][k]).abs() < 1e-15);
            }
        }
        assert!(t.is_rho_symmetric(1e-15));
        assert!(t.is_normalized(0.0));
    }

    #[test]
    fn golden_boundary_degenerations() {
        let t = golden_torus(&z(0.0, 1.7)).unwrap();
        assert!(t.vertices().iter().all(|p| p[2] == 0.0));
        let h = golden_torus(&z(0.5, 3f64.sqrt() / 2.0)).unwrap();
        assert!(dist(h.vertex(0), h.vertex(7)) < 1e-15);
        assert!(dist(h.vertex(0), [0.0, 0.0, 3f64.sqrt()]) < 1e-15);
        assert!(golden_torus(&z(-0.5, 2.0)).is_err());
    }

    #[test]
    fn chart_values_at_quarter_plus_i() {
        let c = intrinsic_chart(&z(0.25, 1.0)).unwrap();
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-15;
        assert!(close(c.q[0], Complex64::new(-1.875, 1.0)));
        assert!(close(c.q[1], Complex64::new(-0.8125, -1.0)));
        assert!(close(c.q[2], Complex64::new(-0.5625, 0.0)));
        assert!(close(c.q[3], Complex64::new(-0.3125, 1.0)));
        assert!(close(c.l1, Complex64::new(0.0, 4.0)));
        assert!(close(c.l2, Complex64::new(-4.0, 1.0)));
        assert!(!c.degenerate);
        // 16 triangles tile a fundamental domain of ⟨L1, L2⟩.
        assert!((c.total_area() - c.lattice_area()).abs() < 1e-12);
    }

    #[test]
    fn triangle_346_glues_onto_341() {
        let c = intrinsic_chart(&z(0.25, 1.0)).unwrap();
        let t346 = c
            .triangles
            .iter()
            .find(|t| {
                let mut l = t.labels;
                l.sort_unstable();
                l == [3, 4, 6]
            })
            .unwrap();
        let (q1, q3, l1) = (c.q[1], c.q[3], c.l1);
        let expect = [q3 - l1, -q3, -q1 - l1];
        for (label, p) in [3usize, 4, 6].iter().zip(expect) {
            let i = t346.labels.iter().position(|l| l == label).unwrap();
            assert!((t346.points[i] - p).norm() < 1e-14);
        }
        // Translate by L1: shares edge (Q3, −Q3 + L1) with {3,4,1}.
        let shifted: Vec<Complex64> = expect.iter().map(|p| p + l1).collect();
        let t341 = &c.triangles[2];
        assert_eq!(t341.labels, [3, 4, 1]);
        assert!((shifted[0] - t341.points[0]).norm() < 1e-14);
        assert!((shifted[1] - t341.points[1]).norm() < 1e-14);
    }

    #[test]
    fn chart_collapses_on_arc() {
        let c = intrinsic_chart(&z(0.25, 7f64.sqrt() / 4.0)).unwrap();
        assert!(c.q[2].norm() < 1e-15);
        assert!(c.degenerate);
    }

    #[test]
    fn isometry_at_sample_points() {
        let r = verify_isometry(&z(0.25, 1.0), 1e-12).unwrap();
        assert_eq!(r.comparisons, 48);
        assert!(r.passed, "{r:?}");
        assert!(r.covers_triangulation && r.consistently_oriented);
        let r = verify_isometry(&z(0.1, 1.3), 1e-12).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn edge_202_length_matches() {
        let zz = z(0.25, 1.0);
        let c = intrinsic_chart(&zz).unwrap();
        let t = golden_torus(&zz).unwrap();
        let planar = (c.q[0] - c.q[2]).norm();
        let spatial = dist(t.vertex(0), t.vertex(2));
        assert!((planar * planar - 2.72265625).abs() < 1e-12);
        assert!((planar - spatial).abs() < 1e-14);
    }

    #[test]
    fn boundary_distance() {
        assert!((z(0.25, 1.0).boundary_distance() - ((0.5625f64 + 1.0).sqrt() - 1.0).min(0.25)).abs() < 1e-15);
        assert_eq!(z(0.0, 3.0).boundary_distance(), 0.0);
    }
}
