//! Convex hull of the eight vertices by exhaustive facet search.

use serde::{Deserialize, Serialize};

use crate::geom::{cross, dot, norm, sub, Point3};
use crate::torus::Torus8;
use crate::triangulation::{tetra_det, Label};

/// Coplanarity threshold relative to `scale³`.
pub const TAU_HULL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullDimension {
    Point,
    Segment,
    Polygon,
    Solid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexHull {
    pub dimension: HullDimension,
    /// Labels of extreme points; for a polygon, in boundary order.
    pub vertices: Vec<Label>,
    /// Supporting facets of a solid hull, each a boundary-ordered label polygon.
    pub facets: Vec<Vec<Label>>,
    /// Mesh triangles whose supporting plane supports the hull.
    pub on_hull_triangles: Vec<[Label; 3]>,
}

impl ConvexHull {
    /// Facets fanned into triangles.
    pub fn faces(&self) -> Vec<[Label; 3]> {
        let polys: Vec<&Vec<Label>> = match self.dimension {
            HullDimension::Solid => self.facets.iter().collect(),
            HullDimension::Polygon => vec![&self.vertices],
            _ => Vec::new(),
        };
        polys
            .into_iter()
            .flat_map(|f| (1..f.len().saturating_sub(1)).map(move |k| [f[0], f[k], f[k + 1]]))
            .collect()
    }
}

/// Side of every label relative to the plane through `a, b, c`: `+1`, `-1` or `0`.
fn sides(p: &Torus8, a: Label, b: Label, c: Label, tol: f64) -> [i32; 8] {
    std::array::from_fn(|d| {
        if d == a || d == b || d == c {
            return 0;
        }
        let v = tetra_det(p, [a, b, c, d]);
        if v > tol {
            1
        } else if v < -tol {
            -1
        } else {
            0
        }
    })
}

fn supporting(s: &[i32; 8]) -> bool {
    !(s.contains(&1) && s.contains(&-1))
}

/// Orders coplanar points counterclockwise around their centroid with respect to `normal`
/// and drops the ones that are not extreme.
fn planar_hull(points: &[Point3], labels: &[Label], normal: Point3) -> Vec<Label> {
    let n = norm(normal);
    let nz = [normal[0] / n, normal[1] / n, normal[2] / n];
    let helper = if nz[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = {
        let c = cross(nz, helper);
        let l = norm(c);
        [c[0] / l, c[1] / l, c[2] / l]
    };
    let e2 = cross(nz, e1);
    let mut pts: Vec<(f64, f64, Label)> = labels
        .iter()
        .map(|&l| (dot(points[l], e1), dot(points[l], e2), l))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    if pts.len() < 3 {
        return pts.into_iter().map(|p| p.2).collect();
    }
    let scale = pts
        .iter()
        .flat_map(|p| [p.0.abs(), p.1.abs()])
        .fold(0.0, f64::max)
        .max(1e-300);
    let turn = |o: &(f64, f64, Label), a: &(f64, f64, Label), b: &(f64, f64, Label)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let eps = 1e-12 * scale * scale;
    // Andrew's monotone chain.
    let mut lower: Vec<(f64, f64, Label)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<(f64, f64, Label)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|p| p.2).collect()
}

pub fn convex_hull(p: &Torus8) -> ConvexHull {
    let v = p.vertices();
    let scale = p.scale();
    let tol = TAU_HULL * scale.powi(3);

    // Best plane spanned by three of the points.
    let mut best = (0.0, [0usize; 3]);
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let area = norm(cross(sub(v[b], v[a]), sub(v[c], v[a])));
                if area > best.0 {
                    best = (area, [a, b, c]);
                }
            }
        }
    }
    let all: Vec<Label> = (0..8).collect();
    if best.0 <= 1e-12 * scale * scale {
        let far = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .max_by(|x, y| {
                crate::geom::dist(v[x.0], v[x.1]).total_cmp(&crate::geom::dist(v[y.0], v[y.1]))
            })
            .unwrap();
        let dimension = if crate::geom::dist(v[far.0], v[far.1]) <= 1e-12 * scale.max(1e-300) {
            HullDimension::Point
        } else {
            HullDimension::Segment
        };
        let vertices = if dimension == HullDimension::Point { vec![0] } else { vec![far.0, far.1] };
        return ConvexHull {
            dimension,
            vertices,
            facets: Vec::new(),
            on_hull_triangles: Vec::new(),
        };
    }
    let [a, b, c] = best.1;
    let base = sides(p, a, b, c, tol);
    if base.iter().all(|s| *s == 0) {
        let normal = cross(sub(v[b], v[a]), sub(v[c], v[a]));
        let vertices = planar_hull(v, &all, normal);
        return ConvexHull {
            dimension: HullDimension::Polygon,
            vertices,
            facets: Vec::new(),
            on_hull_triangles: Vec::new(),
        };
    }

    let mut facets: Vec<Vec<Label>> = Vec::new();
    let mut seen: Vec<Vec<Label>> = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let normal = cross(sub(v[b], v[a]), sub(v[c], v[a]));
                if norm(normal) <= 1e-12 * scale * scale {
                    continue;
                }
                let s = sides(p, a, b, c, tol);
                if !supporting(&s) {
                    continue;
                }
                let mut on_plane: Vec<Label> =
                    (0..8).filter(|&d| d == a || d == b || d == c || s[d] == 0).collect();
                on_plane.sort_unstable();
                if seen.contains(&on_plane) {
                    continue;
                }
                seen.push(on_plane.clone());
                // Outward normal: away from the strict side.
                let inside = if s.contains(&1) { 1.0 } else { -1.0 };
                let outward = [-inside * normal[0], -inside * normal[1], -inside * normal[2]];
                facets.push(planar_hull(v, &on_plane, outward));
            }
        }
    }
    let mut vertices: Vec<Label> = facets.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();

    let on_hull_triangles = p
        .triangulation()
        .triangles
        .iter()
        .filter(|t| {
            let normal = cross(sub(v[t[1]], v[t[0]]), sub(v[t[2]], v[t[0]]));
            norm(normal) > 1e-12 * scale * scale && supporting(&sides(p, t[0], t[1], t[2], tol))
        })
        .copied()
        .collect();
    ConvexHull {
        dimension: HullDimension::Solid,
        vertices,
        facets,
        on_hull_triangles,
    }
}
