//! Plain triangle meshes, OBJ output and plane slices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geom::{add, scale, sub, Point3};
use crate::shape::{ConvexHull, GoodPolygon};
use crate::torus::Torus8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn of_torus(p: &Torus8) -> Self {
        Self {
            vertices: p.vertices().to_vec(),
            triangles: p.triangulation().triangles.to_vec(),
        }
    }

    pub fn of_polygon(q: &GoodPolygon) -> Self {
        Self {
            vertices: q.vertices.clone(),
            triangles: (1..q.vertices.len() - 1).map(|k| [0, k, k + 1]).collect(),
        }
    }

    /// Hull faces over the torus vertex labels.
    pub fn of_hull(p: &Torus8, h: &ConvexHull) -> Self {
        Self {
            vertices: p.vertices().to_vec(),
            triangles: h.faces(),
        }
    }

    /// Wavefront OBJ with 17 significant digits and 1-based faces.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
        }
        for t in &self.triangles {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Plane {
    XY,
    XZ,
    YZ,
}

impl Plane {
    /// Coordinate fixed by the plane and the two in-plane coordinates.
    pub fn axes(self) -> (usize, [usize; 2]) {
        match self {
            Plane::XY => (2, [0, 1]),
            Plane::XZ => (1, [0, 2]),
            Plane::YZ => (0, [1, 2]),
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "XY" => Ok(Plane::XY),
            "XZ" => Ok(Plane::XZ),
            "YZ" => Ok(Plane::YZ),
            _ => Err(crate::Error::Invalid(format!("plane {s:?} is not one of XY, XZ, YZ"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceSegment {
    pub triangle: usize,
    pub points: [Point3; 2],
    /// The endpoints in the in-plane coordinates.
    pub plane_points: [[f64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    pub plane: Plane,
    pub offset: f64,
    pub segments: Vec<SliceSegment>,
}

/// Intersects every triangle with the plane independently; segments are unordered.
/// A triangle lying in the plane contributes its three edges.
pub fn slice(mesh: &Mesh, plane: Plane, offset: f64) -> Slice {
    let (axis, [a0, a1]) = plane.axes();
    let flat = |p: Point3| [p[a0], p[a1]];
    let mut segments = Vec::new();
    for (k, t) in mesh.triangles.iter().enumerate() {
        let v = t.map(|j| mesh.vertices[j]);
        let d = v.map(|p| p[axis] - offset);
        let mut push = |p: Point3, q: Point3| {
            if p != q {
                segments.push(SliceSegment {
                    triangle: k,
                    points: [p, q],
                    plane_points: [flat(p), flat(q)],
                });
            }
        };
        if d.iter().all(|x| *x == 0.0) {
            for i in 0..3 {
                push(v[i], v[(i + 1) % 3]);
            }
            continue;
        }
        let mut pts: Vec<Point3> = Vec::with_capacity(3);
        for i in 0..3 {
            let j = (i + 1) % 3;
            if d[i] == 0.0 {
                pts.push(v[i]);
            } else if d[i] * d[j] < 0.0 {
                let s = d[i] / (d[i] - d[j]);
                let mut p = add(v[i], scale(sub(v[j], v[i]), s));
                p[axis] = offset;
                pts.push(p);
            }
        }
        pts.dedup();
        if pts.len() == 2 {
            push(pts[0], pts[1]);
        }
    }
    Slice { plane, offset, segments }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obj_has_all_faces() {
        let p = crate::reference::pup_torus();
        let obj = Mesh::of_torus(&p).to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 8);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 16);
        let first: f64 = obj.lines().next().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
        assert_eq!(first, p.vertex(0)[0]);
    }

    #[test]
    fn crossing_and_coplanar_triangles() {
        let m = Mesh {
            vertices: vec![[0.0, 0.0, -1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            triangles: vec![[0, 1, 2], [3, 4, 5]],
        };
        let s = slice(&m, Plane::XY, 0.0);
        assert_eq!(s.segments.iter().filter(|g| g.triangle == 0).count(), 1);
        assert_eq!(s.segments.iter().filter(|g| g.triangle == 1).count(), 3);
        let g = s.segments[0];
        assert!(g.points.iter().all(|p| p[2] == 0.0));
        assert!(g.points.contains(&[0.5, 0.0, 0.0]) && g.points.contains(&[0.0, 0.5, 0.0]));
    }
}
