//! Sampled Hausdorff distance between triangle sets and similarity normalization.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{add, closest_point_on_triangle, cross, dist, dot, norm, scale, sub, symmetric_eigen, Point3};
use crate::shape::polygon::GoodPolygon;
use crate::torus::Torus8;

/// Triangles; a segment is a triangle with a repeated vertex.
pub type TriangleSet = Vec<[Point3; 3]>;

pub const DEFAULT_SAMPLES: usize = 200;

pub fn torus_triangles(p: &Torus8) -> TriangleSet {
    let v = p.vertices();
    p.triangulation().triangles.iter().map(|t| t.map(|j| v[j])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HausdorffDistance {
    pub distance: f64,
    /// `sup_{a ∈ A} d(a, B)`.
    pub a_to_b: f64,
    pub b_to_a: f64,
    /// Edge subdivisions per triangle.
    pub subdivisions: usize,
    pub samples_per_triangle: usize,
}

/// Smallest edge subdivision giving at least `samples` barycentric points.
fn subdivisions_for(samples: usize) -> usize {
    let mut n = 1;
    while (n + 1) * (n + 2) / 2 < samples {
        n += 1;
    }
    n
}

fn samples(set: &[[Point3; 3]], n: usize) -> Vec<Point3> {
    let mut out = Vec::with_capacity(set.len() * (n + 1) * (n + 2) / 2);
    for [a, b, c] in set {
        for i in 0..=n {
            for j in 0..=n - i {
                let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
                let w = 1.0 - u - v;
                out.push(add(add(scale(*a, w), scale(*b, u)), scale(*c, v)));
            }
        }
    }
    out
}

pub fn point_set_distance(p: Point3, set: &[[Point3; 3]]) -> f64 {
    set.iter()
        .map(|[a, b, c]| dist(p, closest_point_on_triangle(p, *a, *b, *c)))
        .fold(f64::INFINITY, f64::min)
}

fn directed(a: &[[Point3; 3]], b: &[[Point3; 3]], n: usize) -> f64 {
    samples(a, n)
        .par_iter()
        .map(|p| point_set_distance(*p, b))
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance from about `samples_per_triangle` points per triangle
/// projected exactly onto the other set.
pub fn hausdorff(a: &[[Point3; 3]], b: &[[Point3; 3]], samples_per_triangle: usize) -> HausdorffDistance {
    let n = subdivisions_for(samples_per_triangle.max(3));
    let a_to_b = directed(a, b, n);
    let b_to_a = directed(b, a, n);
    HausdorffDistance {
        distance: a_to_b.max(b_to_a),
        a_to_b,
        b_to_a,
        subdivisions: n,
        samples_per_triangle: (n + 1) * (n + 2) / 2,
    }
}

/// A rigidly moved and scaled copy of a triangle set together with its distance to the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alignment {
    pub triangles: TriangleSet,
    pub scale: f64,
    /// Which candidate frame won.
    pub candidate: String,
    pub hausdorff: HausdorffDistance,
}

fn distinct_points(set: &[[Point3; 3]]) -> Vec<Point3> {
    let mut pts: Vec<Point3> = Vec::new();
    for p in set.iter().flatten() {
        if !pts.iter().any(|q| q == p) {
            pts.push(*p);
        }
    }
    pts
}

fn point_diameter(pts: &[Point3]) -> (f64, usize, usize) {
    let mut best = (0.0, 0, 0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(pts[i], pts[j]);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

fn unit(v: Point3) -> Option<Point3> {
    let n = norm(v);
    (n > 1e-300).then(|| scale(v, 1.0 / n))
}

/// An orthonormal frame `[e1, e2, e3]` whose first axis is `d1` and whose second
/// lies in the span of `d1, d2`.
fn frame(d1: Point3, d2: Point3) -> Option<[Point3; 3]> {
    let e1 = unit(d1)?;
    let e2 = unit(sub(d2, scale(e1, dot(d2, e1))))?;
    Some([e1, e2, cross(e1, e2)])
}

/// A candidate similarity: `x ↦ to + s Σ_k ⟨x − from, e_k⟩ f_k`.
struct Candidate {
    label: String,
    from: Point3,
    to: Point3,
    e: [Point3; 3],
    f: [Point3; 3],
}

impl Candidate {
    fn apply(&self, s: f64, x: Point3) -> Point3 {
        let d = sub(x, self.from);
        (0..3).fold(self.to, |acc, k| add(acc, scale(self.f[k], s * dot(d, self.e[k]))))
    }
}

fn centroid(pts: &[Point3]) -> Point3 {
    scale(pts.iter().fold([0.0; 3], |a, p| add(a, *p)), 1.0 / pts.len() as f64)
}

fn principal_axes(pts: &[Point3]) -> [Point3; 3] {
    let c = centroid(pts);
    let mut m = [[0.0; 3]; 3];
    for p in pts {
        let d = sub(*p, c);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += d[i] * d[j];
            }
        }
    }
    symmetric_eigen(&m).1
}

/// Scales `set` so its diameter matches the polygon's and picks the rigid placement
/// (principal-axis frames with all sign choices, and diameter-anchored frames) with the
/// smallest Hausdorff distance to the polygon.
pub fn normalize_similarity(set: &[[Point3; 3]], q: &GoodPolygon) -> Result<Alignment> {
    let sp = distinct_points(set);
    let (ds, si, sj) = point_diameter(&sp);
    if sp.is_empty() || ds <= 0.0 {
        return Err(Error::ZeroDiameter);
    }
    let qp = q.vertices.clone();
    let (dq, _, _) = point_diameter(&qp);
    let s = dq / ds;
    let target = q.triangles();

    let mut candidates = Vec::new();
    let (cs, cq) = (centroid(&sp), centroid(&qp));
    let (es, fq) = (principal_axes(&sp), principal_axes(&qp));
    for signs in 0..8u8 {
        let sg = |k: u8| if signs >> k & 1 == 1 { -1.0 } else { 1.0 };
        candidates.push(Candidate {
            label: format!("principal-axes {signs}"),
            from: cs,
            to: cq,
            e: es,
            f: [scale(fq[0], sg(0)), scale(fq[1], sg(1)), scale(fq[2], sg(2))],
        });
    }

    // Anchor the diameter of the set on every diameter-length pair of the polygon.
    let (p, pq) = (sp[si], sub(sp[sj], sp[si]));
    let third = sp
        .iter()
        .copied()
        .max_by(|a, b| {
            let off = |x: Point3| norm(cross(sub(x, p), pq));
            off(*a).total_cmp(&off(*b))
        })
        .unwrap();
    if let Some(e) = frame(pq, sub(third, p)) {
        for a in 0..qp.len() {
            for b in 0..qp.len() {
                if a == b || dist(qp[a], qp[b]) < dq * (1.0 - 1e-9) {
                    continue;
                }
                for (c, qc) in qp.iter().enumerate() {
                    let Some(f) = frame(sub(qp[b], qp[a]), sub(*qc, qp[a])) else { continue };
                    for mirror in [1.0, -1.0] {
                        candidates.push(Candidate {
                            label: format!("diameter {a}-{b} toward {c} mirror {mirror}"),
                            from: p,
                            to: qp[a],
                            e,
                            f: [f[0], f[1], scale(f[2], mirror)],
                        });
                    }
                }
            }
        }
    }

    let moved = |c: &Candidate| -> TriangleSet { set.iter().map(|t| t.map(|x| c.apply(s, x))).collect() };
    let coarse = candidates
        .par_iter()
        .map(|c| hausdorff(&moved(c), &target, 28).distance)
        .collect::<Vec<_>>();
    let best = (0..candidates.len())
        .min_by(|&i, &j| coarse[i].total_cmp(&coarse[j]))
        .expect("at least one candidate");
    let triangles = moved(&candidates[best]);
    let hausdorff = hausdorff(&triangles, &target, DEFAULT_SAMPLES);
    Ok(Alignment {
        triangles,
        scale: s,
        candidate: candidates[best].label.clone(),
        hausdorff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::ModularParameter;
    use crate::shape::polygon::good_polygon;

    #[test]
    fn identical_sets() {
        let a = vec![[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]];
        assert!(hausdorff(&a, &a, 50).distance < 1e-15);
    }

    #[test]
    fn translated_segment() {
        let a = vec![[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]];
        let b = vec![[[0.0, 0.0, 0.3], [1.0, 0.0, 0.3], [1.0, 0.0, 0.3]]];
        assert!((hausdorff(&a, &b, 50).distance - 0.3).abs() < 1e-15);
    }

    #[test]
    fn sample_count_is_reported() {
        let a = vec![[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]];
        let h = hausdorff(&a, &a, DEFAULT_SAMPLES);
        assert!(h.samples_per_triangle >= DEFAULT_SAMPLES);
    }

    #[test]
    fn scaled_and_rotated_copies_normalize_exactly() {
        let z = ModularParameter::classify(0.25, 7f64.sqrt() / 4.0).unwrap();
        let q = good_polygon(&z).unwrap();
        let (c, s) = (0.6f64, 0.8f64);
        let copy: TriangleSet = q
            .triangles()
            .iter()
            .map(|t| t.map(|p| [2.0 * (c * p[0] - s * p[2]) + 1.0, 2.0 * p[1] - 3.0, 2.0 * (s * p[0] + c * p[2])]))
            .collect();
        let a = normalize_similarity(&copy, &q).unwrap();
        assert!(a.hausdorff.distance < 1e-12, "{a:?}");
    }

    #[test]
    fn zero_diameter_is_rejected() {
        let a = vec![[[1.0, 1.0, 1.0]; 3]];
        let z = ModularParameter::classify(0.0, 1.0).unwrap();
        assert!(matches!(normalize_similarity(&a, &good_polygon(&z).unwrap()), Err(Error::ZeroDiameter)));
    }
}
