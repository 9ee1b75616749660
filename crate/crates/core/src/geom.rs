//! Minimal 3-vector arithmetic on `[f64; 3]`.

pub type Point3 = [f64; 3];

#[inline]
pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn dist(a: Point3, b: Point3) -> f64 {
    norm(sub(a, b))
}

/// `det(u, v, w)` with the vectors as rows.
#[inline]
pub fn det3(u: Point3, v: Point3, w: Point3) -> f64 {
    dot(u, cross(v, w))
}

/// Interior angle at `apex` of the triangle `(apex, p, q)`.
///
/// `atan2(|u × v|, u · v)` stays accurate near 0 and π where `acos` loses digits.
#[inline]
pub fn angle_at(apex: Point3, p: Point3, q: Point3) -> f64 {
    let u = sub(p, apex);
    let v = sub(q, apex);
    norm(cross(u, v)).atan2(dot(u, v))
}

/// Largest pairwise distance in a point set.
pub fn diameter(points: &[Point3]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            d = d.max(dist(p, q));
        }
    }
    d
}

/// Diagonal length of the axis-aligned bounding box.
pub fn bbox_diameter(points: &[Point3]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    norm(sub(hi, lo))
}

/// Closest point to `p` on the closed triangle `abc` (degenerate triangles allowed).
pub fn closest_point_on_triangle(p: Point3, a: Point3, b: Point3, c: Point3) -> Point3 {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let n = cross(ab, ac);
    let nn = dot(n, n);
    let scale2 = dot(ab, ab).max(dot(ac, ac)).max(f64::MIN_POSITIVE);
    if nn <= 1e-24 * scale2 * scale2 {
        // Segment-like triangle: best of the three edges.
        let cands = [
            closest_point_on_segment(p, a, b),
            closest_point_on_segment(p, b, c),
            closest_point_on_segment(p, c, a),
        ];
        return cands
            .into_iter()
            .min_by(|u, v| dist(p, *u).total_cmp(&dist(p, *v)))
            .unwrap();
    }

    // Voronoi-region walk.
    let ap = sub(p, a);
    let d1 = dot(ab, ap);
    let d2 = dot(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = sub(p, b);
    let d3 = dot(ab, bp);
    let d4 = dot(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return add(a, scale(ab, v));
    }
    let cp = sub(p, c);
    let d5 = dot(ab, cp);
    let d6 = dot(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return add(a, scale(ac, w));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return add(b, scale(sub(c, b), w));
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    add(a, add(scale(ab, v), scale(ac, w)))
}

pub fn closest_point_on_segment(p: Point3, a: Point3, b: Point3) -> Point3 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        return a;
    }
    let s = (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0);
    add(a, scale(ab, s))
}

/// Rotation matrix (rows) applied as `R p`.
pub type Mat3 = [[f64; 3]; 3];

pub fn mat_vec(m: &Mat3, p: Point3) -> Point3 {
    [dot(m[0], p), dot(m[1], p), dot(m[2], p)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

/// Eigen-decomposition of a symmetric 3×3 matrix.
/// Returns eigenvalues in descending order and the matching unit eigenvectors.
pub fn symmetric_eigen(m: &Mat3) -> ([f64; 3], [Point3; 3]) {
    let e = nalgebra::Matrix3::from_fn(|i, j| m[i][j]).symmetric_eigen();
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| e.eigenvalues[j].total_cmp(&e.eigenvalues[i]));
    let vals = idx.map(|k| e.eigenvalues[k]);
    let vecs = idx.map(|k| {
        let c = e.eigenvectors.column(k);
        [c[0], c[1], c[2]]
    });
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closest_point_regions() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        let c = [0.0, 1.0, 0.0];
        assert!(dist(closest_point_on_triangle([0.2, 0.2, 3.0], a, b, c), [0.2, 0.2, 0.0]) < 1e-15);
        assert_eq!(closest_point_on_triangle([-1.0, -1.0, 0.0], a, b, c), a);
        let q = closest_point_on_triangle([1.0, 1.0, 0.0], a, b, c);
        assert!(dist(q, [0.5, 0.5, 0.0]) < 1e-15);
        // degenerate (collinear) triangle
        let q = closest_point_on_triangle([0.5, 1.0, 0.0], a, b, [2.0, 0.0, 0.0]);
        assert!(dist(q, [0.5, 0.0, 0.0]) < 1e-15);
    }

    #[test]
    fn jacobi_eigen_recovers_diagonal() {
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 0.5]];
        let (vals, vecs) = symmetric_eigen(&m);
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!((vals[2] - 0.5).abs() < 1e-12);
        let mv = mat_vec(&m, vecs[0]);
        assert!(dist(mv, scale(vecs[0], 3.0)) < 1e-12);
    }

    #[test]
    fn angle_is_accurate_near_pi() {
        let eps = 1e-9;
        let a = angle_at([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [-1.0, eps, 0.0]);
        assert!((a - (std::f64::consts::PI - eps)).abs() < 1e-15);
    }
}
