//! Exact triangle/triangle intersection over all 120 triangle pairs.
//!
//! Coordinates are rescaled by a common power of two so that every vertex is
//! an integer point; all predicates are then evaluated in `BigInt`. Points on
//! a segment are carried homogeneously as `x / w` with `w > 0`.
//!
//! Two closed triangles meet only in their shared simplex iff every edge of
//! each meets the other only there: the intersection is convex and each of its
//! extreme points lies on an edge of one of them.

use num_bigint::BigInt;
use num_traits::{Float, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::torus::Torus8;
use crate::triangulation::{classify_pairs, triangulation, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleVerdict {
    Embedded,
    NotEmbedded,
    /// Extra contact without a transversal crossing or area overlap.
    Touching,
}

type IPoint = [BigInt; 3];

fn isub(a: &IPoint, b: &IPoint) -> IPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn iscale(a: &IPoint, s: &BigInt) -> IPoint {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

fn iadd(a: &IPoint, b: &IPoint) -> IPoint {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

fn idot(a: &IPoint, b: &IPoint) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn icross(a: &IPoint, b: &IPoint) -> IPoint {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero(a: &IPoint) -> bool {
    a.iter().all(Zero::is_zero)
}

fn sgn(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Integer images of the eight vertices under a common dyadic rescaling.
fn integer_vertices(p: &Torus8) -> [IPoint; 8] {
    let decoded: Vec<[(u64, i16, i8); 3]> = p
        .vertices()
        .iter()
        .map(|v| v.map(Float::integer_decode))
        .collect();
    let min_exp = decoded
        .iter()
        .flatten()
        .filter(|(m, _, _)| *m != 0)
        .map(|(_, e, _)| *e)
        .min()
        .unwrap_or(0);
    std::array::from_fn(|j| {
        decoded[j].map(|(m, e, s)| {
            if m == 0 {
                BigInt::zero()
            } else {
                let v = BigInt::from(m) << ((e - min_exp) as usize);
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        })
    })
}

/// A point `x / w` with `w > 0`.
struct HPoint {
    w: BigInt,
    x: IPoint,
}

impl HPoint {
    fn on_segment(p: &IPoint, q: &IPoint, num: &BigInt, den: &BigInt) -> Self {
        // p + (num/den)(q − p), den > 0
        let x = iadd(&iscale(p, den), &iscale(&isub(q, p), num));
        HPoint { w: den.clone(), x }
    }

    /// `w · (self − a)`, an integer vector with the sign of the displacement.
    fn minus(&self, a: &IPoint) -> IPoint {
        isub(&self.x, &iscale(a, &self.w))
    }

    fn equals(&self, a: &IPoint) -> bool {
        is_zero(&self.minus(a))
    }

    fn on_closed_segment(&self, u: &IPoint, v: &IPoint) -> bool {
        let d = isub(v, u);
        let r = self.minus(u);
        if !is_zero(&icross(&d, &r)) {
            return false;
        }
        let t = idot(&d, &r);
        !t.is_negative() && t <= &self.w * idot(&d, &d)
    }
}

struct Tri<'a> {
    a: &'a IPoint,
    b: &'a IPoint,
    c: &'a IPoint,
    n: IPoint,
}

impl<'a> Tri<'a> {
    fn new(a: &'a IPoint, b: &'a IPoint, c: &'a IPoint) -> Self {
        let n = icross(&isub(b, a), &isub(c, a));
        Self { a, b, c, n }
    }

    /// `w ·` the three in-plane edge functions at `x / w`; all `>= 0` inside.
    fn edge_values(&self, p: &HPoint) -> [BigInt; 3] {
        let f = |u: &IPoint, v: &IPoint| idot(&self.n, &icross(&isub(v, u), &p.minus(u)));
        [f(self.a, self.b), f(self.b, self.c), f(self.c, self.a)]
    }

    fn edge_values_at(&self, x: &IPoint) -> [BigInt; 3] {
        let f = |u: &IPoint, v: &IPoint| idot(&self.n, &icross(&isub(v, u), &isub(x, u)));
        [f(self.a, self.b), f(self.b, self.c), f(self.c, self.a)]
    }
}

/// Intersection of a closed segment with a closed triangle, as up to two
/// extreme points plus whether the contact is a proper crossing.
struct Contact {
    points: Vec<HPoint>,
    proper: bool,
}

fn segment_triangle(p: &IPoint, q: &IPoint, t: &Tri) -> Option<Contact> {
    if is_zero(&t.n) {
        // Collapsed triangle: treat any contact with its vertices or edges conservatively.
        let segs = [(t.a, t.b), (t.b, t.c), (t.c, t.a)];
        let mut points = Vec::new();
        for (u, v) in segs {
            for end in [p, q] {
                let h = HPoint { w: BigInt::from(1), x: end.clone() };
                if h.on_closed_segment(u, v) {
                    points.push(h);
                }
            }
        }
        return (!points.is_empty()).then_some(Contact { points, proper: false });
    }
    let dp = idot(&t.n, &isub(p, t.a));
    let dq = idot(&t.n, &isub(q, t.a));
    let (sp, sq) = (sgn(&dp), sgn(&dq));
    if sp * sq > 0 {
        return None;
    }
    if sp == 0 && sq == 0 {
        return coplanar(p, q, t);
    }
    // s = dp / (dp − dq), normalized to a positive denominator
    let (mut num, mut den) = (dp.clone(), &dp - &dq);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let x = HPoint::on_segment(p, q, &num, &den);
    let f = t.edge_values(&x);
    if f.iter().any(|v| v.is_negative()) {
        return None;
    }
    let proper = sp * sq < 0 && f.iter().all(|v| v.is_positive());
    Some(Contact { points: vec![x], proper })
}

/// Rational `num / den` with `den > 0`.
#[derive(Clone)]
struct Q {
    num: BigInt,
    den: BigInt,
}

impl Q {
    fn new(num: BigInt, den: BigInt) -> Self {
        if den.is_negative() {
            Q { num: -num, den: -den }
        } else {
            Q { num, den }
        }
    }

    fn lt(&self, o: &Q) -> bool {
        &self.num * &o.den < &o.num * &self.den
    }
}

fn coplanar(p: &IPoint, q: &IPoint, t: &Tri) -> Option<Contact> {
    let fp = t.edge_values_at(p);
    let fq = t.edge_values_at(q);
    let mut lo = Q::new(BigInt::zero(), BigInt::from(1));
    let mut hi = Q::new(BigInt::from(1), BigInt::from(1));
    for k in 0..3 {
        // fp + s (fq − fp) >= 0
        let slope = &fq[k] - &fp[k];
        if slope.is_zero() {
            if fp[k].is_negative() {
                return None;
            }
            continue;
        }
        let root = Q::new(-fp[k].clone(), slope.clone());
        if slope.is_positive() {
            if lo.lt(&root) {
                lo = root;
            }
        } else if root.lt(&hi) {
            hi = root;
        }
    }
    if hi.lt(&lo) {
        return None;
    }
    let a = HPoint::on_segment(p, q, &lo.num, &lo.den);
    let b = HPoint::on_segment(p, q, &hi.num, &hi.den);
    let proper = lo.lt(&hi) && {
        let mid = Q::new(&lo.num * &hi.den + &hi.num * &lo.den, &lo.den * &hi.den * 2);
        let m = HPoint::on_segment(p, q, &mid.num, &mid.den);
        t.edge_values(&m).iter().all(|v| v.is_positive())
    };
    Some(Contact { points: vec![a, b], proper })
}

fn in_shared(point: &HPoint, shared: &[Label], v: &[IPoint; 8]) -> bool {
    match shared {
        [] => false,
        [s] => point.equals(&v[*s]),
        [s, t] => point.on_closed_segment(&v[*s], &v[*t]),
        _ => true,
    }
}

/// Decides embeddedness of the mesh by exact pairwise triangle intersection.
pub fn exact_intersection_oracle(p: &Torus8) -> OracleVerdict {
    let v = integer_vertices(p);
    let tri = triangulation();
    let mut touching = false;
    for pc in classify_pairs(tri) {
        let t1 = tri.triangles[pc.pair.0];
        let t2 = tri.triangles[pc.pair.1];
        for (edge_owner, other) in [(t1, t2), (t2, t1)] {
            let target = Tri::new(&v[other[0]], &v[other[1]], &v[other[2]]);
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                let (a, b) = (edge_owner[i], edge_owner[j]);
                let Some(contact) = segment_triangle(&v[a], &v[b], &target) else {
                    continue;
                };
                if contact.points.iter().all(|x| in_shared(x, &pc.shared, &v)) {
                    continue;
                }
                if contact.proper {
                    return OracleVerdict::NotEmbedded;
                }
                touching = true;
            }
        }
    }
    if touching {
        OracleVerdict::Touching
    } else {
        OracleVerdict::Embedded
    }
}
