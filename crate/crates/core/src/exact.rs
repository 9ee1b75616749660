//! Exact rational arithmetic on the (dyadic) values of `f64` inputs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geom::Point3;
use crate::torus::Torus8;
use crate::triangulation::Quad;

pub type Rat = BigRational;
pub type ExactPoint = [Rat; 3];

/// Every finite `f64` is a dyadic rational, so this conversion is exact.
pub fn rat(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite coordinate")
}

pub fn exact_point(p: Point3) -> ExactPoint {
    p.map(rat)
}

pub fn exact_vertices(t: &Torus8) -> [ExactPoint; 8] {
    t.vertices().map(exact_point)
}

pub fn esub(a: &ExactPoint, b: &ExactPoint) -> ExactPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn edot(a: &ExactPoint, b: &ExactPoint) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn ecross(a: &ExactPoint, b: &ExactPoint) -> ExactPoint {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn orient_exact(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> Rat {
    let u = esub(b, a);
    let v = esub(c, a);
    let w = esub(d, a);
    edot(&u, &ecross(&v, &w))
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact `det(P_b − P_a, P_c − P_a, P_d − P_a)`.
pub fn tetra_det_exact(t: &Torus8, q: Quad) -> Rat {
    let v = t.vertices();
    orient_exact(
        &exact_point(v[q[0]]),
        &exact_point(v[q[1]]),
        &exact_point(v[q[2]]),
        &exact_point(v[q[3]]),
    )
}

pub fn cmp_rat(a: &Rat, b: &Rat) -> Ordering {
    a.cmp(b)
}

pub fn zero() -> Rat {
    Rat::from_integer(BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_is_exact() {
        let x = 0.1f64;
        let r = rat(x);
        // 0.1 is not 1/10 in binary
        assert_ne!(r, Rat::new(1.into(), 10.into()));
        let back = r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn exact_sign_resolves_cancellation() {
        // Points nearly coplanar in a way double precision misjudges.
        let a = exact_point([0.0, 0.0, 0.0]);
        let b = exact_point([1.0, 0.0, 0.0]);
        let c = exact_point([0.0, 1.0, 0.0]);
        let d = exact_point([1e17, 1e17, 1e-300]);
        assert_eq!(sign(&orient_exact(&a, &b, &c, &d)), 1);
    }
}
