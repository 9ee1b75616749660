//! The modulus of a flat torus from its developing map, and distances in moduli space.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::flatness_defect;
use crate::error::{Error, Result};
use crate::geom::dist;
use crate::torus::Torus8;
use crate::triangulation::Label;

/// Label of the lattice point `(i, j)` in the universal cover.
pub fn cover_label(i: i64, j: i64) -> Label {
    (i + 3 * j).rem_euclid(8) as Label
}

/// Deck translations of the cover: `(i, j) ↦ (i + 8, j)` and `(i, j) ↦ (i − 3, j + 1)`.
pub const DECK: [(i64, i64); 2] = [(8, 0), (-3, 1)];

const I_RANGE: (i64, i64) = (-6, 14);
const J_RANGE: (i64, i64) = (-2, 3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    /// Reduced: `|Re τ| ≤ 1/2`, `|τ| ≥ 1`.
    pub tau: Complex64,
    /// Ratio of the holonomies of the two combinatorial cycles before reduction.
    pub tau_raw: Complex64,
    pub generators: [Complex64; 2],
    pub reduced_generators: [Complex64; 2],
    /// Worst gluing mismatch of the layout relative to the size of the torus.
    pub residual: f64,
}

/// Counterclockwise triangles of the cover with lower-left corner `(i, j)`.
fn cover_triangles(i: i64, j: i64) -> [[(i64, i64); 3]; 2] {
    [
        [(i, j), (i + 1, j), (i, j + 1)],
        [(i + 1, j), (i + 1, j + 1), (i, j + 1)],
    ]
}

/// Apex of the counterclockwise triangle on `a, b` with side lengths `|ac|`, `|bc|`.
fn apex(a: Complex64, b: Complex64, ac: f64, bc: f64) -> Complex64 {
    let ab = b - a;
    let c = ab.norm();
    let u = ab / c;
    let x = (ac * ac + c * c - bc * bc) / (2.0 * c);
    let h = (ac * ac - x * x).max(0.0).sqrt();
    a + u * Complex64::new(x, h)
}

/// Lays out the cover over a window using only 3-space edge lengths.
pub fn develop(p: &Torus8) -> Result<(HashMap<(i64, i64), Complex64>, f64)> {
    let v = p.vertices();
    let len = |a: (i64, i64), b: (i64, i64)| dist(v[cover_label(a.0, a.1)], v[cover_label(b.0, b.1)]);
    let inside = |q: (i64, i64)| (I_RANGE.0..=I_RANGE.1).contains(&q.0) && (J_RANGE.0..=J_RANGE.1).contains(&q.1);
    let mut tris = Vec::new();
    for i in I_RANGE.0..I_RANGE.1 {
        for j in J_RANGE.0..J_RANGE.1 {
            tris.extend(cover_triangles(i, j).into_iter().filter(|t| t.iter().all(|q| inside(*q))));
        }
    }
    let mut pos: HashMap<(i64, i64), Complex64> = HashMap::new();
    pos.insert((0, 0), Complex64::new(0.0, 0.0));
    pos.insert((1, 0), Complex64::new(len((0, 0), (1, 0)), 0.0));
    let mut residual: f64 = 0.0;
    loop {
        let mut progress = false;
        for t in &tris {
            let placed = t.iter().filter(|q| pos.contains_key(q)).count();
            if placed != 2 {
                continue;
            }
            // Rotate so the missing corner comes last; orientation is preserved.
            let k = (0..3).find(|&k| !pos.contains_key(&t[k])).unwrap();
            let (a, b, c) = (t[(k + 1) % 3], t[(k + 2) % 3], t[k]);
            let z = apex(pos[&a], pos[&b], len(a, c), len(b, c));
            pos.insert(c, z);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    for t in &tris {
        for k in 0..3 {
            let (a, b, c) = (t[(k + 1) % 3], t[(k + 2) % 3], t[k]);
            if let (Some(pa), Some(pb), Some(pc)) = (pos.get(&a), pos.get(&b), pos.get(&c)) {
                residual = residual.max((apex(*pa, *pb, len(a, c), len(b, c)) - pc).norm());
            }
        }
    }
    Ok((pos, residual))
}

/// Reduces a positively oriented basis to the standard domain; returns the reduced basis.
pub fn lagrange_reduce(mut w1: Complex64, mut w2: Complex64) -> [Complex64; 2] {
    for _ in 0..1000 {
        let tau = w2 / w1;
        let n = tau.re.round();
        w2 -= w1 * n;
        if (w2 / w1).norm() < 1.0 - 1e-15 {
            (w1, w2) = (w2, -w1);
        } else {
            break;
        }
    }
    [w1, w2]
}

pub fn reduce(tau: Complex64) -> Complex64 {
    let [w1, w2] = lagrange_reduce(Complex64::new(1.0, 0.0), tau);
    w2 / w1
}

/// The modulus `Φ(P)` of a flat torus; `tol` bounds `Θ` and, scaled by the size, the layout residual.
pub fn modulus_of(p: &Torus8, tol: f64) -> Result<ModulusEstimate> {
    let theta = flatness_defect(p)?.theta;
    if !(theta <= tol) {
        return Err(Error::NotFlat { theta, tol });
    }
    let (pos, mismatch) = develop(p)?;
    let size = p.scale();
    let mut residual = mismatch;
    let mut gens = [Complex64::new(0.0, 0.0); 2];
    for (g, (di, dj)) in gens.iter_mut().zip(DECK) {
        *g = pos[&(di, dj)] - pos[&(0, 0)];
        for (&(i, j), z) in &pos {
            if let Some(w) = pos.get(&(i + di, j + dj)) {
                residual = residual.max((w - z - *g).norm());
            }
        }
    }
    let residual = residual / size;
    if !(residual <= (100.0 * tol).max(1e-10)) {
        return Err(Error::LayoutInconsistent { residual });
    }
    let [w1, w2] = gens;
    let reduced = lagrange_reduce(w1, w2);
    Ok(ModulusEstimate {
        tau: reduced[1] / reduced[0],
        tau_raw: w2 / w1,
        generators: gens,
        reduced_generators: reduced,
        residual,
    })
}

/// Hyperbolic distance in the upper half plane.
pub fn hyperbolic_distance(a: Complex64, b: Complex64) -> f64 {
    2.0 * ((a - b).norm() / (2.0 * (a.im * b.im).sqrt())).asinh()
}

/// Distance between the classes of `τ1` and `τ2` modulo unimodular maps with entries
/// in `[−3, 3]` applied to reduced representatives, including the mirror `τ ↦ −τ̄`.
pub fn modular_distance(t1: Complex64, t2: Complex64) -> f64 {
    let (a, b) = (reduce(t1), reduce(t2));
    let mirror = Complex64::new(-b.re, b.im);
    let mut best = f64::INFINITY;
    for p in -3i32..=3 {
        for q in -3i32..=3 {
            for r in -3i32..=3 {
                for s in -3i32..=3 {
                    if p * s - q * r != 1 {
                        continue;
                    }
                    let m = |w: Complex64| (w * p as f64 + q as f64) / (w * r as f64 + s as f64);
                    best = best.min(hyperbolic_distance(a, m(b))).min(hyperbolic_distance(a, m(mirror)));
                }
            }
        }
    }
    best
}
