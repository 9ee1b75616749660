//! The special deformation `P(z, t)`, flat to third order in `t`, and the
//! line arrangement that selects its free parameters `(X1, X2)`.
//!
//! Vertices move as
//!
//! ```text
//! u0 += t,      v0 += m t,     w0 += a0 t²
//! u1 += X1 t²,  v1 += X2 t²,   w1 += a1 t²
//!               v2 += X1 t²,   w2 += a2 t²
//! ```
//!
//! with `P_3`, `P_4` fixed and vertices `4..8` following by ρ. Every vertex is
//! a quadratic in `t`, so each `[abcd](t)` is a polynomial of degree at most 6
//! whose coefficients are computed here by direct expansion.

use serde::{Deserialize, Serialize};

use crate::embedding::{clause_on_signs, Sign, SignList};
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::golden::{golden_torus, GammaValues, ModularParameter};
use crate::reference;
use crate::torus::{rho, Torus8};
use crate::triangulation::{quadruples, Quad};

/// Relative tolerance for merging the zero-lines of the order-2 coefficients.
pub const TAU_LINE: f64 = 1e-9;
/// Lines closer than this (but farther than [`TAU_LINE`]) are ambiguous.
const TAU_LINE_AMBIGUOUS: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationCoefficients {
    pub m: f64,
    pub x1: f64,
    pub x2: f64,
    pub gamma: f64,
    pub a: [f64; 3],
    /// `α_j`, `α_j1`, `α_j2` for `j = 0, 1, 2`.
    pub alpha: [[f64; 3]; 3],
    /// Common denominator `4 √(2x) γ0 γ1 γ2² γ5` of the `a_j`.
    pub denominator: f64,
    pub gammas: GammaValues,
}

impl DeformationCoefficients {
    /// `a_j` for an arbitrary choice of `(X1, X2)`.
    pub fn a_for(&self, x1: f64, x2: f64) -> [f64; 3] {
        self.alpha
            .map(|[c, c1, c2]| (c + c1 * x1 + c2 * x2) / self.denominator)
    }

    /// The same coefficients with `(X1, X2)` replaced and the `a_j` updated.
    pub fn with_x(&self, x1: f64, x2: f64) -> Self {
        Self {
            x1,
            x2,
            a: self.a_for(x1, x2),
            ..*self
        }
    }
}

/// `Γ`, positive on the interior.
pub fn gamma_poly(x: f64, y: f64, g: &GammaValues) -> f64 {
    let (g0, g1) = (g.g0, g.g1);
    let (x2, x3, x4, x5, x6, x7) = (x.powi(2), x.powi(3), x.powi(4), x.powi(5), x.powi(6), x.powi(7));
    let (y2, y3, y4, y5, y6, y7) = (y.powi(2), y.powi(3), y.powi(4), y.powi(5), y.powi(6), y.powi(7));
    y7 + 2.0 * g0 * x * y6
        + 8.0 * x * y5
        + 7.0 * x2 * y5
        + 16.0 * x2 * y4
        + 6.0 * g0 * x3 * y4
        + 11.0 * x2 * y3
        + g0 * x2 * y3
        + 6.0 * x4 * y3
        + 24.0 * x3 * y2
        + 24.0 * x4 * y2
        + 16.0 * x5 * y2
        + 6.0 * g0 * x5 * y2
        + 10.0 * g1 * x3 * y
        + 5.0 * g1 * x4 * y
        + 1.5 * g0 * x5
        + 6.0 * g0 * g0 * x5
        + 0.5 * g0.powi(3) * x5
        + 6.0 * g0 * g0 * x6
        + 12.0 * g0 * x7
}

/// The closed-form expressions for `−X1` and `−X2`.
///
/// With these signs reversed, `(X1, X2)` is the barycenter of the winning
/// triangle of the order-2 line arrangement and the leading signs of all 70
/// determinants agree with the reference pup tent.
fn x_closed_forms(x: f64, y: f64, g: &GammaValues, gamma: f64) -> (f64, f64) {
    let p = |i: i32| x.powi(i);
    let q = |i: i32| y.powi(i);
    let den = 3.0 * g.g0 * g.g2 * g.g2 * g.g3 * gamma;
    let n1 = 40.0 * p(5) - 60.0 * p(6) + 30.0 * p(7) + 25.0 * p(8) - 15.0 * p(9)
        - 24.0 * p(3) * q(2)
        + 24.0 * p(4) * q(2)
        + 50.0 * p(5) * q(2)
        + 54.0 * p(6) * q(2)
        - 48.0 * p(7) * q(2)
        + 20.0 * p(2) * q(4)
        + 42.0 * p(3) * q(4)
        + 36.0 * p(4) * q(4)
        - 54.0 * p(5) * q(4)
        + 22.0 * x * q(6)
        + 10.0 * p(2) * q(6)
        - 24.0 * p(3) * q(6)
        + 3.0 * q(8)
        - 3.0 * x * q(8);
    let n2 = -48.0 * p(4) + 72.0 * p(5) - 48.0 * p(6) - 18.0 * p(7)
        - 20.0 * p(5) * y
        - 15.0 * p(6) * y
        - 24.0 * p(3) * q(2)
        - 48.0 * p(4) * q(2)
        - 30.0 * p(5) * q(2)
        - 32.0 * p(2) * q(3)
        - 40.0 * p(3) * q(3)
        - 33.0 * p(4) * q(3)
        - 6.0 * p(3) * q(4)
        - 20.0 * x * q(5)
        - 21.0 * p(2) * q(5)
        + 6.0 * x * q(6)
        - 3.0 * q(7);
    (-4.0 * x * y * n1 / den, -4.0 * x * y * g.g1 * n2 / den)
}

fn alphas(x: f64, y: f64, g: &GammaValues) -> [[f64; 3]; 3] {
    let p = |i: i32| x.powi(i);
    let q = |i: i32| y.powi(i);
    let (g0, g1, g2, g3) = (g.g0, g.g1, g.g2, g.g3);
    let g22 = g2 * g2;
    let g32 = g3 * g3;

    let a0 = 8.0 * x * y * (-4.0 * p(2) + 9.0 * p(3) - 7.0 * p(4) - 3.0 * x * q(2) - q(4)) * g1;
    let a01 = -4.0 * y * g0 * g1 * g22 * g32;
    let a02 = 2.0 * (x - 2.0 * q(2)) * g0 * g22 * g32;

    let a1 = 8.0 * x * y * (p(2) + q(2)) * (2.0 * x - 3.0 * p(2) + q(2)) * g1;
    let a11 = -4.0
        * y
        * (p(4) + 6.0 * p(2) + 4.0 * x * q(2) + 2.0 * p(2) * q(2) + q(4))
        * g0
        * g1
        * g22;
    let a12 = 2.0
        * (2.0 * p(7) - 9.0 * p(6) + 12.0 * p(5) - 4.0 * p(4) + 6.0 * p(5) * q(2)
            - 11.0 * p(4) * q(2)
            - 12.0 * p(3) * q(2)
            - 12.0 * p(2) * q(2)
            + 6.0 * p(3) * q(4)
            - 3.0 * p(2) * q(4)
            - 8.0 * x * q(4)
            + 2.0 * x * q(6)
            - q(6))
        * g0
        * g22;

    let a2 = 4.0
        * x
        * y
        * (-4.0 * p(2) + 6.0 * p(3) - 5.0 * p(4) - 2.0 * x * q(2) - 6.0 * p(2) * q(2) - q(4))
        * g1;
    let a21 = 4.0
        * x
        * (2.0 * p(2) - 2.0 * p(3) + p(4) - 2.0 * x * y - p(2) * y + 2.0 * x * q(2)
            + 2.0 * p(2) * q(2)
            - q(3)
            + q(4))
        * g0
        * g1
        * g22;
    let a22 = (2.0 * p(3) - p(4) - 6.0 * x * q(2) - 2.0 * p(2) * q(2) - q(4)) * g0 * g22 * g3;

    [[a0, a01, a02], [a1, a11, a12], [a2, a21, a22]]
}

/// All closed-form coefficients at an interior parameter.
pub fn deformation_coefficients(z: &ModularParameter) -> Result<DeformationCoefficients> {
    z.require_interior()?;
    let (x, y) = (z.x, z.y);
    let g = z.gammas();
    let gamma = gamma_poly(x, y, &g);
    let (nx1, nx2) = x_closed_forms(x, y, &g, gamma);
    let (x1, x2) = (-nx1, -nx2);
    let alpha = alphas(x, y, &g);
    let denominator = 4.0 * (2.0 * x).sqrt() * g.g0 * g.g1 * g.g2 * g.g2 * g.g5;
    let mut c = DeformationCoefficients {
        m: -2.0 * x * y / g.g2,
        x1,
        x2,
        gamma,
        a: [0.0; 3],
        alpha,
        denominator,
        gammas: g,
    };
    c.a = c.a_for(x1, x2);
    Ok(c)
}

/// Each vertex as `P_j + t A_j + t² B_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexJets {
    pub base: [Point3; 8],
    pub linear: [Point3; 8],
    pub quadratic: [Point3; 8],
}

impl VertexJets {
    pub fn of(z: &ModularParameter, c: &DeformationCoefficients) -> Result<Self> {
        let base = *golden_torus(z)?.vertices();
        let mut linear = [[0.0; 3]; 8];
        let mut quadratic = [[0.0; 3]; 8];
        linear[0] = [1.0, c.m, 0.0];
        quadratic[0] = [0.0, 0.0, c.a[0]];
        quadratic[1] = [c.x1, c.x2, c.a[1]];
        quadratic[2] = [0.0, c.x1, c.a[2]];
        for j in 4..8 {
            linear[j] = rho(linear[7 - j]);
            quadratic[j] = rho(quadratic[7 - j]);
        }
        Ok(Self {
            base,
            linear,
            quadratic,
        })
    }

    pub fn at(&self, t: f64) -> Torus8 {
        let t2 = t * t;
        let mut v = self.base;
        for j in 0..8 {
            for k in 0..3 {
                // Untouched coordinates stay bit-identical to the golden tent.
                if self.linear[j][k] != 0.0 || self.quadratic[j][k] != 0.0 {
                    v[j][k] = self.base[j][k] + self.linear[j][k] * t + self.quadratic[j][k] * t2;
                }
            }
        }
        Torus8::new(v)
    }

    /// Coefficients `c_0..c_6` of `[abcd](t)`.
    pub fn det_coefficients(&self, q: Quad) -> [f64; 7] {
        let diff = |i: usize| -> [[f64; 3]; 3] {
            let (a, b) = (q[0], q[i]);
            let mut d = [[0.0; 3]; 3];
            for k in 0..3 {
                d[k] = [
                    self.base[b][k] - self.base[a][k],
                    self.linear[b][k] - self.linear[a][k],
                    self.quadratic[b][k] - self.quadratic[a][k],
                ];
            }
            d
        };
        let (u, v, w) = (diff(1), diff(2), diff(3));
        let mut out = [0.0; 7];
        // Leibniz expansion over the six permutations of the coordinate axes.
        for (perm, s) in [
            ([0, 1, 2], 1.0),
            ([1, 2, 0], 1.0),
            ([2, 0, 1], 1.0),
            ([0, 2, 1], -1.0),
            ([2, 1, 0], -1.0),
            ([1, 0, 2], -1.0),
        ] {
            let uv = poly_mul(&u[perm[0]], &v[perm[1]]);
            let uvw = poly_mul(&uv, &w[perm[2]]);
            for (o, c) in out.iter_mut().zip(uvw) {
                *o += s * c;
            }
        }
        out
    }
}

fn poly_mul<const N: usize, const M: usize>(a: &[f64; N], b: &[f64; M]) -> [f64; 7] {
    let mut out = [0.0; 7];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < 7 {
                out[i + j] += ai * bj;
            } else {
                debug_assert!(ai * bj == 0.0, "degree above 6");
            }
        }
    }
    out
}

/// The special deformation `P(z, t)`; `deform(z, 0)` is the golden tent exactly.
pub fn deform(z: &ModularParameter, t: f64) -> Result<Torus8> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Invalid(format!("deformation parameter t = {t} must be finite and >= 0")));
    }
    let c = deformation_coefficients(z)?;
    Ok(VertexJets::of(z, &c)?.at(t))
}

pub fn deform_with(z: &ModularParameter, c: &DeformationCoefficients, t: f64) -> Result<Torus8> {
    Ok(VertexJets::of(z, c)?.at(t))
}

/// A zero-line `c + n1 X1 + n2 X2 = 0` normalized to `|(n1, n2)| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub c: f64,
    pub n: [f64; 2],
}

impl Line {
    fn normalized(c: f64, n1: f64, n2: f64) -> Self {
        let len = n1.hypot(n2);
        let (mut c, mut n1, mut n2) = (c / len, n1 / len, n2 / len);
        if n1 < 0.0 || (n1 == 0.0 && n2 < 0.0) {
            c = -c;
            n1 = -n1;
            n2 = -n2;
        }
        Self { c, n: [n1, n2] }
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        self.c + self.n[0] * p[0] + self.n[1] * p[1]
    }

    fn gap(&self, other: &Line) -> f64 {
        let d = (self.c - other.c)
            .abs()
            .max((self.n[0] - other.n[0]).abs())
            .max((self.n[1] - other.n[1]).abs());
        d / (1.0 + self.c.abs().max(other.c.abs()))
    }
}

/// Second-order coefficient of one quadruple as an affine function of `(X1, X2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineCoefficient {
    pub quad: Quad,
    pub constant: f64,
    pub slope: [f64; 2],
    /// Index into [`LineArrangement::lines`].
    pub line: usize,
}

impl AffineCoefficient {
    pub fn eval(&self, p: [f64; 2]) -> f64 {
        self.constant + self.slope[0] * p[0] + self.slope[1] * p[1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineArrangement {
    pub z: ModularParameter,
    pub coefficients: Vec<AffineCoefficient>,
    pub lines: Vec<Line>,
    /// The chosen `(X1, X2)`.
    pub point: [f64; 2],
    /// Vertices of the cell containing `point` (empty if unbounded).
    pub cell: Vec<[f64; 2]>,
    pub barycenter: Option<[f64; 2]>,
    /// Distance from `point` to the nearest line, relative to the cell diameter.
    pub margin: f64,
    pub strictly_inside: bool,
    /// The 70 leading signs with the order-2 entries read off at `point`.
    pub leading_signs: SignList,
    pub matches_reference: bool,
    pub winning: bool,
}

impl LineArrangement {
    pub fn is_triangle(&self) -> bool {
        self.cell.len() == 3
    }

    pub fn verified(&self) -> bool {
        self.lines.len() == 7
            && self.strictly_inside
            && self.is_triangle()
            && self.margin > 0.0
            && self.matches_reference
            && self.winning
    }
}

/// Quadruples whose leading coefficient is of order 2 and depends on `(X1, X2)`,
/// with the affine dependence recovered from three probe choices.
fn order2_affine(z: &ModularParameter, c: &DeformationCoefficients) -> Result<Vec<(Quad, f64, [f64; 2])>> {
    let probes = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    let jets: Vec<VertexJets> = probes
        .iter()
        .map(|&(a, b)| VertexJets::of(z, &c.with_x(a, b)))
        .collect::<Result<_>>()?;
    let actual = VertexJets::of(z, c)?;
    let scale = golden_torus(z)?.scale();
    let tol = 1e-9 * scale.powi(3);
    let mut out = Vec::new();
    for &q in quadruples() {
        let lead = actual.det_coefficients(q);
        if lead[0].abs() > tol || lead[1].abs() > tol {
            continue;
        }
        let f: Vec<f64> = jets.iter().map(|j| j.det_coefficients(q)[2]).collect();
        let slope = [f[1] - f[0], f[2] - f[0]];
        if slope[0].abs().max(slope[1].abs()) > tol {
            out.push((q, f[0], slope));
        }
    }
    Ok(out)
}

/// Recovers the zero-lines of the X-dependent order-2 coefficients, merges
/// them, locates the cell containing the chosen `(X1, X2)` and checks that its
/// sign pattern is winning.
pub fn order2_line_arrangement(z: &ModularParameter) -> Result<LineArrangement> {
    let c = deformation_coefficients(z)?;
    let raw = order2_affine(z, &c)?;

    let mut lines: Vec<Line> = Vec::new();
    let mut coefficients = Vec::with_capacity(raw.len());
    for (quad, constant, slope) in raw {
        let l = Line::normalized(constant, slope[0], slope[1]);
        let mut index = None;
        for (k, other) in lines.iter().enumerate() {
            let gap = l.gap(other);
            if gap <= TAU_LINE {
                index = Some(k);
                break;
            }
            if gap < TAU_LINE_AMBIGUOUS {
                return Err(Error::ClusteringFailure {
                    first: quad,
                    second: coefficients
                        .iter()
                        .find(|a: &&AffineCoefficient| a.line == k)
                        .map(|a| a.quad)
                        .unwrap_or(quad),
                    gap,
                });
            }
        }
        let line = index.unwrap_or_else(|| {
            lines.push(l);
            lines.len() - 1
        });
        coefficients.push(AffineCoefficient {
            quad,
            constant,
            slope,
            line,
        });
    }

    let point = [c.x1, c.x2];
    let signs: Vec<f64> = lines.iter().map(|l| l.eval(point).signum()).collect();
    let strictly_inside = lines.iter().all(|l| l.eval(point).abs() > TAU_LINE * (1.0 + l.c.abs()));

    // Clip a large box by the half-planes s_k L_k >= 0.
    let r = 1e3 * (1.0 + point[0].abs().max(point[1].abs()));
    let mut poly = vec![
        [point[0] - r, point[1] - r],
        [point[0] + r, point[1] - r],
        [point[0] + r, point[1] + r],
        [point[0] - r, point[1] + r],
    ];
    for (l, s) in lines.iter().zip(&signs) {
        poly = clip(&poly, |p| s * l.eval(p));
    }
    let bounded = poly
        .iter()
        .all(|p| (p[0] - point[0]).abs() < 0.5 * r && (p[1] - point[1]).abs() < 0.5 * r);
    let cell = if bounded { dedup_vertices(poly) } else { Vec::new() };
    let barycenter = (!cell.is_empty()).then(|| {
        let n = cell.len() as f64;
        [
            cell.iter().map(|p| p[0]).sum::<f64>() / n,
            cell.iter().map(|p| p[1]).sum::<f64>() / n,
        ]
    });

    // Distance from the chosen point to the nearest line, relative to the cell size.
    let size = cell
        .iter()
        .flat_map(|p| cell.iter().map(move |q| (p[0] - q[0]).hypot(p[1] - q[1])))
        .fold(0.0, f64::max);
    let margin = lines.iter().map(|l| l.eval(point).abs()).fold(f64::INFINITY, f64::min)
        / if size > 0.0 { size } else { 1.0 };

    let leading_signs = leading_sign_list_with(z, &c)?;
    let matches_reference = leading_signs == *reference::lambda_ref();
    let winning = clause_on_signs(&leading_signs).embedded();
    Ok(LineArrangement {
        z: *z,
        coefficients,
        lines,
        point,
        cell,
        barycenter,
        margin,
        strictly_inside,
        leading_signs,
        matches_reference,
        winning,
    })
}

fn clip(poly: &[[f64; 2]], f: impl Fn([f64; 2]) -> f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(p), f(q));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            let s = fp / (fp - fq);
            out.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
        }
    }
    out
}

fn dedup_vertices(poly: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    for p in poly {
        if !out
            .iter()
            .any(|q| (p[0] - q[0]).abs() < 1e-10 && (p[1] - q[1]).abs() < 1e-10)
        {
            out.push(p);
        }
    }
    out
}

/// Leading-coefficient order and sign of every `[abcd]` for the special deformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub quad: Quad,
    pub order: usize,
    pub coefficient: f64,
}

/// Exact-expansion leading terms; the vanishing threshold is relative to `scale³`.
pub fn leading_terms(z: &ModularParameter) -> Result<Vec<LeadingTerm>> {
    let c = deformation_coefficients(z)?;
    leading_terms_with(z, &c)
}

fn leading_terms_with(z: &ModularParameter, c: &DeformationCoefficients) -> Result<Vec<LeadingTerm>> {
    let jets = VertexJets::of(z, c)?;
    let tol = 1e-9 * golden_torus(z)?.scale().powi(3);
    Ok(quadruples()
        .iter()
        .map(|&q| {
            let cs = jets.det_coefficients(q);
            let order = cs.iter().position(|v| v.abs() > tol).unwrap_or(7);
            LeadingTerm {
                quad: q,
                order,
                coefficient: cs.get(order).copied().unwrap_or(0.0),
            }
        })
        .collect())
}

/// `Λ(z)`: the signs of the leading coefficients.
pub fn leading_sign_list(z: &ModularParameter) -> Result<SignList> {
    let c = deformation_coefficients(z)?;
    leading_sign_list_with(z, &c)
}

fn leading_sign_list_with(z: &ModularParameter, c: &DeformationCoefficients) -> Result<SignList> {
    let terms = leading_terms_with(z, c)?;
    Ok(SignList::from_signs(
        terms.iter().map(|t| Sign::of(t.coefficient, 0.0)).collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::flatness_defect;

    fn z(x: f64, y: f64) -> ModularParameter {
        ModularParameter::interior(x, y).unwrap()
    }

    #[test]
    fn slope_m_at_quarter_plus_i() {
        let c = deformation_coefficients(&z(0.25, 1.0)).unwrap();
        assert!((c.m + 8.0 / 23.0).abs() < 1e-15);
        assert!(c.gamma > 0.0);
        assert!(c.a.iter().all(|a| a.is_finite()));
    }

    #[test]
    fn boundary_is_rejected() {
        assert!(deformation_coefficients(&ModularParameter::classify(0.25, 7f64.sqrt() / 4.0).unwrap()).is_err());
        assert!(deform(&z(0.25, 1.0), -1.0).is_err());
    }

    #[test]
    fn heights_stay_bounded_toward_the_arc() {
        // Every numerator term carries a factor γ1, cancelling the one in the denominator.
        let y0 = 7f64.sqrt() / 4.0;
        let a = |dy: f64| deformation_coefficients(&z(0.25, y0 + dy)).unwrap().a;
        let (near, nearer) = (a(1e-6), a(1e-8));
        for j in 0..3 {
            assert!(near[j].is_finite() && (near[j] - nearer[j]).abs() < 1e-5);
        }
    }

    #[test]
    fn zero_time_is_golden() {
        let zz = z(0.25, 1.0);
        assert_eq!(deform(&zz, 0.0).unwrap(), golden_torus(&zz).unwrap());
    }

    #[test]
    fn deformation_is_rho_symmetric_and_fixes_p3() {
        let zz = z(0.3, 1.1);
        let p = deform(&zz, 0.05).unwrap();
        let g = golden_torus(&zz).unwrap();
        assert!(p.is_rho_symmetric(0.0));
        assert_eq!(p.vertex(3), g.vertex(3));
        assert_eq!(p.vertex(4), g.vertex(4));
    }

    #[test]
    fn expansion_matches_direct_determinant() {
        let zz = z(0.2, 1.4);
        let c = deformation_coefficients(&zz).unwrap();
        let jets = VertexJets::of(&zz, &c).unwrap();
        let t = 0.07;
        let p = jets.at(t);
        for &q in quadruples() {
            let cs = jets.det_coefficients(q);
            let poly: f64 = cs.iter().rev().fold(0.0, |acc, c| acc * t + c);
            let direct = crate::triangulation::tetra_det(&p, q);
            assert!((poly - direct).abs() < 1e-13, "{q:?}");
        }
    }

    #[test]
    fn flat_to_third_order() {
        let zz = z(0.25, 1.0);
        let t = 1e-2;
        let a = flatness_defect(&deform(&zz, t).unwrap()).unwrap().theta;
        let b = flatness_defect(&deform(&zz, t / 2.0).unwrap()).unwrap().theta;
        assert!((7.0..=9.0).contains(&(a / b)), "ratio {}", a / b);
    }

    #[test]
    fn leading_orders_split_45_6_19() {
        let terms = leading_terms(&z(0.25, 1.0)).unwrap();
        let count = |k| terms.iter().filter(|t| t.order == k).count();
        assert_eq!((count(0), count(1), count(2)), (45, 6, 19));
    }
}
