//! Orientation sign lists, the polynomial structure of `[abcd](t)` along the
//! special deformation, and the sign-only embedding clause.
//!
//! For an edge `(a, b)` and a triangle `(c, d, e)` in general position the open
//! segment meets the triangle iff it crosses the supporting plane and the line
//! `ab` passes inside all three triangle edges. In block form
//!
//! ```text
//! −[cdea][cdeb] + [abcd][abde] + [abde][abec] = 3   <=>  crossing
//! ```
//!
//! so the block is satisfied iff the sum is `< 3`. Signs of non-ascending
//! quadruples are the ascending sign times the permutation parity.

pub mod oracle;

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::deformation::{deform_with, deformation_coefficients};
use crate::error::{Error, Result};
use crate::golden::{golden_torus, ModularParameter};
use crate::torus::Torus8;
use crate::triangulation::{
    classify_pairs, quad_index, quadruples, sort_with_parity, tetra_det, triangulation, Label,
    PairClass, Quad,
};

pub use oracle::{exact_intersection_oracle, OracleVerdict};

/// Degeneracy threshold for determinants, relative to `scale³`.
pub const TAU_SIGN: f64 = 1e-12;
/// Held-out residual bound for the degree-6 fits, relative to `scale³`.
pub const TAU_FIT: f64 = 1e-8;
/// A fitted coefficient below this (relative to `scale³`) counts as vanishing.
pub const TAU_LEAD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Degenerate,
}

impl Sign {
    pub fn of(value: f64, tol: f64) -> Self {
        if value.abs() <= tol || value.is_nan() {
            Sign::Degenerate
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> Option<i32> {
        match self {
            Sign::Positive => Some(1),
            Sign::Negative => Some(-1),
            Sign::Degenerate => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Degenerate => '0',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            '0' => Some(Sign::Degenerate),
            _ => None,
        }
    }
}

/// The 70 signs `[abcd]`, indexed by ascending quadruples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SignList {
    signs: Vec<Sign>,
}

impl SignList {
    pub fn from_signs(signs: Vec<Sign>) -> Self {
        assert_eq!(signs.len(), 70, "a sign list has exactly 70 entries");
        Self { signs }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn get(&self, q: Quad) -> Sign {
        self.signs[quad_index(q)]
    }

    /// Sign of `[pqrs]` for distinct labels in any order.
    pub fn oriented(&self, q: Quad) -> Option<i32> {
        let (sorted, parity) = sort_with_parity(q);
        self.get(sorted).as_i32().map(|s| s * parity)
    }

    pub fn is_general_position(&self) -> bool {
        !self.signs.contains(&Sign::Degenerate)
    }

    pub fn degenerate_quadruples(&self) -> Vec<Quad> {
        quadruples()
            .iter()
            .zip(&self.signs)
            .filter(|(_, s)| **s == Sign::Degenerate)
            .map(|(q, _)| *q)
            .collect()
    }

    /// Entries where the two lists differ.
    pub fn differences(&self, other: &SignList) -> Vec<Quad> {
        quadruples()
            .iter()
            .zip(self.signs.iter().zip(&other.signs))
            .filter(|(_, (a, b))| a != b)
            .map(|(q, _)| *q)
            .collect()
    }
}

impl fmt::Display for SignList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SignList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Option<Vec<Sign>> = s.trim().chars().map(Sign::from_char).collect();
        match signs {
            Some(v) if v.len() == 70 => Ok(Self { signs: v }),
            _ => Err(Error::Invalid(format!("not a 70-entry sign string: {s:?}"))),
        }
    }
}

impl From<SignList> for String {
    fn from(s: SignList) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SignList {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Signs of all 70 determinants; `|det| <= tau · scale³` is degenerate.
pub fn sign_list(p: &Torus8, tau: f64) -> SignList {
    let tol = tau * p.scale().powi(3);
    SignList::from_signs(
        quadruples()
            .iter()
            .map(|&q| Sign::of(tetra_det(p, q), tol))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeadingOrder {
    Order0,
    Order1,
    Order2,
    /// Leading index above 2; never expected at interior parameters.
    Higher,
}

impl LeadingOrder {
    pub fn from_index(k: usize) -> Self {
        match k {
            0 => LeadingOrder::Order0,
            1 => LeadingOrder::Order1,
            2 => LeadingOrder::Order2,
            _ => LeadingOrder::Higher,
        }
    }

    pub fn index(self) -> usize {
        match self {
            LeadingOrder::Order0 => 0,
            LeadingOrder::Order1 => 1,
            LeadingOrder::Order2 => 2,
            LeadingOrder::Higher => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetPolynomial {
    pub quad: Quad,
    pub coefficients: [f64; 7],
    pub leading_index: usize,
    pub case: LeadingOrder,
    pub held_out_residual: f64,
}

impl DetPolynomial {
    pub fn leading(&self) -> f64 {
        self.coefficients.get(self.leading_index).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

/// Fit nodes `k/64`, `k = 1..7`, and the held-out checks.
pub const FIT_NODES: [f64; 7] = [
    1.0 / 64.0,
    2.0 / 64.0,
    3.0 / 64.0,
    4.0 / 64.0,
    5.0 / 64.0,
    6.0 / 64.0,
    7.0 / 64.0,
];
pub const HELD_OUT: [f64; 2] = [9.0 / 64.0, 5.0 / 128.0];

fn vandermonde_inverse() -> &'static SMatrix<f64, 7, 7> {
    static INV: OnceLock<SMatrix<f64, 7, 7>> = OnceLock::new();
    INV.get_or_init(|| {
        let v = SMatrix::<f64, 7, 7>::from_fn(|i, j| FIT_NODES[i].powi(j as i32));
        v.try_inverse().expect("distinct nodes")
    })
}

/// Degree-6 interpolation of `[abcd](t)` along the special deformation,
/// validated at two held-out parameters.
pub fn det_polynomial(z: &ModularParameter, quad: Quad) -> Result<DetPolynomial> {
    Ok(det_polynomials_for(z, &[quad])?.remove(0))
}

/// All 70 fits, sharing the sampled tori.
pub fn det_polynomials(z: &ModularParameter) -> Result<Vec<DetPolynomial>> {
    det_polynomials_for(z, quadruples())
}

fn det_polynomials_for(z: &ModularParameter, quads: &[Quad]) -> Result<Vec<DetPolynomial>> {
    let c = deformation_coefficients(z)?;
    let scale3 = golden_torus(z)?.scale().powi(3);
    let samples: Vec<Torus8> = FIT_NODES
        .iter()
        .map(|&t| deform_with(z, &c, t))
        .collect::<Result<_>>()?;
    let held: Vec<Torus8> = HELD_OUT
        .iter()
        .map(|&t| deform_with(z, &c, t))
        .collect::<Result<_>>()?;
    let inv = vandermonde_inverse();
    quads
        .iter()
        .map(|&quad| {
            let rhs = SVector::<f64, 7>::from_fn(|i, _| tetra_det(&samples[i], quad));
            let sol = inv * rhs;
            let coefficients: [f64; 7] = std::array::from_fn(|k| sol[k]);
            let leading_index = coefficients
                .iter()
                .position(|v| v.abs() > TAU_LEAD * scale3)
                .unwrap_or(7);
            let mut poly = DetPolynomial {
                quad,
                coefficients,
                leading_index,
                case: LeadingOrder::from_index(leading_index),
                held_out_residual: 0.0,
            };
            poly.held_out_residual = HELD_OUT
                .iter()
                .zip(&held)
                .map(|(&t, p)| (poly.eval(t) - tetra_det(p, quad)).abs())
                .fold(0.0, f64::max);
            if poly.held_out_residual > TAU_FIT * scale3 {
                return Err(Error::FitFailure {
                    quad,
                    residual: poly.held_out_residual,
                });
            }
            Ok(poly)
        })
        .collect()
}

/// The case split of the 70 quadruples by leading order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Order2Structure {
    pub z: ModularParameter,
    pub counts: [usize; 3],
    /// One digit per quadruple: `0`, `1`, `2`, or `3` for higher.
    pub partition: String,
    pub leading_signs: SignList,
    pub polynomials: Vec<DetPolynomial>,
}

pub fn order2_structure(z: &ModularParameter) -> Result<Order2Structure> {
    let polynomials = det_polynomials(z)?;
    let mut counts = [0; 3];
    let mut partition = String::with_capacity(70);
    for p in &polynomials {
        let k = p.case.index();
        if k < 3 {
            counts[k] += 1;
        }
        partition.push(char::from(b'0' + k as u8));
    }
    let leading_signs = SignList::from_signs(
        polynomials.iter().map(|p| Sign::of(p.leading(), 0.0)).collect(),
    );
    Ok(Order2Structure {
        z: *z,
        counts,
        partition,
        leading_signs,
        polynomials,
    })
}

/// The normalized constant `C/√2` of a leading coefficient with exponent `μ`.
///
/// ```text
/// order 0:  C √x y² γ0^μ γ1
/// order 1:  C √x y² γ3 / γ2
/// order 2:  C x^{3/2} y² γ1^μ / (3 γ0 γ2² γ3^μ)
/// ```
pub fn normalized_case_constant(z: &ModularParameter, order: LeadingOrder, mu: u32, leading: f64) -> Option<f64> {
    let (x, y) = (z.x, z.y);
    let g = z.gammas();
    let m = mu as i32;
    let base = match order {
        LeadingOrder::Order0 => x.sqrt() * y * y * g.g0.powi(m) * g.g1,
        LeadingOrder::Order1 => x.sqrt() * y * y * g.g3 / g.g2,
        LeadingOrder::Order2 => {
            x.powf(1.5) * y * y * (g.g1 / g.g3).powi(m) / (3.0 * g.g0 * g.g2 * g.g2)
        }
        LeadingOrder::Higher => return None,
    };
    Some(leading / base / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseConstant {
    pub quad: Quad,
    pub case: LeadingOrder,
    pub mu: u32,
    /// `C/√2`, a nonzero integer.
    pub c_over_sqrt2: i64,
    /// Largest deviation from that integer across the parameters used.
    pub deviation: f64,
}

/// Determines `(μ, C/√2)` per quadruple from fits at several parameters: the
/// exponent is the one for which the normalized constant is the same nonzero
/// integer everywhere.
pub fn fit_case_constants(zs: &[ModularParameter], tol: f64) -> Result<Vec<CaseConstant>> {
    let structures: Vec<Order2Structure> = zs.iter().map(order2_structure).collect::<Result<_>>()?;
    let first = structures
        .first()
        .ok_or_else(|| Error::Invalid("no parameters".into()))?;
    let mut out = Vec::with_capacity(70);
    for (i, &quad) in quadruples().iter().enumerate() {
        let case = first.polynomials[i].case;
        let mus: &[u32] = if case == LeadingOrder::Order1 { &[0] } else { &[0, 1] };
        let mut found = None;
        for &mu in mus {
            let vals: Option<Vec<f64>> = structures
                .iter()
                .map(|s| {
                    let p = &s.polynomials[i];
                    if p.case != case {
                        return None;
                    }
                    normalized_case_constant(&s.z, case, mu, p.leading())
                })
                .collect();
            let Some(vals) = vals else { continue };
            let n = vals[0].round();
            let deviation = vals.iter().map(|v| (v - n).abs()).fold(0.0, f64::max);
            if n != 0.0 && deviation <= tol {
                found = Some(CaseConstant {
                    quad,
                    case,
                    mu,
                    c_over_sqrt2: n as i64,
                    deviation,
                });
                break;
            }
        }
        out.push(found.ok_or(Error::FitFailure { quad, residual: f64::NAN })?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub edge: [Label; 2],
    pub triangle: [Label; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockOutcome {
    Satisfied,
    Violated,
    Degenerate,
}

impl Block {
    /// Evaluates the block from signs alone.
    pub fn evaluate(&self, signs: &SignList) -> BlockOutcome {
        let [a, b] = self.edge;
        let [c, d, e] = self.triangle;
        let needed = [
            [c, d, e, a],
            [c, d, e, b],
            [a, b, c, d],
            [a, b, d, e],
            [a, b, e, c],
        ];
        let mut s = [0i32; 5];
        for (slot, q) in s.iter_mut().zip(needed) {
            match signs.oriented(q) {
                Some(v) => *slot = v,
                None => return BlockOutcome::Degenerate,
            }
        }
        let sum = -(s[0] * s[1]) + s[2] * s[3] + s[3] * s[4];
        if sum < 3 {
            BlockOutcome::Satisfied
        } else {
            BlockOutcome::Violated
        }
    }
}

/// The 288 blocks: six per disjoint triangle pair, two per vertex-sharing pair.
pub fn blocks() -> &'static [Block] {
    static BLOCKS: OnceLock<Vec<Block>> = OnceLock::new();
    BLOCKS.get_or_init(|| {
        let tri = triangulation();
        let mut out = Vec::with_capacity(288);
        for pc in classify_pairs(tri) {
            let t1 = tri.triangles[pc.pair.0];
            let t2 = tri.triangles[pc.pair.1];
            let edges = |t: [Label; 3]| [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]];
            match pc.class {
                PairClass::Disjoint => {
                    for e in edges(t1) {
                        out.push(Block { edge: e, triangle: t2 });
                    }
                    for e in edges(t2) {
                        out.push(Block { edge: e, triangle: t1 });
                    }
                }
                PairClass::VertexSharing => {
                    let v = pc.shared[0];
                    let opposite = |t: [Label; 3]| {
                        let mut e = [0; 2];
                        let mut k = 0;
                        for l in t {
                            if l != v {
                                e[k] = l;
                                k += 1;
                            }
                        }
                        e
                    };
                    out.push(Block { edge: opposite(t1), triangle: t2 });
                    out.push(Block { edge: opposite(t2), triangle: t1 });
                }
                PairClass::EdgeSharing => {}
            }
        }
        out
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedded {
    Yes,
    No,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub embedded: Embedded,
    pub failing_block: Option<Block>,
    pub degenerate_quadruples: Vec<Quad>,
    pub signs: SignList,
}

impl EmbeddingVerdict {
    pub fn embedded(&self) -> bool {
        self.embedded == Embedded::Yes
    }
}

/// Sign-only segment/triangle test for one edge and one triangle of `p`.
pub fn edge_triangle_disjoint(p: &Torus8, edge: [Label; 2], triangle: [Label; 3]) -> BlockOutcome {
    let tol = TAU_SIGN * p.scale().powi(3);
    let [a, b] = edge;
    let [c, d, e] = triangle;
    let sign = |q: Quad| Sign::of(tetra_det(p, q), tol).as_i32();
    let needed = [
        [c, d, e, a],
        [c, d, e, b],
        [a, b, c, d],
        [a, b, d, e],
        [a, b, e, c],
    ];
    let mut s = [0i32; 5];
    for (slot, q) in s.iter_mut().zip(needed) {
        match sign(q) {
            Some(v) => *slot = v,
            None => return BlockOutcome::Degenerate,
        }
    }
    if -(s[0] * s[1]) + s[2] * s[3] + s[3] * s[4] < 3 {
        BlockOutcome::Satisfied
    } else {
        BlockOutcome::Violated
    }
}

/// Evaluates the 288-block clause on a sign list.
pub fn clause_on_signs(signs: &SignList) -> EmbeddingVerdict {
    let degenerate_quadruples = signs.degenerate_quadruples();
    if !degenerate_quadruples.is_empty() {
        return EmbeddingVerdict {
            embedded: Embedded::Degenerate,
            failing_block: None,
            degenerate_quadruples,
            signs: signs.clone(),
        };
    }
    let failing_block = blocks()
        .iter()
        .find(|b| b.evaluate(signs) != BlockOutcome::Satisfied)
        .copied();
    EmbeddingVerdict {
        embedded: if failing_block.is_some() { Embedded::No } else { Embedded::Yes },
        failing_block,
        degenerate_quadruples,
        signs: signs.clone(),
    }
}

pub fn embedding_clause(p: &Torus8) -> EmbeddingVerdict {
    clause_on_signs(&sign_list(p, TAU_SIGN))
}
