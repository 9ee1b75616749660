//! Torus reports and their JSON encoding.
//!
//! Every float is written as `{:.16e}` (17 significant digits), so parsing a
//! report reproduces each value bit for bit.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::angles::cone_angles;
use crate::deformation::deform;
use crate::embedding::{embedding_clause, Embedded, EmbeddingVerdict};
use crate::error::{Error, Result};
use crate::flatten::{solve_flat, FlatSolveResult};
use crate::geom::Point3;
use crate::golden::{golden_torus, ModularParameter};
use crate::reference::lambda_ref;
use crate::shape::{convex_hull, modulus_of, ConvexHull, ModulusEstimate};
use crate::torus::Torus8;
use crate::triangulation::Label;

/// Flatness needed before a modulus is attached to a report.
pub const MODULUS_THETA_TOL: f64 = 1e-10;
/// Coincidence threshold for vertex flags, relative to the torus size.
pub const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Golden,
    Deformed,
    Solved,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "golden" => Ok(Mode::Golden),
            "deformed" => Ok(Mode::Deformed),
            "solved" => Ok(Mode::Solved),
            _ => Err(Error::Invalid(format!("mode {s:?} is not one of golden, deformed, solved"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub iterations: usize,
    pub delta_w: [f64; 3],
    pub theta_start: f64,
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusReport {
    pub z: ModularParameter,
    pub t: f64,
    pub mode: Mode,
    pub vertices: [Point3; 8],
    pub triangles: [[Label; 3]; 16],
    /// Absent when an edge has collapsed.
    pub cone_angles: Option<[f64; 8]>,
    pub theta: Option<f64>,
    pub embedding: EmbeddingVerdict,
    pub matches_reference: bool,
    pub hull_triangles: Vec<[Label; 3]>,
    pub hull: ConvexHull,
    pub coincident_vertices: Vec<[Label; 2]>,
    /// Human-readable notes such as `P0 = P7`.
    pub flags: Vec<String>,
    pub modulus: Option<ModulusEstimate>,
    pub solve: Option<SolveSummary>,
}

impl TorusReport {
    pub fn from_torus(z: ModularParameter, t: f64, mode: Mode, p: &Torus8) -> Self {
        let cones = cone_angles(p).ok();
        let theta = cones.map(|c| c.theta.iter().fold(0.0, |m: f64, a| m.max((a - 2.0 * std::f64::consts::PI).abs())));
        let embedding = embedding_clause(p);
        let hull = convex_hull(p);
        let coincident_vertices = p.coincident_vertices(COINCIDENCE_TOL * p.scale());
        let mut flags: Vec<String> = coincident_vertices.iter().map(|[a, b]| format!("P{a} = P{b}")).collect();
        if embedding.embedded == Embedded::Degenerate {
            flags.push(format!("{} degenerate quadruples", embedding.degenerate_quadruples.len()));
        }
        let modulus = match theta {
            Some(th) if th <= MODULUS_THETA_TOL => modulus_of(p, MODULUS_THETA_TOL).ok(),
            _ => None,
        };
        Self {
            z,
            t,
            mode,
            vertices: *p.vertices(),
            triangles: crate::triangulation::TRIANGLES,
            cone_angles: cones.map(|c| c.theta),
            theta,
            matches_reference: &embedding.signs == lambda_ref(),
            embedding,
            hull_triangles: hull.on_hull_triangles.clone(),
            hull,
            coincident_vertices,
            flags,
            modulus,
            solve: None,
        }
    }

    pub fn from_solve(r: &FlatSolveResult) -> Self {
        let mut rep = Self::from_torus(r.z, r.t, Mode::Solved, &r.torus);
        rep.solve = Some(SolveSummary {
            iterations: r.iterations,
            delta_w: r.delta_w,
            theta_start: r.theta_start,
            trace: r.trace.clone(),
        });
        rep
    }

    pub fn torus(&self) -> Torus8 {
        Torus8::new(self.vertices)
    }
}

/// Builds the report for `mode`; golden ignores `t` and accepts boundary parameters.
pub fn build_report(z: &ModularParameter, t: f64, mode: Mode) -> Result<TorusReport> {
    match mode {
        Mode::Golden => Ok(TorusReport::from_torus(*z, 0.0, mode, &golden_torus(z)?)),
        Mode::Deformed => Ok(TorusReport::from_torus(*z, t, mode, &deform(z, t)?)),
        Mode::Solved => Ok(TorusReport::from_solve(&solve_flat(z, t)?)),
    }
}

/// `serde_json` formatter writing floats with 17 significant digits.
struct Exact<F>(F);

impl<F: Formatter> Formatter for Exact<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{value:.8e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn encode<T: Serialize + ?Sized, F: Formatter>(value: &T, f: F) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Exact(f));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Invalid(format!("serialization failed: {e}")))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Compact JSON with 17-digit floats.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    encode(value, CompactFormatter)
}

pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    encode(value, PrettyFormatter::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::Region;

    #[test]
    fn floats_roundtrip_bit_exactly() {
        let xs = [0.1, -0.0, 1.0 / 3.0, f64::MIN_POSITIVE, 5e-324, 1.7976931348623157e308, -2.5e-17];
        let s = to_json_string(&xs).unwrap();
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        for (a, b) in xs.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits(), "{s}");
        }
    }

    #[test]
    fn golden_report_is_degenerate() {
        let z = ModularParameter::interior(0.25, 1.0).unwrap();
        let r = build_report(&z, 0.0, Mode::Golden).unwrap();
        assert_eq!(r.embedding.embedded, Embedded::Degenerate);
        assert!(r.theta.unwrap() < 1e-12);
        assert!(r.modulus.is_some());
        let back: TorusReport = serde_json::from_str(&to_json_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn hex_vertex_flags_coincidence() {
        let z = ModularParameter::classify(0.5, 0.8660254037844386).unwrap();
        assert_eq!(z.region, Region::HexVertex);
        let r = build_report(&z, 0.0, Mode::Golden).unwrap();
        assert!(r.flags.iter().any(|f| f == "P0 = P7"), "{:?}", r.flags);
        assert!(r.cone_angles.is_none());
    }
}
