//! The reference pup tent and the data derived from it: the winning sign list
//! `Λ_ref` and the pattern of its six hull triangles.

use std::sync::OnceLock;

use crate::embedding::{Sign, SignList};
use crate::error::{Error, Result};
use crate::torus::Torus8;
use crate::triangulation::{quadruples, Label, Quad};

pub const LAMBDA_REF_V1: &str = include_str!("../data/lambda_ref.v1.txt");
pub const HULL_PATTERN_V1: &str = include_str!("../data/hull_pattern.v1.txt");

/// Heights of vertices 1, 2, 3 (and their ρ-images).
pub const PUP_HEIGHTS: [f64; 3] = [
    0.020_666_326_669_844_361_598_992_337_188_61,
    0.004_853_127_706_519_287_204_090_747_961_69,
    0.008_227_521_455_613_716_455_791_254_786_61,
];

/// An embedded pup tent, flat to about `1e−32` in exact arithmetic.
///
/// Vertices 0 and 7 sit at height 1; with these heights the listed planar
/// coordinates and `z1, z2, z3` close up the cone angles.
pub fn pup_torus() -> Torus8 {
    let [z1, z2, z3] = PUP_HEIGHTS;
    Torus8::from_upper_half([
        [0.64, -0.20, 1.0],
        [-1.09, 0.38, z1],
        [-0.25, 0.51, z2],
        [0.78, 0.62, z3],
    ])
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `a b c d sign` lines into a sign list, requiring all 70 ascending
/// quadruples in lexicographic order.
pub fn parse_sign_list(text: &str) -> Result<SignList> {
    let mut signs = Vec::with_capacity(70);
    for (lineno, line) in data_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Invalid(format!("sign list line {lineno}: {line:?}"));
        if fields.len() != 5 {
            return Err(bad());
        }
        let mut q: Quad = [0; 4];
        for (slot, f) in q.iter_mut().zip(&fields[..4]) {
            *slot = f.parse().map_err(|_| bad())?;
        }
        if quadruples().get(signs.len()) != Some(&q) {
            return Err(bad());
        }
        let mut chars = fields[4].chars();
        let sign = match (chars.next().and_then(Sign::from_char), chars.next()) {
            (Some(s), None) => s,
            _ => return Err(bad()),
        };
        signs.push(sign);
    }
    if signs.len() != 70 {
        return Err(Error::Invalid(format!("sign list has {} entries, expected 70", signs.len())));
    }
    Ok(SignList::from_signs(signs))
}

pub fn parse_triangles(text: &str) -> Result<Vec<[Label; 3]>> {
    data_lines(text)
        .map(|(lineno, line)| {
            let v: Vec<Label> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Invalid(format!("triangle line {lineno}: {line:?}")))?;
            <[Label; 3]>::try_from(v)
                .map_err(|_| Error::Invalid(format!("triangle line {lineno}: {line:?}")))
        })
        .collect()
}

/// `Λ_ref`, loaded from the shipped data file.
pub fn lambda_ref() -> &'static SignList {
    static L: OnceLock<SignList> = OnceLock::new();
    L.get_or_init(|| parse_sign_list(LAMBDA_REF_V1).expect("shipped sign list is well formed"))
}

/// The six hull triangles of the reference tent, ascending labels.
pub fn hull_pattern() -> &'static [[Label; 3]] {
    static H: OnceLock<Vec<[Label; 3]>> = OnceLock::new();
    H.get_or_init(|| parse_triangles(HULL_PATTERN_V1).expect("shipped hull pattern is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::flatness_defect;
    use crate::embedding::{sign_list, TAU_SIGN};

    #[test]
    fn data_files_parse() {
        assert!(lambda_ref().is_general_position());
        assert_eq!(hull_pattern().len(), 6);
    }

    #[test]
    fn lambda_ref_is_the_pup_sign_list() {
        assert_eq!(&sign_list(&pup_torus(), TAU_SIGN), lambda_ref());
    }

    #[test]
    fn pup_is_flat_in_double_precision() {
        assert!(flatness_defect(&pup_torus()).unwrap().theta < 1e-10);
    }

    #[test]
    fn malformed_lists_are_rejected() {
        assert!(parse_sign_list("0 1 2 3 +\n").is_err());
        assert!(parse_sign_list(&LAMBDA_REF_V1.replacen("0 1 2 3 +", "0 1 2 3 x", 1)).is_err());
        assert!(parse_sign_list(&LAMBDA_REF_V1.replacen("0 1 2 3 +", "0 1 3 2 +", 1)).is_err());
    }
}
