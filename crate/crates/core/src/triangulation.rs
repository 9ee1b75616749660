//! The uniform 8-vertex triangulation of the torus and the orientation
//! determinant kernel built on it.
//!
//! Vertices carry labels `0..8`. The sixteen triangles are the classes of
//! `(a, a+1, a+3)` and `(a, a+2, a+3)` mod 8; every vertex has degree 6 and
//! the only missing edges are `(a, a+4)`. Triangles are stored with
//! ascending labels, and every sign convention downstream is relative to that
//! ordering.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::geom::{det3, sub};
use crate::torus::Torus8;

pub type Label = usize;
pub type Quad = [Label; 4];

/// The sixteen triangles, ascending within each triple, lexicographically sorted.
pub const TRIANGLES: [[Label; 3]; 16] = [
    [0, 1, 3],
    [0, 1, 6],
    [0, 2, 3],
    [0, 2, 7],
    [0, 5, 6],
    [0, 5, 7],
    [1, 2, 4],
    [1, 2, 7],
    [1, 3, 4],
    [1, 6, 7],
    [2, 3, 5],
    [2, 4, 5],
    [3, 4, 6],
    [3, 5, 6],
    [4, 5, 7],
    [4, 6, 7],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation8 {
    pub triangles: Vec<[Label; 3]>,
    pub edges: Vec<[Label; 2]>,
    pub missing_edges: Vec<[Label; 2]>,
}

impl Triangulation8 {
    pub fn degree(&self, v: Label) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn has_edge(&self, a: Label, b: Label) -> bool {
        let e = if a < b { [a, b] } else { [b, a] };
        self.edges.binary_search(&e).is_ok()
    }

    /// Triangles incident to `v`, as indices into `triangles`.
    pub fn star(&self, v: Label) -> impl Iterator<Item = usize> + '_ {
        self.triangles
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.contains(&v))
            .map(|(i, _)| i)
    }

    /// The (exactly two) triangles containing edge `{a, b}`.
    pub fn edge_triangles(&self, a: Label, b: Label) -> Vec<usize> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&a) && t.contains(&b))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        8 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

pub fn build_triangulation() -> Triangulation8 {
    let mut triangles: Vec<[Label; 3]> = Vec::with_capacity(16);
    for a in 0..8 {
        for offs in [[0, 1, 3], [0, 2, 3]] {
            let mut t = offs.map(|o| (a + o) % 8);
            t.sort_unstable();
            if !triangles.contains(&t) {
                triangles.push(t);
            }
        }
    }
    triangles.sort_unstable();

    let mut edges: Vec<[Label; 2]> = triangles
        .iter()
        .flat_map(|t| [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]])
        .collect();
    edges.sort_unstable();
    edges.dedup();

    let missing_edges = (0..4).map(|a| [a, a + 4]).collect();
    Triangulation8 {
        triangles,
        edges,
        missing_edges,
    }
}

/// Shared, lazily built canonical triangulation.
pub fn triangulation() -> &'static Triangulation8 {
    static TRI: OnceLock<Triangulation8> = OnceLock::new();
    TRI.get_or_init(build_triangulation)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    EdgeSharing,
    VertexSharing,
    Disjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePairClass {
    pub pair: (usize, usize),
    pub class: PairClass,
    pub shared: Vec<Label>,
}

/// Classifies all `C(16, 2) = 120` triangle pairs by their number of shared labels.
pub fn classify_pairs(tri: &Triangulation8) -> Vec<TrianglePairClass> {
    let n = tri.triangles.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let shared: Vec<Label> = tri.triangles[i]
                .iter()
                .copied()
                .filter(|v| tri.triangles[j].contains(v))
                .collect();
            let class = match shared.len() {
                2 => PairClass::EdgeSharing,
                1 => PairClass::VertexSharing,
                0 => PairClass::Disjoint,
                _ => unreachable!("distinct triangles share at most an edge"),
            };
            out.push(TrianglePairClass {
                pair: (i, j),
                class,
                shared,
            });
        }
    }
    out
}

/// The 70 ascending quadruples of `{0..7}` in lexicographic order.
pub fn quadruples() -> &'static [Quad; 70] {
    static QUADS: OnceLock<[Quad; 70]> = OnceLock::new();
    QUADS.get_or_init(|| {
        let mut out = [[0; 4]; 70];
        let mut k = 0;
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    for d in c + 1..8 {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                }
            }
        }
        out
    })
}

/// Position of an ascending quadruple in [`quadruples`].
pub fn quad_index(q: Quad) -> usize {
    debug_assert!(q[0] < q[1] && q[1] < q[2] && q[2] < q[3] && q[3] < 8);
    quadruples()
        .binary_search(&q)
        .expect("ascending quadruple of labels 0..8")
}

/// Sorts four distinct labels ascending and returns the permutation parity
/// (`+1` even, `-1` odd).
pub fn sort_with_parity(mut q: Quad) -> (Quad, i32) {
    let mut parity = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if q[j] > q[j + 1] {
                q.swap(j, j + 1);
                parity = -parity;
            }
        }
    }
    (q, parity)
}

/// `det(P_b - P_a, P_c - P_a, P_d - P_a)`: six times the signed volume of the
/// tetrahedron. Any label order is accepted; ascending is the convention.
pub fn tetra_det(p: &Torus8, q: Quad) -> f64 {
    let v = p.vertices();
    let a = v[q[0]];
    det3(sub(v[q[1]], a), sub(v[q[2]], a), sub(v[q[3]], a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_triangles_match_hand_list() {
        let tri = build_triangulation();
        assert_eq!(tri.triangles, TRIANGLES.to_vec());
        assert!(tri.triangles.contains(&[0, 1, 3]));
    }

    #[test]
    fn edges_and_degrees() {
        let tri = build_triangulation();
        assert_eq!(tri.edges.len(), 24);
        assert!(tri.has_edge(0, 3));
        assert!(!tri.has_edge(0, 4));
        for [a, b] in &tri.missing_edges {
            assert_eq!((a + 4) % 8, *b);
            assert!(!tri.has_edge(*a, *b));
        }
        for v in 0..8 {
            assert_eq!(tri.degree(v), 6, "vertex {v}");
            assert_eq!(tri.star(v).count(), 6);
        }
        assert_eq!(tri.euler_characteristic(), 0);
        for e in &tri.edges {
            assert_eq!(tri.edge_triangles(e[0], e[1]).len(), 2);
        }
    }

    #[test]
    fn symmetric_under_reversal() {
        let tri = build_triangulation();
        for t in &tri.triangles {
            let mut img = t.map(|v| 7 - v);
            img.sort_unstable();
            assert!(tri.triangles.contains(&img));
        }
    }

    #[test]
    fn pair_class_counts() {
        let classes = classify_pairs(triangulation());
        assert_eq!(classes.len(), 120);
        let count = |c| classes.iter().filter(|p| p.class == c).count();
        assert_eq!(count(PairClass::EdgeSharing), 24);
        assert_eq!(count(PairClass::VertexSharing), 72);
        assert_eq!(count(PairClass::Disjoint), 24);
        assert_eq!(24 * 6 + 72 * 2, 288);
    }

    #[test]
    fn quadruple_indexing() {
        let qs = quadruples();
        assert_eq!(qs[0], [0, 1, 2, 3]);
        assert_eq!(qs[69], [4, 5, 6, 7]);
        for (i, q) in qs.iter().enumerate() {
            assert_eq!(quad_index(*q), i);
        }
        assert_eq!(sort_with_parity([1, 0, 2, 3]), ([0, 1, 2, 3], -1));
        assert_eq!(sort_with_parity([3, 2, 1, 0]), ([0, 1, 2, 3], 1));
    }
}
