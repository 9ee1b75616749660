//! Extrinsic and intrinsic shape diagnostics.

pub mod hausdorff;
pub mod hull;
pub mod modulus;
pub mod polygon;

pub use hausdorff::{hausdorff, normalize_similarity, torus_triangles, Alignment, HausdorffDistance, TriangleSet};
pub use hull::{convex_hull, ConvexHull, HullDimension};
pub use modulus::{modular_distance, modulus_of, ModulusEstimate};
pub use polygon::{good_polygon, GoodPolygon, PolygonKind};
