//! Eight-vertex paper tori: golden pup tents, their special deformation,
//! sign-certified embeddings, Newton flattening and shape diagnostics.

pub mod angles;
pub mod cli;
pub mod deformation;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod flatten;
pub mod geom;
pub mod golden;
pub mod mesh;
pub mod reference;
pub mod report;
pub mod service;
pub mod shape;
pub mod torus;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};
pub use golden::{ModularParameter, Region};
pub use torus::Torus8;
