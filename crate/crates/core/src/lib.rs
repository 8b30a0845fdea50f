//! Bilipschitz extension of polyline embeddings of the real line.

pub mod audit;
pub mod ba_ext;
pub mod conformal;
pub mod curve;
pub mod error;
pub mod extension;
pub mod geom;
pub mod linalg;
pub mod quad;
pub mod scalar;

pub use error::{Error, Result};

pub use conformal::{build_phi, build_phi_normalized, EngineKind, HalfPlane, Normalization};
pub use curve::{Knot, Side};
pub use extension::{build_extension, build_extension_normalized};

pub type Embedding = curve::PolylineEmbedding<f64>;
pub type EmbeddingF32 = curve::PolylineEmbedding<f32>;
pub type ConformalMap = conformal::ConformalMap<f64>;
pub type ConformalMapF32 = conformal::ConformalMap<f32>;
pub type Extension = extension::ExtensionMap<f64>;
pub type ExtensionF32 = extension::ExtensionMap<f32>;
