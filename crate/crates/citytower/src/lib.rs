//! Octet-truss shape grammar engine.
//!
//! Cells of the tetrahedral-octahedral honeycomb are kept on the FCC integer
//! lattice wherever possible, so occupancy, deduplication and tiling checks are
//! exact. The crate covers geometry primitives, the honeycomb, a production
//! system over tetra/octa/half-octa cells, the module pipeline that ends in a
//! parametric tower, frame extraction, file formats and an in-memory session
//! store for interactive derivations.

pub mod assembly;
pub mod formats;
pub mod frame;
pub mod geom;
pub mod grammar;
pub mod lattice;
pub mod pipeline;
pub mod session;

pub use assembly::{Assembly, Cell, CellTag, Placement};
pub use frame::{FrameGraph, ValidationReport};
pub use geom::{ConvexCell, Fingerprint, Isometry, LatticePoint, Species, WorldPoint};
pub use grammar::{DerivationScript, DerivationStep, Grammar, GrammarRule, Initial, Match, Relation};
pub use lattice::{LatticeAssembly, LatticePlacement, PlanRegion, WorldTransform};
