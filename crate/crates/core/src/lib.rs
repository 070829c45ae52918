//! Exact integer models of Prym and Prym-Tyurin varieties attached to
//! W(B_n)- and W(D_n)-coverings of the projective line.

pub mod corr;
pub mod cover;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod prym;
pub mod surface;
pub mod weyl;

pub use corr::FiberMatrix;
pub use cover::{induce, random_simple, CoverModel, MonodromyDatum};
pub use error::{Error, Result};
pub use lattice::{PolType, PolarizedLattice};
pub use matrix::IntMatrix;
pub use prym::{verify_scenario, PrymResult, ScenarioInput, Verdict};
pub use surface::{induced_map, HomologyModel};
pub use weyl::{GroupClass, OrbitKind, OrbitLabel, Parity, Root, RootKind, SignedPerm, Subset};
