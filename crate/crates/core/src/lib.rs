//! Slim rectangular lattices, their lamps, and the congruence structure
//! that the lamps describe.

pub mod bitset;
pub mod congruence;
pub mod construction;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lamps;
pub mod lattice;
pub mod poset;
pub mod properties;
pub mod svg;
pub mod trajectories;
pub mod verify;

pub use construction::{
    build, grid, multifork, replay, CellAddress, Diagram, FourCell, Recipe, Step,
};
pub use error::{Error, Result};
pub use geometry::{Layout, Point, Region, Segment, Shape, Slope};
pub use lattice::{build_lattice, ElemId, FiniteLattice, IrreducibleSets, ValidationReport};
pub use poset::Poset;
