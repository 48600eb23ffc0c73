//! Cellular automata on the triangulated heptagrid.
//!
//! The heptagrid is the regular tiling {7,3} of the hyperbolic plane:
//! heptagons, three around each vertex. Splitting every heptagon into
//! seven triangles from its center and splitting each of those into four
//! by edge midpoints yields the heptatrigrid, whose 28 small triangles
//! per heptagon are the cells of the automata implemented here.
//!
//! The crate provides:
//!
//! - exact integer coordinates for heptagons (sector + Fibonacci-tree
//!   index) and cells (heptagon + slice + place), with the full neighbor
//!   algebra ([`tree`], [`hepta`], [`tri`]);
//! - a sparse synchronous engine for freezing automata and the three
//!   colony-growth rule sets ([`engine`], [`rules`]);
//! - a Poincaré-disc realization of the grid together with a brute-force
//!   geometric adjacency oracle that cross-checks the combinatorial
//!   navigation ([`geometry`]);
//! - deterministic SVG rendering and CSV snapshot persistence
//!   ([`render`], [`snapshot`]);
//! - the invariant suites behind `heptatri validate` ([`validate`]).

pub mod engine;
pub mod geometry;
pub mod hepta;
pub mod render;
pub mod rules;
pub mod snapshot;
pub mod tree;
pub mod tri;
pub mod validate;

pub use engine::{init_config, run, step, CellState, Configuration, InitId, Rule, RunOptions};
pub use hepta::{sector_add, HeptaCoord, SideId};
pub use tree::{NodeRecord, SectorTree, Status};
pub use tri::{NeighborIdx, TriCoord};
