//! Exact-arithmetic analysis of teaching sets for function classes on integer grids.
//!
//! A *grid function* assigns 0/1 to every point of the grid `{0..n-1}^d`. This
//! crate computes, with integer/rational arithmetic throughout:
//!
//! * convex-hull geometry of the 1-point set (lattice polygons, edge systems,
//!   boundary/interior counts),
//! * *essential points* and minimal *teaching sets* of a function relative to a
//!   class (the points a learner must be shown to pin the function down),
//! * enumerations of the threshold, 2-threshold and convex ("polytopal")
//!   classes at small grid sizes, used as brute-force oracles,
//! * structural facts about threshold conjunctions: separation lines, defining
//!   pairs, compact teaching sets, and a quadratic family of functions with
//!   many distinct minimal teaching sets.
//!
//! Everything observable is deterministic; randomized suites take explicit
//! seeds.

pub mod bitset;
pub mod classes;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod suites;
pub mod teaching;
pub mod twothreshold;

pub use error::{Error, Result};
pub use grid::{ClassKind, ClassSpec, GridFunction, GridSpec, LatticePoint};
