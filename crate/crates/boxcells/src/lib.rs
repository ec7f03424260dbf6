//! Cube sections, lattice level counts, cell classification for convex
//! bodies, and lattice-basis well-positioning.
//!
//! The crate answers questions of the following shape, exactly where the
//! inputs are rational and in compensated floating point otherwise:
//!
//! - How large is a hyperplane slice or a strip of the box `[0,n]^d`, and
//!   which threshold maximizes it? ([`geometry`])
//! - How many points of the grid `{0,...,n-1}^d` lie on each lattice level
//!   `z.x = h`, and how many fit in the best open slab? ([`lattice`])
//! - Which unit cells are inside / boundary / outside a convex body, and how
//!   close is the body's volume to its lattice-point count? ([`cells`])
//! - Which unimodular basis makes a thin strip well positioned, so that its
//!   minimal bounding parallelotope has volume comparable to the strip
//!   itself? ([`basis`])
//!
//! A rendered guide with worked examples lives in the `book/` directory of
//! the repository; its code snippets are compiled as doctests through the
//! [`book`] module.

pub mod basis;
pub mod book;
pub mod cells;
pub mod error;
pub mod geometry;
pub mod lattice;
mod linalg;
pub mod numeric;
pub mod optimize;
pub mod report;

pub use error::{Error, Result};
pub use numeric::Rat;
