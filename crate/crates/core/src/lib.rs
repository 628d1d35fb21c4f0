//! Exact enumeration of domino tilings of Aztec rectangles with odd Aztec
//! windows, on the plane and on the torus.
//!
//! Coordinates: every graph lives on the diagonal grid whose sites are the
//! integer points `(x, y)` with `x + y` odd (`x` grows east, `y` south).
//! Edges join diagonal neighbours. A site is white when `y` is even.

pub mod complement;
pub mod error;
pub mod formulas;
pub mod lattice;
pub mod matchcount;
pub mod verify;

pub use error::{Error, Result};
