//! Exact-arithmetic toolkit for drawing 2-degenerate graphs with four plane
//! forests, verifying such drawings, and experimenting with the segment
//! arrangements behind the matching lower bound.

pub mod exactgeom;
pub mod graphs;
pub mod layout;
pub mod verify;
pub mod arrangements;
pub mod io;
