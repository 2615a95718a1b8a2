//! Exact computations in the homotopy category of bounded complexes of
//! finitely generated projective modules over finite-dimensional algebras.
//!
//! The crate is layered: [`linalg`] provides exact arithmetic, [`algebra`]
//! algebras, ideals and modules, [`homcat`] complexes up to homotopy. On top
//! of these sit bimodule functors, resolutions and Tor, lifting searches,
//! ideal calculus on finite windows and the almost-module toolkit. [`io`]
//! reads fixture files and runs tasks.

pub mod algebra;
pub mod almost;
pub mod derived;
pub mod error;
pub mod fixtures;
pub mod functors;
pub mod homcat;
pub mod ideals;
pub mod io;
pub mod lifting;
pub mod linalg;

pub use error::{Error, Result};
