//! Complete colorings of Kneser graphs.
//!
//! Constructions of optimal proper complete colorings of `K(n,2)`, lower-bound
//! complete colorings for the pseudoachromatic number, the block designs they
//! are built from, closed-form bounds, exponential-time oracles for small
//! instances, and segment/hull disjointness graphs of planar point sets.
//! Every construction verifies its own output before returning it.

pub mod achromatic;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod designs;
pub mod error;
pub mod exact_cover;
pub mod geometry;
pub mod graph;
pub mod kneser;
pub mod oracle;
pub mod pseudo;

pub use coloring::{check_condition_c, verify_coloring, Check, Coloring, ColoringFile, VerificationReport};
pub use error::{Error, Result};
pub use graph::{DenseGraph, Graph};
pub use kneser::{KSubset, KneserGraph};
