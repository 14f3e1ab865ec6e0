//! Turning-function distances between planar shapes, turning disorders of
//! polygonal networks, exact values for Archimedean lattices, and two
//! disorder-generating network processes.

pub mod cli;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod manifest;
pub mod network;
pub mod plot;
pub mod polygon;
pub mod regular;
pub mod sim;
pub mod sweep;
pub mod turning;

pub use error::{Error, Result};
