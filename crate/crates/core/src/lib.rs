//! Exact planar geometry and combinatorial search over collinear triples.
//!
//! Everything here is `no_std` (with `alloc`) and uses exact rational
//! arithmetic; the only floating-point code lives in
//! [`geometry::approx`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conic;
pub mod generators;
pub mod geometry;
pub mod linalg;
pub mod search;
pub mod triples;

pub use geometry::{HLine, HPoint, Rat};
