//! Exact-arithmetic toolkit for absolute and potential games on fractal
//! subsets of the line and the plane.
//!
//! Everything is built on arbitrary-precision rationals: middle-epsilon
//! Cantor sets, continued-fraction cylinders, validated game transcripts,
//! explicit winning strategies, and pipelines that emit independently
//! auditable certificates (arithmetic progressions, points in intersections,
//! sumset coverage, dimension covers). No floating point is used anywhere;
//! quantities like log-ratios are reported as certified rational enclosures.

pub mod arith;
pub mod cantor;
pub mod certify;
pub mod contfrac;
pub mod dimension;
pub mod enclosure;
pub mod error;
pub mod farey;
pub mod games;
pub mod interval;
pub mod strategies;
pub mod ternary;

pub use arith::Rational;
pub use error::Error;
pub use interval::{Ball, Ball2, Interval};
