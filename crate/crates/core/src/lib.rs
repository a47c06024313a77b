//! Divisor theory on metric graphs: chip-firing and reduced divisors, rank,
//! the tropical semimodule R(D), cells of complete linear systems and the
//! realizability test for canonical divisors.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod cells;
pub mod cli;
pub mod error;
pub mod graph;
pub mod divisor;
pub mod rational;
pub mod realizability;
pub mod reduction;
pub mod tropical;

pub use error::{Error, Result};
pub use divisor::{canonical_divisor, ChipGraph, Divisor, PlFunction, UnitModel};
pub use graph::{Loc, MetricGraph, Point, Subgraph};
pub use rational::Q;
