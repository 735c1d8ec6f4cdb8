//! Generator and analysis toolkit for ABCD (Artificial Benchmark for Community
//! Detection) graphs.
//!
//! The crate is `no_std` and only needs `alloc`. The optional `parallel`
//! feature pulls in `std` and rayon so that the independent community graphs
//! of a build are paired concurrently; output is identical either way because
//! every subgraph draws from its own random stream.
//!
//! The pipeline, in order:
//!
//! 1. [`sequences::degree_sequence`] and [`sequences::community_sizes`] draw
//!    from truncated power laws ([`powerlaw::TruncatedPowerLaw`]);
//! 2. [`assignment::assign`] places nodes into communities uniformly among
//!    admissible assignments;
//! 3. [`weights::split_weights`] splits every degree into community and
//!    background parts;
//! 4. [`pairing::configuration_model`] pairs the points of each community graph
//!    and of the background graph, and [`graph::build_abcd`] takes the union.
//!
//! [`modularity`], [`clustering`] and [`theory`] then measure the result
//! against closed-form predictions.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod assignment;
pub mod clustering;
pub mod error;
pub mod graph;
mod math;
pub mod modularity;
pub mod pairing;
pub mod params;
pub mod powerlaw;
pub mod rng;
pub mod sequences;
pub mod theory;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{build_abcd, Abcd, MultiGraph, Origin, Partition};
pub use modularity::{modularity, ModularityReport};
pub use params::{AbcdParams, Variant};
pub use powerlaw::TruncatedPowerLaw;
