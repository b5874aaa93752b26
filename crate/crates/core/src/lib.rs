//! Exact-arithmetic analysis of signed network coordination games with
//! binary actions.
//!
//! Every player `i` picks an action `x_i` in `{+1, -1}` and earns
//! `u_i(x) = h_i x_i + x_i * sum_j W_ij x_j`, where `W` is the weight matrix of
//! a directed signed network and `h` is an external field. The crate provides:
//!
//! * [`network`] and [`balance`]: signed graphs, gauge transformations and
//!   structural-balance detection;
//! * [`game`]: utilities, best responses, Nash enumeration, restricted and
//!   gauge-transformed games, potentials and increasing differences;
//! * [`dynamics`]: best-response paths, the full transition graph,
//!   reachability/invariance queries and a seeded asynchronous simulator;
//! * [`analysis`]: cohesion, field boxes, indecomposability and the
//!   constructive existence and stability certificates.
//!
//! All arithmetic is exact: weights are arbitrary-precision rationals and
//! best-response decisions are made on integer-scaled copies of them.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use snc_core::dynamics::TransitionGraph;
//! use snc_core::game::SncGame;
//! use snc_core::network::SignedNetwork;
//! use snc_core::{caps, Weight};
//!
//! // Player 0 coordinates with player 1; player 1 anti-coordinates with 0.
//! let net = SignedNetwork::build(2, [(0, 1, Weight::from(1)), (1, 0, Weight::from(-1))])?;
//! let game = SncGame::unbiased(net);
//! assert!(game.enumerate_nash(caps::NASH)?.all.is_empty());
//!
//! let graph = TransitionGraph::build(&game, caps::TRANSITION_GRAPH)?;
//! assert!(graph.sinks().is_empty());
//! # Ok::<(), snc_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod analysis;
pub mod balance;
pub mod dynamics;
mod error;
pub mod game;
mod kernel;
pub mod network;
mod nodeset;
mod profile;
mod weight;

pub use error::{Error, Result};
pub use nodeset::NodeSet;
pub use profile::{Action, GaugeVector, Profile, ProfileSet};
pub use weight::{ParseWeightError, Weight};

/// Largest node count supported by the bit-mask representations.
pub const MAX_NODES: usize = 64;

/// Default caps for the exhaustive routines.
pub mod caps {
    /// Exhaustive structural-balance oracle.
    pub const BALANCE_ORACLE: usize = 20;
    /// Nash enumeration over all `2^n` profiles.
    pub const NASH: usize = 24;
    /// Materialized best-response transition graph.
    pub const TRANSITION_GRAPH: usize = 20;
    /// Ordered binary partitions examined by the indecomposability test.
    pub const INDECOMPOSABLE: usize = 24;
    /// Pairwise increasing-difference verification (`3^n` comparable pairs).
    pub const INCREASING_DIFFERENCES: usize = 12;
}
