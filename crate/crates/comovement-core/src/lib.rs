//! Network model of daily stock co-movement.
//!
//! `N` variable nodes carry a daily sign (up/down). Each update step picks a
//! node at random; with probability `1 - p` it copies the sign of a random
//! neighbor, where `U` frozen up-nodes and `D` frozen down-nodes act as
//! neighbors of every variable node and model external influence. On a fully
//! connected graph the up-count `k` has an exactly solvable stationary law
//! (a beta-binomial with shapes `U`, `D`), a tridiagonal evolution matrix
//! with a closed-form spectrum, and `U = D = 1` as the critical point where
//! the distribution is exactly flat.
//!
//! The crate is organized in four layers:
//!
//! * [`model`] — the exact mathematics: stationary pmf, moments and their
//!   inversion, evolution matrix, spectrum, transition probabilities,
//!   topology rescaling, and the Wright–Fisher–Moran mapping.
//! * [`sim`] — Monte Carlo simulation of the copy dynamics on full and
//!   partly connected networks.
//! * [`stats`] — empirical positive-fraction series, the variance-based
//!   parameter fit, block-bootstrap errors, kernel density estimates, and
//!   the chi-square goodness-of-fit test.
//! * [`pipeline`] — rolling-window indicator, normalized annual-change
//!   signal, warning-window detection, crash-coverage evaluation with a
//!   permutation significance test, and a synthetic market generator.
//!
//! All operations are pure functions of their inputs; every public type is
//! immutable after construction and freely shareable across threads. The
//! crate is `no_std`-compatible (with `alloc`); IO, file formats, and the
//! CLI live in the companion `comovement-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod model;
pub mod pipeline;
pub mod rng;
pub mod sim;
pub mod stats;
pub mod topology;

mod dates;
mod linalg;

pub use dates::{DateInterval, InvalidInterval};

pub use model::ModelParams;
pub use topology::Topology;
