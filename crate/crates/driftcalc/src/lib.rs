//! Deterministic network calculus for networks whose devices run on nonideal
//! local clocks.
//!
//! Classic network calculus assumes a single perfect time reference. Real
//! time-sensitive networks (TSN/DetNet) do not have one: every source,
//! switch and traffic regulator measures time with its own oscillator, and
//! regulators in particular enforce rate/burst contracts *in their own
//! clock*. This crate provides:
//!
//! - an exact (arbitrary-precision rational) min-plus algebra over
//!   piecewise-linear curves ([`curves`]),
//! - a two-parameter clock model (stability bound `rho`, jitter bound `eta`,
//!   optional synchronization bound `delta`) with concrete piecewise-linear
//!   relative-time functions for simulation ([`clocks`]),
//! - transforms that move delay bounds, cumulative functions, arrival curves
//!   and service curves between clocks ([`reclock`]),
//! - a packet-level simulator for FIFO elements and per-flow/interleaved
//!   regulators, each driven by its own clock ([`regulators`]),
//! - ready-made adversarial scenarios demonstrating regulator instability
//!   and delay penalties ([`scenarios`]),
//! - regulator configuration methods (rate-and-burst cascade, ADAM) and
//!   per-hop/end-to-end bound computations ([`methods`]),
//! - a JSON/CSV front end used by the `driftcalc` binary ([`network`]).
//!
//! All bound computations are exact: rationals in, rationals out. Floats
//! appear only in export layers (CSV convenience columns, report summaries).

pub mod clocks;
pub mod curves;
pub mod methods;
pub mod network;
pub mod rat;
pub mod reclock;
pub mod regulators;
pub mod scenarios;

use thiserror::Error;

/// Errors produced by curve algebra, clock handling, simulation and the
/// CLI surface.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported operand: {0}")]
    UnsupportedOperand(String),

    #[error("unbounded result: {0}")]
    UnboundedResult(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("invalid clock: {0}")]
    InvalidClock(String),

    #[error("invalid script: {0}")]
    InvalidScript(String),

    #[error("trace mismatch: {0}")]
    TraceMismatch(String),

    #[error("unstable element: {0}")]
    UnstableElement(String),

    #[error("configuration infeasible: {0}")]
    ConfigurationInfeasible(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
