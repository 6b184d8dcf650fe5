//! Secrecy and reliability tradeoffs for discrete memoryless wiretap channels.
//!
//! The crate covers the whole pipeline at desk scale:
//!
//! * [`measures`]: distributions, channels and information measures (nats).
//! * [`types`]: exact method-of-types combinatorics.
//! * [`codec`]: random constant-composition codes, MMI decoders, the optimal
//!   list attack and exact fault probabilities.
//! * [`exponents`]: numerical lower bounds on the error and success exponents.
//! * [`polytope`]: Fourier-Motzkin elimination, redundancy removal and vertices.
//! * [`region`]: rate-region constraint systems and their equivalence checks.
//! * [`io`]: JSON problem specifications shared with the command-line tool.

pub mod codec;
pub mod demos;
pub mod error;
pub mod exponents;
pub mod io;
pub mod measures;
pub mod polytope;
pub mod region;
pub mod types;

pub use error::{Error, Result};
