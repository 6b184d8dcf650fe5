//! Lower bounds on the error and success exponents: minimisation over test
//! channels V of D(V‖ṼW|Q) plus a rate penalty γ(V).
//!
//! Values are inner (achievable) bounds, reported with a certified tolerance.

mod gamma;
mod solver;
mod spec;

pub use gamma::{gamma_bob, gamma_eve, gamma_secrecy, mi_pair, Gamma};
pub use solver::{
    exponent_bound, exponent_report, exponent_sweep, exponent_triple, ExponentBound, ExponentOptions,
    ExponentReport,
};
pub use spec::{AuxSpec, ExponentTriple, RateTuple};
