//! Finite-alphabet distributions, channels and the information measures built on them.

mod alphabet;
mod channel;
mod distribution;
mod exact;
mod info;
mod joint;

pub use alphabet::Alphabet;
pub use channel::Channel;
pub use distribution::{Distribution, SUM_TOL};
pub use exact::{format_rational, parse_rational, rational_to_f64, Prob, Weight, FLOAT_TIE_TOL};
pub use info::{
    bayes, compose, cond_entropy, cond_mutual_info, direct_product, divergence, entropy,
    extend_input, independent_channel, joint, marginal, mix_rows, mutual_info,
    variation_distance,
};
#[allow(unused_imports)]
pub(crate) use info::{entropy_of, neg_p_ln_p};
pub use joint::JointDistribution;
