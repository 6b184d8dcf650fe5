//! Desk-scale transmission model: random constant-composition codes with junk
//! data, MMI decoders, the optimal list attack and exact fault probabilities.

mod attack;
mod codebook;
mod decoders;
mod faults;
mod guessing;
mod overlap;

pub use attack::{
    list_size_identity_check, optimal_list_attack, optimal_list_attack_with_budget, AttackRegions, DEFAULT_BUDGET,
};
pub use codebook::{encoder_distribution, sample_random_code, Codebook};
pub use decoders::{mmi_decode_bob, mmi_decode_eve, BobDecoder, BobFn, EveDecoder, EveFn, Mmi};
pub use faults::{
    exact_fault_probabilities, exact_fault_probabilities_with, monte_carlo_fault_probabilities, Estimate,
    FaultReport, MessageFaults, MonteCarloReport,
};
pub use guessing::success_probability_guessing;
pub use overlap::{
    expected_overlap_at, expected_packing_ratio, overlap_statistics, overlap_statistics_with_delta, OverlapReport,
};
