//! Rate regions over (R_M, R_L, R_λ): the constraint systems generated from five
//! mutual informations of an auxiliary structure, their union over auxiliaries, and
//! sampled checks of the convex-hull argument relating the two region descriptions.

mod constraints;
mod hull;
mod quantities;
mod rate_region;

pub use constraints::{
    admissible_bounds, alt_constraints, raw_constraints, reduced_constraints, ALT_FAMILIES, RATE_VARIABLES,
    RAW_VARIABLES, REDUCED_FAMILIES,
};
pub use hull::{alt_inside_reduced, hull_containment_check, mixed_quantities, mixing_aux, HullCase, HullReport};
pub use quantities::{mi_quantities, MIQuantities, CHAIN_RULE_TOL};
pub use rate_region::{rate_region, AuxRegion, FamilyStatus, RateRegion};
