use super::quantities::MIQuantities;
use crate::error::Result;
use crate::polytope::{LinearSystem, Relation};

/// Variables of [`raw_constraints`], in order.
pub const RAW_VARIABLES: [&str; 5] = ["R", "R_J", "R_M", "R_L", "R_lambda"];

/// Variables of [`reduced_constraints`] and [`alt_constraints`], in order.
pub const RATE_VARIABLES: [&str; 3] = ["R_M", "R_L", "R_lambda"];

/// Labels of the five constraint families of the reduced region.
pub const REDUCED_FAMILIES: [&str; 5] =
    ["list-vs-secret", "list-vs-leakage", "public-vs-eve", "public-plus-list", "public-plus-secret"];

/// Labels of the four constraint families of the alternative region.
pub const ALT_FAMILIES: [&str; 4] = ["list-vs-secret", "list-vs-leakage", "public-vs-both", "public-plus-secret"];

use Relation::{Le, Lt};

fn nonneg(sys: &mut LinearSystem, vars: &[&str]) -> Result<()> {
    for v in vars {
        sys.add(&[(v, -1.0)], Le, 0.0, &format!("nonneg:{v}"))?;
    }
    Ok(())
}

/// Positivity conditions of the three exponents over (R, R_J, R_M, R_L, R_λ), where R is
/// the part of the secret moved into the public message and R_J the junk rate.
pub fn raw_constraints(q: &MIQuantities) -> Result<LinearSystem> {
    let mut s = LinearSystem::new(RAW_VARIABLES)?;
    s.add(&[("R_J", 1.0), ("R_L", 1.0), ("R", -1.0)], Lt, q.i_xt_y_given_u, "bob-satellite")?;
    s.add(&[("R_J", 1.0), ("R_L", 1.0), ("R_M", 1.0)], Lt, q.i_uxt_y, "bob-joint")?;
    s.add(&[("R_M", 1.0), ("R", 1.0)], Lt, q.i_u_z, "eve-cloud")?;
    s.add(&[("R_lambda", 1.0), ("R_L", -1.0), ("R", 1.0)], Lt, 0.0, "list-size")?;
    s.add(&[("R_lambda", 1.0), ("R_L", -1.0), ("R", 1.0), ("R_J", -1.0)], Lt, -q.i_xt_z_given_u, "eve-satellite")?;
    s.add(&[("R", 1.0), ("R_L", -1.0)], Le, 0.0, "box:R<=R_L")?;
    nonneg(&mut s, &RAW_VARIABLES)?;
    Ok(s)
}

/// The region over (R_M, R_L, R_λ) after eliminating R and R_J.
pub fn reduced_constraints(q: &MIQuantities) -> Result<LinearSystem> {
    let adv = q.conditional_advantage();
    let mut s = LinearSystem::new(RATE_VARIABLES)?;
    s.add(&[("R_lambda", 1.0), ("R_L", -1.0)], Lt, 0.0, "list-vs-secret")?;
    s.add(&[("R_lambda", 1.0)], Lt, adv, "list-vs-leakage")?;
    s.add(&[("R_M", 1.0)], Lt, q.i_u_z, "public-vs-eve")?;
    s.add(&[("R_M", 1.0), ("R_lambda", 1.0)], Lt, q.i_u_y + adv, "public-plus-list")?;
    s.add(&[("R_M", 1.0), ("R_L", 1.0)], Lt, q.i_xt_y_given_u + q.i_u_y.min(q.i_u_z), "public-plus-secret")?;
    nonneg(&mut s, &RATE_VARIABLES)?;
    Ok(s)
}

/// The alternative description with the public rate capped by both receivers.
pub fn alt_constraints(q: &MIQuantities) -> Result<LinearSystem> {
    let mut s = LinearSystem::new(RATE_VARIABLES)?;
    s.add(&[("R_lambda", 1.0), ("R_L", -1.0)], Lt, 0.0, "list-vs-secret")?;
    s.add(&[("R_lambda", 1.0)], Lt, q.conditional_advantage(), "list-vs-leakage")?;
    s.add(&[("R_M", 1.0)], Lt, q.i_u_y.min(q.i_u_z), "public-vs-both")?;
    s.add(&[("R_M", 1.0), ("R_L", 1.0)], Lt, q.i_xt_y_given_u + q.i_u_y.min(q.i_u_z), "public-plus-secret")?;
    nonneg(&mut s, &RATE_VARIABLES)?;
    Ok(s)
}

/// Cardinality bounds (|U|, |X̃|) under which restricting the auxiliary alphabets loses nothing.
pub fn admissible_bounds(x_size: usize, y_size: usize, z_size: usize) -> (usize, usize) {
    let m = (x_size.saturating_sub(1)).min((y_size + z_size).saturating_sub(2));
    let u_max = 4 + m;
    (u_max, u_max * (2 + m))
}
