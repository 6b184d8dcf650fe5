//! Eliminates the reallocated rate R and the junk rate R_J from the five exponent
//! positivity conditions and compares the result with the reduced constraint set.

use wiretap::region::{raw_constraints, reduced_constraints, MIQuantities, RATE_VARIABLES};

fn main() -> wiretap::Result<()> {
    let q = MIQuantities::from_parts(0.1, 0.5, 0.2, 0.15)?;
    let raw = raw_constraints(&q)?;
    println!("raw system:\n{raw}");
    let projected = raw.project(&RATE_VARIABLES)?;
    println!("after eliminating R and R_J:\n{projected}");
    println!("reduced system (redundancy removed):\n{}", reduced_constraints(&q)?.remove_redundant()?);
    Ok(())
}
