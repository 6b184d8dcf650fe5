//! Guessing a secret with and without the eavesdropper's observation.
//!
//! The observation changes the posterior but never the most likely candidates, so
//! the success probabilities are equal in both cases.

fn main() -> wiretap::Result<()> {
    let d = wiretap::demos::perfect_secrecy()?;
    println!("P_Z = {:?}", d.marginal.exact().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    for (k, without, with) in &d.success {
        println!("{k} guess(es): {without} without Z, {with} with Z");
    }
    Ok(())
}
