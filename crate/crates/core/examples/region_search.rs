//! Grid search that produced the shipped rate-region example.
//!
//! Bob sees a binary erasure channel, Eve a binary symmetric channel, and U is a binary
//! cloud variable with a symmetric flip to X. Among all grid points (denominator 20)
//! where every rate constraint family is a facet, the one with the widest margin wins.

use wiretap::exponents::AuxSpec;
use wiretap::measures::{Alphabet, Channel, Distribution};
use wiretap::region::{mi_quantities, AuxRegion};

const D: u32 = 20;

fn main() -> wiretap::Result<()> {
    let f = |k: u32| k as f64 / D as f64;
    let mut best: Option<(f64, [u32; 5])> = None;
    for e in 1..D {
        let w_b = Channel::new(Alphabet::indexed(2), Alphabet::new(["0", "e", "1"])?, vec![
            vec![1.0 - f(e), f(e), 0.0],
            vec![0.0, f(e), 1.0 - f(e)],
        ])?;
        for p in 1..D / 2 {
            let w_e = Channel::from_rows(&[vec![1.0 - f(p), f(p)], vec![f(p), 1.0 - f(p)]])?;
            for c in 4..17 {
                for a in 1..D / 2 {
                    for b in 1..D / 2 {
                        let u = Alphabet::indexed(2);
                        let q0 = Distribution::new(u.clone(), vec![f(c), 1.0 - f(c)])?;
                        let q1 = Channel::new(u, Alphabet::indexed(2), vec![vec![1.0 - f(a), f(a)], vec![f(b), 1.0 - f(b)]])?;
                        let aux = AuxSpec::new(q0, q1, Channel::identity(Alphabet::indexed(2)))?;
                        let q = mi_quantities(&w_b, &w_e, &aux)?;
                        let adv = q.conditional_advantage();
                        // distance to the nearest degeneracy among the family conditions
                        let margin = (q.i_u_z - q.i_u_y).min(q.i_u_y + adv - q.i_u_z).min(q.i_u_y).min(adv);
                        if best.is_some_and(|(m, _)| m >= margin) || margin <= 0.0 {
                            continue;
                        }
                        if AuxRegion::from_quantities(q)?.all_families_irredundant() {
                            best = Some((margin, [e, p, c, a, b]));
                        }
                    }
                }
            }
        }
    }
    match best {
        Some((m, [e, p, c, a, b])) => println!(
            "erasure {e}/{D}, crossover {p}/{D}, Q0 = ({c}/{D}, {}/{D}), flips {a}/{D} and {b}/{D}; margin {m:.6} nats",
            D - c
        ),
        None => println!("no instance found"),
    }
    Ok(())
}
