//! Lower bounds on Bob's and Eve's error exponents and Eve's success exponent for a
//! pair of binary symmetric channels.

use wiretap::exponents::{exponent_report, AuxSpec, ExponentOptions, RateTuple};
use wiretap::measures::{Alphabet, Channel, Distribution};

fn bsc(p: f64) -> wiretap::Result<Channel> {
    Channel::from_rows(&[vec![1.0 - p, p], vec![p, 1.0 - p]])
}

fn main() -> wiretap::Result<()> {
    let (w_b, w_e) = (bsc(0.05)?, bsc(0.2)?);
    let aux = AuxSpec::direct(&Distribution::uniform(Alphabet::indexed(2)));
    for r_l in [0.05, 0.1, 0.15] {
        let rates = RateTuple::new(0.0, r_l, 0.02, 0.0, 0.25)?;
        let r = exponent_report(&w_b, &w_e, &aux, &rates, &ExponentOptions::default())?;
        println!(
            "R_L = {r_l:.2}: E_b >= {:.5} (±{:.1e}), E_e >= {:.5}, S_e >= {:.5} (±{:.1e})",
            r.exponents.e_b, r.bob.tolerance, r.exponents.e_e, r.exponents.s_e, r.secrecy.tolerance
        );
    }
    Ok(())
}
