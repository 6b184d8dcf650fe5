//! Maximum overlap of V-shells of random satellites, and the expected packing ratio.

use wiretap::codec::{expected_packing_ratio, overlap_statistics};
use wiretap::measures::{rational_to_f64, Alphabet};
use wiretap::types::{CondType, TypeVector};

fn main() -> wiretap::Result<()> {
    let b = Alphabet::indexed(2);
    let q0 = TypeVector::new(b.clone(), vec![3, 3])?;
    let q1 = CondType::new(b.clone(), b.clone(), vec![vec![2, 1], vec![1, 2]])?;
    let v = CondType::new(Alphabet::product(&b, &b), b, vec![vec![2, 0], vec![0, 1], vec![1, 0], vec![0, 2]])?;
    let r = overlap_statistics(&q0, &q1, &v, 3, 2000, 1)?;
    println!("J = {} (max {}), histogram of max overlap: {:?}", r.junk, r.max_junk, r.histogram);
    println!("probe count {:.4} ± {:.4}, expected {}", r.probe_mean, r.probe_std_err, r.probe_expected);
    let ratio = expected_packing_ratio(&q0, &q1, &q1, &v, &v)?;
    println!("E|T_V(C) ∩ T_V(C')| / |T_V(C)| = {ratio} ≈ {:.6}", rational_to_f64(&ratio));
    Ok(())
}
