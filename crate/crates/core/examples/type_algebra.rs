//! Types, type classes, canonical conditional types and shells of short sequences.

use wiretap::measures::Alphabet;
use wiretap::types::{
    canonical_cond_type, empirical_mutual_info, empirical_type, enumerate_shell, enumerate_types, shell_size,
    type_class_size, Sequence,
};

fn main() -> wiretap::Result<()> {
    let bits = Alphabet::indexed(2);
    for t in enumerate_types(4, &bits)? {
        println!("type {:?}: |T| = {}", t.counts(), type_class_size(&t));
    }
    let x = Sequence::parse(bits.clone(), "0011")?;
    let y = Sequence::parse(Alphabet::indexed(3), "0120")?;
    let v = canonical_cond_type(&x, &y)?;
    println!("V(y|x) counts: {:?}", v.counts());
    println!("|T_V(x)| = {}", shell_size(&empirical_type(&x), &v)?);
    for s in enumerate_shell(&x, &v)? {
        println!("  {s}");
    }
    println!("empirical I(x ^ y) = {:.6} nats", empirical_mutual_info(&x, &y)?);
    Ok(())
}
