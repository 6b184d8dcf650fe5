//! Junk data: one secret bit hidden behind one junk bit in two channel uses.
//!
//! Bob's channel is noiseless and Eve's erases each bit with probability 1/2. The
//! optimal single-guess attack succeeds with probability 5/8.

fn main() -> wiretap::Result<()> {
    let d = wiretap::demos::junk_data()?;
    println!("codewords (j, j xor l):");
    for l in 0..2 {
        for j in 0..2 {
            println!("  l={l} j={j}: {}", d.code.satellite(j, l, 0));
        }
    }
    println!("Eve's guess per observation:");
    for (z, g) in &d.guesses {
        println!("  z={z} -> {g}");
    }
    println!("XOR decoder: e_b = {}, s_e = {}", d.xor_bob.e_b, d.xor_bob.s_e);
    for m in &d.xor_bob.per_message {
        println!("  secret {}: success {}", m.l, m.s_e);
    }
    println!("MMI decoder: e_b = {} (every output is a tie)", d.mmi_bob.e_b);
    Ok(())
}
