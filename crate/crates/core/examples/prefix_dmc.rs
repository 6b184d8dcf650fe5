//! A prefix channel that makes Eve's output independent of the input while Bob
//! keeps a noiseless bit.

use wiretap::measures::format_rational;

fn main() -> wiretap::Result<()> {
    let d = wiretap::demos::prefix_dmc()?;
    for (name, ch) in [("prefix then W_b", &d.composed_b), ("prefix then W_e", &d.composed_e)] {
        println!("{name}:");
        for row in ch.exact().expect("rational channels") {
            println!("  {}", row.iter().map(format_rational).collect::<Vec<_>>().join("  "));
        }
    }
    let (w, wo) = (&d.with_prefix, &d.without_prefix);
    println!("with prefix:    I(X~;Y) = {:.6}, I(X~;Z) = {:.6} nats", w.i_xt_y_given_u, w.i_xt_z_given_u);
    println!("without prefix: I(X;Y)  = {:.6}, I(X;Z)  = {:.6} nats", wo.i_xt_y_given_u, wo.i_xt_z_given_u);
    Ok(())
}
