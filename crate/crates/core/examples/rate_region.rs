//! Rate polytope of the shipped example channel pair, with vertices and plot data.

use wiretap::io::{AuxFile, ChannelsFile};
use wiretap::region::rate_region;

fn main() -> wiretap::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let channels: ChannelsFile = wiretap::io::read_json(format!("{dir}/korner_style_channels.json"))?;
    let aux: AuxFile = wiretap::io::read_json(format!("{dir}/korner_style_aux.json"))?;
    let region = rate_region(&channels.w_b, &channels.w_e, &aux.expand(channels.w_b.input())?)?;
    let r = &region.regions[0];
    println!("{:#?}", r.quantities);
    for f in r.families() {
        println!("{:<20} {}", f.label, if f.irredundant { "facet" } else { "redundant" });
    }
    print!("{}", r.vertices()?.to_csv());
    let mid = [0.1, 0.15, 0.01];
    println!("{mid:?} in region: {}", region.contains_open(&mid));
    Ok(())
}
