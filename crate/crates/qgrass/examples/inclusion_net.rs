//! The net of cyclic submodules woven from the grade representatives, with
//! verified strict inclusions, rendered as DOT.
//!
//! Run with: `cargo run --example inclusion_net`

use qgrass::structure::{inclusion_net, net_to_dot};
use qgrass::superindex::Shape;

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(3, 2, 3, 2)?;
    for s in [10u64, 12] {
        let net = inclusion_net(&shape, s)?;
        println!(
            "degree {s}: grades {}..{}, {} vertices, {} verified edges, mutual non-inclusion {}",
            net.e0,
            net.e,
            net.vertices.len(),
            net.edges.len(),
            net.same_grade_mutual_noninclusion,
        );
        println!("{}", net_to_dot(&net));
    }
    Ok(())
}
