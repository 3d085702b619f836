//! Energy filtrations and Loewy layers: each layer splits into copies of one
//! restricted graded piece, counted by the grade tuples.
//!
//! Run with: `cargo run --example loewy`

use qgrass::structure::{edeg_filtration, socle_filtration_check};
use qgrass::superindex::Shape;

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(3, 2, 3, 2)?;
    println!("Loewy structure of the graded pieces of (3|2), ell = 3, r = 2:");
    for s in 1..=shape.top_degree() {
        let rep = edeg_filtration(&shape, s)?;
        let layers: Vec<String> = rep
            .layers
            .iter()
            .map(|l| format!("{}x{}", l.multiplicity, l.layer_dim / l.multiplicity.max(1)))
            .collect();
        println!(
            "  s = {s:>2}: grades {}..{}  length {}  layers [{}]  {}",
            rep.e0,
            rep.e,
            rep.loewy_length,
            layers.join(", "),
            if rep.passed { "ok" } else { "FAILED" }
        );
    }
    println!();
    println!("rigidity witness on (2|1), r = 2: socle filtration level by level");
    let small = Shape::new(2, 1, 3, 2)?;
    for s in 0..=small.top_degree() {
        let rep = socle_filtration_check(&small, s)?;
        println!(
            "  s = {s:>2}: {} levels (expected {})  {}",
            rep.loewy_length,
            rep.expected_length,
            if rep.passed { "rigid" } else { "FAILED" }
        );
    }
    Ok(())
}
