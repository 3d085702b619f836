//! Generator matrices on a graded piece and the defining-relation verifier.
//!
//! Run with: `cargo run --example relations`

use qgrass::omega::{action_matrices, relations_check, GradedPiece};
use qgrass::superindex::Shape;

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(3, 2, 3, 2)?;
    let spec = shape.spec();
    println!("verifying the presentation on every graded piece of (3|2), r = 2");
    for s in 0..=shape.top_degree() {
        let piece = GradedPiece::new(shape, s);
        let am = action_matrices(&piece);
        let report = relations_check(&am, spec);
        let names: Vec<String> = report
            .checks
            .iter()
            .map(|c| format!("{}{}", c.name, if c.pass { "" } else { "!" }))
            .collect();
        println!(
            "  s = {s:>2} (dim {:>3}): {}  -> {}",
            report.dim,
            names.join(" "),
            if report.all_pass { "all hold" } else { "FAILURE" }
        );
    }
    Ok(())
}
