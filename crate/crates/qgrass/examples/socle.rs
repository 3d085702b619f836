//! Certified socles: the span of minimal-energy monomials decomposes into
//! simple cyclic modules indexed by the grade tuples, and nothing simple
//! lives outside it.
//!
//! Run with: `cargo run --example socle`

use qgrass::structure::socle_certify_piece;
use qgrass::superindex::Shape;

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(3, 2, 3, 2)?;
    println!("socles of the graded pieces of (3|2), ell = 3, r = 2:");
    for s in 1..=shape.top_degree() {
        let (socle, cert) = socle_certify_piece(&shape, s)?;
        let summands: Vec<String> = cert
            .summands
            .iter()
            .map(|sm| {
                let k: Vec<String> = sm.kappa.0.iter().map(|x| x.to_string()).collect();
                format!("V({}) dim {}", k.join(""), sm.dim)
            })
            .collect();
        println!(
            "  s = {s:>2}: grade {} socle dim {:>3} = {}  [{}]",
            cert.grade,
            socle.dim(),
            summands.join(" + "),
            if cert.passed { "certified" } else { "FAILED" },
        );
    }
    Ok(())
}
