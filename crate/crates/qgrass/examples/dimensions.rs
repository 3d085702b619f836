//! Graded dimensions of the truncated quantum Grassmann superalgebra,
//! enumerated and compared against the alternating-sum formula.
//!
//! Run with: `cargo run --example dimensions`

use qgrass::omega::dim_formula;
use qgrass::superindex::{enumerate_graded, Shape};

fn main() -> qgrass::Result<()> {
    for (m, n, ell, r) in [(2, 1, 3, 1), (2, 1, 3, 2), (3, 2, 3, 2)] {
        let shape = Shape::new(m, n, ell, r)?;
        println!("shape ({m}|{n}), ell = {ell}, r = {r}: top degree {}", shape.top_degree());
        let mut total = 0usize;
        for s in 0..=shape.top_degree() {
            let enumerated = enumerate_graded(&shape, s).len();
            let formula = dim_formula(&shape, s);
            total += enumerated;
            println!(
                "  s = {s:>2}: dim = {enumerated:>4}   formula = {formula:>4}   {}",
                if formula.to_string() == enumerated.to_string() { "ok" } else { "MISMATCH" }
            );
        }
        let expected = (r * ell).pow(m as u32) * 2u64.pow(n as u32);
        println!("  total {total} (expected {expected})");
        println!();
    }
    Ok(())
}
