//! Acyclicity of the untruncated complex at nonzero super-weights, computed
//! through finite blocks of a large enough truncation.
//!
//! Run with: `cargo run --example poincare`

use qgrass::derham::{poincare_check, SuperWeight};

fn main() -> qgrass::Result<()> {
    let weights = [
        SuperWeight { even: vec![1, 0], odd: vec![0] },
        SuperWeight { even: vec![2, 2], odd: vec![1] },
        SuperWeight { even: vec![7, 3], odd: vec![1] },
        SuperWeight { even: vec![0, 5], odd: vec![0] },
    ];
    for lambda in &weights {
        let rep = poincare_check(2, 1, 3, lambda)?;
        let dims: Vec<String> = rep.degrees.iter().map(|d| d.dim.to_string()).collect();
        let ranks: Vec<String> = rep.degrees.iter().map(|d| d.rank.to_string()).collect();
        println!(
            "weight ({:?};{:?}) with box r = {}: dims [{}], ranks [{}] -> {}",
            lambda.even,
            lambda.odd,
            rep.r_used,
            dims.join(", "),
            ranks.join(", "),
            if rep.exact { "acyclic" } else { "NOT exact" },
        );
    }
    Ok(())
}
