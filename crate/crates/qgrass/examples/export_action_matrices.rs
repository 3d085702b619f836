//! Coordinate-triplet JSON export of the generator matrices on one graded
//! piece, for verification by external tools. Entries are exact scalar
//! strings, never floats.
//!
//! Run with: `cargo run --example export_action_matrices`

use qgrass::omega::{action_matrices, GradedPiece};
use qgrass::superindex::Shape;
use serde_json::json;

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(2, 1, 3, 1)?;
    let piece = GradedPiece::new(shape, 2);
    let am = action_matrices(&piece);
    let doc = json!({
        "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
        "s": piece.s,
        "basis": piece.basis,
        "e": am.e.iter().map(|m| m.to_coordinate_json()).collect::<Vec<_>>(),
        "f": am.f.iter().map(|m| m.to_coordinate_json()).collect::<Vec<_>>(),
        "k": am.k.iter().map(|m| m.to_coordinate_json()).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(())
}
