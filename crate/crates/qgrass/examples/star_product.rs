//! Multiplication in the quantum Grassmann superalgebra: divided powers on
//! the even side, exterior variables on the odd side, and the q-twist in
//! between.
//!
//! Run with: `cargo run --example star_product`

use qgrass::omega::{act_generator, multiply, Gen, OmegaElement, ProductView};
use qgrass::superindex::{Shape, SuperTuple};

fn show(label: &str, v: &OmegaElement) {
    if v.is_zero() {
        println!("  {label} = 0");
        return;
    }
    let terms: Vec<String> = v
        .terms
        .iter()
        .map(|(t, c)| format!("({}) x^({:?};{:?})", c, t.alpha, t.mu))
        .collect();
    println!("  {label} = {}", terms.join(" + "));
}

fn main() -> qgrass::Result<()> {
    let shape = Shape::new(2, 2, 3, 2)?;
    let x1 = OmegaElement::monomial(shape, SuperTuple::new(vec![1, 0], vec![0, 0]));
    let x2 = OmegaElement::monomial(shape, SuperTuple::new(vec![0, 1], vec![0, 0]));
    let x3 = OmegaElement::monomial(shape, SuperTuple::new(vec![0, 0], vec![1, 0]));
    let x4 = OmegaElement::monomial(shape, SuperTuple::new(vec![0, 0], vec![0, 1]));

    println!("even divided powers pick up quantum binomials:");
    show("x1 * x1", &multiply(&x1, &x1, ProductView::Untruncated)?);
    show("x2 * x1", &multiply(&x2, &x1, ProductView::Untruncated)?);
    println!();
    println!("odd variables square to zero and q-anticommute:");
    show("x3 * x3", &multiply(&x3, &x3, ProductView::Untruncated)?);
    show("x4 * x3", &multiply(&x4, &x3, ProductView::Untruncated)?);
    show("x3 * x4", &multiply(&x3, &x4, ProductView::Untruncated)?);
    println!();
    println!("mixed products twist by a power of q:");
    show("x3 * x1", &multiply(&x3, &x1, ProductView::Untruncated)?);
    println!();
    println!("generator action on a monomial:");
    let v = OmegaElement::monomial(shape, SuperTuple::new(vec![2, 1], vec![0, 1]));
    show("v", &v);
    show("e1 . v", &act_generator(Gen::E(1), &v)?);
    show("f1 . v", &act_generator(Gen::F(1), &v)?);
    show("f2 . v", &act_generator(Gen::F(2), &v)?);
    show("K1 . v", &act_generator(Gen::K(1), &v)?);
    Ok(())
}
