//! q-combinatorics at a root of unity: q-integers, Gaussian binomials, the
//! two-term recurrence and the base-ℓ digit factorizations.
//!
//! Run with: `cargo run --example identities`

use qgrass::scalars::{
    char_q, pascal_check, q_binom, q_factorial, q_int, q_lucas_check, q_lucas_column_check,
    RootSpec,
};

fn main() -> qgrass::Result<()> {
    for (ell, order) in [(3, 3), (3, 6), (5, 5), (5, 10)] {
        let spec = RootSpec::new(ell, order)?;
        println!("spec: ell = {ell}, order of q = {order}");
        println!("  char(q) recomputed from the field: {}", char_q(spec));
        println!("  [2]  = {}", q_int(2, spec));
        println!("  [{ell}]  = {} (vanishes)", q_int(ell as i64, spec));
        println!("  [4]! = {}", q_factorial(4, spec));
        println!("  [6 ; 3] = {}", q_binom(6, 3, spec));

        let mut pascal = true;
        let mut digits = true;
        let mut column = true;
        for s in 0..=30u64 {
            for r in 0..=s {
                digits &= q_lucas_check(s, r, spec);
                if r >= 1 {
                    pascal &= pascal_check(s as i64, r as i64, spec);
                }
            }
            column &= q_lucas_column_check(s, spec);
        }
        println!("  recurrence up to 30:          {}", if pascal { "ok" } else { "FAILED" });
        println!("  digit factorization up to 30: {}", if digits { "ok" } else { "FAILED" });
        println!("  column factorization:         {}", if column { "ok" } else { "FAILED" });
        println!();
    }
    Ok(())
}
