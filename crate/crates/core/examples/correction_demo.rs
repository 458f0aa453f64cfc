//! Where the corrected `i(x, y)` and the plain half-lcm rule disagree.
//!
//! ```text
//! cargo run --example correction_demo
//! ```

use psipattern::curve::Curve;
use psipattern::ff::make_prime_field;
use psipattern::pattern::{i_func, i_func_uncorrected, v2, verify};

fn main() -> psipattern::error::Result<()> {
    println!("{:>3} {:>3} {:>6} {:>6}", "x", "y", "i", "naive");
    for x in (2..=12).step_by(2) {
        for y in (x..=12).step_by(2) {
            let (i, u) = (i_func(x, y), i_func_uncorrected(x, y));
            if i != u {
                println!("{x:>3} {y:>3} {i:>6} {u:>6}   v2 = {} vs {}", v2(x), v2(y));
            }
        }
    }

    let c = Curve::from_ints(&make_prime_field(17)?, 3, 6)?;
    let v = verify(&c, 5, 0)?;
    let pred = v.prediction.prediction().expect("in scope");
    if let Some(u) = &pred.uncorrected {
        println!("naive rule  raw {:?} -> {}", u.raw, u.pattern);
    }
    println!("corrected   raw {:?} -> {}", pred.predicted.raw, pred.predicted.pattern);
    println!("factoring   {}", v.empirical);
    Ok(())
}
