//! The curve `y² = x³ + 3x + 6` over `F_17` with `ℓ = 5`, end to end.
//!
//! ```text
//! cargo run --example worked_example
//! ```

use psipattern::curve::Curve;
use psipattern::ff::make_prime_field;
use psipattern::pattern::verify;

fn main() -> psipattern::error::Result<()> {
    let c = Curve::from_ints(&make_prime_field(17)?, 3, 6)?;
    let v = verify(&c, 5, 0)?;
    println!("{c}");
    println!("#E = {}, t = {}", v.order.points, v.order.trace);
    println!("{}", v.class);
    let pred = v.prediction.prediction().expect("in scope");
    println!("raw entries {:?}", pred.predicted.raw);
    println!("predicted   {}", pred.predicted.pattern);
    println!("empirical   {}", v.empirical);
    println!("match       {:?}", v.matches());
    assert_eq!(v.matches(), Some(true));
    Ok(())
}
