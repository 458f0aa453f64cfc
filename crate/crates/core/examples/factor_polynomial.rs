//! Factor a polynomial over a finite field and print its pattern.
//!
//! ```text
//! cargo run --example factor_polynomial -- 31 1 0 0 0 0 1
//! ```
//! Arguments: the prime `p`, then coefficients with the constant term first.

use psipattern::ff::make_prime_field;
use psipattern::poly::{factor, is_irreducible, pattern_of, Polynomial};

fn main() -> psipattern::error::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (p, coeffs) = match args.split_first() {
        Some((p, c)) if !c.is_empty() => (*p as u64, c.to_vec()),
        _ => (31, vec![1, 0, 0, 0, 0, 1]),
    };
    let k = make_prime_field(p)?;
    let f = Polynomial::from_ints(&k, &coeffs);
    let fz = factor(&f, 0)?;
    println!("f = {f} over {k}");
    println!("leading {}", fz.leading);
    for (g, e) in &fz.factors {
        println!("  ({g})^{e}  irreducible={}", is_irreducible(g)?);
    }
    println!("pattern {}", pattern_of(&fz));
    assert_eq!(fz.expand(), f);
    Ok(())
}
