//! Prime fields, extensions and the lexicographic defining polynomials.
//!
//! ```text
//! cargo run --example field_arithmetic
//! ```

use psipattern::ff::{make_extension, make_prime_field};

fn main() -> psipattern::error::Result<()> {
    let f17 = make_prime_field(17)?;
    let a = f17.from_int(5);
    let b = f17.from_int(-3);
    println!("{f17}: 5 * -3 = {}", a.try_mul(&b)?);
    println!("{f17}: 5^-1 = {}, order of 3 = {}", a.inv()?, f17.from_int(3).multiplicative_order()?);

    let f25 = make_extension(&make_prime_field(5)?, 2)?;
    println!("{f25}, {} elements", f25.cardinality());
    let g = f25.generator().unwrap();
    println!("generator {g} has order {}", g.multiplicative_order()?);
    let s = g.square();
    println!("sqrt({s}) = {}", s.sqrt().unwrap());
    println!("frobenius({g}) = {}", g.frobenius());

    for p in [4, 9, 3] {
        match make_prime_field(p) {
            Ok(f) => println!("p={p}: {f}"),
            Err(e) => println!("p={p}: {e}"),
        }
    }
    Ok(())
}
