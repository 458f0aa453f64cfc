//! Division polynomials of a curve and the torsion abscissas they cut out.
//!
//! ```text
//! cargo run --example division_polynomials
//! ```

use psipattern::curve::Curve;
use psipattern::divpoly::{psi, torsion_abscissas};
use psipattern::ff::{make_extension, make_prime_field};

fn main() -> psipattern::error::Result<()> {
    let k = make_prime_field(17)?;
    let c = Curve::from_ints(&k, 3, 6)?;
    println!("{c}");
    for n in 1..=6 {
        let d = psi(&c, n)?;
        let y = if d.even { "y * " } else { "" };
        println!("psi_{n} = {y}({})", d.xpart);
    }

    let psi5 = psi(&c, 5)?.xpart;
    println!("deg psi_5 = {}", psi5.degree().unwrap());

    let k4 = make_extension(&k, 4)?;
    let xs = torsion_abscissas(&c, 5, &k4, 0)?;
    println!("{} abscissas of 5-torsion in {k4}", xs.len());
    for x in xs.iter().take(4) {
        println!("  x = {x}");
    }
    Ok(())
}
