//! Classify the Frobenius action on `E[ℓ]` for every curve over a small field.
//!
//! ```text
//! cargo run --example frobenius_classes -- 13 5
//! ```

use std::collections::BTreeMap;

use psipattern::curve::Curve;
use psipattern::ff::make_prime_field;
use psipattern::frobclass::classify;

fn main() -> psipattern::error::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(13);
    let ell = args.next().unwrap_or(5);
    let k = make_prime_field(p)?;
    let mut tally: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            let Ok(c) = Curve::from_ints(&k, a, b) else { continue };
            let fc = classify(&c, ell)?;
            tally.entry(fc.kind.name()).or_default().push(format!("({a},{b})"));
            if tally[fc.kind.name()].len() == 1 {
                println!("a={a} b={b}: {fc}");
            }
        }
    }
    for (name, curves) in &tally {
        println!("{name:<18} {}", curves.len());
    }
    Ok(())
}
