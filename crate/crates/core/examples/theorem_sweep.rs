//! Check predicted against factored patterns for every curve over a range of primes.
//!
//! ```text
//! cargo run --release --example theorem_sweep -- 43 3,5,7
//! ```

use std::collections::BTreeMap;

use rayon::prelude::*;

use psipattern::curve::Curve;
use psipattern::ff::{is_prime, make_prime_field};
use psipattern::pattern::verify;

fn main() {
    let mut args = std::env::args().skip(1);
    let p_max: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(31);
    let ells: Vec<u64> = args.next().map(|s| s.split(',').map(|t| t.parse().unwrap()).collect()).unwrap_or(vec![3, 5]);

    let mut jobs = Vec::new();
    for p in (5..=p_max).filter(|&p| is_prime(p)) {
        for &ell in ells.iter().filter(|&&l| l != p) {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    jobs.push((p, a, b, ell));
                }
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .filter_map(|&(p, a, b, ell)| {
            let c = Curve::from_ints(&make_prime_field(p).unwrap(), a, b).ok()?;
            let v = verify(&c, ell, 0).unwrap();
            Some(((p, a, b, ell), v.class.kind.name(), v.matches()))
        })
        .collect();

    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for (inst, name, m) in &results {
        let row = tally.entry(name).or_default();
        match m {
            Some(true) => row[0] += 1,
            Some(false) => {
                row[1] += 1;
                println!("mismatch {inst:?}");
            }
            None => row[2] += 1,
        }
    }
    println!("{:<18} {:>8} {:>8} {:>8}", "class", "match", "mismatch", "deferred");
    for (name, [ok, bad, out]) in tally {
        println!("{name:<18} {ok:>8} {bad:>8} {out:>8}");
    }
}
