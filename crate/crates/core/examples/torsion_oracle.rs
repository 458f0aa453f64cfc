//! Build an explicit basis of `E[ℓ]` and read the factor pattern off the Frobenius matrix.
//!
//! ```text
//! cargo run --example torsion_oracle -- 37 2 9 5
//! ```
//! Arguments: `p a b ℓ`.

use psipattern::curve::Curve;
use psipattern::ff::make_prime_field;
use psipattern::frobclass::classify;
use psipattern::oracle::run_oracle;

fn main() -> psipattern::error::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let &[p, a, b, ell] = args.as_slice() else {
        return run(17, 3, 6, 5);
    };
    run(p as u64, a, b, ell as u64)
}

fn run(p: u64, a: i64, b: i64, ell: u64) -> psipattern::error::Result<()> {
    let c = Curve::from_ints(&make_prime_field(p)?, a, b)?;
    let o = run_oracle(&c, ell, 0)?;
    println!("{c}, l = {ell}");
    println!("E[l] is rational over the degree {} extension", o.splitting_degree);
    println!("P = {}", o.basis.first);
    println!("Q = {}", o.basis.second);
    let m = o.matrix.entries;
    println!("Frobenius  [[{}, {}], [{}, {}]]  trace {} det {}", m[0][0], m[0][1], m[1][0], m[1][1], o.matrix.trace(), o.matrix.det());
    println!("form {:?}", o.form);
    let class = classify(&c, ell)?;
    println!("{class}  agrees={}", o.form.agrees_with(&class));
    println!("orbit pattern {}", o.pattern);
    Ok(())
}
