//! Squarefree, distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::ff::{prime_divisors, Field, FieldElement};

/// `k · Π P_i^{e_i}` with monic irreducible, pairwise distinct `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(&self.leading);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * p;
            }
        }
        acc
    }
}

/// Multiset of `(degree, count)` pairs, sorted by degree with distinct degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct FactorPattern(Vec<(usize, usize)>);

impl FactorPattern {
    /// Canonical form of an arbitrary entry list: equal degrees are merged by
    /// summing counts, zero counts dropped, result sorted ascending.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize)>>(entries: I) -> Self {
        let mut v: Vec<(usize, usize)> = Vec::new();
        for (d, c) in entries {
            if c == 0 {
                continue;
            }
            match v.iter_mut().find(|(e, _)| *e == d) {
                Some(slot) => slot.1 += c,
                None => v.push((d, c)),
            }
        }
        v.sort_unstable();
        FactorPattern(v)
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// `Σ degree · count`.
    pub fn degree_sum(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }

    pub fn factor_count(&self) -> usize {
        self.0.iter().map(|(_, c)| c).sum()
    }
}

impl From<Vec<(usize, usize)>> for FactorPattern {
    fn from(v: Vec<(usize, usize)>) -> Self {
        FactorPattern::from_entries(v)
    }
}

impl From<FactorPattern> for Vec<(usize, usize)> {
    fn from(p: FactorPattern) -> Self {
        p.0
    }
}

/// Writes a list of pairs as `((a,b),(c,d))`.
pub(crate) fn write_pairs(f: &mut fmt::Formatter<'_>, pairs: &[(usize, usize)]) -> fmt::Result {
    write!(f, "(")?;
    for (i, (d, c)) in pairs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "({d},{c})")?;
    }
    write!(f, ")")
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, &self.0)
    }
}

/// Factor counts grouped by degree, with multiplicity.
pub fn pattern_of(fz: &Factorization) -> FactorPattern {
    FactorPattern::from_entries(
        fz.factors.iter().map(|(p, e)| (p.degree().unwrap_or(0), *e)),
    )
}

/// `h^q mod m` where `q` is the cardinality of the coefficient field.
fn frobenius_step(h: &Polynomial, m: &Polynomial) -> Result<Polynomial> {
    h.powmod(h.field().cardinality(), m)
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^{q^n} ≡ x (mod f)` and
/// `gcd(x^{q^{n/r}} - x, f) = 1` for each prime `r | n`.
pub fn is_irreducible(f: &Polynomial) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial("irreducibility test")),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let m = f.monic();
    let x = Polynomial::x(f.field());
    let mut powers = Vec::with_capacity(n);
    let mut h = x.clone();
    for _ in 0..n {
        h = frobenius_step(&h, &m)?;
        powers.push(h.clone());
    }
    if powers[n - 1] != x {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let k = n / r as usize;
        if !(&powers[k - 1] - &x).gcd(&m)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monic irreducible polynomial of the given degree, scanning integers
/// `k = 0, 1, 2, …` whose base-`q` digits give the coefficients `c_0, c_1, …`
/// (constant coefficient least significant) below the leading 1.
pub fn find_irreducible(field: &Field, degree: usize) -> Result<Polynomial> {
    if degree == 0 {
        return Err(Error::ConstantPolynomial("find_irreducible"));
    }
    let q = field
        .cardinality_u64()
        .ok_or_else(|| Error::FieldTooLarge { cardinality: field.cardinality().to_string(), bound: u64::MAX })?;
    for k in 0u64.. {
        let mut rest = k;
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(field.element(rest % q));
            rest /= q;
        }
        if rest > 0 {
            break;
        }
        coeffs.push(field.one());
        let f = Polynomial::from_coefficients(field, &coeffs)?;
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {degree} over {field}")))
}

/// Complete factorization with a seeded equal-degree splitter.
pub fn factor(f: &Polynomial, seed: u64) -> Result<Factorization> {
    factor_with_rng(f, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn factor_with_rng<R: Rng + ?Sized>(f: &Polynomial, rng: &mut R) -> Result<Factorization> {
    match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial("factor")),
        Some(_) => {}
    }
    let leading = f.leading_coefficient().expect("nonzero");
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&f.monic())? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.values().cmp(b.values())));
    Ok(Factorization { leading, factors })
}

/// Coefficient-wise `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .values()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root_v(c))
        .collect();
    Polynomial::from_values(field.clone(), coeffs)
}

/// Monic squarefree parts with their multiplicities.
fn squarefree(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let p = f.field().characteristic() as usize;
    let fp = f.derivative();
    let mut out = Vec::new();
    if fp.is_zero() {
        for (g, m) in squarefree(&pth_root(f))? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&fp)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y)?;
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let x = Polynomial::x(f.field());
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(n) = rest.degree().filter(|&n| n > 0) {
        d += 1;
        if 2 * d > n {
            out.push((rest, n));
            break;
        }
        h = frobenius_step(&h, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree<R: Rng + ?Sized>(f: &Polynomial, d: usize, rng: &mut R) -> Result<Vec<Polynomial>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let e: BigUint = (field.cardinality().pow(d as u32) - 1u32) >> 1;
    let one = Polynomial::one(field);
    let cap = 64 * n;
    let mut attempts = 0;
    let mut stack = vec![f.clone()];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap_or(0);
        if dg == d {
            out.push(g);
            continue;
        }
        loop {
            attempts += 1;
            if attempts > cap {
                return Err(Error::Internal(format!(
                    "equal-degree splitting of {g} (d = {d}) failed after {cap} attempts"
                )));
            }
            let a = Polynomial::random(field, dg, rng);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut split = a.gcd(&g)?;
            if split.is_one() {
                split = (&a.powmod(&e, &g)? - &one).gcd(&g)?;
            }
            let ds = split.degree().unwrap_or(0);
            if ds > 0 && ds < dg {
                stack.push(g.exact_div(&split)?);
                stack.push(split);
                break;
            }
        }
    }
    Ok(out)
}

/// Distinct roots lying in the coefficient field, in canonical order.
pub fn roots_in_field(f: &Polynomial, seed: u64) -> Result<Vec<FieldElement>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial("root finding"));
    }
    let m = f.monic();
    let x = Polynomial::x(f.field());
    let xq = frobenius_step(&x.rem(&m)?, &m)?;
    let linear = (&xq - &x).gcd(&m)?;
    if linear.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<FieldElement> = equal_degree(&linear, 1, &mut rng)?
        .into_iter()
        .map(|g| -g.coefficient(0))
        .collect();
    roots.sort_by(|a, b| a.value().cmp(b.value()));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_extension, make_prime_field};
    use proptest::prelude::*;

    fn f5() -> Field {
        make_prime_field(5).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let k = f5();
        assert!(!is_irreducible(&Polynomial::from_ints(&k, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&Polynomial::from_ints(&k, &[2, 0, 1])).unwrap());
        for c in 0..5 {
            assert!(is_irreducible(&Polynomial::from_ints(&k, &[c, 1])).unwrap());
        }
        assert!(is_irreducible(&Polynomial::one(&k)).is_err());
        // (x^2 + 2)^2 has no roots but is reducible
        let sq = Polynomial::from_ints(&k, &[2, 0, 1]);
        assert!(!is_irreducible(&(&sq * &sq)).unwrap());
    }

    #[test]
    fn x2_plus_2_has_no_root_exhaustively() {
        let k = f5();
        let f = Polynomial::from_ints(&k, &[2, 0, 1]);
        assert!(k.elements(5).unwrap().all(|x| !f.eval(&x).is_zero()));
    }

    #[test]
    fn find_irreducible_scans_in_order() {
        let k = f5();
        assert_eq!(find_irreducible(&k, 2).unwrap(), Polynomial::from_ints(&k, &[2, 0, 1]));
        let k17 = make_prime_field(17).unwrap();
        assert_eq!(find_irreducible(&k17, 2).unwrap(), Polynomial::from_ints(&k17, &[3, 0, 1]));
        assert_eq!(find_irreducible(&k, 1).unwrap(), Polynomial::from_ints(&k, &[0, 1]));
    }

    #[test]
    fn factor_small_examples() {
        let k = f5();
        let fz = factor(&Polynomial::from_ints(&k, &[4, 0, 1]), 0).unwrap();
        assert!(fz.leading.is_one());
        assert_eq!(
            fz.factors,
            vec![(Polynomial::from_ints(&k, &[1, 1]), 1), (Polynomial::from_ints(&k, &[4, 1]), 1)]
        );
        assert_eq!(pattern_of(&fz), FactorPattern::from_entries([(1, 2)]));

        let cube = Polynomial::from_ints(&k, &[1, 3, 3, 1]);
        let fz = factor(&cube, 0).unwrap();
        assert_eq!(fz.factors, vec![(Polynomial::from_ints(&k, &[1, 1]), 3)]);
        assert_eq!(pattern_of(&fz).entries(), &[(1, 3)]);
        assert!(factor(&Polynomial::from_ints(&k, &[3]), 0).is_err());
    }

    #[test]
    fn factor_handles_pth_powers() {
        let k = f5();
        // (x^2 + 2)^5 (x + 1)^2: derivative vanishes on the first factor
        let a = Polynomial::from_ints(&k, &[2, 0, 1]);
        let b = Polynomial::from_ints(&k, &[1, 1]);
        let mut f = &b * &b;
        for _ in 0..5 {
            f = &f * &a;
        }
        let f = f.scale(&k.from_int(3));
        let fz = factor(&f, 7).unwrap();
        assert_eq!(fz.expand(), f);
        assert_eq!(fz.factors, vec![(b, 2), (a, 5)]);
    }

    #[test]
    fn factor_over_extension_field() {
        let k = make_prime_field(7).unwrap();
        let e = make_extension(&k, 2).unwrap();
        // x^2 + 1 is irreducible over F_7 (7 ≡ 3 mod 4) but splits over F_49
        let f = Polynomial::from_ints(&k, &[1, 0, 1]);
        assert_eq!(pattern_of(&factor(&f, 0).unwrap()).entries(), &[(2, 1)]);
        let fe = f.base_change(&e).unwrap();
        let fz = factor(&fe, 0).unwrap();
        assert_eq!(pattern_of(&fz).entries(), &[(1, 2)]);
        assert_eq!(fz.expand(), fe);
        let roots = roots_in_field(&fe, 0).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| fe.eval(r).is_zero()));
    }

    #[test]
    fn roots_examples() {
        let k = f5();
        let roots = roots_in_field(&Polynomial::from_ints(&k, &[4, 0, 1]), 0).unwrap();
        assert_eq!(roots, vec![k.from_int(1), k.from_int(4)]);
        assert!(roots_in_field(&Polynomial::from_ints(&k, &[2, 0, 1]), 0).unwrap().is_empty());
    }

    #[test]
    fn iterated_frobenius_matches_direct_power() {
        let k = make_prime_field(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = &Polynomial::random(&k, 9, &mut rng) + &Polynomial::monomial(&k.one(), 9);
        let x = Polynomial::x(&k);
        let mut h = x.clone();
        for n in 1..5u32 {
            h = frobenius_step(&h, &f).unwrap();
            let direct = x.powmod(&BigUint::from(13u32).pow(n), &f).unwrap();
            assert_eq!(h, direct);
        }
    }

    #[test]
    fn pattern_canonicalization() {
        let p = FactorPattern::from_entries([(4, 2), (1, 1), (1, 1), (2, 1)]);
        assert_eq!(p.entries(), &[(1, 2), (2, 1), (4, 2)]);
        assert_eq!(p.degree_sum(), 12);
        assert_eq!(p.to_string(), "((1,2),(2,1),(4,2))");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[1,2],[2,1],[4,2]]");
        assert_eq!(serde_json::from_str::<FactorPattern>(&json).unwrap(), p);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn factor_round_trip(coeffs in prop::collection::vec(0i64..31, 2..14), seed in any::<u64>()) {
            let k = make_prime_field(31).unwrap();
            let f = Polynomial::from_ints(&k, &coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let fz = factor(&f, seed).unwrap();
            prop_assert_eq!(fz.expand(), f.clone());
            prop_assert_eq!(pattern_of(&fz).degree_sum(), f.degree().unwrap());
            for (g, _) in &fz.factors {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible(g).unwrap());
            }
        }

        #[test]
        fn pattern_is_order_insensitive(mut entries in prop::collection::vec((1usize..6, 1usize..4), 0..8)) {
            let a = FactorPattern::from_entries(entries.clone());
            entries.reverse();
            prop_assert_eq!(a, FactorPattern::from_entries(entries));
        }
    }
}
