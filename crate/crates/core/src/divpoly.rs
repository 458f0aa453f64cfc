//! Division polynomials `ψ_n`, stored with `y` eliminated.
//!
//! Odd-index `ψ_n` are polynomials in `x`; even-index ones are `y · F_n(x)`.
//! Every `y²` produced by the recurrences is replaced by `x³ + ax + b`.

use std::collections::HashMap;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::ff::{is_prime, Field, FieldElement};
use crate::poly::{roots_in_field, Polynomial};

/// Largest torsion prime accepted by the command-line front end unless overridden.
pub const DEFAULT_ELL_CAP: u64 = 31;

/// `ψ_n` as `(parity, x-part)`: `ψ_n = f(x)` for odd `n`, `y · f(x)` for even `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPolynomial {
    pub index: usize,
    pub even: bool,
    pub xpart: Polynomial,
}

/// `y^e · g(x)` with `e ∈ {0, 1}`.
#[derive(Clone)]
struct YPoly {
    y: bool,
    x: Polynomial,
}

struct Recurrence<'c> {
    curve: &'c Curve,
    cubic: Polynomial,
    half: FieldElement,
    memo: HashMap<usize, YPoly>,
}

impl<'c> Recurrence<'c> {
    fn new(curve: &'c Curve) -> Self {
        let k = curve.field();
        let (a, b) = (curve.a(), curve.b());
        let cubic = Polynomial::from_coefficients(k, &[b.clone(), a.clone(), k.zero(), k.one()])
            .expect("coefficients share the curve field");
        let int = |n: i64| k.from_int(n);
        let a2 = a.square();
        let psi3 = Polynomial::from_coefficients(
            k,
            &[-&a2, &int(12) * b, &int(6) * a, k.zero(), int(3)],
        )
        .expect("same field");
        let psi4 = Polynomial::from_coefficients(
            k,
            &[
                &int(-32) * &b.square() - &int(4) * &a.pow(3),
                &int(-16) * &(a * b),
                &int(-20) * &a2,
                &int(80) * b,
                &int(20) * a,
                k.zero(),
                int(4),
            ],
        )
        .expect("same field");
        let mut memo = HashMap::new();
        memo.insert(0, YPoly { y: true, x: Polynomial::zero(k) });
        memo.insert(1, YPoly { y: false, x: Polynomial::one(k) });
        memo.insert(2, YPoly { y: true, x: Polynomial::constant(&int(2)) });
        memo.insert(3, YPoly { y: false, x: psi3 });
        memo.insert(4, YPoly { y: true, x: psi4 });
        Recurrence {
            curve,
            cubic,
            half: int(2).inv().expect("characteristic > 3"),
            memo,
        }
    }

    fn mul(&self, u: &YPoly, v: &YPoly) -> YPoly {
        let mut x = &u.x * &v.x;
        if u.y && v.y {
            x = &x * &self.cubic;
        }
        YPoly { y: u.y ^ v.y, x }
    }

    fn sub(&self, u: &YPoly, v: &YPoly) -> Result<YPoly> {
        if u.y != v.y && !u.x.is_zero() && !v.x.is_zero() {
            return Err(Error::Internal("parity mismatch in division polynomial recurrence".into()));
        }
        let y = if u.x.is_zero() { v.y } else { u.y };
        Ok(YPoly { y, x: &u.x - &v.x })
    }

    /// Exact division by `2y`; the numerator must be `y`-free and divisible by the cubic.
    fn div_2y(&self, u: &YPoly) -> Result<YPoly> {
        if u.y && !u.x.is_zero() {
            return Err(Error::Internal("odd y-power in numerator of the even recurrence".into()));
        }
        let (q, r) = u.x.divrem(&self.cubic)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "2y does not divide the even-index numerator over {}",
                self.curve.field()
            )));
        }
        Ok(YPoly { y: true, x: q.scale(&self.half) })
    }

    fn cube(&self, u: &YPoly) -> YPoly {
        self.mul(&self.mul(u, u), u)
    }

    fn get(&mut self, n: usize) -> Result<YPoly> {
        if let Some(v) = self.memo.get(&n) {
            return Ok(v.clone());
        }
        let m = n / 2;
        let value = if n % 2 == 1 {
            // ψ_{2m+1} = ψ_{m+2} ψ_m³ − ψ_{m−1} ψ_{m+1}³
            let (a, b, c, d) = (self.get(m + 2)?, self.get(m)?, self.get(m - 1)?, self.get(m + 1)?);
            let left = self.mul(&a, &self.cube(&b));
            let right = self.mul(&c, &self.cube(&d));
            self.sub(&left, &right)?
        } else {
            // 2y ψ_{2m} = ψ_m (ψ_{m+2} ψ_{m−1}² − ψ_{m−2} ψ_{m+1}²)
            let (pm, pm2, pm1, pmm2, pp1) =
                (self.get(m)?, self.get(m + 2)?, self.get(m - 1)?, self.get(m - 2)?, self.get(m + 1)?);
            let left = self.mul(&pm2, &self.mul(&pm1, &pm1));
            let right = self.mul(&pmm2, &self.mul(&pp1, &pp1));
            let inner = self.sub(&left, &right)?;
            self.div_2y(&self.mul(&pm, &inner))?
        };
        self.memo.insert(n, value.clone());
        Ok(value)
    }
}

/// Division polynomial `ψ_n` of the curve.
pub fn psi(c: &Curve, n: usize) -> Result<DivisionPolynomial> {
    let mut rec = Recurrence::new(c);
    let v = rec.get(n)?;
    Ok(DivisionPolynomial { index: n, even: n.is_multiple_of(2), xpart: v.x })
}

/// Checks that `ℓ` is an odd prime different from the characteristic `p`.
pub fn check_torsion_prime(ell: u64, p: u64) -> Result<()> {
    let reason = if ell.is_multiple_of(2) {
        "must be odd"
    } else if !is_prime(ell) {
        "must be prime"
    } else if ell == p {
        "must differ from the characteristic"
    } else {
        return Ok(());
    };
    Err(Error::InvalidEll { ell, reason: reason.into() })
}

/// Abscissas of nonzero `ℓ`-torsion points lying in `in_field`.
pub fn torsion_abscissas(c: &Curve, ell: u64, in_field: &Field, seed: u64) -> Result<Vec<FieldElement>> {
    check_torsion_prime(ell, c.field().characteristic())?;
    let dp = psi(c, ell as usize)?;
    roots_in_field(&dp.xpart.base_change(in_field)?, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Point;
    use crate::ff::{make_extension, make_prime_field};
    use crate::poly::{factor, pattern_of};

    fn example() -> Curve {
        Curve::from_ints(&make_prime_field(17).unwrap(), 3, 6).unwrap()
    }

    #[test]
    fn base_cases() {
        let c = example();
        assert!(psi(&c, 1).unwrap().xpart.is_one());
        assert!(psi(&c, 0).unwrap().xpart.is_zero());
        let k = c.field();
        let p3 = psi(&c, 3).unwrap();
        // 3x^4 + 18x^2 + 72x - 9 over F_17
        assert_eq!(p3.xpart, Polynomial::from_ints(k, &[-9, 72, 18, 0, 3]));
        assert!(!p3.even);
        assert!(psi(&c, 4).unwrap().even);
    }

    #[test]
    fn example_psi5_shape() {
        let p5 = psi(&example(), 5).unwrap();
        assert_eq!(p5.xpart.degree(), Some(12));
        assert_eq!(p5.xpart.leading_coefficient().unwrap().as_u64(), Some(5));
        let fz = factor(&p5.xpart, 0).unwrap();
        assert_eq!(pattern_of(&fz).entries(), &[(1, 2), (2, 1), (4, 2)]);
    }

    fn eval_at(d: &DivisionPolynomial, p: &Point) -> FieldElement {
        let (x, y) = (p.x().unwrap(), p.y().unwrap());
        let v = d.xpart.base_change(x.field()).unwrap().eval(x);
        if d.even { &v * y } else { v }
    }

    #[test]
    fn multiplication_formula_holds() {
        // x(nP) = x - ψ_{n-1} ψ_{n+1} / ψ_n², checked against the group law
        let k = make_prime_field(101).unwrap();
        let c = Curve::from_ints(&k, 7, 11).unwrap();
        let e = make_extension(&k, 3).unwrap();
        let table: Vec<_> = (0..=9).map(|n| psi(&c, n).unwrap()).collect();
        for seed in 0..4 {
            let p = c.random_point(&e, seed).unwrap();
            for n in 2..=8usize {
                let np = c.scalar_mul(n as i64, &p).unwrap();
                let num = &eval_at(&table[n - 1], &p) * &eval_at(&table[n + 1], &p);
                let den = eval_at(&table[n], &p).square();
                let expected = p.x().unwrap() - &num.try_div(&den).unwrap();
                assert_eq!(np.x().unwrap(), &expected, "n = {n}");
            }
        }
    }

    #[test]
    fn degree_and_leading_coefficient_law() {
        for (p, a, b) in [(101u64, 2i64, 3i64), (37, 5, 1), (97, 1, 13)] {
            let c = Curve::from_ints(&make_prime_field(p).unwrap(), a, b).unwrap();
            for ell in [3usize, 5, 7, 11, 13] {
                let d = psi(&c, ell).unwrap();
                assert_eq!(d.xpart.degree(), Some((ell * ell - 1) / 2));
                assert_eq!(d.xpart.leading_coefficient().unwrap().as_u64(), Some(ell as u64 % p));
            }
        }
    }

    fn lift(c: &Curve, x: &FieldElement) -> Option<Point> {
        c.rhs(x).unwrap().sqrt().map(|y| Point::Affine { x: x.clone(), y })
    }

    #[test]
    fn roots_of_psi_are_torsion_abscissas() {
        for (p, a, b, ell) in [(17u64, 3i64, 6i64, 3u64), (17, 3, 6, 5), (13, 1, 5, 3), (11, 2, 7, 5)] {
            let k = make_prime_field(p).unwrap();
            let c = Curve::from_ints(&k, a, b).unwrap();
            let fz = factor(&psi(&c, ell as usize).unwrap().xpart, 0).unwrap();
            let lcm = fz.factors.iter().map(|(g, _)| g.degree().unwrap()).fold(1, num_lcm);
            // every root lives in F_{q^lcm}, and its y lives at most one quadratic step up
            let e = make_extension(&k, 2 * lcm).unwrap();
            let roots = torsion_abscissas(&c, ell, &e, 1).unwrap();
            assert_eq!(roots.len(), ((ell * ell - 1) / 2) as usize);
            for r in roots {
                let pt = lift(&c, &r).expect("y lies in the doubled extension");
                assert!(c.scalar_mul(ell as i64, &pt).unwrap().is_infinity());
                for j in 1..ell as i64 {
                    assert!(!c.scalar_mul(j, &pt).unwrap().is_infinity());
                }
            }
        }
    }

    fn num_lcm(a: usize, b: usize) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        a / gcd(a, b) * b
    }

    #[test]
    fn abscissas_over_base_and_quadratic_extension() {
        let c = example();
        let k = c.field().clone();
        assert_eq!(torsion_abscissas(&c, 5, &k, 0).unwrap().len(), 2);
        let k2 = make_extension(&k, 2).unwrap();
        assert_eq!(torsion_abscissas(&c, 5, &k2, 0).unwrap().len(), 4);
        let k3 = make_extension(&k, 3).unwrap();
        // degree-2 and degree-4 factors contribute nothing over a cubic extension
        assert_eq!(torsion_abscissas(&c, 5, &k3, 0).unwrap().len(), 2);
    }

    #[test]
    fn torsion_prime_validation() {
        assert!(check_torsion_prime(5, 17).is_ok());
        assert!(check_torsion_prime(17, 17).is_err());
        assert!(check_torsion_prime(4, 17).is_err());
        assert!(check_torsion_prime(9, 17).is_err());
    }
}
