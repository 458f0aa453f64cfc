//! Dense univariate polynomials over a [`Field`] and their factorization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{embed, Field, FieldElement, Value};

mod factor;

pub use factor::{
    factor, factor_with_rng, find_irreducible, is_irreducible, pattern_of, roots_in_field,
    FactorPattern, Factorization,
};

/// Coefficient-vector kernels shared with extension-field arithmetic.
/// Vectors are constant term first and kept trimmed (no trailing zeros).
pub(crate) mod dense {
    use super::{Field, Value};

    pub fn trim(f: &Field, v: &mut Vec<Value>) {
        while v.last().is_some_and(|c| f.is_zero_v(c)) {
            v.pop();
        }
    }

    pub fn add(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o = f.add_v(o, s);
        }
        trim(f, &mut out);
        out
    }

    pub fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        let n = a.len().max(b.len());
        let zero = f.zero_v();
        let mut out: Vec<Value> = (0..n)
            .map(|i| f.sub_v(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        trim(f, &mut out);
        out
    }

    pub fn scale(f: &Field, a: &[Value], c: &Value) -> Vec<Value> {
        let mut out: Vec<Value> = a.iter().map(|x| f.mul_v(x, c)).collect();
        trim(f, &mut out);
        out
    }

    pub fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero_v(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero_v(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = f.mul_v(x, y);
                out[i + j] = f.add_v(&out[i + j], &t);
            }
        }
        trim(f, &mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero and trimmed.
    pub fn divrem(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let lead_inv = f.inv_v(&b[db]).expect("divisor is nonzero");
        let mut r = a.to_vec();
        let mut q = vec![f.zero_v(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul_v(&r[k + db], &lead_inv);
            if f.is_zero_v(&c) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = f.mul_v(&c, bj);
                r[k + j] = f.sub_v(&r[k + j], &t);
            }
            q[k] = c;
        }
        r.truncate(db);
        trim(f, &mut r);
        trim(f, &mut q);
        (q, r)
    }

    /// Remainder only, reusing the buffer.
    pub fn rem(f: &Field, mut r: Vec<Value>, m: &[Value], lead_inv: &Value) -> Vec<Value> {
        let dm = m.len() - 1;
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = f.mul_v(&r[k + dm], lead_inv);
            if !f.is_zero_v(&c) {
                for (j, mj) in m.iter().enumerate() {
                    let t = f.mul_v(&c, mj);
                    r[k + j] = f.sub_v(&r[k + j], &t);
                }
            }
            r.pop();
        }
        trim(f, &mut r);
        r
    }
}

/// A polynomial over a finite field, coefficients stored from the constant
/// term upward with no trailing zeros. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Value>,
}

impl Polynomial {
    pub(crate) fn from_values(field: Field, mut coeffs: Vec<Value>) -> Self {
        dense::trim(&field, &mut coeffs);
        Polynomial { field, coeffs }
    }

    pub(crate) fn values(&self) -> &[Value] {
        &self.coeffs
    }

    pub(crate) fn into_values(self) -> Vec<Value> {
        self.coeffs
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_values(field.clone(), vec![field.one_v()])
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::from_values(field.clone(), vec![field.zero_v(), field.one_v()])
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_values(c.field().clone(), vec![c.value().clone()])
    }

    /// `c · x^k`.
    pub fn monomial(c: &FieldElement, k: usize) -> Self {
        let f = c.field();
        let mut v = vec![f.zero_v(); k + 1];
        v[k] = c.value().clone();
        Self::from_values(f.clone(), v)
    }

    pub fn from_coefficients(field: &Field, coeffs: &[FieldElement]) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_values(field.clone(), coeffs.iter().map(|c| c.value().clone()).collect()))
    }

    /// Integer coefficients, constant term first, reduced into `field`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_values(field.clone(), coeffs.iter().map(|&c| field.int_v(c)).collect())
    }

    /// Uniform random polynomial of degree < `bound`.
    pub fn random<R: Rng + ?Sized>(field: &Field, bound: usize, rng: &mut R) -> Self {
        Self::from_values(
            field.clone(),
            (0..bound).map(|_| field.random_element(rng).into_value()).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one_v(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one_v(c))
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        self.field.wrap(self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero_v()))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|c| self.field.wrap(c.clone())).collect()
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|c| self.field.wrap(c.clone()))
    }

    /// Scalar multiple making the polynomial monic; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv_v(lc).expect("leading coefficient is nonzero");
                self.scale_v(&inv)
            }
        }
    }

    fn scale_v(&self, c: &Value) -> Self {
        Polynomial { field: self.field.clone(), coeffs: dense::scale(&self.field, &self.coeffs, c) }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(c.field() == &self.field, "scalar from a different field");
        self.scale_v(c.value())
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        assert!(at.field() == &self.field, "evaluation point from a different field");
        let f = &self.field;
        let mut acc = f.zero_v();
        for c in self.coeffs.iter().rev() {
            acc = f.add_v(&f.mul_v(&acc, at.value()), c);
        }
        f.wrap(acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul_v(c, &f.int_v((i as u64 % f.characteristic()) as i64)))
            .collect();
        Self::from_values(f.clone(), coeffs)
    }

    fn check_same(&self, other: &Self) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = dense::divrem(&self.field, &self.coeffs, &divisor.coeffs);
        Ok((
            Polynomial { field: self.field.clone(), coeffs: q },
            Polynomial { field: self.field.clone(), coeffs: r },
        ))
    }

    pub fn rem(&self, m: &Self) -> Result<Self> {
        self.check_same(m);
        let lc = m.coeffs.last().ok_or(Error::DivisionByZero)?;
        let inv = self.field.inv_v(lc).expect("nonzero");
        Ok(Polynomial {
            field: self.field.clone(),
            coeffs: dense::rem(&self.field, self.coeffs.clone(), &m.coeffs, &inv),
        })
    }

    /// Exact quotient; errors on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let f = &self.field;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            let inv = f.inv_v(b.last().unwrap()).unwrap();
            let r = dense::rem(f, a, &b, &inv);
            a = std::mem::replace(&mut b, r);
        }
        Ok(Polynomial { field: f.clone(), coeffs: a }.monic())
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        self.check_same(m);
        match m.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::ConstantPolynomial("powmod modulus")),
        }
        let f = &self.field;
        let inv = f.inv_v(m.coeffs.last().unwrap()).unwrap();
        let base = dense::rem(f, self.coeffs.clone(), &m.coeffs, &inv);
        let mut acc = vec![f.one_v()];
        for i in (0..e.bits()).rev() {
            acc = dense::rem(f, dense::mul(f, &acc, &acc), &m.coeffs, &inv);
            if e.bit(i) {
                acc = dense::rem(f, dense::mul(f, &acc, &base), &m.coeffs, &inv);
            }
        }
        dense::trim(f, &mut acc);
        Ok(Polynomial { field: f.clone(), coeffs: acc })
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Result<Self> {
        self.powmod(&BigUint::from(e), m)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        (self * other).rem(m)
    }

    /// Image of the polynomial under coefficient-wise embedding into `target`.
    pub fn base_change(&self, target: &Field) -> Result<Self> {
        let coeffs = self
            .coefficients()
            .iter()
            .map(|c| embed(c, target).map(FieldElement::into_value))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_values(target.clone(), coeffs))
    }

    /// Coefficients as nested JSON values, constant term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Value::to_json).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero_v(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one = self.field.is_one_v(c);
            match (i, one) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self}) over {:?}", self.field)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.check_same(rhs);
        Polynomial { field: self.field.clone(), coeffs: dense::add(&self.field, &self.coeffs, &rhs.coeffs) }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.check_same(rhs);
        Polynomial { field: self.field.clone(), coeffs: dense::sub(&self.field, &self.coeffs, &rhs.coeffs) }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.check_same(rhs);
        Polynomial { field: self.field.clone(), coeffs: dense::mul(&self.field, &self.coeffs, &rhs.coeffs) }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg_v(c)).collect(),
        }
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Self) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_prime_field;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        make_prime_field(5).unwrap()
    }

    #[test]
    fn small_products_and_division() {
        let k = f5();
        let a = Polynomial::from_ints(&k, &[1, 1]);
        let b = Polynomial::from_ints(&k, &[4, 1]);
        let prod = &a * &b;
        assert_eq!(prod, Polynomial::from_ints(&k, &[4, 0, 1]));
        let (q, r) = prod.divrem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(&a * &Polynomial::one(&k), a);
        assert_eq!(a.divrem(&Polynomial::zero(&k)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_cases() {
        let k = f5();
        let a = Polynomial::from_ints(&k, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&k, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), Polynomial::from_ints(&k, &[4, 1]));
        let c = Polynomial::from_ints(&k, &[2, 0, 3]);
        assert_eq!(c.gcd(&Polynomial::zero(&k)).unwrap(), c.monic());
        assert_eq!(Polynomial::zero(&k).gcd(&Polynomial::zero(&k)).unwrap_err(), Error::GcdOfZeros);
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let k = f5();
        let m = Polynomial::from_ints(&k, &[1, 0, 1]);
        let x = Polynomial::x(&k);
        let mut naive = Polynomial::one(&k);
        for e in 0..12u64 {
            assert_eq!(x.powmod_u64(e, &m).unwrap(), naive, "exponent {e}");
            naive = naive.mul_mod(&x, &m).unwrap();
        }
        assert_eq!(x.powmod_u64(1, &m).unwrap(), x);
        assert!(Polynomial::from_ints(&k, &[3, 2]).powmod_u64(0, &m).unwrap().is_one());
        assert!(x.powmod_u64(3, &Polynomial::one(&k)).is_err());
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let k = f5();
        let f = Polynomial::from_ints(&k, &[1, 0, 0, 0, 0, 2]);
        assert!(f.derivative().is_zero());
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..7, 1..6)
    }

    proptest! {
        #[test]
        fn gcd_divides_both(f in small_poly(), g in small_poly(), h in small_poly()) {
            let k = make_prime_field(7).unwrap();
            let (f, g, h) = (Polynomial::from_ints(&k, &f), Polynomial::from_ints(&k, &g), Polynomial::from_ints(&k, &h));
            prop_assume!(!f.is_zero() && !(g.is_zero() && h.is_zero()));
            let d = (&f * &g).gcd(&(&f * &h)).unwrap();
            prop_assert!(d.divrem(&f.monic()).unwrap().1.is_zero());
        }

        #[test]
        fn division_identity(a in small_poly(), b in small_poly()) {
            let k = make_prime_field(7).unwrap();
            let (a, b) = (Polynomial::from_ints(&k, &a), Polynomial::from_ints(&k, &b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }

    #[test]
    fn base_change_preserves_products() {
        let k = make_prime_field(11).unwrap();
        let e = crate::ff::make_extension(&k, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Polynomial::random(&k, 4, &mut rng);
        let b = Polynomial::random(&k, 3, &mut rng);
        let lhs = (&a * &b).base_change(&e).unwrap();
        let rhs = &a.base_change(&e).unwrap() * &b.base_change(&e).unwrap();
        assert_eq!(lhs, rhs);
    }
}
