//! Finite fields `F_p` and towers of extensions `F_p ⊆ F_{p^m} ⊆ F_{p^{mn}} ⊆ …`.
//!
//! A [`Field`] is a cheap reference-counted descriptor. Elements of a prime
//! field are residues in `[0, p)`; elements of an extension of degree `m` over
//! its base are length-`m` coefficient vectors over the base, reduced modulo the
//! defining polynomial after every operation, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{self, dense, Polynomial};

/// Canonical representative of a field element, interpreted by its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Value {
    Prime(u64),
    Ext(Vec<Value>),
}

/// Descriptor of a finite field. Immutable and `Send + Sync`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    p: u64,
    degree: usize,
    absolute_degree: usize,
    base: Option<Field>,
    /// Monic defining polynomial over `base`, constant term first. Empty for prime fields.
    modulus: Vec<Value>,
    cardinality: BigUint,
    nonresidue: OnceLock<Value>,
}

fn smallest_divisor(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    None
}

/// True when `n` is prime. Trial division; the library only ever sees small primes.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && (n == 2 || smallest_divisor(n).is_none())
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidInput(format!("{p} is not a prime")));
    }
    if p.is_multiple_of(2) {
        return Err(Error::EvenModulus(p));
    }
    match smallest_divisor(p) {
        Some(d) if d != p => Err(Error::Composite { value: p, divisor: d }),
        _ => Ok(()),
    }
}

/// The prime field `F_p` used as the base of a curve; requires `p > 3`.
pub fn make_prime_field(p: u64) -> Result<Field> {
    if p <= 3 {
        return Err(Error::CharacteristicTooSmall(p));
    }
    make_odd_prime_field(p)
}

/// `F_p` for any odd prime, including 3. Used for the scalar field `F_ℓ` of the
/// torsion group, where `ℓ = 3` is legitimate.
pub fn make_odd_prime_field(p: u64) -> Result<Field> {
    check_odd_prime(p)?;
    if p >= 1 << 62 {
        return Err(Error::InvalidInput(format!("prime {p} exceeds the 62-bit limit")));
    }
    Ok(Field(Arc::new(FieldInner {
        p,
        degree: 1,
        absolute_degree: 1,
        base: None,
        modulus: Vec::new(),
        cardinality: BigUint::from(p),
        nonresidue: OnceLock::new(),
    })))
}

/// Degree-`n` extension of `base`. The modulus is the first monic irreducible
/// polynomial in the enumeration order of [`poly::find_irreducible`], so equal
/// inputs always give identical fields.
pub fn make_extension(base: &Field, n: usize) -> Result<Field> {
    if n < 2 {
        return Err(Error::ExtensionDegree(n));
    }
    let modulus = poly::find_irreducible(base, n)?;
    Ok(Field::extension_unchecked(base, modulus.into_values()))
}

/// Canonical inclusion of `x` into `target`, which must be `x`'s field or lie
/// above it in a recorded tower.
pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    Ok(FieldElement {
        value: target.embed_value(&x.field, &x.value)?,
        field: target.clone(),
    })
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.absolute_degree.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(F_{}^{})", self.0.p, self.0.absolute_degree)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "F_{}", self.0.p),
            Some(base) => {
                let m = Polynomial::from_values(base.clone(), self.0.modulus.clone());
                write!(f, "{}[t]/({})", base, m)
            }
        }
    }
}

impl Field {
    /// Extension of `base` by a caller-supplied monic irreducible modulus of degree >= 2.
    pub fn with_modulus(base: &Field, modulus: &Polynomial) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        let ok = match modulus.degree() {
            Some(d) if d >= 2 && modulus.is_monic() => poly::is_irreducible(modulus)?,
            _ => false,
        };
        if !ok {
            return Err(Error::BadModulus(modulus.to_string()));
        }
        Ok(Field::extension_unchecked(base, modulus.clone().into_values()))
    }

    pub(crate) fn extension_unchecked(base: &Field, modulus: Vec<Value>) -> Field {
        let degree = modulus.len() - 1;
        let absolute_degree = base.0.absolute_degree * degree;
        Field(Arc::new(FieldInner {
            p: base.0.p,
            degree,
            absolute_degree,
            base: Some(base.clone()),
            modulus,
            cardinality: base.0.cardinality.pow(degree as u32),
            nonresidue: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> usize {
        self.0.absolute_degree
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// Defining polynomial over the base, or `None` for a prime field.
    pub fn modulus(&self) -> Option<Polynomial> {
        self.0
            .base
            .as_ref()
            .map(|b| Polynomial::from_values(b.clone(), self.0.modulus.clone()))
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.0.cardinality
    }

    pub fn cardinality_u64(&self) -> Option<u64> {
        self.0.cardinality.to_u64()
    }

    /// True when `self` is `other` or lies above it in the tower.
    pub fn extends(&self, other: &Field) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == other {
                return true;
            }
            cur = f.base();
        }
        false
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(self.zero_v())
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(self.one_v())
    }

    /// Image of the integer `n` under `Z → F`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(self.int_v(n))
    }

    /// Class of the adjoined variable `t` in `base[t]/(g)`.
    pub fn generator(&self) -> Option<FieldElement> {
        let base = self.0.base.as_ref()?;
        let mut v = vec![base.zero_v(); self.0.degree];
        v[1] = base.one_v();
        Some(self.wrap(Value::Ext(v)))
    }

    /// Element with the given coefficient vector over the base field.
    pub fn from_coefficients(&self, coeffs: &[FieldElement]) -> Result<FieldElement> {
        let base = self
            .0
            .base
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("prime fields have no coefficient vectors".into()))?;
        if coeffs.len() > self.0.degree {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.0.degree
            )));
        }
        let mut v = vec![base.zero_v(); self.0.degree];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            if c.field() != base {
                return Err(Error::FieldMismatch);
            }
            *slot = c.value.clone();
        }
        Ok(self.wrap(Value::Ext(v)))
    }

    /// Element number `index` in the canonical enumeration (base-`|K|` digits of
    /// the coefficient vector, constant coefficient least significant).
    pub fn element(&self, index: u64) -> FieldElement {
        self.wrap(self.index_v(index))
    }

    /// All elements in canonical order. Errors when the field is too large to list.
    pub fn elements(&self, bound: u64) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.cardinality_u64().filter(|&q| q <= bound).ok_or_else(|| Error::FieldTooLarge {
            cardinality: self.0.cardinality.to_string(),
            bound,
        })?;
        Ok((0..q).map(move |i| self.element(i)))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.wrap(self.random_v(rng))
    }

    pub(crate) fn wrap(&self, value: Value) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }

    fn base_ref(&self) -> &Field {
        self.0.base.as_ref().expect("extension field has a base")
    }

    // ---- value-level arithmetic ----

    pub(crate) fn zero_v(&self) -> Value {
        match &self.0.base {
            None => Value::Prime(0),
            Some(b) => Value::Ext(vec![b.zero_v(); self.0.degree]),
        }
    }

    pub(crate) fn one_v(&self) -> Value {
        self.int_v(1)
    }

    pub(crate) fn int_v(&self, n: i64) -> Value {
        match &self.0.base {
            None => Value::Prime(n.rem_euclid(self.0.p as i64) as u64),
            Some(b) => {
                let mut v = vec![b.zero_v(); self.0.degree];
                v[0] = b.int_v(n);
                Value::Ext(v)
            }
        }
    }

    fn index_v(&self, mut index: u64) -> Value {
        match &self.0.base {
            None => Value::Prime(index % self.0.p),
            Some(b) => {
                let bq = b.cardinality_u64().unwrap_or(u64::MAX);
                let mut v = Vec::with_capacity(self.0.degree);
                for _ in 0..self.0.degree {
                    v.push(b.index_v(index % bq));
                    index /= bq;
                }
                Value::Ext(v)
            }
        }
    }

    fn random_v<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match &self.0.base {
            None => Value::Prime(rng.gen_range(0..self.0.p)),
            Some(b) => Value::Ext((0..self.0.degree).map(|_| b.random_v(rng)).collect()),
        }
    }

    pub(crate) fn is_zero_v(&self, v: &Value) -> bool {
        match v {
            Value::Prime(x) => *x == 0,
            Value::Ext(xs) => {
                let b = self.base_ref();
                xs.iter().all(|x| b.is_zero_v(x))
            }
        }
    }

    pub(crate) fn is_one_v(&self, v: &Value) -> bool {
        *v == self.one_v()
    }

    #[inline]
    fn mul_p(&self, x: u64, y: u64) -> u64 {
        let p = self.0.p;
        if p < 1 << 32 {
            x * y % p
        } else {
            ((x as u128 * y as u128) % p as u128) as u64
        }
    }

    pub(crate) fn add_v(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Prime(x), Value::Prime(y)) => {
                let s = x + y;
                Value::Prime(if s >= self.0.p { s - self.0.p } else { s })
            }
            (Value::Ext(xs), Value::Ext(ys)) => {
                let base = self.base_ref();
                Value::Ext(xs.iter().zip(ys).map(|(x, y)| base.add_v(x, y)).collect())
            }
            _ => unreachable!("value shape does not match field"),
        }
    }

    pub(crate) fn neg_v(&self, a: &Value) -> Value {
        match a {
            Value::Prime(x) => Value::Prime(if *x == 0 { 0 } else { self.0.p - x }),
            Value::Ext(xs) => {
                let base = self.base_ref();
                Value::Ext(xs.iter().map(|x| base.neg_v(x)).collect())
            }
        }
    }

    pub(crate) fn sub_v(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Prime(x), Value::Prime(y)) => {
                Value::Prime(if x >= y { x - y } else { x + self.0.p - y })
            }
            (Value::Ext(xs), Value::Ext(ys)) => {
                let base = self.base_ref();
                Value::Ext(xs.iter().zip(ys).map(|(x, y)| base.sub_v(x, y)).collect())
            }
            _ => unreachable!("value shape does not match field"),
        }
    }

    pub(crate) fn mul_v(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Prime(x), Value::Prime(y)) => Value::Prime(self.mul_p(*x, *y)),
            (Value::Ext(xs), Value::Ext(ys)) => {
                let base = self.base_ref();
                let m = self.0.degree;
                let mut prod = vec![base.zero_v(); 2 * m - 1];
                for (i, x) in xs.iter().enumerate() {
                    if base.is_zero_v(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        let t = base.mul_v(x, y);
                        prod[i + j] = base.add_v(&prod[i + j], &t);
                    }
                }
                let g = &self.0.modulus;
                for k in (m..2 * m - 1).rev() {
                    let c = std::mem::replace(&mut prod[k], base.zero_v());
                    if base.is_zero_v(&c) {
                        continue;
                    }
                    for j in 0..m {
                        let t = base.mul_v(&c, &g[j]);
                        prod[k - m + j] = base.sub_v(&prod[k - m + j], &t);
                    }
                }
                prod.truncate(m);
                Value::Ext(prod)
            }
            _ => unreachable!("value shape does not match field"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub(crate) fn inv_v(&self, a: &Value) -> Option<Value> {
        if self.is_zero_v(a) {
            return None;
        }
        match a {
            Value::Prime(x) => {
                // Extended Euclid on residues.
                let (mut r0, mut r1) = (self.0.p as i128, *x as i128);
                let (mut s0, mut s1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                Some(Value::Prime(s0.rem_euclid(self.0.p as i128) as u64))
            }
            Value::Ext(xs) => {
                let base = self.base_ref();
                let mut r0 = self.0.modulus.clone();
                let mut r1 = xs.clone();
                dense::trim(base, &mut r1);
                let mut s0: Vec<Value> = Vec::new();
                let mut s1 = vec![base.one_v()];
                while !r1.is_empty() {
                    let (q, r) = dense::divrem(base, &r0, &r1);
                    let s2 = dense::sub(base, &s0, &dense::mul(base, &q, &s1));
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                assert_eq!(r0.len(), 1, "field modulus is not irreducible");
                let c = base.inv_v(&r0[0])?;
                let mut out = dense::scale(base, &s0, &c);
                out.resize(self.0.degree, base.zero_v());
                Some(Value::Ext(out))
            }
        }
    }

    pub(crate) fn pow_v(&self, a: &Value, e: u64) -> Value {
        let mut acc = self.one_v();
        if e == 0 {
            return acc;
        }
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = self.mul_v(&acc, &acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul_v(&acc, a);
            }
        }
        acc
    }

    pub(crate) fn pow_big_v(&self, a: &Value, e: &BigUint) -> Value {
        let mut acc = self.one_v();
        for i in (0..e.bits()).rev() {
            acc = self.mul_v(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_v(&acc, a);
            }
        }
        acc
    }

    /// `a^(1/p)`: the inverse of absolute Frobenius.
    pub(crate) fn pth_root_v(&self, a: &Value) -> Value {
        if self.0.absolute_degree == 1 {
            return a.clone();
        }
        let e = BigUint::from(self.0.p).pow(self.0.absolute_degree as u32 - 1);
        self.pow_big_v(a, &e)
    }

    pub(crate) fn is_square_v(&self, a: &Value) -> bool {
        if self.is_zero_v(a) {
            return true;
        }
        let e = (&self.0.cardinality - 1u32) >> 1;
        self.is_one_v(&self.pow_big_v(a, &e))
    }

    fn nonresidue(&self) -> &Value {
        self.0.nonresidue.get_or_init(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            loop {
                let z = self.random_v(&mut rng);
                if !self.is_square_v(&z) {
                    return z;
                }
            }
        })
    }

    /// Tonelli–Shanks square root; `None` for non-squares.
    pub(crate) fn sqrt_v(&self, a: &Value) -> Option<Value> {
        if self.is_zero_v(a) {
            return Some(a.clone());
        }
        if !self.is_square_v(a) {
            return None;
        }
        let qm1 = &self.0.cardinality - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let r = &qm1 >> s;
        let mut m = s;
        let mut c = self.pow_big_v(self.nonresidue(), &r);
        let mut t = self.pow_big_v(a, &r);
        let mut root = self.pow_big_v(a, &((&r + 1u32) >> 1));
        while !self.is_one_v(&t) {
            let mut i = 0;
            let mut t2 = t.clone();
            while !self.is_one_v(&t2) {
                t2 = self.mul_v(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul_v(&b, &b);
            }
            m = i;
            c = self.mul_v(&b, &b);
            t = self.mul_v(&t, &c);
            root = self.mul_v(&root, &b);
        }
        Some(root)
    }

    fn embed_value(&self, from: &Field, v: &Value) -> Result<Value> {
        if self == from {
            return Ok(v.clone());
        }
        match &self.0.base {
            Some(b) if self.extends(from) => {
                let inner = b.embed_value(from, v)?;
                let mut out = vec![b.zero_v(); self.0.degree];
                out[0] = inner;
                Ok(Value::Ext(out))
            }
            _ => Err(Error::NotInTower(format!("{from} is not a subfield of {self} in a recorded tower"))),
        }
    }
}

/// An element of a [`Field`], always in reduced canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub(crate) fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_v(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one_v(&self.value)
    }

    /// Residue for prime-field elements.
    pub fn as_u64(&self) -> Option<u64> {
        match self.value {
            Value::Prime(x) => Some(x),
            Value::Ext(_) => None,
        }
    }

    /// Coefficient vector over the base field (the element itself for prime fields).
    pub fn coefficients(&self) -> Vec<FieldElement> {
        match (&self.value, self.field.base()) {
            (Value::Ext(xs), Some(b)) => xs.iter().map(|x| b.wrap(x.clone())).collect(),
            _ => vec![self.clone()],
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.add_v(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.sub_v(&self.value, &other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.mul_v(&self.value, &other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.field.wrap(self.field.mul_v(&self.value, &inv.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv_v(&self.value)
            .map(|v| self.field.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.wrap(self.field.pow_v(&self.value, e))
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        self.field.wrap(self.field.pow_big_v(&self.value, e))
    }

    pub fn square(&self) -> Self {
        self.field.wrap(self.field.mul_v(&self.value, &self.value))
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.characteristic())
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square_v(&self.value)
    }

    pub fn sqrt(&self) -> Option<Self> {
        self.field.sqrt_v(&self.value).map(|v| self.field.wrap(v))
    }

    /// Smallest `n >= 1` with `self^n = 1`.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self
            .field
            .cardinality_u64()
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::GroupOrderTooLarge(self.field.cardinality().to_string()))?
            - 1;
        let mut order = group;
        for r in prime_divisors(group) {
            while order % r == 0 && self.pow(order / r).is_one() {
                order /= r;
            }
        }
        Ok(order)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Prime(x) => write!(f, "{x}"),
            Value::Ext(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.value, self.field)
    }
}

impl Value {
    /// Nested-array JSON form: residues are numbers, extension elements arrays.
    pub(crate) fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Prime(x) => serde_json::Value::from(*x),
            Value::Ext(xs) => serde_json::Value::Array(xs.iter().map(Value::to_json).collect()),
        }
    }
}

impl FieldElement {
    pub fn to_json(&self) -> serde_json::Value {
        self.value.to_json()
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                self.$try(rhs).expect("operands from different fields")
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                (&self).$try(&rhs).expect("operands from different fields")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg_v(&self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
