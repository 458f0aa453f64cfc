//! Short Weierstrass curves `y² = x³ + ax + b` and their affine group law.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{embed, Field, FieldElement};

/// Enumeration bound for naive point counting.
pub const COUNT_BOUND: u64 = 1_000_000;

const SAMPLE_ATTEMPTS: usize = 10_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    a: FieldElement,
    b: FieldElement,
}

/// A point on a curve, with coordinates in any field above the curve's base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

/// `#E(F_q)` and the Frobenius trace `t = q + 1 - #E(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveOrderData {
    pub q: u64,
    pub points: u64,
    pub trace: i64,
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }

    pub fn negate(&self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: -y },
        }
    }

    /// Coordinate-wise `q`-th power: the `q`-Frobenius endomorphism.
    pub fn frobenius(&self, q: &BigUint) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.pow_big(q), y: y.pow_big(q) },
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve(y^2 = x^3 + {}x + {} over {:?})", self.a, self.b, self.a.field())
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}*x + {} over {}", self.a, self.b, self.a.field())
    }
}

/// Validates nonsingularity and builds the curve.
pub fn make_curve(field: &Field, a: FieldElement, b: FieldElement) -> Result<Curve> {
    if a.field() != field || b.field() != field {
        return Err(Error::FieldMismatch);
    }
    if field.characteristic() <= 3 {
        return Err(Error::CharacteristicTooSmall(field.characteristic()));
    }
    let disc = &(&field.from_int(4) * &a.pow(3)) + &(&field.from_int(27) * &b.square());
    if disc.is_zero() {
        return Err(Error::SingularCurve(disc.to_string()));
    }
    Ok(Curve { a, b })
}

impl Curve {
    /// Curve with integer coefficients reduced into `field`.
    pub fn from_ints(field: &Field, a: i64, b: i64) -> Result<Curve> {
        make_curve(field, field.from_int(a), field.from_int(b))
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// `4a³ + 27b²`.
    pub fn discriminant(&self) -> FieldElement {
        let k = self.field();
        &(&k.from_int(4) * &self.a.pow(3)) + &(&k.from_int(27) * &self.b.square())
    }

    /// The same curve viewed over an extension field.
    pub fn base_change(&self, target: &Field) -> Result<Curve> {
        Ok(Curve { a: embed(&self.a, target)?, b: embed(&self.b, target)? })
    }

    fn coefficients_in(&self, field: &Field) -> Result<(FieldElement, FieldElement)> {
        if field == self.field() {
            return Ok((self.a.clone(), self.b.clone()));
        }
        Ok((embed(&self.a, field)?, embed(&self.b, field)?))
    }

    /// `x³ + ax + b` evaluated at `x`, in `x`'s field.
    pub fn rhs(&self, x: &FieldElement) -> Result<FieldElement> {
        let (a, b) = self.coefficients_in(x.field())?;
        Ok(&(&(&x.square() + &a) * x) + &b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                x.field() == y.field() && self.rhs(x).is_ok_and(|r| r == y.square())
            }
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if cfg!(debug_assertions) && !self.contains(p) {
            return Err(Error::OffCurve);
        }
        Ok(())
    }

    pub fn negate(&self, p: &Point) -> Point {
        p.negate()
    }

    /// Chord-and-tangent addition with `O` as identity.
    pub fn add(&self, p1: &Point, p2: &Point) -> Result<Point> {
        self.check(p1)?;
        self.check(p2)?;
        self.add_unchecked(p1, p2)
    }

    fn add_unchecked(&self, p1: &Point, p2: &Point) -> Result<Point> {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, q) | (q, Point::Infinity) => return Ok(q.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1.field() != x2.field() {
            return Err(Error::FieldMismatch);
        }
        let lambda = if x1 == x2 {
            if y1 == &-y2 {
                return Ok(Point::Infinity);
            }
            let k = x1.field();
            let (a, _) = self.coefficients_in(k)?;
            let num = &(&k.from_int(3) * &x1.square()) + &a;
            num.try_div(&(&k.from_int(2) * y1))?
        } else {
            (y2 - y1).try_div(&(x2 - x1))?
        };
        let x3 = &(&lambda.square() - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        Ok(Point::Affine { x: x3, y: y3 })
    }

    pub fn double(&self, p: &Point) -> Result<Point> {
        self.add(p, p)
    }

    /// `k·P` by double-and-add; negative `k` negates first.
    pub fn scalar_mul(&self, k: i64, p: &Point) -> Result<Point> {
        let base = if k < 0 { p.negate() } else { p.clone() };
        self.scalar_mul_big(&BigUint::from(k.unsigned_abs()), &base)
    }

    pub fn scalar_mul_big(&self, k: &BigUint, p: &Point) -> Result<Point> {
        self.check(p)?;
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.add_unchecked(&acc, &acc)?;
            if k.bit(i) {
                acc = self.add_unchecked(&acc, p)?;
            }
        }
        Ok(acc)
    }

    /// Exact `#E(F_q)` as `1 + Σ_x (1 + χ(x³ + ax + b))`, for `q ≤ 10⁶`.
    pub fn count_points(&self) -> Result<CurveOrderData> {
        let k = self.field();
        let q = k
            .cardinality_u64()
            .filter(|&q| q <= COUNT_BOUND)
            .ok_or_else(|| Error::FieldTooLarge { cardinality: k.cardinality().to_string(), bound: COUNT_BOUND })?;
        let mut points = 1u64;
        if k.is_prime_field() {
            let mut is_square = vec![false; q as usize];
            for x in 0..q {
                is_square[(x * x % q) as usize] = true;
            }
            let (a, b) = (self.a.as_u64().unwrap(), self.b.as_u64().unwrap());
            for x in 0..q {
                let r = ((x * x % q + a) % q * x % q + b) % q;
                points += match (r, is_square[r as usize]) {
                    (0, _) => 1,
                    (_, true) => 2,
                    _ => 0,
                };
            }
        } else {
            for x in k.elements(COUNT_BOUND)? {
                let r = self.rhs(&x)?;
                points += if r.is_zero() {
                    1
                } else if r.is_square() {
                    2
                } else {
                    0
                };
            }
        }
        let trace = q as i64 + 1 - points as i64;
        if (trace as i128).pow(2) > 4 * q as i128 {
            return Err(Error::Internal(format!("Hasse bound violated: q = {q}, t = {trace}")));
        }
        Ok(CurveOrderData { q, points, trace })
    }

    /// Seeded point with coordinates in `in_field`, found by sampling `x` until
    /// `x³ + ax + b` is a square and taking a Tonelli–Shanks root.
    pub fn random_point(&self, in_field: &Field, seed: u64) -> Result<Point> {
        if !in_field.extends(self.field()) {
            return Err(Error::NotInTower(format!("{in_field} does not extend {}", self.field())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_ATTEMPTS {
            let x = in_field.random_element(&mut rng);
            let r = self.rhs(&x)?;
            if let Some(y) = r.sqrt() {
                let y = if rng.gen::<bool>() { -y } else { y };
                return Ok(Point::Affine { x, y });
            }
        }
        Err(Error::Internal(format!("no point found in {SAMPLE_ATTEMPTS} samples")))
    }
}
