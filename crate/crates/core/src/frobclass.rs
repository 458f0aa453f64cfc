//! Classification of the Frobenius action on `E[ℓ]` from the trace alone.
//!
//! φ acts on `E[ℓ] ≅ F_ℓ²` with characteristic polynomial `X² − tX + q` mod ℓ.
//! Its roots decide the shape: two eigenvalues of different orders, two of the
//! same order, a double eigenvalue (scalar or a Jordan block) or none in `F_ℓ`.
//! The only polynomial work is one gcd that separates the scalar and Jordan cases.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, CurveOrderData};
use crate::divpoly::{check_torsion_prime, psi};
use crate::error::{Error, Result};
use crate::ff::{make_extension, make_odd_prime_field};
use crate::pattern::h_func;
use crate::poly::{roots_in_field, Polynomial};

/// Roots of `X² − tX + q` in `F_ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharpolyRoots {
    /// Two distinct roots, ascending.
    Distinct(u64, u64),
    Double(u64),
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum FrobeniusKind {
    /// Eigenvalues `ρ ≠ q/ρ` with `ord ρ = α < β = ord(q/ρ)`.
    SplitDistinct { alpha: u64, rho: u64, beta: u64 },
    /// Double eigenvalue `ρ`, not diagonalizable (`q = ρ²`).
    Jordan { alpha: u64, rho: u64 },
    /// φ acts as multiplication by `ρ`.
    Scalar { alpha: u64, rho: u64 },
    /// Two distinct eigenvalues of the same order `α`; `rho` is the smaller residue.
    SplitEqualOrders { alpha: u64, rho: u64 },
    /// No eigenvalue in `F_ℓ`; `α` is the order of the eigenvalues in `F_{ℓ²}`.
    Irreducible { alpha: u64 },
}

/// The five kinds, in reporting order.
pub const KIND_NAMES: [&str; 5] = ["SplitDistinct", "Jordan", "Scalar", "SplitEqualOrders", "Irreducible"];

impl FrobeniusKind {
    pub fn name(&self) -> &'static str {
        match self {
            FrobeniusKind::SplitDistinct { .. } => KIND_NAMES[0],
            FrobeniusKind::Jordan { .. } => KIND_NAMES[1],
            FrobeniusKind::Scalar { .. } => KIND_NAMES[2],
            FrobeniusKind::SplitEqualOrders { .. } => KIND_NAMES[3],
            FrobeniusKind::Irreducible { .. } => KIND_NAMES[4],
        }
    }

    pub fn alpha(&self) -> u64 {
        match *self {
            FrobeniusKind::SplitDistinct { alpha, .. }
            | FrobeniusKind::Jordan { alpha, .. }
            | FrobeniusKind::Scalar { alpha, .. }
            | FrobeniusKind::SplitEqualOrders { alpha, .. }
            | FrobeniusKind::Irreducible { alpha } => alpha,
        }
    }

    pub fn rho(&self) -> Option<u64> {
        match *self {
            FrobeniusKind::SplitDistinct { rho, .. }
            | FrobeniusKind::Jordan { rho, .. }
            | FrobeniusKind::Scalar { rho, .. }
            | FrobeniusKind::SplitEqualOrders { rho, .. } => Some(rho),
            FrobeniusKind::Irreducible { .. } => None,
        }
    }

    pub fn beta(&self) -> Option<u64> {
        match *self {
            FrobeniusKind::SplitDistinct { beta, .. } => Some(beta),
            _ => None,
        }
    }
}

/// Frobenius data for one `(curve, ℓ)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusClass {
    pub ell: u64,
    pub trace_mod_ell: u64,
    pub q_mod_ell: u64,
    pub kind: FrobeniusKind,
}

impl FrobeniusClass {
    /// True when not all of `E[ℓ]` is defined over `F_{q^α}`.
    pub fn in_scope(&self) -> bool {
        matches!(self.kind, FrobeniusKind::SplitDistinct { .. } | FrobeniusKind::Jordan { .. })
    }
}

impl fmt::Display for FrobeniusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FrobeniusKind::SplitDistinct { alpha, rho, beta } => {
                write!(f, "SplitDistinct(alpha={alpha}, rho={rho}, beta={beta})")
            }
            FrobeniusKind::Jordan { alpha, rho }
            | FrobeniusKind::Scalar { alpha, rho }
            | FrobeniusKind::SplitEqualOrders { alpha, rho } => {
                write!(f, "{}(alpha={alpha}, rho={rho})", self.kind.name())
            }
            FrobeniusKind::Irreducible { alpha } => write!(f, "Irreducible(alpha={alpha})"),
        }
    }
}

/// Outcome of the scalar-versus-Jordan gcd test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleRootKind {
    Scalar,
    Jordan,
}

fn order_mod(x: u64, ell: u64) -> Result<u64> {
    make_odd_prime_field(ell)?.from_int(x as i64).multiplicative_order()
}

/// Roots of `X² − tX + q` modulo `ℓ`, via the discriminant and an exhaustive square root.
pub fn charpoly_roots_mod_l(t: i64, q: u64, ell: u64) -> Result<CharpolyRoots> {
    if ell.is_multiple_of(2) || !crate::ff::is_prime(ell) {
        return Err(Error::InvalidEll { ell, reason: "must be an odd prime".into() });
    }
    if q.is_multiple_of(ell) {
        return Err(Error::InvalidEll { ell, reason: format!("divides q = {q}") });
    }
    let l = ell as i128;
    let tm = (t as i128).rem_euclid(l);
    let qm = q as i128 % l;
    let disc = (tm * tm - 4 * qm).rem_euclid(l);
    let half = (l + 1) / 2;
    if disc == 0 {
        return Ok(CharpolyRoots::Double((tm * half % l) as u64));
    }
    match (1..l).find(|s| s * s % l == disc) {
        None => Ok(CharpolyRoots::None),
        Some(s) => {
            let r1 = ((tm + s) * half).rem_euclid(l) as u64;
            let r2 = ((tm - s) * half).rem_euclid(l) as u64;
            Ok(CharpolyRoots::Distinct(r1.min(r2), r1.max(r2)))
        }
    }
}

/// Separates a double eigenvalue into the scalar and Jordan cases by the degree
/// of `gcd(ψ_ℓ, x^{q^{h(α)}} − x)`: all `(ℓ²−1)/2` abscissas become rational at
/// degree `h(α)` for a scalar action, only the `(ℓ−1)/2` of the eigenline for a Jordan block.
pub fn scalar_vs_jordan_test(psi_x: &Polynomial, ell: u64, alpha: u64) -> Result<DoubleRootKind> {
    let x = Polynomial::x(psi_x.field());
    let q = psi_x.field().cardinality().clone();
    let mut h = x.clone();
    for _ in 0..h_func(alpha) {
        h = h.powmod(&q, psi_x)?;
    }
    let g = (&h - &x).gcd(psi_x)?;
    let deg = g.degree().unwrap_or(0) as u64;
    if deg == (ell * ell - 1) / 2 {
        Ok(DoubleRootKind::Scalar)
    } else if deg == (ell - 1) / 2 {
        Ok(DoubleRootKind::Jordan)
    } else {
        Err(Error::Internal(format!(
            "double eigenvalue with alpha = {alpha}, l = {ell}: gcd(psi_l, x^(q^{}) - x) has degree {deg}, \
             expected {} or {}",
            h_func(alpha),
            (ell * ell - 1) / 2,
            (ell - 1) / 2
        )))
    }
}

/// Counts points, builds `ψ_ℓ` and classifies.
pub fn classify(c: &Curve, ell: u64) -> Result<FrobeniusClass> {
    check_torsion_prime(ell, c.field().characteristic())?;
    let order = c.count_points()?;
    let psi_x = psi(c, ell as usize)?.xpart;
    classify_with(c, ell, &order, &psi_x)
}

/// Classification from precomputed point count and `ψ_ℓ` x-part.
pub fn classify_with(c: &Curve, ell: u64, order: &CurveOrderData, psi_x: &Polynomial) -> Result<FrobeniusClass> {
    check_torsion_prime(ell, c.field().characteristic())?;
    let kind = match charpoly_roots_mod_l(order.trace, order.q, ell)? {
        CharpolyRoots::Distinct(l1, l2) => {
            let (o1, o2) = (order_mod(l1, ell)?, order_mod(l2, ell)?);
            if o1 == o2 {
                FrobeniusKind::SplitEqualOrders { alpha: o1, rho: l1 }
            } else if o1 < o2 {
                FrobeniusKind::SplitDistinct { alpha: o1, rho: l1, beta: o2 }
            } else {
                FrobeniusKind::SplitDistinct { alpha: o2, rho: l2, beta: o1 }
            }
        }
        CharpolyRoots::Double(rho) => {
            let alpha = order_mod(rho, ell)?;
            match scalar_vs_jordan_test(psi_x, ell, alpha)? {
                DoubleRootKind::Scalar => FrobeniusKind::Scalar { alpha, rho },
                DoubleRootKind::Jordan => FrobeniusKind::Jordan { alpha, rho },
            }
        }
        CharpolyRoots::None => {
            let fl = make_odd_prime_field(ell)?;
            let fl2 = make_extension(&fl, 2)?;
            let cp = Polynomial::from_ints(&fl2, &[order.q as i64 % ell as i64, -order.trace, 1]);
            let roots = roots_in_field(&cp, 0)?;
            let root = roots
                .first()
                .ok_or_else(|| Error::Internal("characteristic polynomial has no root in F_l^2".into()))?;
            FrobeniusKind::Irreducible { alpha: root.multiplicative_order()? }
        }
    };
    Ok(FrobeniusClass {
        ell,
        trace_mod_ell: order.trace.rem_euclid(ell as i64) as u64,
        q_mod_ell: order.q % ell,
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_prime_field;

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly_roots_mod_l(0, 4, 5).unwrap(), CharpolyRoots::Distinct(1, 4));
        // example curve: t = -3, q = 17
        assert_eq!(charpoly_roots_mod_l(-3, 17, 5).unwrap(), CharpolyRoots::Distinct(3, 4));
        // X^2 + 1 over F_7 has no root
        assert_eq!(charpoly_roots_mod_l(0, 1, 7).unwrap(), CharpolyRoots::None);
        assert_eq!(charpoly_roots_mod_l(2, 1, 7).unwrap(), CharpolyRoots::Double(1));
        assert!(charpoly_roots_mod_l(1, 10, 5).is_err());
        assert!(charpoly_roots_mod_l(1, 10, 4).is_err());
    }

    #[test]
    fn example_curve_class() {
        let c = Curve::from_ints(&make_prime_field(17).unwrap(), 3, 6).unwrap();
        let fc = classify(&c, 5).unwrap();
        assert_eq!(fc.kind, FrobeniusKind::SplitDistinct { alpha: 2, rho: 4, beta: 4 });
        assert!(fc.in_scope());
        assert_eq!(fc.trace_mod_ell, 2);
        assert_eq!(fc.q_mod_ell, 2);
        assert_eq!(classify(&c, 5).unwrap(), fc);
        assert!(classify(&c, 17).is_err());
        assert!(classify(&c, 9).is_err());
    }

    #[test]
    fn split_invariants_on_a_sweep() {
        let k = make_prime_field(29).unwrap();
        for a in 0..29 {
            for b in 0..29 {
                let Ok(c) = Curve::from_ints(&k, a, b) else { continue };
                for ell in [3u64, 5, 7] {
                    let fc = classify(&c, ell).unwrap();
                    let (t, q) = (fc.trace_mod_ell, fc.q_mod_ell);
                    match fc.kind {
                        FrobeniusKind::SplitDistinct { alpha, rho, beta } => {
                            let other = q * crate::ff::make_odd_prime_field(ell).unwrap()
                                .from_int(rho as i64).inv().unwrap().as_u64().unwrap() % ell;
                            assert_eq!((rho + other) % ell, t);
                            assert_eq!(order_mod(other, ell).unwrap(), beta);
                            assert!(alpha < beta);
                            assert_eq!((ell - 1) % alpha, 0);
                            assert_eq!((ell - 1) % beta, 0);
                        }
                        FrobeniusKind::Jordan { rho, alpha } | FrobeniusKind::Scalar { rho, alpha } => {
                            assert_eq!(rho * 2 % ell, t);
                            assert_eq!(rho * rho % ell, q);
                            assert_eq!((ell - 1) % alpha, 0);
                        }
                        FrobeniusKind::SplitEqualOrders { alpha, .. } => assert_eq!((ell - 1) % alpha, 0),
                        FrobeniusKind::Irreducible { alpha } => assert_eq!((ell * ell - 1) % alpha, 0),
                    }
                }
            }
        }
    }
}
