//! Brute-force ground truth for small instances.
//!
//! Builds an explicit basis `(P, Q)` of `E[ℓ]` over an extension of the base
//! field, reads off the matrix of Frobenius by exhaustive search, and derives the
//! factorisation pattern of `ψ_ℓ` from Frobenius orbits on coordinate vectors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::divpoly::{check_torsion_prime, psi};
use crate::error::{Error, Result};
use crate::ff::{embed, Field};
use crate::frobclass::{FrobeniusClass, FrobeniusKind};
use crate::poly::{factor, roots_in_field, FactorPattern, Polynomial};

pub const ORACLE_MAX_ELL: u64 = 7;
pub const ORACLE_MAX_Q: u64 = 200;
pub const ORACLE_MAX_DEGREE: usize = 48;

pub fn check_oracle_scale(c: &Curve, ell: u64) -> Result<()> {
    check_torsion_prime(ell, c.field().characteristic())?;
    if ell > ORACLE_MAX_ELL {
        return Err(Error::OracleScale(format!("l = {ell} exceeds the oracle cap {ORACLE_MAX_ELL}")));
    }
    match c.field().cardinality_u64() {
        Some(q) if q <= ORACLE_MAX_Q => Ok(()),
        _ => Err(Error::OracleScale(format!(
            "q = {} exceeds the oracle cap {ORACLE_MAX_Q}",
            c.field().cardinality()
        ))),
    }
}

fn cubic(c: &Curve) -> Polynomial {
    let k = c.field();
    Polynomial::from_coefficients(k, &[c.b().clone(), c.a().clone(), k.zero(), k.one()])
        .expect("coefficients share the curve field")
}

/// Smallest `N` with `E[ℓ] ⊆ E(F_{q^N})`: every root `x₀` of `ψ_ℓ` lies in
/// `F_{q^N}` and every `x₀³ + a x₀ + b` is a square there.
pub fn splitting_degree(c: &Curve, ell: u64) -> Result<usize> {
    check_oracle_scale(c, ell)?;
    let psi_x = psi(c, ell as usize)?.xpart;
    let f = cubic(c).rem(&psi_x)?;
    let q = c.field().cardinality().clone();
    let x = Polynomial::x(c.field());
    let bound = ((ell * ell - 1) as usize).min(ORACLE_MAX_DEGREE);
    let mut h = x.clone();
    let mut qn = num_bigint::BigUint::from(1u32);
    for n in 1..=bound {
        h = h.powmod(&q, &psi_x)?;
        qn *= &q;
        if h == x {
            let e = (&qn - 1u32) / 2u32;
            if f.powmod(&e, &psi_x)?.is_one() {
                return Ok(n);
            }
        }
    }
    Err(Error::Internal(format!("E[{ell}] not defined over F_q^n for any n <= {bound} on {c}")))
}

/// A basis of `E[ℓ]` over `field`, an extension of the curve's base field.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub curve: Curve,
    pub ell: u64,
    pub field: Field,
    pub first: Point,
    pub second: Point,
    multiples: Vec<Point>,
}

impl TorsionBasis {
    /// `[F:F_q]` for the field carrying the basis.
    pub fn degree(&self) -> usize {
        self.field.absolute_degree() / self.curve.field().absolute_degree()
    }

    /// The extended curve over the basis field.
    pub fn extended_curve(&self) -> Curve {
        self.curve.base_change(&self.field).expect("basis field extends the curve field")
    }

    /// `a·P + b·Q`.
    pub fn point(&self, a: u64, b: u64) -> Result<Point> {
        let e = self.extended_curve();
        let bq = e.scalar_mul((b % self.ell) as i64, &self.second)?;
        e.add(&self.multiples[(a % self.ell) as usize], &bq)
    }

    /// Coordinates `(a, b)` of `r = a·P + b·Q`, found by walking the cosets of `⟨P⟩`.
    pub fn coordinates(&self, r: &Point) -> Result<(u64, u64)> {
        let e = self.extended_curve();
        let lookup: HashMap<&Point, u64> =
            self.multiples.iter().enumerate().map(|(i, pt)| (pt, i as u64)).collect();
        let minus_q = self.second.negate();
        let mut s = r.clone();
        for b in 0..self.ell {
            if let Some(&a) = lookup.get(&s) {
                return Ok((a, b));
            }
            s = e.add(&s, &minus_q)?;
        }
        Err(Error::Internal(format!("point {r} is not in the span of the torsion basis")))
    }
}

/// Residue field of an irreducible factor `g` of `ψ_ℓ` together with a point whose
/// abscissa is the class of `x`, adjoining `y` when `x³ + ax + b` is a non-square.
fn residue_point(c: &Curve, g: &Polynomial) -> Result<(Field, Point)> {
    let base = c.field();
    let g = g.monic();
    let (k, x0) = if g.degree() == Some(1) {
        (base.clone(), -&g.coefficient(0))
    } else {
        let k = Field::with_modulus(base, &g)?;
        let x0 = k.generator().expect("proper extension");
        (k, x0)
    };
    let ck = c.base_change(&k)?;
    let r = ck.rhs(&x0)?;
    if let Some(y0) = r.sqrt() {
        return Ok((k, Point::Affine { x: x0, y: y0 }));
    }
    let m = Polynomial::from_coefficients(&k, &[-&r, k.zero(), k.one()])?;
    let l = Field::with_modulus(&k, &m)?;
    let y0 = l.generator().expect("proper extension");
    Ok((l.clone(), Point::Affine { x: embed(&x0, &l)?, y: y0 }))
}

fn multiples_of(e: &Curve, p: &Point, ell: u64) -> Result<Vec<Point>> {
    let mut out = vec![Point::Infinity, p.clone()];
    for _ in 2..ell {
        let next = e.add(out.last().expect("nonempty"), p)?;
        out.push(next);
    }
    if !e.add(out.last().expect("nonempty"), p)?.is_infinity() {
        return Err(Error::Internal(format!("{p} is not {ell}-torsion")));
    }
    Ok(out)
}

/// Deterministic in `seed`, which picks the starting factor, the sign of `P` and
/// the offset in `Q = φ(P) + c·P`.
pub fn torsion_basis(c: &Curve, ell: u64, seed: u64) -> Result<TorsionBasis> {
    let n = splitting_degree(c, ell)?;
    let q = c.field().cardinality().clone();
    let psi_x = psi(c, ell as usize)?.xpart;
    let mut cands: Vec<Polynomial> = factor(&psi_x, seed)?.factors.into_iter().map(|(g, _)| g).collect();
    cands.sort_by_key(|g| std::cmp::Reverse(g.degree()));
    let len = cands.len();
    cands.rotate_left((seed as usize) % len);

    let mut eigen: Option<(Field, Point, Vec<Point>)> = None;
    for g in &cands {
        let (field, mut p) = residue_point(c, g)?;
        if (seed >> 8) & 1 == 1 {
            p = p.negate();
        }
        let e = c.base_change(&field)?;
        let multiples = multiples_of(&e, &p, ell)?;
        let fp = p.frobenius(&q);
        if multiples.contains(&fp) {
            eigen.get_or_insert((field, p, multiples));
            continue;
        }
        let second = e.add(&fp, &multiples[((seed >> 16) % ell) as usize])?;
        let tb = TorsionBasis { curve: c.clone(), ell, field, first: p, second, multiples };
        return check_degree(tb, n);
    }

    // every factor gave an eigenvector: φ is scalar, so E[ℓ] is defined over F_q(P)
    let (field, p, multiples) =
        eigen.ok_or_else(|| Error::Internal("psi_l has no irreducible factors".into()))?;
    let e = c.base_change(&field)?;
    let mut roots = roots_in_field(&psi_x.base_change(&field)?, seed)?;
    roots.retain(|r| multiples.iter().all(|m| m.x() != Some(r)));
    let xr = roots
        .first()
        .ok_or_else(|| Error::Internal(format!("no abscissa off the line of {p} over {field}")))?
        .clone();
    let yr = e
        .rhs(&xr)?
        .sqrt()
        .ok_or_else(|| Error::Internal(format!("torsion ordinate for x = {xr} is not in {field}")))?;
    let tb = TorsionBasis { curve: c.clone(), ell, field, first: p, second: Point::Affine { x: xr, y: yr }, multiples };
    check_degree(tb, n)
}

fn check_degree(tb: TorsionBasis, n: usize) -> Result<TorsionBasis> {
    if tb.degree() != n {
        return Err(Error::Internal(format!(
            "basis field has degree {} over the base, splitting degree is {n}",
            tb.degree()
        )));
    }
    Ok(tb)
}

fn order_mod(x: u64, ell: u64) -> u64 {
    let mut y = x % ell;
    let mut n = 1;
    while y != 1 {
        y = y * x % ell;
        n += 1;
    }
    n
}

fn inv_mod(x: u64, ell: u64) -> u64 {
    (1..ell).find(|y| x * y % ell == 1).expect("x is a unit mod l")
}

type Mat = [[u64; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat, l: u64) -> Mat {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % l;
        }
    }
    out
}

fn mat_inv(a: &Mat, l: u64) -> Option<Mat> {
    let det = (a[0][0] * a[1][1] + l * l - a[0][1] * a[1][0] % l) % l;
    if det == 0 {
        return None;
    }
    let d = inv_mod(det, l);
    Some([
        [a[1][1] * d % l, (l - a[0][1]) % l * d % l],
        [(l - a[1][0]) % l * d % l, a[0][0] * d % l],
    ])
}

/// Matrix of φ on `E[ℓ]`: column `j` holds the coordinates of the image of the `j`-th basis point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusMatrix {
    pub ell: u64,
    pub entries: [[u64; 2]; 2],
}

impl FrobeniusMatrix {
    pub fn trace(&self) -> u64 {
        (self.entries[0][0] + self.entries[1][1]) % self.ell
    }

    pub fn det(&self) -> u64 {
        let (m, l) = (&self.entries, self.ell);
        (m[0][0] * m[1][1] % l + l - m[0][1] * m[1][0] % l) % l
    }

    pub fn apply(&self, v: (u64, u64)) -> (u64, u64) {
        let (m, l) = (&self.entries, self.ell);
        ((m[0][0] * v.0 + m[0][1] * v.1) % l, (m[1][0] * v.0 + m[1][1] * v.1) % l)
    }

    pub fn is_scalar(&self) -> bool {
        let m = &self.entries;
        m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1]
    }

    /// Eigenvalues in `F_ℓ`, ascending, with multiplicity.
    pub fn eigenvalues(&self) -> Vec<u64> {
        let (t, d, l) = (self.trace(), self.det(), self.ell);
        let roots: Vec<u64> = (0..l).filter(|&r| (r * r + l * l - t * r % l + d) % l == 0).collect();
        match roots.as_slice() {
            [r] => vec![*r, *r],
            _ => roots,
        }
    }

    /// Multiplicative order of the matrix.
    pub fn order(&self) -> u64 {
        let id = [[1, 0], [0, 1]];
        let mut p = self.entries;
        let mut n = 1;
        while p != id {
            p = mat_mul(&p, &self.entries, self.ell);
            n += 1;
        }
        n
    }

    fn orbit_step(&self, v: (u64, u64), stop: impl Fn((u64, u64)) -> bool) -> Result<usize> {
        if v == (0, 0) {
            return Err(Error::InvalidInput("zero coordinate vector".into()));
        }
        let mut w = v;
        for n in 1..=(self.ell * self.ell - 1) as usize {
            w = self.apply(w);
            if stop(w) {
                return Ok(n);
            }
        }
        Err(Error::Internal(format!("orbit of {v:?} does not close within l^2 - 1 steps")))
    }

    /// Least `n ≥ 1` with `φⁿ(R) = ±R`: the degree of the factor of `ψ_ℓ` vanishing at `x(R)`.
    pub fn minimal_pm_degree(&self, v: (u64, u64)) -> Result<usize> {
        let l = self.ell;
        let neg = ((l - v.0) % l, (l - v.1) % l);
        self.orbit_step(v, |w| w == v || w == neg)
    }

    /// Least `n ≥ 1` with `φⁿ(R) = R`: the degree over which `R` becomes rational.
    pub fn minimal_fixed_degree(&self, v: (u64, u64)) -> Result<usize> {
        self.orbit_step(v, |w| w == v)
    }

    pub fn nonzero_vectors(&self) -> impl Iterator<Item = (u64, u64)> {
        let l = self.ell;
        (0..l).flat_map(move |a| (0..l).map(move |b| (a, b))).skip(1)
    }

    /// Factorisation pattern read off the orbits; `R` and `−R` share one abscissa.
    pub fn orbit_pattern(&self) -> Result<FactorPattern> {
        let mut points: HashMap<usize, usize> = HashMap::new();
        for v in self.nonzero_vectors() {
            *points.entry(self.minimal_pm_degree(v)?).or_default() += 1;
        }
        let mut entries = Vec::new();
        for (d, n) in points {
            if n % 2 != 0 || (n / 2) % d != 0 {
                return Err(Error::Internal(format!("{n} points with orbit degree {d} do not form abscissa classes")));
            }
            entries.push((d, n / 2 / d));
        }
        Ok(FactorPattern::from_entries(entries))
    }

    /// Conjugates into diagonal or Jordan form over `F_ℓ` when possible, checking the result.
    pub fn conjugacy_form(&self) -> Result<ConjugacyForm> {
        let l = self.ell;
        let ev = self.eigenvalues();
        let form = match ev.as_slice() {
            [] => ConjugacyForm::Irreducible { trace: self.trace(), det: self.det(), order: self.order() },
            [r, s] if r == s && self.is_scalar() => ConjugacyForm::Scalar { rho: *r },
            [r, s] if r == s => {
                let rho = *r;
                let n = self.shifted(rho);
                let v1 = self.nonzero_vectors().find(|&v| apply_mat(&n, v, l) == (0, 0)).expect("eigenvector");
                let v2 = self
                    .nonzero_vectors()
                    .find(|&v| apply_mat(&n, v, l) == v1)
                    .ok_or_else(|| Error::Internal("no generalized eigenvector".into()))?;
                let basis = [[v1.0, v2.0], [v1.1, v2.1]];
                self.check_conjugate(&basis, [[rho, 1], [0, rho]])?;
                ConjugacyForm::Jordan { rho, basis }
            }
            [r, s] => {
                let (or, os) = (order_mod(*r, l), order_mod(*s, l));
                let (rho, other) = if (os, *s) < (or, *r) { (*s, *r) } else { (*r, *s) };
                let eig = |lambda: u64| {
                    let n = self.shifted(lambda);
                    self.nonzero_vectors().find(|&v| apply_mat(&n, v, l) == (0, 0)).expect("eigenvector")
                };
                let (v1, v2) = (eig(rho), eig(other));
                let basis = [[v1.0, v2.0], [v1.1, v2.1]];
                self.check_conjugate(&basis, [[rho, 0], [0, other]])?;
                ConjugacyForm::Diagonal { eigenvalues: [rho, other], basis }
            }
            _ => return Err(Error::Internal(format!("unexpected eigenvalues {ev:?}"))),
        };
        Ok(form)
    }

    fn shifted(&self, lambda: u64) -> Mat {
        let (m, l) = (&self.entries, self.ell);
        [[(m[0][0] + l - lambda) % l, m[0][1]], [m[1][0], (m[1][1] + l - lambda) % l]]
    }

    fn check_conjugate(&self, s: &Mat, target: Mat) -> Result<()> {
        let l = self.ell;
        let si = mat_inv(s, l).ok_or_else(|| Error::Internal("singular change of basis".into()))?;
        let got = mat_mul(&mat_mul(&si, &self.entries, l), s, l);
        if got != target {
            return Err(Error::Internal(format!("conjugation gave {got:?}, expected {target:?}")));
        }
        Ok(())
    }
}

fn apply_mat(m: &Mat, v: (u64, u64), l: u64) -> (u64, u64) {
    ((m[0][0] * v.0 + m[0][1] * v.1) % l, (m[1][0] * v.0 + m[1][1] * v.1) % l)
}

/// Normal form of the Frobenius matrix with the change of basis (columns) achieving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum ConjugacyForm {
    /// `diag(ρ, q/ρ)` with `ρ` of smaller order (smaller residue on ties).
    Diagonal { eigenvalues: [u64; 2], basis: [[u64; 2]; 2] },
    Scalar { rho: u64 },
    /// `[[ρ, 1], [0, ρ]]`.
    Jordan { rho: u64, basis: [[u64; 2]; 2] },
    Irreducible { trace: u64, det: u64, order: u64 },
}

impl ConjugacyForm {
    /// Whether this normal form is the one the class predicts.
    pub fn agrees_with(&self, class: &FrobeniusClass) -> bool {
        let l = class.ell;
        match (self, class.kind) {
            (ConjugacyForm::Diagonal { eigenvalues: [r, s], .. }, FrobeniusKind::SplitDistinct { alpha, rho, beta }) => {
                *r == rho && order_mod(*r, l) == alpha && order_mod(*s, l) == beta
            }
            (ConjugacyForm::Diagonal { eigenvalues: [r, s], .. }, FrobeniusKind::SplitEqualOrders { alpha, rho }) => {
                *r == rho && order_mod(*r, l) == alpha && order_mod(*s, l) == alpha
            }
            (ConjugacyForm::Scalar { rho: r }, FrobeniusKind::Scalar { rho, alpha })
            | (ConjugacyForm::Jordan { rho: r, .. }, FrobeniusKind::Jordan { rho, alpha }) => {
                *r == rho && order_mod(*r, l) == alpha
            }
            (ConjugacyForm::Irreducible { order, .. }, FrobeniusKind::Irreducible { alpha }) => *order == alpha,
            _ => false,
        }
    }
}

pub fn frobenius_matrix(tb: &TorsionBasis) -> Result<FrobeniusMatrix> {
    let q = tb.curve.field().cardinality().clone();
    let (a, b) = tb.coordinates(&tb.first.frobenius(&q))?;
    let (c, d) = tb.coordinates(&tb.second.frobenius(&q))?;
    let m = FrobeniusMatrix { ell: tb.ell, entries: [[a, c], [b, d]] };
    if m.det() == 0 {
        return Err(Error::Internal(format!("singular Frobenius matrix {:?}", m.entries)));
    }
    Ok(m)
}

/// Cross-checks against the point count: `tr ≡ t` and `det ≡ q`.
pub fn check_against_trace(m: &FrobeniusMatrix, trace: i64, q: u64) -> Result<()> {
    let l = m.ell;
    let t = trace.rem_euclid(l as i64) as u64;
    if m.trace() != t || m.det() != q % l {
        return Err(Error::Internal(format!(
            "matrix {:?} has trace {} and det {}, expected {t} and {}",
            m.entries,
            m.trace(),
            m.det(),
            q % l
        )));
    }
    Ok(())
}

pub fn minimal_pm_degree(tb: &TorsionBasis, v: (u64, u64)) -> Result<usize> {
    frobenius_matrix(tb)?.minimal_pm_degree(v)
}

pub fn empirical_pattern_from_orbits(tb: &TorsionBasis) -> Result<FactorPattern> {
    frobenius_matrix(tb)?.orbit_pattern()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDegree {
    pub coords: (u64, u64),
    pub pm_degree: usize,
    pub fixed_degree: usize,
}

/// Everything the oracle computes for one instance.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub splitting_degree: usize,
    pub basis: TorsionBasis,
    pub matrix: FrobeniusMatrix,
    pub form: ConjugacyForm,
    pub orbits: Vec<OrbitDegree>,
    pub pattern: FactorPattern,
}

impl OracleRun {
    /// Least degree at which some nonzero `ℓ`-torsion point becomes rational.
    pub fn alpha(&self) -> usize {
        self.orbits.iter().map(|o| o.fixed_degree).min().unwrap_or(0)
    }
}

pub fn run_oracle(c: &Curve, ell: u64, seed: u64) -> Result<OracleRun> {
    let basis = torsion_basis(c, ell, seed)?;
    let matrix = frobenius_matrix(&basis)?;
    let order = c.count_points()?;
    check_against_trace(&matrix, order.trace, order.q)?;
    let form = matrix.conjugacy_form()?;
    let orbits = matrix
        .nonzero_vectors()
        .map(|v| {
            Ok(OrbitDegree {
                coords: v,
                pm_degree: matrix.minimal_pm_degree(v)?,
                fixed_degree: matrix.minimal_fixed_degree(v)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pattern = matrix.orbit_pattern()?;
    Ok(OracleRun { splitting_degree: basis.degree(), basis, matrix, form, orbits, pattern })
}

/// Direct orbit degree on points: least `n` with `φⁿ(R) = ±R`.
pub fn point_pm_degree(tb: &TorsionBasis, r: &Point) -> Result<usize> {
    let q = tb.curve.field().cardinality().clone();
    let neg = r.negate();
    let mut s = r.clone();
    for n in 1..=(tb.ell * tb.ell - 1) as usize {
        s = s.frobenius(&q);
        if &s == r || s == neg {
            return Ok(n);
        }
    }
    Err(Error::Internal(format!("Frobenius orbit of {r} does not close")))
}
