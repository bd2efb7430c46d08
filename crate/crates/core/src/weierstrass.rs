//! Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with
//! integer coefficients: invariants, coordinate changes, per-prime
//! minimality and global minimisation.
//!
//! Minimality at `p` is decided by a bounded substitution search: a scale
//! `u = p` descent exists iff one exists with `s mod p`, `r mod p^2`,
//! `t mod p^3`, each lifted to its two signed representatives, and a hit is
//! verified by an integral coordinate change. The search is only entered
//! when `v_p(disc) >= 12`, `v_p(c4) >= 4` and `v_p(c6) >= 6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::factor::primes_up_to;
use crate::padic::{int_valuation, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("the discriminant vanishes; the model is singular")]
    SingularCurve,
    #[error("coordinate change does not produce an integral model")]
    NonIntegralModel,
    #[error("the scale of a coordinate change must be nonzero")]
    ZeroScale,
    #[error("{0} is not a prime number")]
    NotPrime(u64),
}

/// An integral Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

impl Curve {
    pub fn new(a1: BigInt, a2: BigInt, a3: BigInt, a4: BigInt, a6: BigInt) -> Self {
        Curve { a1, a2, a3, a4, a6 }
    }

    pub fn from_coeffs(c: [i64; 5]) -> Self {
        Curve::new(
            BigInt::from(c[0]),
            BigInt::from(c[1]),
            BigInt::from(c[2]),
            BigInt::from(c[3]),
            BigInt::from(c[4]),
        )
    }

    pub fn coefficients(&self) -> [&BigInt; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// The standard quantities attached to a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub discriminant: BigInt,
    pub j: BigRational,
}

impl Invariants {
    pub fn v_disc(&self, p: u64) -> Valuation {
        int_valuation(&self.discriminant, p)
    }
    pub fn v_c4(&self, p: u64) -> Valuation {
        int_valuation(&self.c4, p)
    }
    pub fn v_c6(&self, p: u64) -> Valuation {
        int_valuation(&self.c6, p)
    }
    /// `j` is p-integral iff `3 v(c4) >= v(disc)`.
    pub fn j_integral_at(&self, p: u64) -> bool {
        self.v_c4(p).scaled(3) >= self.v_disc(p)
    }
}

/// Computes `b2, b4, b6, b8, c4, c6, disc, j` exactly.
pub fn invariants(curve: &Curve) -> Result<Invariants, WeierstrassError> {
    let Curve { a1, a2, a3, a4, a6 } = curve;
    let bi = BigInt::from;
    let b2 = a1 * a1 + bi(4) * a2;
    let b4 = bi(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + bi(4) * a6;
    let b8 = a1 * a1 * a6 + bi(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - bi(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + bi(36) * &b2 * &b4 - bi(216) * &b6;
    let discriminant = -(&b2 * &b2 * &b8) - bi(8) * (&b4 * &b4 * &b4) - bi(27) * (&b6 * &b6)
        + bi(9) * &b2 * &b4 * &b6;
    if discriminant.is_zero() {
        return Err(WeierstrassError::SingularCurve);
    }
    debug_assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, bi(1728) * &discriminant);
    debug_assert_eq!(bi(4) * &b8, &b2 * &b6 - &b4 * &b4);
    let j = BigRational::new(&c4 * &c4 * &c4, discriminant.clone());
    Ok(Invariants { b2, b4, b6, b8, c4, c6, discriminant, j })
}

/// Change of coordinates `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
///
/// Under it `disc' = disc / u^12`, `c4' = c4 / u^4`, `c6' = c6 / u^6` and
/// `j` is unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    pub u: BigRational,
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
}

impl Transformation {
    pub fn new(
        u: BigRational,
        r: BigRational,
        s: BigRational,
        t: BigRational,
    ) -> Result<Self, WeierstrassError> {
        if u.is_zero() {
            return Err(WeierstrassError::ZeroScale);
        }
        Ok(Transformation { u, r, s, t })
    }

    pub fn identity() -> Self {
        Transformation {
            u: BigRational::one(),
            r: BigRational::zero(),
            s: BigRational::zero(),
            t: BigRational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    pub fn of_integers(u: i64, r: i64, s: i64, t: i64) -> Self {
        assert!(u != 0);
        Transformation {
            u: BigRational::from(BigInt::from(u)),
            r: BigRational::from(BigInt::from(r)),
            s: BigRational::from(BigInt::from(s)),
            t: BigRational::from(BigInt::from(t)),
        }
    }

    /// The composite "apply `self`, then `other`".
    pub fn then(&self, other: &Transformation) -> Transformation {
        let u1 = &self.u;
        Transformation {
            u: u1 * &other.u,
            r: &self.r + u1 * u1 * &other.r,
            s: &self.s + u1 * &other.s,
            t: &self.t + u1 * u1 * &self.s * &other.r + u1 * u1 * u1 * &other.t,
        }
    }

    pub fn inverse(&self) -> Transformation {
        let u = &self.u;
        let u2 = u * u;
        let u3 = &u2 * u;
        Transformation {
            u: BigRational::one() / u,
            r: -(&self.r / &u2),
            s: -(&self.s / u),
            t: (&self.r * &self.s - &self.t) / u3,
        }
    }
}

/// Applies a coordinate change; errors unless the image is integral.
pub fn transform(curve: &Curve, t: &Transformation) -> Result<Curve, WeierstrassError> {
    if t.u.is_zero() {
        return Err(WeierstrassError::ZeroScale);
    }
    let a1 = BigRational::from(curve.a1.clone());
    let a2 = BigRational::from(curve.a2.clone());
    let a3 = BigRational::from(curve.a3.clone());
    let a4 = BigRational::from(curve.a4.clone());
    let a6 = BigRational::from(curve.a6.clone());
    let (u, r, s, tt) = (&t.u, &t.r, &t.s, &t.t);
    let u2 = u * u;
    let u3 = &u2 * u;
    let u4 = &u2 * &u2;
    let u6 = &u3 * &u3;
    let two = BigRational::from(BigInt::from(2));
    let three = BigRational::from(BigInt::from(3));
    let na1 = (&a1 + &two * s) / u;
    let na2 = (&a2 - s * &a1 + &three * r - s * s) / &u2;
    let na3 = (&a3 + r * &a1 + &two * tt) / &u3;
    let na4 = (&a4 - s * &a3 + &two * r * &a2 - (tt + r * s) * &a1 + &three * r * r
        - &two * s * tt)
        / &u4;
    let na6 = (&a6 + r * &a4 + r * r * &a2 + r * r * r - tt * &a3 - tt * tt - r * tt * &a1) / &u6;
    for x in [&na1, &na2, &na3, &na4, &na6] {
        if !x.is_integer() {
            return Err(WeierstrassError::NonIntegralModel);
        }
    }
    Ok(Curve::new(
        na1.to_integer(),
        na2.to_integer(),
        na3.to_integer(),
        na4.to_integer(),
        na6.to_integer(),
    ))
}

/// Solutions of `a x = b (mod m)` in `[0, m)`.
fn solve_linear_mod(a: &BigInt, b: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let a = a.mod_floor(m);
    let b = b.mod_floor(m);
    let e = a.extended_gcd(m);
    let g = e.gcd;
    if !(&b % &g).is_zero() {
        return Vec::new();
    }
    let step = m / &g;
    let x0 = ((&b / &g) * e.x).mod_floor(&step);
    let mut out = Vec::new();
    let mut x = x0;
    while &x < m {
        out.push(x.clone());
        x += &step;
    }
    out
}

/// Searches for an integral descent with scale `u = p`. Returns the
/// descended model and the transformation that produced it.
pub fn find_descent_at(
    curve: &Curve,
    p: u64,
) -> Result<Option<(Curve, Transformation)>, WeierstrassError> {
    if !crate::factor::is_prime(p) {
        return Err(WeierstrassError::NotPrime(p));
    }
    let inv = invariants(curve)?;
    if inv.v_disc(p) < Valuation::Finite(12)
        || inv.v_c4(p) < Valuation::Finite(4)
        || inv.v_c6(p) < Valuation::Finite(6)
    {
        return Ok(None);
    }
    let p = BigInt::from(p);
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    // necessary congruences: p | a1 + 2s, p^2 | a2 - s a1 + 3r - s^2,
    // p^3 | a3 + r a1 + 2t; the final transform verifies a4, a6
    for s0 in solve_linear_mod(&two, &-&curve.a1, &p) {
        for s in [s0.clone(), &s0 - &p] {
            let r_rhs = &s * &curve.a1 + &s * &s - &curve.a2;
            for r0 in solve_linear_mod(&three, &r_rhs, &p2) {
                for r in [r0.clone(), &r0 - &p2] {
                    let t_rhs = -(&curve.a3 + &r * &curve.a1);
                    for t0 in solve_linear_mod(&two, &t_rhs, &p3) {
                        for t in [t0.clone(), &t0 - &p3] {
                            let tr = Transformation {
                                u: BigRational::from(p.clone()),
                                r: BigRational::from(r.clone()),
                                s: BigRational::from(s.clone()),
                                t: BigRational::from(t.clone()),
                            };
                            if let Ok(image) = transform(curve, &tr) {
                                return Ok(Some((image, tr)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Whether the model admits no integral descent of scale `p`.
pub fn is_minimal_at(curve: &Curve, p: u64) -> Result<bool, WeierstrassError> {
    Ok(find_descent_at(curve, p)?.is_none())
}

/// Primes at which minimality actually needs testing: `v_p(disc) >= 12`
/// forces `p <= |disc|^(1/12)`.
pub fn minimality_suspects(inv: &Invariants) -> Vec<u64> {
    let bound = inv.discriminant.abs().nth_root(12);
    let bound: u64 = bound.try_into().unwrap_or(u64::MAX);
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| inv.v_disc(p) >= Valuation::Finite(12))
        .collect()
}

/// Produces a globally minimal model together with the composite
/// transformation that reaches it. Idempotent on minimal input.
pub fn minimize(curve: &Curve) -> Result<(Curve, Transformation), WeierstrassError> {
    let inv = invariants(curve)?;
    let mut cur = curve.clone();
    let mut total = Transformation::identity();
    for p in minimality_suspects(&inv) {
        while let Some((next, step)) = find_descent_at(&cur, p)? {
            cur = next;
            total = total.then(&step);
        }
    }
    Ok((cur, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn invariants_of_37a() {
        let c = Curve::from_coeffs([0, 0, 1, -1, 0]);
        let inv = invariants(&c).unwrap();
        assert_eq!(inv.discriminant, BigInt::from(37));
        assert_eq!(inv.c4, BigInt::from(48));
        assert_eq!(inv.c6, BigInt::from(-216));
        assert_eq!(inv.j, rat(110592, 37));
    }

    #[test]
    fn invariants_of_j_1728_curve() {
        let c = Curve::from_coeffs([0, 0, 0, -1, 0]);
        let inv = invariants(&c).unwrap();
        assert_eq!(inv.discriminant, BigInt::from(64));
        assert_eq!(inv.c4, BigInt::from(48));
        assert_eq!(inv.c6, BigInt::from(0));
        assert_eq!(inv.j, rat(1728, 1));
    }

    #[test]
    fn singular_model_is_rejected() {
        let c = Curve::from_coeffs([0, 0, 0, 0, 0]);
        assert_eq!(invariants(&c), Err(WeierstrassError::SingularCurve));
    }

    #[test]
    fn identity_transform_is_identity() {
        let c = Curve::from_coeffs([0, -1, 1, -10, -20]);
        let t = Transformation::identity();
        assert_eq!(transform(&c, &t).unwrap(), c);
    }

    #[test]
    fn translation_preserves_discriminant() {
        let c = Curve::from_coeffs([0, 0, 1, -1, 0]);
        let t = Transformation::of_integers(1, 1, 0, 0);
        let moved = transform(&c, &t).unwrap();
        let inv = invariants(&moved).unwrap();
        assert_eq!(inv.discriminant, BigInt::from(37));
        assert_eq!(inv.j, rat(110592, 37));
    }

    #[test]
    fn rescale_round_trip() {
        // (0,0,0,-1,0) scaled by u = 1/2 clears to (0,0,0,-16,0);
        // scaling back by u = 2 recovers the original model.
        let c = Curve::from_coeffs([0, 0, 0, -1, 0]);
        let blow_up = Transformation::new(rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)).unwrap();
        let big = transform(&c, &blow_up).unwrap();
        assert_eq!(big, Curve::from_coeffs([0, 0, 0, -16, 0]));
        let back = transform(&big, &Transformation::of_integers(2, 0, 0, 0)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn non_integral_image_is_an_error() {
        let c = Curve::from_coeffs([0, 0, 1, -1, 0]);
        let t = Transformation::of_integers(2, 0, 0, 0);
        assert_eq!(transform(&c, &t), Err(WeierstrassError::NonIntegralModel));
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal_at(&Curve::from_coeffs([0, 0, 1, -1, 0]), 37).unwrap());
        assert!(!is_minimal_at(&Curve::from_coeffs([0, 0, 0, -16, 0]), 2).unwrap());
        assert!(is_minimal_at(&Curve::from_coeffs([0, 0, 1, 0, 2]), 3).unwrap());
    }

    #[test]
    fn minimize_examples() {
        let minimal = Curve::from_coeffs([0, -1, 1, -10, -20]);
        let (m, t) = minimize(&minimal).unwrap();
        assert_eq!(m, minimal);
        assert!(t.is_identity());

        let big = Curve::from_coeffs([0, 0, 0, -16, 0]);
        let (m, t) = minimize(&big).unwrap();
        assert_eq!(m, Curve::from_coeffs([0, 0, 0, -1, 0]));
        assert_eq!(t.u, rat(2, 1));
        let d_big = invariants(&big).unwrap().discriminant;
        let d_min = invariants(&m).unwrap().discriminant;
        assert_eq!(d_big, d_min * BigInt::from(2).pow(12));
    }

    #[test]
    fn minimize_at_three() {
        // 3-adic analog of the rescale example: v_3(disc) drops by 12
        let big = Curve::from_coeffs([0, 0, 0, -81 * 16, 0]);
        let inv_big = invariants(&big).unwrap();
        let (m, _) = minimize(&big).unwrap();
        let inv_min = invariants(&m).unwrap();
        let v_before = inv_big.v_disc(3).finite().unwrap();
        let v_after = inv_min.v_disc(3).finite().unwrap();
        assert_eq!(v_before - v_after, 12);
        assert!(is_minimal_at(&m, 3).unwrap());
        assert!(is_minimal_at(&m, 2).unwrap());
    }

    #[test]
    fn compose_and_inverse() {
        let t1 = Transformation::of_integers(2, 3, -1, 5);
        let t2 = Transformation::of_integers(3, -2, 4, 1);
        let c = Curve::from_coeffs([1, -2, 3, -4, 5]);
        // (0,0,0,...) may fail integrality for arbitrary composites, so check
        // on the rational side via the group law against the direct route.
        let via_composite = t1.then(&t2);
        let step1 = transform(&c, &t1);
        if let Ok(mid) = step1 {
            let direct = transform(&mid, &t2);
            let composed = transform(&c, &via_composite);
            assert_eq!(direct.ok(), composed.ok());
        }
        let id = t1.then(&t1.inverse());
        assert!(id.is_identity());
        let id2 = t1.inverse().then(&t1);
        assert!(id2.is_identity());
    }
}
