//! p-adic primitives over `Q`: valuations, unit parts, Legendre symbols,
//! square classes, and the classification of the quadratic character
//! attached to a square class of `Q_p^x`.
//!
//! Squareness in `Q_p` is decided by Hensel-criterion congruences: for odd
//! `p` a unit is a square iff it is a square mod `p`, and for `p = 2` a unit
//! is a square iff it is `1 mod 8`. This keeps every operation exact and
//! total.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::ops::Add;

use crate::factor::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("an odd prime is required")]
    OddPrimeRequired,
}

/// A p-adic valuation. `Infinite` arises only from the input 0, and makes
/// comparisons like `v(c4) >= 2` work without special-casing `c4 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Multiplies a finite valuation by `k`; infinity is absorbing.
    pub fn scaled(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "oo"),
        }
    }
}

fn check_prime(p: u64) -> Result<(), PadicError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(PadicError::NotPrime(p))
    }
}

/// Exact p-adic valuation of an integer; `Infinite` iff the integer is 0.
/// Divides out doubling powers of `p` so large valuations stay cheap.
pub fn int_valuation(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut cur = x.clone();
    let mut v: i64 = 0;
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        cur = q;
        v += 1;
        let mut chunk = &p * &p;
        let mut step = 2i64;
        loop {
            let (q, r) = cur.div_rem(&chunk);
            if !r.is_zero() {
                break;
            }
            cur = q;
            v += step;
            chunk = &chunk * &chunk;
            step *= 2;
        }
    }
    Valuation::Finite(v)
}

/// Exact p-adic valuation of a rational; `Infinite` iff the input is 0.
pub fn valuation(x: &BigRational, p: u64) -> Result<Valuation, PadicError> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let vn = int_valuation(x.numer(), p).finite().expect("nonzero numerator");
    let vd = int_valuation(x.denom(), p).finite().expect("nonzero denominator");
    Ok(Valuation::Finite(vn - vd))
}

pub(crate) fn int_unit_part(x: &BigInt, p: u64) -> BigInt {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return cur;
        }
        cur = q;
    }
}

/// `x * p^{-v_p(x)}`, the unit part of a nonzero rational at `p`.
pub fn unit_part(x: &BigRational, p: u64) -> Result<BigRational, PadicError> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(PadicError::ZeroArgument);
    }
    Ok(BigRational::new(
        int_unit_part(x.numer(), p),
        int_unit_part(x.denom(), p),
    ))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn legendre_u64(u: u64, p: u64) -> i32 {
    let u = u % p;
    if u == 0 {
        return 0;
    }
    let e = pow_mod(u, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Legendre symbol `(u/p)` for an odd prime `p`: `0` iff `p | u`, otherwise
/// `+1` iff `u` is a nonzero square mod `p`.
pub fn legendre(u: &BigInt, p: u64) -> Result<i32, PadicError> {
    check_prime(p)?;
    if p == 2 {
        return Err(PadicError::OddPrimeRequired);
    }
    let r = u.mod_floor(&BigInt::from(p));
    let r: u64 = r.try_into().expect("residue fits u64");
    Ok(legendre_u64(r, p))
}

/// Smallest positive quadratic nonresidue mod an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    debug_assert!(p > 2 && is_prime(p));
    (2..p).find(|&n| legendre_u64(n, p) == -1).expect("nonresidue exists")
}

/// The square class of a nonzero rational in `Q_p^x / (Q_p^x)^2`.
///
/// `parity` is `v_p(x) mod 2`. For odd `p` the unit class is `1` or the
/// smallest positive nonresidue; for `p = 2` it is the unit part mod 8.
/// `x` is a square in `Q_p` iff `parity == 0` and `unit_class == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareClass {
    pub parity: u8,
    pub unit_class: u64,
}

pub fn square_class(x: &BigRational, p: u64) -> Result<SquareClass, PadicError> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(PadicError::ZeroArgument);
    }
    let vn = int_valuation(x.numer(), p).finite().expect("nonzero");
    let vd = int_valuation(x.denom(), p).finite().expect("nonzero");
    let parity = (vn - vd).rem_euclid(2) as u8;
    let nu = int_unit_part(x.numer(), p);
    let du = int_unit_part(x.denom(), p);
    let unit_class = if p == 2 {
        // odd residues mod 8 are self-inverse, so num/den collapses to a product
        let m8 = BigInt::from(8);
        let a: u64 = nu.mod_floor(&m8).try_into().expect("fits");
        let b: u64 = du.mod_floor(&m8).try_into().expect("fits");
        a * b % 8
    } else {
        let l = legendre(&nu, p)? * legendre(&du, p)?;
        if l == 1 {
            1
        } else {
            smallest_nonresidue(p)
        }
    };
    Ok(SquareClass { parity, unit_class })
}

/// Whether a nonzero rational is a square in `Q_p^x`.
pub fn is_square(x: &BigRational, p: u64) -> Result<bool, PadicError> {
    let sc = square_class(x, p)?;
    Ok(sc.parity == 0 && sc.unit_class == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadCharKind {
    Trivial,
    UnramifiedNontrivial,
    Ramified,
}

impl QuadCharKind {
    pub fn label(self) -> &'static str {
        match self {
            QuadCharKind::Trivial => "trivial",
            QuadCharKind::UnramifiedNontrivial => "unramified-nontrivial",
            QuadCharKind::Ramified => "ramified",
        }
    }
}

/// The quadratic character of `Q_p^x` cut out by a square class, together
/// with its conductor exponent (0 unless ramified; 1 for odd `p`; 2 or 3
/// for `p = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadCharClass {
    pub kind: QuadCharKind,
    pub conductor_exponent: u32,
}

/// Classifies the quadratic character attached to the square class of
/// `gamma` in `Q_p^x`.
pub fn quad_char_class(gamma: &BigRational, p: u64) -> Result<QuadCharClass, PadicError> {
    let sc = square_class(gamma, p)?;
    let (kind, conductor_exponent) = if p == 2 {
        match (sc.parity, sc.unit_class) {
            (0, 1) => (QuadCharKind::Trivial, 0),
            (0, 5) => (QuadCharKind::UnramifiedNontrivial, 0),
            (0, _) => (QuadCharKind::Ramified, 2), // unit class 3 or 7
            (_, _) => (QuadCharKind::Ramified, 3), // odd valuation
        }
    } else {
        match (sc.parity, sc.unit_class) {
            (0, 1) => (QuadCharKind::Trivial, 0),
            (0, _) => (QuadCharKind::UnramifiedNontrivial, 0),
            (_, _) => (QuadCharKind::Ramified, 1),
        }
    };
    Ok(QuadCharClass { kind, conductor_exponent })
}
