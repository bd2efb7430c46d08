//! Independent verification of the CM j-invariant table: for each listed
//! pair (D, j), a curve with that j-invariant must have trace of Frobenius
//! zero at exactly the good primes that are inert in the quadratic order of
//! discriminant D. Forty primes per curve make an accidental match
//! astronomically unlikely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use symcube::global::{is_cm, CM_J_INVARIANTS};
use symcube::padic::legendre;

/// Trace of Frobenius at a good prime `p >= 5` for `y^2 = x^3 + ax + b`,
/// by summing Legendre symbols of the cubic.
fn a_p(a: &BigInt, b: &BigInt, p: u64) -> i64 {
    let mut sum: i64 = 0;
    let pm = BigInt::from(p);
    for x in 0..p {
        let x = BigInt::from(x);
        let f = (&x * &x * &x + a * &x + b).mod_floor(&pm);
        sum += legendre(&f, p).unwrap() as i64;
    }
    -sum
}

/// A short model with the requested j-invariant.
fn curve_with_j(j: i64) -> (BigInt, BigInt) {
    match j {
        0 => (BigInt::from(0), BigInt::from(1)),
        1728 => (BigInt::from(1), BigInt::from(0)),
        _ => {
            let j = BigInt::from(j);
            let d = &j - 1728;
            (BigInt::from(-3) * &j * &d, BigInt::from(-2) * &j * &d * &d)
        }
    }
}

fn good_primes(a: &BigInt, b: &BigInt, skip: i64) -> Vec<u64> {
    let disc = BigInt::from(-16) * (BigInt::from(4) * a * a * a + BigInt::from(27) * b * b);
    assert!(!disc.is_zero());
    (5u64..200)
        .filter(|&p| symcube::factor::is_prime(p))
        .filter(|&p| !(&disc % BigInt::from(p)).is_zero())
        .filter(|&p| BigInt::from(skip).mod_floor(&BigInt::from(p)) != BigInt::zero())
        .collect()
}

#[test]
fn cm_table_matches_inert_prime_pattern() {
    for (d, j) in CM_J_INVARIANTS {
        let (a, b) = curve_with_j(j);
        let primes = good_primes(&a, &b, d);
        assert!(primes.len() >= 35, "enough testing primes for j = {j}");
        for p in primes {
            let inert = legendre(&BigInt::from(d), p).unwrap() == -1;
            let trace_zero = a_p(&a, &b, p) == 0;
            assert_eq!(
                trace_zero, inert,
                "j = {j}, D = {d}, p = {p}: supersingular pattern must follow inertia"
            );
        }
    }
}

#[test]
fn non_cm_values_fail_every_pattern() {
    // a few integers that are not CM j-invariants
    for j in [1i64, 2, 287495, 54001, -3374] {
        assert!(!is_cm(&BigRational::from(BigInt::from(j))));
        let (a, b) = curve_with_j(j);
        let pattern_holds = |d: i64| -> bool {
            good_primes(&a, &b, d)
                .into_iter()
                .take(25)
                .all(|p| (a_p(&a, &b, p) == 0) == (legendre(&BigInt::from(d), p).unwrap() == -1))
        };
        for (d, _) in CM_J_INVARIANTS {
            assert!(!pattern_holds(d), "j = {j} must not match the D = {d} pattern");
        }
    }
}

#[test]
fn non_integral_j_is_never_cm() {
    assert!(!is_cm(&BigRational::new(BigInt::from(110592), BigInt::from(37))));
    assert!(!is_cm(&BigRational::new(BigInt::from(-262537412640768000i64), BigInt::from(7))));
}
