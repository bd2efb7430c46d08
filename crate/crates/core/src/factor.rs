//! Integer factorisation support: deterministic Miller-Rabin for `u64`,
//! probabilistic Miller-Rabin for big integers, and Brent's variant of
//! Pollard rho. Only the primes dividing a curve discriminant are ever
//! needed, so factor exponents stay small while the cofactors can be large.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::padic::pow_mod;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    /// A prime factor does not fit in `u64`; downstream per-prime tables
    /// index primes by machine word.
    #[error("prime factor {0} exceeds the supported range")]
    PrimeTooLarge(BigUint),
}

/// Deterministic Miller-Rabin for `u64` (the 12-base witness set is exact
/// for the full 64-bit range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // fixed witness set; probabilistic above u64 but ample for this use
    for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 61, 73, 1662803] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        let mut composite = true;
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                composite = false;
                break;
            }
        }
        if composite {
            return false;
        }
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    // Brent cycle detection; n must be odd, composite, not a prime power hit below
    for c in 1u64.. {
        let f = |x: u64| (((x as u128 * x as u128) % n as u128) as u64 + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

fn rho_big(n: &BigUint) -> BigUint {
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; retry with next c
            }
            let d = diff.gcd(n);
            if !d.is_one() {
                if d == *n {
                    break;
                }
                return d;
            }
        }
    }
    unreachable!()
}

fn factor_big_into(n: BigUint, out: &mut Vec<u64>) -> Result<(), FactorError> {
    if n.is_one() {
        return Ok(());
    }
    if let Ok(small) = u64::try_from(&n) {
        factor_u64_into(small, out);
        return Ok(());
    }
    if is_prime_big(&n) {
        return Err(FactorError::PrimeTooLarge(n));
    }
    let d = rho_big(&n);
    let q = &n / &d;
    factor_big_into(d, out)?;
    factor_big_into(q, out)
}

/// Factors `|n|` into `(prime, exponent)` pairs sorted by prime.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>, FactorError> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs().to_biguint().expect("nonnegative");
    let mut primes: Vec<u64> = Vec::new();
    // strip small primes first so rho only ever sees hard cofactors
    for p in SMALL_PRIMES {
        let p_big = BigUint::from(p);
        while (&m % &p_big).is_zero() {
            m /= &p_big;
            primes.push(p);
        }
        if m.is_one() {
            break;
        }
    }
    factor_big_into(m, &mut primes)?;
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

const SMALL_PRIMES: [u64; 46] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199,
];

/// Primes up to `bound`, by trial division against [`is_prime`].
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_table_is_prime() {
        for p in SMALL_PRIMES {
            assert!(is_prime(p));
        }
        for n in [0u64, 1, 4, 6, 9, 15, 21, 25, 27, 33, 49, 121, 169] {
            assert!(!is_prime(n), "{n}");
        }
    }

    #[test]
    fn known_primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(18_446_744_073_709_551_555));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn factors_recompose() {
        let cases: Vec<BigInt> = vec![
            BigInt::from(-161051),                  // -11^5
            BigInt::from(2187),                     // 3^7
            BigInt::from(1),
            BigInt::from(-1),
            BigInt::from(600851475143u64),
            BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64),
            BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
        ];
        for n in cases {
            let fs = factor(&n).unwrap();
            let mut prod = BigInt::from(1);
            for (p, e) in &fs {
                assert!(is_prime(*p));
                prod *= BigInt::from(*p).pow(*e);
            }
            assert_eq!(prod, n.abs(), "recompose {n}");
            for w in fs.windows(2) {
                assert!(w[0].0 < w[1].0, "sorted, distinct primes");
            }
        }
    }

    #[test]
    fn oversized_prime_is_reported() {
        // (2^89 - 1) is a Mersenne prime, far beyond u64
        let m89 = (BigInt::from(1) << 89u32) - 1;
        match factor(&m89) {
            Err(FactorError::PrimeTooLarge(p)) => {
                assert_eq!(BigInt::from(p), m89);
            }
            other => panic!("expected PrimeTooLarge, got {other:?}"),
        }
    }
}
