//! Exact integer number theory: factorization, Möbius, Euler and Jordan
//! totients, divisor lists, multiplicative orders and cyclotomic values.
//!
//! Everything here is deterministic and exact. Divisions that are supposed
//! to be exact by a theorem are checked and fail hard if a remainder shows
//! up, since that always indicates a bug or a violated precondition upstream.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("arguments are not coprime: gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
}

/// Canonical factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    /// (prime, exponent) pairs with strictly increasing primes and exponents >= 1.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn prime_divisors(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Deterministic trial division with a 2-3-5 wheel. Inputs stay at desk
/// scale (well below 10^18), so nothing probabilistic is needed.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let value = n;
    let mut factors = Vec::new();
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // wheel mod 30 increments starting at 7
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut w = 0usize;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { value, factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

/// All primes up to and including `max`, ascending.
pub fn primes_up_to(max: u64) -> Vec<u64> {
    if max < 2 {
        return Vec::new();
    }
    let m = max as usize;
    let mut sieve = vec![true; m + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= m {
        if sieve[i] {
            let mut j = i * i;
            while j <= m {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=m).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let f = factorize(n);
    if f.factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut r = n;
    for (p, _) in factorize(n).factors {
        r = r / p * (p - 1);
    }
    r
}

/// Jordan totient J_2(n) = n^2 * prod_{p|n} (p^2-1)/p^2, exactly.
pub fn jordan_totient2(n: u64) -> u64 {
    assert!(n >= 1);
    let mut r = n * n;
    for (p, _) in factorize(n).factors {
        debug_assert_eq!(r % (p * p), 0);
        r = r / (p * p) * (p * p - 1);
    }
    r
}

/// Divisors of n, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let f = factorize(n);
    let mut divs = vec![1u64];
    for (p, e) in f.factors {
        let len = divs.len();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            for i in 0..len {
                divs.push(divs[i] * pe);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1);
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least t >= 1 with q^t = 1 (mod m). `multiplicative_order(q, 1) == 1`.
pub fn multiplicative_order(q: u64, m: u64) -> Result<u64, NumError> {
    assert!(m >= 1);
    if m == 1 {
        return Ok(1);
    }
    let q0 = q % m;
    if gcd(q0, m) != 1 {
        return Err(NumError::NotCoprime(q, m));
    }
    // order divides phi(m): start there and strip prime factors
    let phi = euler_phi(m);
    let mut t = phi;
    for (p, e) in factorize(phi).factors {
        for _ in 0..e {
            if t % p == 0 && pow_mod(q0, t / p, m) == 1 {
                t /= p;
            } else {
                break;
            }
        }
    }
    debug_assert_eq!(pow_mod(q0, t, m), 1);
    Ok(t)
}

pub fn big_pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Value of the d-th cyclotomic polynomial at q, computed exactly via
/// prod_{e|d} (q^{d/e}-1)^{mu(e)} with checked division.
pub fn cyclotomic_value(d: u64, q: u64) -> BigUint {
    assert!(d >= 1 && q >= 2);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for e in divisors(d) {
        let term = big_pow(q, d / e) - BigUint::one();
        match moebius(e) {
            1 => num *= &term,
            -1 => den *= &term,
            _ => {}
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    assert!(rem.is_zero(), "cyclotomic division must be exact");
    quot
}

/// u64 convenience wrapper; panics if the value does not fit.
pub fn cyclotomic_value_u64(d: u64, q: u64) -> u64 {
    use num_traits::ToPrimitive;
    cyclotomic_value(d, q)
        .to_u64()
        .expect("cyclotomic value exceeds u64")
}
