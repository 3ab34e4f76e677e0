//! Property-based invariants for the number-theoretic layer.

use classcount::numtheory::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn moebius_is_multiplicative(a in 1u64..500, b in 1u64..500) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(moebius(a * b), moebius(a) * moebius(b));
    }

    #[test]
    fn jordan_totient2_is_multiplicative(a in 1u64..500, b in 1u64..500) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(jordan_totient2(a * b), jordan_totient2(a) * jordan_totient2(b));
    }

    #[test]
    fn factorization_reassembles(n in 1u64..1_000_000) {
        let f = factorize(n);
        let mut prod = 1u64;
        for (p, e) in &f.factors {
            prop_assert!(is_prime(*p));
            prod *= p.pow(*e);
        }
        prop_assert_eq!(prod, n);
        // primes strictly increasing
        prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn divisor_list_is_complete(n in 1u64..50_000) {
        let divs = divisors(n);
        prop_assert!(divs.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(divs.iter().all(|&d| n % d == 0));
        let tau: u64 = factorize(n).factors.iter().map(|&(_, e)| e as u64 + 1).product();
        prop_assert_eq!(divs.len() as u64, tau);
    }

    #[test]
    fn order_divides_totient(q in 2u64..200, m in 2u64..500) {
        prop_assume!(gcd(q % m, m) == 1 && q % m != 0);
        let t = multiplicative_order(q, m).unwrap();
        prop_assert_eq!(pow_mod(q, t, m), 1);
        prop_assert_eq!(euler_phi(m) % t, 0);
    }

    #[test]
    fn cyclotomic_at_prime_powers_detects_orders(q in 2u64..12, d in 1u64..20) {
        // any prime divisor p of Phi_d(q) with p coprime to d has order d mod p
        use num_traits::ToPrimitive;
        let value = cyclotomic_value(d, q);
        if let Some(v) = value.to_u64() {
            for (p, _) in factorize(v).factors {
                if d % p != 0 && p != 1 {
                    prop_assert_eq!(multiplicative_order(q, p).unwrap(), d);
                }
            }
        }
    }
}
