//! Dickson near-field multiplicative groups and the sharply 2-transitive
//! groups they generate, together with the two closed-form class counts
//! (Clifford-style double sum and its Möbius-inverted form) that the
//! brute-force enumeration is cross-validated against.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::grouplib::{FiniteGroup, GroupError, GroupOracle, DEFAULT_ELEMENT_CAP};
use crate::numtheory::{
    big_pow, divisors, euler_phi, factorize, is_prime, jordan_totient2, moebius,
    multiplicative_order,
};
use crate::zechfield::{ZechField, DEFAULT_FIELD_CAP};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NearfieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("Dickson condition fails for (p, k, n) = ({0}, {1}, {2})")]
    DicksonViolated(u64, u64, u64),
    #[error("no exponent in [0, {n}) solves q^t = 1 + a(q-1) mod (q-1)n for a = {a}")]
    NoSolution { a: u64, n: u64 },
    #[error("inexact division in {0}; a precondition is violated")]
    NonIntegral(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Parameters (p, k, n) of a Dickson near-field of order q^n, q = p^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DicksonParams {
    pub p: u64,
    pub k: u64,
    pub n: u64,
}

impl DicksonParams {
    pub fn new(p: u64, k: u64, n: u64) -> Result<Self, NearfieldError> {
        if !is_prime(p) {
            return Err(NearfieldError::NotPrime(p));
        }
        if !dickson_condition(p, k, n) {
            return Err(NearfieldError::DicksonViolated(p, k, n));
        }
        Ok(DicksonParams { p, k, n })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// degree of the field over the prime field
    pub fn d(&self) -> u64 {
        self.n * self.k
    }

    /// multiplicative group order q^n - 1
    pub fn m(&self) -> u64 {
        self.q().checked_pow(self.n as u32).expect("q^n overflow") - 1
    }
}

/// Both divisibility requirements: every prime divisor of n divides q - 1,
/// and if 4 | n then 4 | q - 1.
pub fn dickson_condition(p: u64, k: u64, n: u64) -> bool {
    assert!(k >= 1 && n >= 1);
    let q1 = match p.checked_pow(k as u32) {
        Some(q) => q - 1,
        None => return false,
    };
    if n % 4 == 0 && q1 % 4 != 0 {
        return false;
    }
    factorize(n).prime_divisors().all(|ell| q1 % ell == 0)
}

/// The unique a* in [0, n) with q^{a*} = 1 + a(q-1) mod (q-1)n.
pub fn a_star(a: u64, q: u64, n: u64) -> Result<u64, NearfieldError> {
    let modulus = (q - 1) * n;
    if modulus == 1 {
        return Ok(0);
    }
    let target = (1 + (a % n) * (q - 1)) % modulus;
    let mut pow = 1u64 % modulus;
    for t in 0..n {
        if pow == target {
            return Ok(t);
        }
        pow = (pow as u128 * (q as u128) % modulus as u128) as u64;
    }
    Err(NearfieldError::NoSolution { a, n })
}

/// Element (zeta^a, gamma^i) of GammaL(1, q^n) as a residue pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemilinearElement {
    pub a: u64,
    pub i: u64,
}

/// Oracle for (Z/m) x| (Z/n) with gamma acting as multiplication by q:
/// (a, i) * (b, j) = (a + b q^i mod m, i + j mod n).
pub struct SemilinearOracle {
    pub m: u64,
    pub n: u64,
    /// q^i mod m for i in 0..n
    qpow: Vec<u64>,
}

impl SemilinearOracle {
    pub fn new(q: u64, m: u64, n: u64) -> Self {
        let mut qpow = Vec::with_capacity(n as usize);
        let mut x = 1u64 % m;
        for _ in 0..n {
            qpow.push(x);
            x = (x as u128 * q as u128 % m as u128) as u64;
        }
        SemilinearOracle { m, n, qpow }
    }
}

impl GroupOracle for SemilinearOracle {
    type Element = SemilinearElement;

    fn identity(&self) -> SemilinearElement {
        SemilinearElement { a: 0, i: 0 }
    }

    fn multiply(&self, x: &SemilinearElement, y: &SemilinearElement) -> SemilinearElement {
        let a = (x.a as u128 + y.a as u128 * self.qpow[x.i as usize] as u128) % self.m as u128;
        SemilinearElement {
            a: a as u64,
            i: (x.i + y.i) % self.n,
        }
    }

    fn invert(&self, g: &SemilinearElement) -> SemilinearElement {
        let i = (self.n - g.i) % self.n;
        // q^n = 1 mod m, so q^{-i} = q^{n-i}
        let a = (self.m as u128 - g.a as u128) * self.qpow[i as usize] as u128 % self.m as u128;
        SemilinearElement { a: a as u64, i }
    }

    fn canonical_key(&self, g: &SemilinearElement) -> u128 {
        g.a as u128 * self.n as u128 + g.i as u128
    }
}

/// The a* exponents for a mod n.
fn astar_table(params: &DicksonParams) -> Result<Vec<u64>, NearfieldError> {
    let q = params.q();
    (0..params.n).map(|r| a_star(r, q, params.n)).collect()
}

/// The near-field multiplicative group F^x = {(zeta^a, gamma^{a*})} of order
/// q^n - 1, generated inside (Z/m) x| (Z/n). Equals the Singer cycle when
/// n = 1.
pub fn nearfield_group(
    params: &DicksonParams,
) -> Result<FiniteGroup<SemilinearOracle>, NearfieldError> {
    let q = params.q();
    let m = params.m();
    let n = params.n;
    let astar = astar_table(params)?;
    let oracle = SemilinearOracle::new(q, m, n);
    let elements: Vec<SemilinearElement> = (0..m)
        .map(|a| SemilinearElement {
            a,
            i: astar[(a % n) as usize],
        })
        .collect();
    let generators = vec![
        SemilinearElement {
            a: 1 % m,
            i: astar[(1 % n) as usize],
        },
        SemilinearElement { a: n % m, i: 0 },
    ];
    Ok(FiniteGroup::from_elements(oracle, elements, generators)?)
}

/// Kernel A of the exponent epimorphism onto Z/n: all of F^x with trivial
/// gamma part, cyclic of order (q^n - 1)/n.
pub fn gamma_kernel(
    params: &DicksonParams,
) -> Result<FiniteGroup<SemilinearOracle>, NearfieldError> {
    let m = params.m();
    let n = params.n;
    if m % n != 0 {
        return Err(NearfieldError::NonIntegral("gamma_kernel order (q^n-1)/n"));
    }
    let oracle = SemilinearOracle::new(params.q(), m, n);
    let elements: Vec<SemilinearElement> = (0..m / n)
        .map(|t| SemilinearElement { a: t * n, i: 0 })
        .collect();
    let generators = vec![SemilinearElement { a: n % m, i: 0 }];
    Ok(FiniteGroup::from_elements(oracle, elements, generators)?)
}

/// alpha(e) = sum_{f|e} mu(e/f) (q^f - 1)/f: number of elements of F^x
/// lying in the degree-e subfield but in no proper subfield of it.
pub fn alpha(e: u64, q: u64) -> Result<BigUint, NearfieldError> {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let mut acc = BigInt::from(0);
    for f in divisors(e) {
        let term = big_pow(q, f) - BigUint::from(1u32);
        let (quot, rem) = num_integer::Integer::div_rem(&term, &BigUint::from(f));
        if !rem.is_zero() {
            return Err(NearfieldError::NonIntegral("alpha term (q^f-1)/f"));
        }
        let signed = BigInt::from(quot);
        match moebius(e / f) {
            1 => acc += signed,
            -1 => acc -= signed,
            _ => {}
        }
    }
    if acc.is_negative() {
        return Err(NearfieldError::NonIntegral("alpha must be nonnegative"));
    }
    Ok(acc.to_biguint().unwrap())
}

/// beta(e) = |F^x meet F_{q^e}| = (q^e - 1)/e.
pub fn beta(e: u64, q: u64) -> Result<BigUint, NearfieldError> {
    let term = big_pow(q, e) - BigUint::from(1u32);
    let (quot, rem) = num_integer::Integer::div_rem(&term, &BigUint::from(e));
    if !rem.is_zero() {
        return Err(NearfieldError::NonIntegral("beta (q^e-1)/e"));
    }
    Ok(quot)
}

/// Class count of F^x through the normal cyclic kernel: for each divisor e
/// of n the alpha(e) kernel characters of inertial index e contribute
/// alpha(e)/e orbits with n/e extensions each.
pub fn clifford_class_count(params: &DicksonParams) -> Result<BigUint, NearfieldError> {
    let q = params.q();
    let n = params.n;
    let mut total = BigUint::zero();
    for e in divisors(n) {
        let a = alpha(e, q)?;
        let (orbits, rem) = num_integer::Integer::div_rem(&a, &BigUint::from(e));
        if !rem.is_zero() {
            return Err(NearfieldError::NonIntegral("alpha(e)/e orbit count"));
        }
        total += orbits * BigUint::from(n / e);
    }
    Ok(total)
}

/// Möbius-inverted closed form: sum_{e|n} (q^e - 1) J_2(n/e) / (n e).
/// Equals q^n - 1 when n = 1. Individual terms may be half-integral (the
/// smallest instance is (p, k, n) = (5, 1, 8)); only the full sum is
/// required to land on an integer.
pub fn closed_form_lb(params: &DicksonParams) -> Result<BigUint, NearfieldError> {
    let q = params.q();
    let n = params.n;
    // common denominator n * e | n^2
    let denom = BigUint::from(n * n);
    let mut total = BigUint::zero();
    for e in divisors(n) {
        let num = (big_pow(q, e) - BigUint::from(1u32)) * BigUint::from(jordan_totient2(n / e));
        total += num * BigUint::from(n / e);
    }
    let (sum, rem) = num_integer::Integer::div_rem(&total, &denom);
    if !rem.is_zero() {
        return Err(NearfieldError::NonIntegral("closed form sum"));
    }
    Ok(sum)
}

/// Strict lower bound satisfied by the closed form for n > 1:
/// l > (q - 1) phi(n) + (q^n - 1)/n^2, compared exactly.
pub fn closed_form_exceeds_floor(params: &DicksonParams) -> Result<bool, NearfieldError> {
    let q = params.q();
    let n = params.n;
    if n == 1 {
        return Ok(false);
    }
    let l = closed_form_lb(params)?;
    // compare n^2 l > n^2 (q-1) phi(n) + (q^n - 1)
    let n2 = BigUint::from(n * n);
    let lhs = l * &n2;
    let rhs = n2 * BigUint::from((q - 1) * euler_phi(n)) + big_pow(q, n) - BigUint::from(1u32);
    Ok(lhs > rhs)
}

/// Consequence of the Dickson condition used throughout: q has
/// multiplicative order exactly n modulo (q-1)n.
pub fn order_identity_holds(params: &DicksonParams) -> bool {
    let q = params.q();
    multiplicative_order(q, (q - 1) * params.n) == Ok(params.n)
}

/// Affine pair (t, s): the permutation x -> s(x) + t of the field, where
/// s = (zeta^a, gamma^i) acts as x -> zeta^a x^{q^i}. In dlog coordinates
/// the semilinear action is b -> a + b q^i mod m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffinePair {
    /// dlog of the translation part; m encodes the zero element
    pub t: u64,
    pub s: SemilinearElement,
}

pub struct SharplyOracle {
    pub field: ZechField,
    semi: SemilinearOracle,
    /// q^i mod m for the field action
    qpow: Vec<u64>,
}

impl SharplyOracle {
    fn act(&self, s: &SemilinearElement, t: u64) -> u64 {
        if self.field.is_zero(t) {
            t
        } else {
            ((s.a as u128 + t as u128 * self.qpow[s.i as usize] as u128)
                % self.field.m as u128) as u64
        }
    }
}

impl GroupOracle for SharplyOracle {
    type Element = AffinePair;

    fn identity(&self) -> AffinePair {
        AffinePair {
            t: self.field.zero(),
            s: SemilinearElement { a: 0, i: 0 },
        }
    }

    fn multiply(&self, x: &AffinePair, y: &AffinePair) -> AffinePair {
        // (t1, s1)(t2, s2) : z -> s1(s2 z + t2) + t1
        AffinePair {
            t: self.field.add(x.t, self.act(&x.s, y.t)),
            s: self.semi.multiply(&x.s, &y.s),
        }
    }

    fn invert(&self, g: &AffinePair) -> AffinePair {
        let sinv = self.semi.invert(&g.s);
        AffinePair {
            t: self.act(&sinv, self.field.neg(g.t)),
            s: sinv,
        }
    }

    fn canonical_key(&self, g: &AffinePair) -> u128 {
        (g.t as u128 * (self.field.m as u128 + 1) + g.s.a as u128) * self.semi.n as u128
            + g.s.i as u128
    }
}

/// The sharply 2-transitive group F x| F^x of order q^n (q^n - 1) acting on
/// the field of order q^n = p^{nk}.
pub fn sharply_2transitive_group(
    params: &DicksonParams,
    field_cap: u64,
    element_cap: usize,
) -> Result<FiniteGroup<SharplyOracle>, NearfieldError> {
    sharply_2transitive_with_choice(params, field_cap, element_cap, 0)
}

/// As `sharply_2transitive_group`, with an alternative primitive-element
/// choice for the underlying field (class data must not depend on it).
pub fn sharply_2transitive_with_choice(
    params: &DicksonParams,
    field_cap: u64,
    element_cap: usize,
    skip_primitives: usize,
) -> Result<FiniteGroup<SharplyOracle>, NearfieldError> {
    let q = params.q();
    let n = params.n;
    let m = params.m();
    let size = m + 1;
    if size as u128 * m as u128 > element_cap as u128 {
        return Err(NearfieldError::Group(GroupError::CapExceeded(element_cap)));
    }
    let field = ZechField::with_primitive_choice(
        params.p,
        params.d() as u32,
        field_cap.max(size),
        skip_primitives,
    );
    let astar = astar_table(params)?;
    let semi = SemilinearOracle::new(q, m, n);
    let qpow = (0..n)
        .map(|i| {
            let mut x = 1u64 % m;
            for _ in 0..i {
                x = (x as u128 * q as u128 % m as u128) as u64;
            }
            x
        })
        .collect();
    let oracle = SharplyOracle { field, semi, qpow };

    let mut elements = Vec::with_capacity((size * m) as usize);
    for t in 0..=m {
        for a in 0..m {
            elements.push(AffinePair {
                t: if t == m { oracle.field.zero() } else { t },
                s: SemilinearElement {
                    a,
                    i: astar[(a % n) as usize],
                },
            });
        }
    }
    let mut generators: Vec<AffinePair> = (0..params.d() as u32)
        .map(|j| AffinePair {
            t: oracle.field.basis_dlog(j),
            s: SemilinearElement { a: 0, i: 0 },
        })
        .collect();
    generators.push(AffinePair {
        t: oracle.field.zero(),
        s: SemilinearElement {
            a: 1 % m,
            i: astar[(1 % n) as usize],
        },
    });
    generators.push(AffinePair {
        t: oracle.field.zero(),
        s: SemilinearElement { a: n % m, i: 0 },
    });
    Ok(FiniteGroup::from_elements(oracle, elements, generators)?)
}

/// Convenience: sharply 2-transitive group with default caps.
pub fn sharply_2transitive_default(
    params: &DicksonParams,
) -> Result<FiniteGroup<SharplyOracle>, NearfieldError> {
    sharply_2transitive_group(params, DEFAULT_FIELD_CAP, DEFAULT_ELEMENT_CAP)
}

/// Every Dickson-admissible (p, k, n) with q^n - 1 <= `m_max`, ordered by
/// (p, k, n).
pub fn admissible_params(m_max: u64) -> Vec<DicksonParams> {
    let mut out = Vec::new();
    for p in crate::numtheory::primes_up_to(m_max + 1) {
        let mut k = 1u64;
        loop {
            let q = match p.checked_pow(k as u32) {
                Some(q) if q <= m_max + 1 => q,
                _ => break,
            };
            let mut n = 1u64;
            loop {
                match q.checked_pow(n as u32) {
                    Some(qn) if qn - 1 <= m_max => {
                        if dickson_condition(p, k, n) {
                            out.push(DicksonParams { p, k, n });
                        }
                    }
                    _ => break,
                }
                n += 1;
            }
            k += 1;
        }
    }
    out.sort_unstable_by_key(|pr| (pr.p, pr.k, pr.n));
    out
}
