//! Small finite fields F_{p^d} with discrete-log representation and a
//! Zech-logarithm table for addition.
//!
//! The defining polynomial is the lexicographically smallest monic
//! irreducible of degree d over F_p (coefficients compared low-degree
//! first); the primitive element is the smallest field element, in the
//! induced lexicographic order, that generates the multiplicative group.
//! Both choices are deterministic; class counts downstream must not depend
//! on them, and that independence is tested.

use crate::numtheory::factorize;

pub const DEFAULT_FIELD_CAP: u64 = 1 << 18;

/// Nonzero elements are stored as discrete logs 0..m-1 with respect to the
/// chosen primitive element; `m` itself encodes the zero element.
#[derive(Debug)]
pub struct ZechField {
    pub p: u64,
    pub d: u32,
    /// field size p^d
    pub size: u64,
    /// multiplicative group order p^d - 1
    pub m: u64,
    /// lex-smallest monic irreducible, low-degree-first coefficients, length d+1
    pub modulus: Vec<u64>,
    /// vector encoding of the chosen primitive element
    pub primitive: u64,
    /// alog[j] = vector encoding of zeta^j
    alog: Vec<u32>,
    /// dlog[enc] = j for enc != 0; dlog[0] = m (sentinel)
    dlog: Vec<u32>,
    /// zech[b] = dlog(1 + zeta^b), with m encoding zero
    zech: Vec<u32>,
    /// dlog of -1 (m/2 for odd p, 0 for p = 2)
    pub minus_one: u64,
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce mod the monic modulus
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..d {
            let t = prod[i - d + j] + (p - modulus[j] % p) % p * c % p;
            prod[i - d + j] = t % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    // trial division by every monic polynomial of degree 1..=d/2
    let mut div = vec![0u64; d / 2 + 1];
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for enc in 0..count {
            let mut e = enc;
            for c in div.iter_mut().take(deg) {
                *c = e % p;
                e /= p;
            }
            div[deg] = 1;
            if poly_divides(&div[..=deg], f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(g: &[u64], f: &[u64], p: u64) -> bool {
    // remainder of division by monic g; divisibility iff it vanishes
    let mut r: Vec<u64> = f.iter().map(|&c| c % p).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for i in 0..=dg {
                r[shift + i] = (r[shift + i] + (p - g[i] % p) * lead) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn encode(vec: &[u64], p: u64) -> u64 {
    // low-degree coefficient least significant
    let mut e = 0u64;
    for &c in vec.iter().rev() {
        e = e * p + c;
    }
    e
}

fn decode(mut e: u64, p: u64, d: u32) -> Vec<u64> {
    let mut v = vec![0u64; d as usize];
    for c in v.iter_mut() {
        *c = e % p;
        e /= p;
    }
    v
}

impl ZechField {
    pub fn new(p: u64, d: u32, cap: u64) -> Self {
        Self::with_primitive_choice(p, d, cap, 0)
    }

    /// `skip_primitives` selects the (skip+1)-th primitive element in lex
    /// order; nonzero values exist only to test generator independence.
    pub fn with_primitive_choice(p: u64, d: u32, cap: u64, skip_primitives: usize) -> Self {
        assert!(d >= 1);
        let size = p.checked_pow(d).expect("field size overflow");
        assert!(size <= cap, "field size {size} exceeds cap {cap}");
        let m = size - 1;

        // lexicographically smallest monic irreducible of degree d
        let mut modulus = None;
        'outer: for enc in 0..size {
            let mut f = decode(enc, p, d);
            f.push(1);
            if poly_is_irreducible(&f, p) {
                modulus = Some(f);
                break 'outer;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial always exists");

        // smallest primitive element in the induced lexicographic order
        let mfact = factorize(m);
        let mut primitive = None;
        let mut skipped = skip_primitives;
        'search: for enc in 1..size {
            let g = decode(enc, p, d);
            let mut ok = true;
            for &(ell, _) in &mfact.factors {
                if poly_pow(&g, m / ell, &modulus, p) == vec_one(d) {
                    ok = false;
                    break;
                }
            }
            if ok {
                if skipped == 0 {
                    primitive = Some((enc, g));
                    break 'search;
                }
                skipped -= 1;
            }
        }
        let (prim_enc, prim) = primitive.expect("multiplicative group is cyclic");

        // discrete log and Zech tables
        let mut alog = vec![0u32; m as usize];
        let mut dlog = vec![m as u32; size as usize];
        let mut cur = vec_one(d);
        for j in 0..m {
            let e = encode(&cur, p);
            alog[j as usize] = e as u32;
            dlog[e as usize] = j as u32;
            cur = poly_mul_mod(&cur, &prim, &modulus, p);
        }
        debug_assert_eq!(cur, vec_one(d), "primitive element order must be m");
        let mut zech = vec![0u32; m as usize];
        for b in 0..m as usize {
            let mut v = decode(alog[b] as u64, p, d);
            v[0] = (v[0] + 1) % p;
            let e = encode(&v, p);
            zech[b] = dlog[e as usize]; // m-sentinel when 1 + zeta^b = 0
        }
        let minus_one = if p == 2 { 0 } else { m / 2 };
        debug_assert!(p == 2 || zech[minus_one as usize] == m as u32);

        ZechField {
            p,
            d,
            size,
            m,
            modulus,
            primitive: prim_enc,
            alog,
            dlog,
            zech,
            minus_one,
        }
    }

    /// Zero element sentinel in dlog coordinates.
    pub fn zero(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self, t: u64) -> bool {
        t == self.m
    }

    /// dlog of the basis monomial x^j (vector encoding p^j).
    pub fn basis_dlog(&self, j: u32) -> u64 {
        assert!(j < self.d);
        self.dlog[self.p.pow(j) as usize] as u64
    }

    /// Addition in dlog coordinates via the Zech table.
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.is_zero(a) {
            return b;
        }
        if self.is_zero(b) {
            return a;
        }
        // zeta^a + zeta^b = zeta^a (1 + zeta^{b-a})
        let diff = (b + self.m - a) % self.m;
        let z = self.zech[diff as usize] as u64;
        if z == self.m {
            self.m
        } else {
            (a + z) % self.m
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.is_zero(a) {
            a
        } else {
            (a + self.minus_one) % self.m
        }
    }

    /// Vector-space encoding of a dlog element (for tests and displays).
    pub fn to_vector_encoding(&self, a: u64) -> u64 {
        if self.is_zero(a) {
            0
        } else {
            self.alog[a as usize] as u64
        }
    }
}

fn vec_one(d: u32) -> Vec<u64> {
    let mut v = vec![0u64; d as usize];
    v[0] = 1;
    v
}

fn poly_pow(g: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let d = (modulus.len() - 1) as u32;
    let mut acc = vec_one(d);
    let mut b = g.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        // F_4: x^2 + x + 1 is the only (hence smallest) irreducible quadratic
        let f4 = ZechField::new(2, 2, 1 << 18);
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        // F_9: (c0,c1) lex order hits x^2 + 1 first
        let f9 = ZechField::new(3, 2, 1 << 18);
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        // F_25: x^2 + 1 has root 2, x^2 + 2 is irreducible
        let f25 = ZechField::new(5, 2, 1 << 18);
        assert_eq!(f25.modulus, vec![2, 0, 1]);
    }

    #[test]
    fn zech_identity_exhaustive() {
        for (p, d) in [(2u64, 4u32), (3, 2), (5, 2), (7, 2), (3, 3)] {
            let f = ZechField::new(p, d, 1 << 18);
            // 1 + zeta^b = zeta^{zech(b)} checked through vector encodings
            for b in 0..f.m {
                let sum = f.add(0, b);
                let lhs = {
                    let mut v = decode(f.to_vector_encoding(b), p, d);
                    v[0] = (v[0] + 1) % p;
                    encode(&v, p)
                };
                assert_eq!(f.to_vector_encoding(sum), lhs);
            }
        }
    }

    #[test]
    fn addition_group_axioms_small() {
        let f = ZechField::new(3, 2, 1 << 18);
        let all: Vec<u64> = (0..=f.m).collect();
        for &a in &all {
            assert_eq!(f.add(a, f.zero()), a);
            assert!(f.is_zero(f.add(a, f.neg(a))));
            for &b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                for &c in &all {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn second_primitive_differs() {
        let f1 = ZechField::new(5, 2, 1 << 18);
        let f2 = ZechField::with_primitive_choice(5, 2, 1 << 18, 1);
        assert_ne!(f1.primitive, f2.primitive);
        assert_eq!(f1.modulus, f2.modulus);
    }
}
