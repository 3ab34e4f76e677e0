//! Matrix and affine groups over prime fields: metacyclic Frobenius groups,
//! semidirect products V x| E, and an exhaustive backtracking search for the
//! subgroups of GL(2,p) of order p^2 - 1 that act regularly on the nonzero
//! vectors (the Zassenhaus complements of sharply 2-transitive groups).

use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

use crate::grouplib::{FiniteGroup, GroupError, GroupOracle, DEFAULT_ELEMENT_CAP};
use crate::numtheory::{factorize, is_prime};
use crate::zechfield::ZechField;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("t = {t} does not divide p - 1 = {pm1}")]
    InvalidDivisor { t: u64, pm1: u64 },
    #[error("search prime {0} exceeds the supported cap {1}")]
    CapExceeded(u64, u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Square matrix over F_p, dim <= 3, row-major entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    pub dim: u8,
    pub e: [u16; 9],
}

impl PrimeFieldMatrix {
    pub fn identity(dim: u8) -> Self {
        let mut e = [0u16; 9];
        for r in 0..dim as usize {
            e[r * dim as usize + r] = 1;
        }
        PrimeFieldMatrix { dim, e }
    }

    pub fn from_rows(rows: &[&[u64]], p: u64) -> Self {
        let dim = rows.len() as u8;
        let mut e = [0u16; 9];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim as usize);
            for (c, &v) in row.iter().enumerate() {
                e[r * dim as usize + c] = (v % p) as u16;
            }
        }
        PrimeFieldMatrix { dim, e }
    }

    pub fn det(&self, p: u64) -> u64 {
        let d = self.dim as usize;
        let g = |r: usize, c: usize| self.e[r * d + c] as u64;
        match d {
            1 => g(0, 0) % p,
            2 => (g(0, 0) * g(1, 1) % p + p - g(0, 1) * g(1, 0) % p) % p,
            3 => {
                let pos = g(0, 0) * (g(1, 1) * g(2, 2) % p) % p
                    + g(0, 1) * (g(1, 2) * g(2, 0) % p) % p
                    + g(0, 2) * (g(1, 0) * g(2, 1) % p) % p;
                let neg = g(0, 2) * (g(1, 1) * g(2, 0) % p) % p
                    + g(0, 0) * (g(1, 2) * g(2, 1) % p) % p
                    + g(0, 1) * (g(1, 0) * g(2, 2) % p) % p;
                (pos % p + p - neg % p) % p
            }
            _ => unreachable!("dim <= 3"),
        }
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        let d = self.dim as usize;
        let mut e = [0u16; 9];
        for r in 0..d {
            for c in 0..d {
                let mut acc = 0u64;
                for k in 0..d {
                    acc += self.e[r * d + k] as u64 * other.e[k * d + c] as u64;
                }
                e[r * d + c] = (acc % p) as u16;
            }
        }
        PrimeFieldMatrix { dim: self.dim, e }
    }

    pub fn inverse(&self, p: u64) -> Self {
        let d = self.dim as usize;
        let det = self.det(p);
        assert_ne!(det, 0, "matrix not invertible");
        let det_inv = crate::numtheory::pow_mod(det, p - 2, p);
        let g = |r: usize, c: usize| self.e[r * d + c] as u64;
        let mut e = [0u16; 9];
        match d {
            1 => e[0] = det_inv as u16,
            2 => {
                let adj = [
                    g(1, 1) % p,
                    (p - g(0, 1) % p) % p,
                    (p - g(1, 0) % p) % p,
                    g(0, 0) % p,
                ];
                for (i, &v) in adj.iter().enumerate() {
                    e[i] = (v * det_inv % p) as u16;
                }
            }
            3 => {
                // adjugate = transposed cofactor matrix
                for r in 0..3 {
                    for c in 0..3 {
                        let (r1, r2) = match c {
                            0 => (1, 2),
                            1 => (0, 2),
                            _ => (0, 1),
                        };
                        let (c1, c2) = match r {
                            0 => (1, 2),
                            1 => (0, 2),
                            _ => (0, 1),
                        };
                        let minor = (g(r1, c1) * g(r2, c2) % p + p - g(r1, c2) * g(r2, c1) % p) % p;
                        let sign = (r + c) % 2 == 1;
                        let cof = if sign && minor != 0 { p - minor } else { minor };
                        e[r * 3 + c] = (cof * det_inv % p) as u16;
                    }
                }
            }
            _ => unreachable!(),
        }
        PrimeFieldMatrix { dim: self.dim, e }
    }

    /// column M e1, for regularity bookkeeping
    pub fn base_image(&self, _p: u64) -> (u64, u64) {
        let d = self.dim as usize;
        debug_assert_eq!(d, 2);
        (self.e[0] as u64, self.e[2] as u64)
    }
}

/// true iff det(M - I) != 0, i.e. M fixes no nonzero vector.
pub fn fixed_point_free(m: &PrimeFieldMatrix, p: u64) -> bool {
    let d = m.dim as usize;
    let mut shifted = *m;
    for r in 0..d {
        let v = shifted.e[r * d + r] as u64;
        shifted.e[r * d + r] = ((v + p - 1) % p) as u16;
    }
    shifted.det(p) != 0
}

pub struct MatOracle {
    pub p: u64,
    pub dim: u8,
}

impl GroupOracle for MatOracle {
    type Element = PrimeFieldMatrix;

    fn identity(&self) -> PrimeFieldMatrix {
        PrimeFieldMatrix::identity(self.dim)
    }

    fn multiply(&self, a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        a.mul(b, self.p)
    }

    fn invert(&self, g: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        g.inverse(self.p)
    }

    fn canonical_key(&self, g: &PrimeFieldMatrix) -> u128 {
        let d = g.dim as usize;
        let mut key = 0u128;
        for i in 0..d * d {
            key = key * self.p as u128 + g.e[i] as u128;
        }
        key
    }
}

/// Affine map x -> Mx + v; composition (v, M)(w, N) = (v + Mw, MN).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub t: [u16; 3],
    pub m: PrimeFieldMatrix,
}

pub struct AffineOracle {
    pub p: u64,
    pub dim: u8,
}

impl GroupOracle for AffineOracle {
    type Element = AffineElement;

    fn identity(&self) -> AffineElement {
        AffineElement {
            t: [0; 3],
            m: PrimeFieldMatrix::identity(self.dim),
        }
    }

    fn multiply(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let d = self.dim as usize;
        let mut t = [0u16; 3];
        for r in 0..d {
            let mut acc = a.t[r] as u64;
            for k in 0..d {
                acc += a.m.e[r * d + k] as u64 * b.t[k] as u64;
            }
            t[r] = (acc % self.p) as u16;
        }
        AffineElement {
            t,
            m: a.m.mul(&b.m, self.p),
        }
    }

    fn invert(&self, g: &AffineElement) -> AffineElement {
        let d = self.dim as usize;
        let minv = g.m.inverse(self.p);
        let mut t = [0u16; 3];
        for r in 0..d {
            let mut acc = 0u64;
            for k in 0..d {
                acc += minv.e[r * d + k] as u64 * ((self.p - g.t[k] as u64) % self.p);
            }
            t[r] = (acc % self.p) as u16;
        }
        AffineElement { t, m: minv }
    }

    fn canonical_key(&self, g: &AffineElement) -> u128 {
        let d = self.dim as usize;
        let mut key = 0u128;
        for i in 0..d {
            key = key * self.p as u128 + g.t[i] as u128;
        }
        for i in 0..d * d {
            key = key * self.p as u128 + g.m.e[i] as u128;
        }
        key
    }
}

/// Smallest primitive root mod p.
pub fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let fac = factorize(phi);
    'outer: for g in 2..p {
        for &(ell, _) in &fac.factors {
            if crate::numtheory::pow_mod(g, phi / ell, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1 // p = 2
}

/// The Frobenius group C_p x| C_t in its 1-dimensional affine action, with
/// the complement generated by multiplication by a fixed element of order t.
pub fn frobenius_metacyclic(p: u64, t: u64) -> Result<FiniteGroup<AffineOracle>, MatError> {
    if !is_prime(p) {
        return Err(MatError::BadPrime(p));
    }
    if t == 0 || (p - 1) % t != 0 {
        return Err(MatError::InvalidDivisor { t, pm1: p - 1 });
    }
    let w = crate::numtheory::pow_mod(primitive_root(p), (p - 1) / t, p);
    let oracle = AffineOracle { p, dim: 1 };
    let mut elements = Vec::with_capacity((p * t) as usize);
    let mut a = 1u64;
    for _ in 0..t {
        for v in 0..p {
            elements.push(AffineElement {
                t: [v as u16, 0, 0],
                m: PrimeFieldMatrix::from_rows(&[&[a]], p),
            });
        }
        a = a * w % p;
    }
    let generators = vec![
        AffineElement {
            t: [1, 0, 0],
            m: PrimeFieldMatrix::identity(1),
        },
        AffineElement {
            t: [0, 0, 0],
            m: PrimeFieldMatrix::from_rows(&[&[w]], p),
        },
    ];
    Ok(FiniteGroup::from_elements(oracle, elements, generators)?)
}

/// V x| E with V = F_p^dim translations and E <= GL(dim, p).
pub fn frobenius_affine(
    p: u64,
    dim: u8,
    e_group: &FiniteGroup<MatOracle>,
    cap: usize,
) -> Result<FiniteGroup<AffineOracle>, MatError> {
    let v_count = p.pow(dim as u32);
    let total = v_count as u128 * e_group.order() as u128;
    if total > cap as u128 {
        return Err(MatError::Group(GroupError::CapExceeded(cap)));
    }
    let oracle = AffineOracle { p, dim };
    let mut elements = Vec::with_capacity(total as usize);
    for v in 0..v_count {
        let mut t = [0u16; 3];
        let mut rest = v;
        for slot in t.iter_mut().take(dim as usize) {
            *slot = (rest % p) as u16;
            rest /= p;
        }
        for m in e_group.elements() {
            elements.push(AffineElement { t, m: *m });
        }
    }
    let mut generators = Vec::new();
    for i in 0..dim as usize {
        let mut t = [0u16; 3];
        t[i] = 1;
        generators.push(AffineElement {
            t,
            m: PrimeFieldMatrix::identity(dim),
        });
    }
    for m in e_group.generators() {
        generators.push(AffineElement { t: [0; 3], m: *m });
    }
    Ok(FiniteGroup::from_elements(oracle, elements, generators)?)
}

/// Lower bound for the count of p-regular classes of any group between
/// Alt(n) and Sym(n): odd cycle lengths m <= n coprime to p, plus one
/// involution class. Requires n >= 2p.
pub fn alternating_cycle_count(n: u64, p: u64) -> Result<u64, MatError> {
    if n < 2 * p {
        return Err(MatError::CapExceeded(n, 2 * p));
    }
    let odd = (1..=n).filter(|m| m % 2 == 1 && m % p != 0).count() as u64;
    Ok(odd + 1)
}

// ---------------------------------------------------------------------------
// Regular subgroup search in GL(2, p)
// ---------------------------------------------------------------------------

/// One conjugacy class of regular subgroups of GL(2,p): order p^2 - 1 acting
/// simply transitively on the nonzero vectors.
#[derive(Debug, Clone)]
pub struct RegularSubgroupRecord {
    pub p: u64,
    /// generators of the lexicographically smallest representative found
    pub generators: Vec<PrimeFieldMatrix>,
    pub order: u64,
    pub class_count: u64,
    /// sorted multiset of (element order, multiplicity)
    pub fingerprint: Vec<(u64, u64)>,
    /// how many distinct regular subgroups fell into this class
    pub conjugates_found: u64,
}

impl RegularSubgroupRecord {
    pub fn group(&self) -> FiniteGroup<MatOracle> {
        FiniteGroup::generate(
            MatOracle { p: self.p, dim: 2 },
            self.generators.clone(),
            (self.p * self.p) as usize,
        )
        .expect("record generators close within p^2 - 1 elements")
    }
}

#[inline]
fn key2(p: u64, m: [u64; 4]) -> u32 {
    (((m[0] * p + m[1]) * p + m[2]) * p + m[3]) as u32
}

#[inline]
fn unkey2(p: u64, k: u32) -> [u64; 4] {
    let mut k = k as u64;
    let d = k % p;
    k /= p;
    let c = k % p;
    k /= p;
    let b = k % p;
    k /= p;
    [k, b, c, d]
}

#[inline]
fn mul2(p: u64, x: [u64; 4], y: [u64; 4]) -> [u64; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn pow2(p: u64, m: [u64; 4], mut e: u64) -> [u64; 4] {
    let mut acc = [1, 0, 0, 1];
    let mut b = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul2(p, acc, b);
        }
        b = mul2(p, b, b);
        e >>= 1;
    }
    acc
}

#[inline]
fn img2(p: u64, m: [u64; 4]) -> u32 {
    (m[0] * p + m[2]) as u32
}

struct SearchSpace {
    p: u64,
    full: usize,
    id_key: u32,
    /// candidate keys sorted ascending: invertible, fixed-point-free,
    /// order dividing p^2 - 1
    cand: Vec<u32>,
    is_cand: Vec<bool>,
    /// candidates grouped by base-vector image, keys ascending per bucket
    cand_by_img: Vec<Vec<u32>>,
}

impl SearchSpace {
    fn build(p: u64) -> Self {
        let total = (p * p * p * p) as usize;
        let full = (p * p - 1) as usize;
        let mut cand = Vec::new();
        let mut is_cand = vec![false; total];
        let mut cand_by_img = vec![Vec::new(); (p * p) as usize];
        for k in 0..total as u32 {
            let m = unkey2(p, k);
            let det = (m[0] * m[3] % p + p - m[1] * m[2] % p) % p;
            if det == 0 {
                continue;
            }
            // fixed point free: det(M - I) != 0
            let a1 = (m[0] + p - 1) % p;
            let d1 = (m[3] + p - 1) % p;
            if (a1 * d1 % p + p - m[1] * m[2] % p) % p == 0 {
                continue;
            }
            if pow2(p, m, full as u64) != [1, 0, 0, 1] {
                continue;
            }
            cand.push(k);
            is_cand[k as usize] = true;
            cand_by_img[img2(p, m) as usize].push(k);
        }
        SearchSpace {
            p,
            full,
            id_key: key2(p, [1, 0, 0, 1]),
            cand,
            is_cand,
            cand_by_img,
        }
    }
}

struct SearchState {
    /// non-identity members, in addition order (doubles as the undo trail)
    els: Vec<u32>,
    member: HashSet<u32>,
    used_img: Vec<bool>,
}

impl SearchState {
    fn fresh(space: &SearchSpace) -> Self {
        let mut used_img = vec![false; (space.p * space.p) as usize];
        used_img[space.p as usize] = true; // identity sends e1 to e1
        SearchState {
            els: Vec::with_capacity(space.full),
            member: HashSet::new(),
            used_img,
        }
    }

    fn undo_to(&mut self, space: &SearchSpace, mark: usize) {
        for i in mark..self.els.len() {
            let k = self.els[i];
            self.member.remove(&k);
            self.used_img[img2(space.p, unkey2(space.p, k)) as usize] = false;
        }
        self.els.truncate(mark);
    }

    #[inline]
    fn push(&mut self, space: &SearchSpace, k: u32) -> bool {
        let img = img2(space.p, unkey2(space.p, k)) as usize;
        if self.used_img[img] {
            return false;
        }
        self.used_img[img] = true;
        self.member.insert(k);
        self.els.push(k);
        true
    }

    #[inline]
    fn admit(&mut self, space: &SearchSpace, k: u32, floor_key: u32) -> bool {
        k >= floor_key && space.is_cand[k as usize] && self.push(space, k)
    }

    /// Adjoin generator `y_key` to the closed group held in the state and
    /// close again, coset by coset (the prior content must be a subgroup,
    /// which the seed and every earlier extension guarantee). Every newly
    /// created element must be a candidate with a fresh base-vector image
    /// and key at or above `floor_key` (the seed stays the key-minimal
    /// member); otherwise the whole extension is rolled back. The closed
    /// set plus identity must have order dividing p^2 - 1.
    fn try_extend(
        &mut self,
        space: &SearchSpace,
        prior_gens: &[u32],
        y_key: u32,
        floor_key: u32,
    ) -> bool {
        let mark = self.els.len();
        let p = space.p;
        if !self.admit(space, y_key, floor_key) {
            return false;
        }
        // coset H y; products of distinct h with a fresh y are all new
        for j in 0..mark {
            let t = key2(p, mul2(p, unkey2(p, self.els[j]), unkey2(p, y_key)));
            if !self.admit(space, t, floor_key) {
                self.undo_to(space, mark);
                return false;
            }
        }
        let mut reps = vec![y_key];
        let mut qi = 0;
        while qi < reps.len() {
            let r = unkey2(p, reps[qi]);
            qi += 1;
            for &g in prior_gens.iter().chain(std::iter::once(&y_key)) {
                let t = key2(p, mul2(p, r, unkey2(p, g)));
                if t == space.id_key || self.member.contains(&t) {
                    continue;
                }
                // open the coset H t
                if !self.admit(space, t, floor_key) {
                    self.undo_to(space, mark);
                    return false;
                }
                for j in 0..mark {
                    let u = key2(p, mul2(p, unkey2(p, self.els[j]), unkey2(p, t)));
                    if !self.admit(space, u, floor_key) {
                        self.undo_to(space, mark);
                        return false;
                    }
                }
                reps.push(t);
            }
        }
        if space.full % (self.els.len() + 1) != 0 {
            self.undo_to(space, mark);
            return false;
        }
        true
    }

    /// smallest base image not yet covered (0 encodes the zero vector and
    /// never occurs)
    fn min_unused_img(&self) -> usize {
        (1..self.used_img.len())
            .find(|&v| !self.used_img[v])
            .expect("called only on proper partial subgroups")
    }

    /// Seed with the cyclic group <x> in one linear pass over the powers of
    /// x (a cyclic set is closed, so no pairwise products are needed).
    /// Succeeds only when x is the key-minimal non-identity element of <x>
    /// and every power is a candidate with a fresh image.
    fn seed_cyclic(&mut self, space: &SearchSpace, x_key: u32) -> bool {
        let p = space.p;
        let x = unkey2(p, x_key);
        let mut pw = x;
        loop {
            let k = key2(p, pw);
            if k == space.id_key {
                break;
            }
            if k < x_key || !space.is_cand[k as usize] || !self.push(space, k) {
                self.undo_to(space, 0);
                return false;
            }
            pw = mul2(p, pw, x);
        }
        if space.full % (self.els.len() + 1) != 0 {
            self.undo_to(space, 0);
            return false;
        }
        true
    }
}

fn record_current(space: &SearchSpace, state: &SearchState, gens: &[u32], found: &mut Vec<Vec<u32>>) {
    let mut keys = state.els.clone();
    keys.push(space.id_key);
    keys.sort_unstable();
    // stash generator chain after the sorted member list
    keys.extend_from_slice(gens);
    found.push(keys);
}

/// Depth step of the image-canonical chain: a regular subgroup covers every
/// nonzero image exactly once, so the unique continuation image is the
/// minimal unused one; branching is only over candidates with that image.
fn recurse(
    space: &SearchSpace,
    state: &mut SearchState,
    floor_key: u32,
    found: &mut Vec<Vec<u32>>,
    gens: &mut Vec<u32>,
) {
    if state.els.len() + 1 == space.full {
        record_current(space, state, gens, found);
        return;
    }
    let v_star = state.min_unused_img();
    for &y in &space.cand_by_img[v_star] {
        if y <= floor_key {
            continue;
        }
        let mark = state.els.len();
        if state.try_extend(space, gens, y, floor_key) {
            gens.push(y);
            recurse(space, state, floor_key, found, gens);
            gens.pop();
            state.undo_to(space, mark);
        }
    }
}

/// All regular subgroups of GL(2,p) up to conjugacy, sorted by fingerprint.
///
/// The backtracking enumerates each regular subgroup exactly once: the seed
/// is its key-minimal non-identity element, and each later generator is the
/// unique member whose base image is the minimal image not yet covered.
/// Conjugate copies are merged afterwards by fingerprint plus an explicit
/// conjugator search.
pub fn find_regular_subgroups(p: u64) -> Result<Vec<RegularSubgroupRecord>, MatError> {
    if !is_prime(p) || p == 2 {
        return Err(MatError::BadPrime(p));
    }
    if p > 59 {
        return Err(MatError::CapExceeded(p, 59));
    }
    let space = SearchSpace::build(p);

    let chunks: Vec<Vec<Vec<u32>>> = space
        .cand
        .par_iter()
        .map_init(
            || SearchState::fresh(&space),
            |state, &x| {
                let mut found = Vec::new();
                // seed survives only if x is the key-minimal element of <x>
                if state.seed_cyclic(&space, x) {
                    let mut gens = vec![x];
                    if state.els.len() + 1 == space.full {
                        record_current(&space, state, &gens, &mut found);
                    } else {
                        recurse(&space, state, x, &mut found, &mut gens);
                    }
                    state.undo_to(&space, 0);
                }
                found
            },
        )
        .collect();

    let mut found: Vec<Vec<u32>> = chunks.into_iter().flatten().collect();
    // lexicographic order on the sorted member lists; discovery order and
    // worker count no longer matter from here on
    found.sort_unstable();

    let mut classes: Vec<(Vec<(u64, u64)>, u64, Vec<u32>, Vec<u32>, u64)> = Vec::new();
    // (fingerprint, class_count, member_keys, generator_chain, copies)

    for entry in found {
        let members: Vec<u32> = entry[..space.full].to_vec();
        let gens: Vec<u32> = entry[space.full..].to_vec();
        let mats: Vec<PrimeFieldMatrix> = members
            .iter()
            .map(|&k| mat_from_key2(p, k))
            .collect();
        let gen_mats: Vec<PrimeFieldMatrix> = gens.iter().map(|&k| mat_from_key2(p, k)).collect();
        let group = FiniteGroup::from_elements(MatOracle { p, dim: 2 }, mats, gen_mats.clone())?;
        let mut order_counts: HashMap<u64, u64> = HashMap::new();
        for el in group.elements() {
            *order_counts.entry(group.element_order_in(el)).or_insert(0) += 1;
        }
        let mut fingerprint: Vec<(u64, u64)> = order_counts.into_iter().collect();
        fingerprint.sort_unstable();
        let class_count = group.conjugacy_classes().len() as u64;

        let mut merged = false;
        for cls in classes.iter_mut() {
            if cls.0 == fingerprint && cls.1 == class_count {
                let rep_set: HashSet<u32> = cls.2.iter().copied().collect();
                if subgroups_conjugate(p, &gens, &rep_set) {
                    cls.4 += 1;
                    merged = true;
                    break;
                }
            }
        }
        if !merged {
            classes.push((fingerprint, class_count, members, gens, 1));
        }
    }

    classes.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
    let records = classes
        .into_iter()
        .map(|(fingerprint, class_count, _members, gens, copies)| RegularSubgroupRecord {
            p,
            generators: gens.iter().map(|&k| mat_from_key2(p, k)).collect(),
            order: (p * p - 1),
            class_count,
            fingerprint,
            conjugates_found: copies,
        })
        .collect();
    Ok(records)
}

fn mat_from_key2(p: u64, k: u32) -> PrimeFieldMatrix {
    let m = unkey2(p, k);
    PrimeFieldMatrix::from_rows(&[&[m[0], m[1]], &[m[2], m[3]]], p)
}

/// Is g E g^{-1} = F for some g in GL(2,p)? `gens` generate E; F is given
/// by its key set. Scans g in key order, so the answer and any merge built
/// on it are deterministic.
fn subgroups_conjugate(p: u64, gens: &[u32], f_keys: &HashSet<u32>) -> bool {
    let gen_mats: Vec<[u64; 4]> = gens.iter().map(|&k| unkey2(p, k)).collect();
    let total = (p * p * p * p) as u32;
    for gk in 0..total {
        let g = unkey2(p, gk);
        let det = (g[0] * g[3] % p + p - g[1] * g[2] % p) % p;
        if det == 0 {
            continue;
        }
        let det_inv = crate::numtheory::pow_mod(det, p - 2, p);
        let ginv = [
            g[3] * det_inv % p,
            (p - g[1] % p) % p * det_inv % p,
            (p - g[2] % p) % p * det_inv % p,
            g[0] * det_inv % p,
        ];
        let ok = gen_mats
            .iter()
            .all(|&m| f_keys.contains(&key2(p, mul2(p, mul2(p, g, m), ginv))));
        if ok {
            return true;
        }
    }
    false
}

/// The order-14520 Frobenius group C_11^2 x| SL(2,5): rebuilt from the
/// regular-subgroup search at p = 11 by selecting the complement with 9
/// conjugacy classes.
pub fn exceptional_11() -> Result<FiniteGroup<AffineOracle>, MatError> {
    let records = find_regular_subgroups(11)?;
    let record = records
        .iter()
        .find(|r| r.class_count == 9)
        .expect("GL(2,11) contains a regular subgroup with 9 classes");
    let e_group = record.group();
    frobenius_affine(11, 2, &e_group, DEFAULT_ELEMENT_CAP)
}

/// Matrices of multiplication by the canonical primitive element and of the
/// p-power Frobenius on F_{p^2}, in the basis {1, x} of F_p[x]/(f): the
/// 2-dimensional realization of the degree-2 semilinear group.
pub fn semilinear_realization_2d(p: u64) -> (PrimeFieldMatrix, PrimeFieldMatrix) {
    let field = ZechField::new(p, 2, 1 << 18);
    let f = &field.modulus; // x^2 + f[1] x + f[0]
    let (c0, c1) = (f[0], f[1]);
    // primitive element zeta = z0 + z1 x
    let z0 = field.primitive % p;
    let z1 = field.primitive / p;
    // multiplication by zeta: 1 -> z0 + z1 x, x -> z0 x + z1 x^2
    let x2_0 = (p - c0 % p) % p;
    let x2_1 = (p - c1 % p) % p;
    let zeta = PrimeFieldMatrix::from_rows(
        &[
            &[z0, z1 * x2_0 % p],
            &[z1, (z0 + z1 * x2_1) % p],
        ],
        p,
    );
    // Frobenius: 1 -> 1, x -> x^p mod f, as a linear map in the same basis
    let mut xp = vec![0u64, 1]; // x
    let mut acc = vec![1u64, 0];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly2_mul_mod(&acc, &xp, c0, c1, p);
        }
        xp = poly2_mul_mod(&xp, &xp, c0, c1, p);
        e >>= 1;
    }
    let frob = PrimeFieldMatrix::from_rows(&[&[1, acc[0]], &[0, acc[1]]], p);
    (zeta, frob)
}

fn poly2_mul_mod(a: &[u64], b: &[u64], c0: u64, c1: u64, p: u64) -> Vec<u64> {
    // (a0 + a1 x)(b0 + b1 x) mod (x^2 + c1 x + c0)
    let t0 = a[0] * b[0] % p;
    let t1 = (a[0] * b[1] + a[1] * b[0]) % p;
    let t2 = a[1] * b[1] % p;
    vec![
        (t0 + t2 * ((p - c0 % p) % p)) % p,
        (t1 + t2 * ((p - c1 % p) % p)) % p,
    ]
}
