//! Arithmetic in GF(2^m) with an explicit irreducible modulus.
//!
//! Elements are polynomial-basis coordinate vectors packed into a `u64`
//! (bit i = coefficient of x^i). The modulus is stored as a `u128` so that
//! degree-64 moduli fit. Multiplication is carry-less shift-xor followed by
//! modular reduction; no tables are precomputed.

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} out of range (need 1 <= m <= 64)")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not irreducible of degree {m}")]
    ReducibleModulus { m: u32, modulus: u128 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("coordinates {0:#x} exceed field size")]
    CoordsOutOfRange(u64),
    #[error("degree {sub} does not divide degree {sup}")]
    NonDivisibleDegrees { sub: u32, sup: u32 },
}

/// A concrete GF(2^m): extension degree plus the defining modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec {
    m: u32,
    modulus: u128,
}

/// An element of a specific [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    coords: u64,
    spec: FieldSpec,
}

// ---- polynomial arithmetic over GF(2), coefficients packed in u128 ----

fn pdeg(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn pmod(mut a: u128, m: u128) -> u128 {
    debug_assert!(m != 0);
    let dm = pdeg(m);
    while a != 0 && pdeg(a) >= dm {
        a ^= m << (pdeg(a) - dm);
    }
    a
}

fn pgcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = pmod(a, b);
        a = b;
        b = r;
    }
    a
}

fn pmulmod(a: u128, b: u128, m: u128) -> u128 {
    let mut acc: u128 = 0;
    let mut a = pmod(a, m);
    let mut b = pmod(b, m);
    if pdeg(a) < pdeg(b) {
        core::mem::swap(&mut a, &mut b);
    }
    let dm = pdeg(m);
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if pdeg(a) >= dm {
            a ^= m;
        }
    }
    acc
}

/// Rabin irreducibility test for a degree-n polynomial over GF(2).
fn is_irreducible(p: u128, n: u32) -> bool {
    if pdeg(p) != n as i32 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if p & 1 == 0 {
        return false; // divisible by x
    }
    let x: u128 = 2;
    // x^(2^k) mod p by repeated squaring
    let frob_iter = |k: u32| -> u128 {
        let mut t = x;
        for _ in 0..k {
            t = pmulmod(t, t, p);
        }
        t
    };
    let mut rem = n;
    let mut d = 2;
    let mut prime_divisors = Vec::new();
    while d * d <= rem {
        if rem % d == 0 {
            prime_divisors.push(d);
            while rem % d == 0 {
                rem /= d;
            }
        }
        d += 1;
    }
    if rem > 1 {
        prime_divisors.push(rem);
    }
    for r in prime_divisors {
        let t = frob_iter(n / r);
        if pgcd(t ^ x, p) != 1 {
            return false;
        }
    }
    frob_iter(n) == x
}

impl FieldSpec {
    /// GF(2^m) with the lexicographically smallest irreducible modulus,
    /// taking the bit-packed integer encoding as the order.
    pub fn new(m: u32) -> Result<Self, FieldError> {
        if m == 0 || m > 64 {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        // constant term must be 1, otherwise x divides the candidate
        let mut cand = (1u128 << m) | 1;
        let end = 1u128 << (m + 1);
        while cand < end {
            if is_irreducible(cand, m) {
                return Ok(FieldSpec { m, modulus: cand });
            }
            cand += 2;
        }
        unreachable!("an irreducible polynomial exists for every degree");
    }

    /// GF(2^m) with a caller-supplied modulus.
    pub fn with_modulus(m: u32, modulus: u128) -> Result<Self, FieldError> {
        if m == 0 || m > 64 {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        if !is_irreducible(modulus, m) {
            return Err(FieldError::ReducibleModulus { m, modulus });
        }
        Ok(FieldSpec { m, modulus })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Number of field elements, 2^m.
    pub fn order(&self) -> u128 {
        1u128 << self.m
    }

    pub fn el(&self, coords: u64) -> Result<FieldElement, FieldError> {
        if self.m < 64 && coords >= (1u64 << self.m) {
            return Err(FieldError::CoordsOutOfRange(coords));
        }
        Ok(FieldElement { coords, spec: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coords: 0, spec: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { coords: 1, spec: *self }
    }

    /// The class of x, a generator of the field as a GF(2)-algebra.
    pub fn gen(&self) -> FieldElement {
        if self.m == 1 {
            // x reduces to a constant in GF(2)
            FieldElement { coords: 1, spec: *self }
        } else {
            FieldElement { coords: 2, spec: *self }
        }
    }

    /// All field elements in coordinate order. Only sensible for m < 64.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.m < 64, "cannot iterate GF(2^64) exhaustively");
        (0..(1u64 << self.m)).map(move |c| FieldElement { coords: c, spec: *self })
    }
}

impl FieldElement {
    pub fn coords(&self) -> u64 {
        self.coords
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coords == 0
    }

    pub fn hex(&self) -> String {
        format!("{:x}", self.coords)
    }

    pub fn from_hex(spec: &FieldSpec, s: &str) -> Result<Self, FieldError> {
        let coords = u64::from_str_radix(s, 16).map_err(|_| FieldError::CoordsOutOfRange(0))?;
        spec.el(coords)
    }

    fn assert_same(&self, other: &FieldElement) {
        assert_eq!(
            self.spec, other.spec,
            "operands belong to different field specs"
        );
    }

    pub fn mul(self, rhs: FieldElement) -> FieldElement {
        self.assert_same(&rhs);
        let prod = pmulmod(self.coords as u128, rhs.coords as u128, self.spec.modulus);
        FieldElement { coords: prod as u64, spec: self.spec }
    }

    pub fn add(self, rhs: FieldElement) -> FieldElement {
        self.assert_same(&rhs);
        FieldElement { coords: self.coords ^ rhs.coords, spec: self.spec }
    }

    pub fn square(self) -> FieldElement {
        self.mul(self)
    }

    /// Square-and-multiply exponentiation; e is a plain nonnegative integer.
    pub fn pow(self, e: u64) -> FieldElement {
        let mut base = self;
        let mut e = e;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// a^(2^k), k-fold Frobenius.
    pub fn frob(self, k: u32) -> FieldElement {
        let mut t = self;
        for _ in 0..k {
            t = t.square();
        }
        t
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // a^(2^m - 2); for m = 64 the exponent still fits in u64
        let e = if self.spec.m == 64 {
            u64::MAX - 1
        } else {
            (1u64 << self.spec.m) - 2
        };
        Ok(self.pow(e))
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:x}", self.coords)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FieldSpec", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("modulus", &format!("{:x}", self.modulus))?;
        st.end()
    }
}

/// Trace of `a` down to the subfield of degree `sub_m` over GF(2):
/// Tr(a) = sum of a^(2^sub_m)^j for j = 0..k-1 with k = m/sub_m.
/// The result is an element of the ambient field lying in the image of the
/// unique subfield of that order.
pub fn trace_to(a: FieldElement, sub_m: u32) -> Result<FieldElement, FieldError> {
    let m = a.spec().m();
    if sub_m == 0 || m % sub_m != 0 {
        return Err(FieldError::NonDivisibleDegrees { sub: sub_m, sup: m });
    }
    let k = m / sub_m;
    let mut acc = a;
    let mut cur = a;
    for _ in 1..k {
        cur = cur.frob(sub_m);
        acc = acc + cur;
    }
    Ok(acc)
}

// ---- subfield embedding ----
//
// Polynomials over the superfield, coefficient i at index i, used only to
// find a root of the subfield modulus via the Berlekamp trace splitting.

fn fp_trim(v: &mut Vec<FieldElement>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn fp_rem(mut a: Vec<FieldElement>, b: &[FieldElement]) -> Vec<FieldElement> {
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("divisor is monic or has nonzero lead");
    while a.len() > db {
        let da = a.len() - 1;
        let coef = a[da].mul(lead_inv);
        if !coef.is_zero() {
            for i in 0..=db {
                a[da - db + i] = a[da - db + i] + coef.mul(b[i]);
            }
        }
        a.pop();
        fp_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn fp_mulmod(a: &[FieldElement], b: &[FieldElement], f: &[FieldElement], zero: FieldElement) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![zero; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = prod[i + j] + ai.mul(bj);
        }
    }
    fp_trim(&mut prod);
    fp_rem(prod, f)
}

fn fp_gcd(mut a: Vec<FieldElement>, mut b: Vec<FieldElement>) -> Vec<FieldElement> {
    while !b.is_empty() {
        let r = fp_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn fp_monic(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
    if let Some(&lead) = a.last() {
        let li = lead.inv().expect("nonzero leading coefficient");
        for c in a.iter_mut() {
            *c = c.mul(li);
        }
    }
    a
}

fn fp_div_exact(a: &[FieldElement], b: &[FieldElement], zero: FieldElement) -> Vec<FieldElement> {
    // long division, remainder discarded (callers divide by known factors)
    let mut rem: Vec<FieldElement> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut quot = vec![zero; a.len().saturating_sub(db)];
    while rem.len() > db {
        let da = rem.len() - 1;
        let coef = rem[da].mul(lead_inv);
        quot[da - db] = coef;
        for i in 0..=db {
            rem[da - db + i] = rem[da - db + i] + coef.mul(b[i]);
        }
        rem.pop();
        fp_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    fp_trim(&mut quot);
    quot
}

/// All roots in `sup` of the degree-d GF(2) polynomial `poly` (bit-packed),
/// found by deterministic trace splitting.
fn gf2_poly_roots(poly: u128, sup: &FieldSpec) -> Vec<FieldElement> {
    let zero = sup.zero();
    let d = pdeg(poly) as usize;
    let lifted: Vec<FieldElement> = (0..=d)
        .map(|i| if (poly >> i) & 1 == 1 { sup.one() } else { zero })
        .collect();
    let mut stack = vec![lifted];
    let mut roots = Vec::new();
    while let Some(f) = stack.pop() {
        match f.len() {
            0 | 1 => continue,
            2 => {
                // monic-ize: root = f0 / f1
                let r = f[0].mul(f[1].inv().unwrap());
                roots.push(r);
                continue;
            }
            _ => {}
        }
        // split with Tr(u t): gcd(f, sum_{i<M} (u t)^{2^i} mod f)
        let mut u_coord: u64 = 1;
        loop {
            let u = sup.el(u_coord).expect("splitting scalar in range");
            let ut = vec![zero, u];
            let mut pw = fp_rem(ut, &f);
            let mut tr = pw.clone();
            for _ in 1..sup.m() {
                pw = fp_mulmod(&pw, &pw, &f, zero);
                // add into tr
                if tr.len() < pw.len() {
                    tr.resize(pw.len(), zero);
                }
                for (i, &c) in pw.iter().enumerate() {
                    tr[i] = tr[i] + c;
                }
                fp_trim(&mut tr);
            }
            let g = fp_monic(fp_gcd(f.clone(), tr));
            if g.len() > 1 && g.len() < f.len() {
                let h = fp_div_exact(&f, &g, zero);
                stack.push(g);
                stack.push(h);
                break;
            }
            u_coord += 1;
        }
    }
    roots.sort_by_key(|r| r.coords());
    roots
}

/// Injective ring homomorphism GF(2^{sub.m}) -> GF(2^{sup.m}), realized by
/// sending the subfield generator to a root of the subfield modulus.
pub struct Embedding {
    sub: FieldSpec,
    sup: FieldSpec,
    gen_powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(sub: FieldSpec, sup: FieldSpec) -> Result<Self, FieldError> {
        if sup.m() % sub.m() != 0 {
            return Err(FieldError::NonDivisibleDegrees { sub: sub.m(), sup: sup.m() });
        }
        if sub == sup {
            let gen_powers = (0..sub.m())
                .map(|i| sup.el(1u64 << i).unwrap())
                .collect();
            return Ok(Embedding { sub, sup, gen_powers });
        }
        let roots = gf2_poly_roots(sub.modulus(), &sup);
        // smallest root by coordinate integer, for determinism
        let root = roots[0];
        let mut gen_powers = Vec::with_capacity(sub.m() as usize);
        let mut p = sup.one();
        for _ in 0..sub.m() {
            gen_powers.push(p);
            p = p.mul(root);
        }
        Ok(Embedding { sub, sup, gen_powers })
    }

    pub fn sub(&self) -> FieldSpec {
        self.sub
    }

    pub fn sup(&self) -> FieldSpec {
        self.sup
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        assert_eq!(a.spec(), self.sub, "element not in the embedding domain");
        let mut acc = self.sup.zero();
        for (i, &p) in self.gen_powers.iter().enumerate() {
            if (a.coords() >> i) & 1 == 1 {
                acc = acc + p;
            }
        }
        acc
    }
}

/// One-shot convenience wrapper around [`Embedding`].
pub fn embed(a: FieldElement, sub: FieldSpec, sup: FieldSpec) -> Result<FieldElement, FieldError> {
    Ok(Embedding::new(sub, sup)?.apply(a))
}
