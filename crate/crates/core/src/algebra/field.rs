//! Finite fields F_q, q = p^e with p an odd prime.
//!
//! Elements are stored as their index `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` are the coordinates in the power basis of the defining
//! modulus. Multiplication goes through discrete log tables built from the
//! modulus root, which is always a multiplicative generator.

use std::fmt;

use super::conway;
use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of F_q, encoded by its coordinate index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coordinates over F_p in ascending power-basis order (length e).
    pub fn coords(self, ctx: &FieldCtx) -> Vec<u32> {
        let mut out = Vec::with_capacity(ctx.e as usize);
        let mut v = self.0;
        for _ in 0..ctx.e {
            out.push(v % ctx.p);
            v /= ctx.p;
        }
        out
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether the defining modulus came from the Conway table or from the
/// first-primitive fallback search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusSource {
    Conway,
    FirstPrimitive,
}

/// A concrete realization of F_q.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    source: ModulusSource,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Build F_{p^e}. The modulus is the Conway polynomial when the built-in
    /// table has it, otherwise the first monic primitive polynomial of degree
    /// `e` in increasing index order (coefficient `c_0` least significant).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::TooLarge(format!("field order {p}^{e} exceeds {MAX_FIELD_ORDER}"))),
        };
        let (modulus, source) = match conway::lookup(p, e) {
            Some(m) => (m.to_vec(), ModulusSource::Conway),
            None => (first_primitive(p, e), ModulusSource::FirstPrimitive),
        };
        Ok(Self::with_modulus(p, e, q, modulus, source))
    }

    fn with_modulus(p: u32, e: u32, q: u32, modulus: Vec<u32>, source: ModulusSource) -> Self {
        let qm1 = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * qm1];
        let mut log = vec![0u32; q as usize];
        // the modulus root; for e = 1 that is -c_0
        let mut cur = vec![0u32; e as usize];
        cur[0] = 1;
        for k in 0..qm1 {
            let idx = encode(&cur, p);
            exp[k] = idx;
            exp[k + qm1] = idx;
            log[idx as usize] = k as u32;
            mul_by_root(&mut cur, &modulus, p);
        }
        let neg = (0..q)
            .map(|i| {
                let mut v = i;
                let mut out = 0;
                let mut scale = 1;
                for _ in 0..e {
                    let c = v % p;
                    v /= p;
                    out += ((p - c) % p) * scale;
                    scale *= p;
                }
                out
            })
            .collect();
        let mut ctx = FieldCtx { p, e, q, modulus, source, exp, log, neg, add: None };
        if e > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = ctx.add_digits(a, b) as u16;
                }
            }
            ctx.add = Some(table);
        }
        ctx
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining modulus over F_p, ascending coefficients, monic, degree e.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_source(&self) -> ModulusSource {
        self.source
    }

    /// True when q is a perfect square, i.e. e is even.
    pub fn is_square_order(&self) -> bool {
        self.e % 2 == 0
    }

    /// The multiplicative generator (the modulus root).
    pub fn generator(&self) -> FqElem {
        FqElem(self.exp[1 % self.exp.len().max(1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    pub fn from_coords(&self, coords: &[i64]) -> Result<FqElem> {
        if coords.len() > self.e as usize {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates but the field has degree {}",
                coords.len(),
                self.e
            )));
        }
        let p = self.p as i64;
        let mut idx = 0u32;
        let mut scale = 1u32;
        for &c in coords {
            idx += (c.rem_euclid(p) as u32) * scale;
            scale *= self.p;
        }
        Ok(FqElem(idx))
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The element with discrete log `k` with respect to [`Self::generator`].
    pub fn pow_gen(&self, k: u64) -> FqElem {
        FqElem(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= self.p { s - self.p } else { s });
        }
        match &self.add {
            Some(t) => FqElem(t[(a.0 * self.q + b.0) as usize] as u32),
            None => FqElem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        FqElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        let qm1 = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(FqElem(self.exp[((qm1 - l) % qm1) as usize]))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let qm1 = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FqElem(self.exp[((l * (k % qm1)) % qm1) as usize])
    }

    /// Quadratic character of F_q: 0, +1 or -1.
    #[inline]
    pub fn eta(&self, a: FqElem) -> i8 {
        if a.is_zero() {
            0
        } else if self.log[a.0 as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Square roots of `a` in F_q (empty for non-squares).
    pub fn sqrt(&self, a: FqElem) -> Vec<FqElem> {
        if a.is_zero() {
            return vec![FqElem::ZERO];
        }
        let l = self.log[a.0 as usize];
        if l % 2 == 1 {
            return Vec::new();
        }
        let r = self.pow_gen((l / 2) as u64);
        let mut out = vec![r, self.neg(r)];
        out.sort();
        out
    }
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn mul_by_root(cur: &mut [u32], modulus: &[u32], p: u32) {
    let e = cur.len();
    let top = cur[e - 1];
    for i in (1..e).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if top != 0 {
        // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        for i in 0..e {
            let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
            cur[i] = (cur[i] + p - sub) % p;
        }
    }
}

/// Small dense arithmetic over F_p used for modulus searches.
pub(crate) mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut r: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem_monic(&mut r, m, p);
        trim(r)
    }

    /// In-place remainder by a monic modulus.
    pub fn rem_monic(r: &mut Vec<u32>, m: &[u32], p: u32) {
        let d = m.len() - 1;
        while r.len() > d {
            let top = r.pop().unwrap();
            if top == 0 {
                continue;
            }
            let shift = r.len() - d;
            for i in 0..d {
                let sub = (top as u64 * m[i] as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }

    pub fn powmod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = base.to_vec();
        rem_monic(&mut b, m, p);
        while k > 0 {
            if k & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            k >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let inv = modinv(*b.last().unwrap(), p);
            let bm: Vec<u32> = b.iter().map(|&c| (c as u64 * inv as u64 % p as u64) as u32).collect();
            rem_monic(&mut a, &bm, p);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub fn modinv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    /// Rabin irreducibility test for a monic polynomial over F_p.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let pk = |k: usize| -> Vec<u32> {
            let mut cur = x.clone();
            for _ in 0..k {
                cur = powmod(&cur, p as u64, m, p);
            }
            cur
        };
        let sub_x = |mut a: Vec<u32>| -> Vec<u32> {
            if a.len() < 2 {
                a.resize(2, 0);
            }
            a[1] = (a[1] + p - 1) % p;
            trim(a)
        };
        if !sub_x(pk(n)).is_empty() {
            return false;
        }
        for r in super::prime_divisors(n as u64) {
            let g = gcd(m, &sub_x(pk(n / r as usize)), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Whether the root of an irreducible `m` generates F_{p^n}^*.
    pub fn is_primitive(m: &[u32], p: u32) -> bool {
        if !is_irreducible(m, p) {
            return false;
        }
        let n = (m.len() - 1) as u32;
        let order = (p as u64).pow(n) - 1;
        let x = vec![0, 1];
        super::prime_divisors(order)
            .into_iter()
            .all(|r| powmod(&x, order / r, m, p) != vec![1])
    }
}

fn first_primitive(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut m = Vec::with_capacity(e as usize + 1);
        let mut v = idx;
        for _ in 0..e {
            m.push((v % p as u64) as u32);
            v /= p as u64;
        }
        m.push(1);
        if m[0] != 0 && prime_poly::is_primitive(&m, p) {
            return m;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f3() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.generator(), FqElem(2));
        assert_eq!(f.mul(FqElem(2), FqElem(2)), FqElem(1));
    }

    #[test]
    fn f9_conway_modulus() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 2, 1]);
        assert_eq!(f.modulus_source(), ModulusSource::Conway);
        // exhaustive irreducibility: x^2 + 2x + 2 has no root in F_3
        for x in 0..3u32 {
            assert_ne!((x * x + 2 * x + 2) % 3, 0);
        }
        // primitivity by brute force: the generator has order 8
        let a = f.generator();
        let mut cur = FqElem::ONE;
        for k in 1..=8 {
            cur = f.mul(cur, a);
            assert_eq!(cur == FqElem::ONE, k == 8);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldCtx::new(2, 1), Err(Error::EvenCharacteristic)));
        assert!(matches!(FieldCtx::new(9, 1), Err(Error::NonPrime(9))));
        assert!(matches!(FieldCtx::new(3, 40), Err(Error::TooLarge(_))));
    }

    #[test]
    fn fallback_modulus_is_primitive() {
        let f = FieldCtx::new(3, 9).unwrap();
        assert_eq!(f.modulus_source(), ModulusSource::FirstPrimitive);
        assert!(prime_poly::is_primitive(f.modulus(), 3));
    }

    #[test]
    fn eta_and_sqrt_agree() {
        let f = FieldCtx::new(5, 2).unwrap();
        for a in f.elements().skip(1) {
            let roots = f.sqrt(a);
            assert_eq!(roots.is_empty(), f.eta(a) == -1);
            for r in roots {
                assert_eq!(f.mul(r, r), a);
            }
        }
    }
}
