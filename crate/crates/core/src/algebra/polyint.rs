//! Dense polynomials with arbitrary-precision integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{is_prime_u64, FieldCtx, FqElem};
use super::polyfq::PolyFq;
use crate::error::{Error, Result};

/// Degree cap for integer factorization.
pub const FACTOR_DEGREE_CAP: usize = 32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyInt {
    coeffs: Vec<BigInt>,
}

impl fmt::Display for PolyInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl PolyInt {
    pub fn zero() -> Self {
        PolyInt { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyInt { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyInt { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// X - a
    pub fn linear(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// P(-T)
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// P(cT)
    pub fn scale_var(&self, c: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// P(T^k)
    pub fn inflate(&self, k: usize) -> Self {
        let mut out = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// True when P(-T) = P(T).
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Coefficient reversal T^deg P(1/T).
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.lead().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Quotient when `d` divides `self` exactly over Z, else `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            quo[k] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(quo))
        } else {
            None
        }
    }

    /// Division by a monic polynomial, returning (quotient, remainder).
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Self::new(quo), Self::new(r))
    }

    /// Pseudo-remainder lc(b)^{deg a - deg b + 1} a mod b.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.deg();
        let lc = b.lead();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let t = Self::monomial(r.lead(), shift).mul(b);
            r = r.scale(&lc).sub(&t);
        }
        r
    }

    /// Primitive gcd over Z with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let cont = self.content().abs().gcd(&o.content().abs());
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        if a.deg() == 0 {
            return Self::constant(cont);
        }
        a.scale(&cont)
    }

    /// Sylvester resultant, with Res(prod (T - a_i), prod (T - b_j)) = prod (a_i - b_j).
    pub fn resultant(&self, o: &Self) -> BigInt {
        if self.is_zero() || o.is_zero() {
            return BigInt::zero();
        }
        let (n, m) = (self.deg(), o.deg());
        if n == 0 {
            return self.lead().pow(m as u32);
        }
        if m == 0 {
            return o.lead().pow(n as u32);
        }
        let size = n + m;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..m {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..n {
            for (j, c) in o.coeffs.iter().rev().enumerate() {
                mat[m + i][i + j] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// Discriminant (up to the conventional sign and leading-coefficient
    /// factor, which do not matter for vanishing): Res(P, P').
    pub fn disc_resultant(&self) -> BigInt {
        self.resultant(&self.derivative())
    }

    /// Squarefree decomposition of a primitive polynomial (Yun): parts with
    /// multiplicities, product of part^mult equals the primitive part.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyInt, usize)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.deg() == 0 {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Squarefree kernel: product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition().iter().fold(Self::one(), |acc, (p, _)| acc.mul(p))
    }

    /// Power sums p_1..p_count of the roots of a monic polynomial.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        assert!(self.is_monic(), "power sums need a monic polynomial");
        let n = self.deg();
        // e_k = (-1)^k a_{n-k}
        let e: Vec<BigInt> = (0..=n)
            .map(|k| if k % 2 == 0 { self.coeff(n - k) } else { -self.coeff(n - k) })
            .collect();
        let mut p: Vec<BigInt> = Vec::with_capacity(count);
        for m in 1..=count {
            let mut v = BigInt::zero();
            for i in 1..m.min(n + 1) {
                let t = &e[i] * &p[m - i - 1];
                if i % 2 == 1 {
                    v += t;
                } else {
                    v -= t;
                }
            }
            if m <= n {
                let t = &e[m] * BigInt::from(m);
                if m % 2 == 1 {
                    v += t;
                } else {
                    v -= t;
                }
            }
            p.push(v);
        }
        p
    }

    /// The monic polynomial of degree n whose roots have power sums p_1..p_n.
    pub fn from_power_sums(p: &[BigInt]) -> Self {
        let n = p.len();
        let mut e = vec![BigInt::one()];
        for k in 1..=n {
            let mut v = BigInt::zero();
            for i in 1..=k {
                let t = &e[k - i] * &p[i - 1];
                if i % 2 == 1 {
                    v += t;
                } else {
                    v -= t;
                }
            }
            let (quo, rem) = v.div_rem(&BigInt::from(k));
            debug_assert!(rem.is_zero(), "power sums of algebraic integers");
            e.push(quo);
        }
        let mut c = vec![BigInt::zero(); n + 1];
        for k in 0..=n {
            c[n - k] = if k % 2 == 0 { e[k].clone() } else { -e[k].clone() };
        }
        Self::new(c)
    }

    pub fn to_fq(&self, ctx: &FieldCtx) -> PolyFq {
        let p = BigInt::from(ctx.p());
        PolyFq::new(
            self.coeffs
                .iter()
                .map(|c| FqElem(c.mod_floor(&p).to_u32().unwrap()))
                .collect(),
        )
    }

    fn from_fp(f: &PolyFq) -> Self {
        Self::new(f.coeffs().iter().map(|c| BigInt::from(c.0)).collect())
    }
}

/// Fraction-free Gaussian elimination determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Factorization over Z: content times irreducible primitive factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorization {
    pub content: BigInt,
    pub factors: Vec<(PolyInt, usize)>,
}

impl IntFactorization {
    pub fn expand(&self) -> PolyInt {
        self.factors
            .iter()
            .fold(PolyInt::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

/// Factor a nonzero integer polynomial into irreducibles over Z.
///
/// Factors are primitive with positive leading coefficient, sorted by degree
/// and then coefficients.
pub fn factor_int(p: &PolyInt) -> Result<IntFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg() > FACTOR_DEGREE_CAP {
        return Err(Error::DegreeCap(p.deg(), FACTOR_DEGREE_CAP));
    }
    let content = p.content();
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
    Ok(IntFactorization { content, factors })
}

fn factor_squarefree(f: &PolyInt) -> Vec<PolyInt> {
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    // split off the power of T first
    while f.deg() > 0 && f.coeff(0).is_zero() {
        out.push(PolyInt::x());
        f = f.div_exact(&PolyInt::x()).unwrap();
    }
    if f.deg() == 0 {
        return out;
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    out.extend(zassenhaus(&f));
    out
}

/// Pick a prime where f stays squarefree of the same degree, preferring few
/// modular factors among the first few candidates.
fn choose_prime(f: &PolyInt) -> (FieldCtx, Vec<PolyFq>) {
    let lc = f.lead();
    let mut best: Option<(FieldCtx, Vec<PolyFq>)> = None;
    let mut tried = 0;
    let mut p = 3u32;
    loop {
        if is_prime_u64(p as u64) && !(&lc % BigInt::from(p)).is_zero() {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let fp = f.to_fq(&ctx);
            if fp.deg() == f.deg() && fp.is_squarefree(&ctx).unwrap() {
                let (_, fs) = fp.factor(&ctx).unwrap();
                let facs: Vec<PolyFq> = fs.into_iter().map(|(g, _)| g).collect();
                if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
                    best = Some((ctx, facs));
                }
                tried += 1;
                if tried >= 5 {
                    break;
                }
            }
        }
        p += 2;
    }
    best.unwrap()
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &PolyInt, m: &BigInt) -> PolyInt {
    PolyInt::new(f.coeffs.iter().map(|c| sym_mod(c, m)).collect())
}

/// Extended Euclid over F_p: (s, t) with s a + t b = 1.
fn bezout(a: &PolyFq, b: &PolyFq, ctx: &FieldCtx) -> (PolyFq, PolyFq) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (PolyFq::one(), PolyFq::zero());
    let (mut t0, mut t1) = (PolyFq::zero(), PolyFq::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1, ctx).unwrap();
        let s2 = s0.sub(&q.mul(&s1, ctx), ctx);
        let t2 = t0.sub(&q.mul(&t1, ctx), ctx);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = ctx.inv(r0.lead()).expect("coprime factors");
    (s0.scale(inv, ctx), t0.scale(inv, ctx))
}

/// Lift target = g * h (mod p) with g monic to a factorization mod p^k.
fn hensel_pair(target: &PolyInt, g: &PolyFq, h: &PolyFq, ctx: &FieldCtx, k: u32) -> (PolyInt, PolyInt) {
    let p = BigInt::from(ctx.p());
    let (_, t) = bezout(g, h, ctx);
    let mut gl = PolyInt::from_fp(g);
    let mut hl = PolyInt::from_fp(h);
    // keep h's leading coefficient equal to target's
    let lc = target.lead();
    let mut hcoeffs = hl.coeffs.clone();
    if let Some(last) = hcoeffs.last_mut() {
        *last = lc.clone();
    }
    hl = PolyInt::new(hcoeffs);
    let mut pk = p.clone();
    for _ in 1..k {
        let err = target.sub(&gl.mul(&hl));
        let e = PolyInt::new(err.coeffs.iter().map(|c| c / &pk).collect());
        let ef = e.to_fq(ctx);
        // g A + h B = e with deg A < deg h, deg B < deg g
        let b = t.mul(&ef, ctx).rem(g, ctx);
        let a = ef.sub(&h.mul(&b, ctx), ctx).div_exact(g, ctx).expect("bezout identity");
        hl = hl.add(&PolyInt::from_fp(&a).scale(&pk));
        gl = gl.add(&PolyInt::from_fp(&b).scale(&pk));
        pk *= &p;
        hl = reduce(&hl, &pk);
        gl = reduce(&gl, &pk);
    }
    (gl, hl)
}

fn zassenhaus(f: &PolyInt) -> Vec<PolyInt> {
    let (ctx, mod_factors) = choose_prime(f);
    if mod_factors.len() == 1 {
        return vec![f.clone()];
    }
    let n = f.deg();
    let lc = f.lead();
    let norm1: BigInt = f.coeffs.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm1;
    let p = BigInt::from(ctx.p());
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    // lift one factor at a time against the product of the rest
    let mut lifted = Vec::new();
    let mut target = reduce(f, &pk);
    let mut rest_mod: Vec<PolyFq> = mod_factors.clone();
    while rest_mod.len() > 1 {
        let g = rest_mod.remove(0);
        let h = rest_mod
            .iter()
            .fold(PolyFq::constant(FqElem((lc.mod_floor(&p)).to_u32().unwrap())), |acc, x| acc.mul(x, &ctx));
        let (gl, hl) = hensel_pair(&target, &g, &h, &ctx, k);
        lifted.push(gl);
        target = hl;
    }
    // the last factor: make it monic mod p^k
    let lc_inv = lc.modinv(&pk).expect("lc invertible mod p^k");
    lifted.push(reduce(&target.scale(&lc_inv), &pk));

    let mut out = Vec::new();
    let mut f = f.clone();
    let mut active: Vec<PolyInt> = lifted;
    let mut size = 1;
    'outer: while 2 * size <= active.len() {
        let r = active.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lcf = f.lead();
            let cand = subset.iter().fold(PolyInt::constant(lcf.clone()), |acc, &i| reduce(&acc.mul(&active[i]), &pk));
            let cand = cand.primitive_part();
            if let Some(q) = f.div_exact(&cand) {
                out.push(cand);
                f = q;
                let mut keep = Vec::new();
                for (i, g) in active.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                active = keep;
                continue 'outer;
            }
            // next subset in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if subset[i] < r - size + i {
                    subset[i] += 1;
                    for j in i + 1..size {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyInt {
        PolyInt::from_i64(c)
    }

    #[test]
    fn resultant_conventions() {
        // Res(T - a, T - b) = a - b
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-7, 1])), BigInt::from(-5));
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-3, 0, 1])), BigInt::one());
        assert!(p(&[9, -6, 1]).disc_resultant().is_zero());
    }

    #[test]
    fn factor_small_examples() {
        let f = factor_int(&p(&[-9, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-3, 1]), 1), (p(&[3, 1]), 1)]);
        let f = factor_int(&p(&[529, 0, -29, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[529, 0, -29, 0, 1]), 1)]);
        let sq = p(&[9, 3, 1]).pow(2);
        let f = factor_int(&sq).unwrap();
        assert_eq!(f.factors, vec![(p(&[9, 3, 1]), 2)]);
    }

    #[test]
    fn factor_needs_recombination() {
        // T^4 + 1 splits into quadratics mod every prime
        let f = factor_int(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        // (T^2 - 2)(T^2 - 3)(2T + 1)
        let g = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1])).mul(&p(&[1, 2]));
        let f = factor_int(&g.scale(&BigInt::from(-6))).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(), g.scale(&BigInt::from(-6)));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-3, 1]).pow(2).mul(&p(&[1, 1]));
        let b = p(&[-3, 1]).mul(&p(&[5, 1]));
        assert_eq!(a.gcd(&b), p(&[-3, 1]));
        let sf = a.squarefree_decomposition();
        assert_eq!(sf, vec![(p(&[1, 1]), 1), (p(&[-3, 1]), 2)]);
    }

    #[test]
    fn power_sums_round_trip() {
        let f = p(&[529, 0, -29, 0, 1]);
        let ps = f.power_sums(4);
        assert_eq!(ps, vec![BigInt::zero(), BigInt::from(58), BigInt::zero(), BigInt::from(-434)]);
        assert_eq!(PolyInt::from_power_sums(&ps), f);
    }

    #[test]
    fn degree_cap() {
        let big = PolyInt::monomial(BigInt::one(), 40).add(&PolyInt::one());
        assert!(matches!(factor_int(&big), Err(Error::DegreeCap(40, _))));
    }
}
