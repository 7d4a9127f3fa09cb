//! Dense univariate polynomials over F_q.
//!
//! A [`PolyFq`] is a plain coefficient vector; every operation takes the
//! [`FieldCtx`] it lives over, so contexts can be shared freely between
//! threads without reference counting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{prime_divisors, FieldCtx, FqElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFq {
    coeffs: Vec<FqElem>,
}

/// A factor with its multiplicity.
pub type Factor = (PolyFq, usize);

impl PolyFq {
    pub fn zero() -> Self {
        PolyFq { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyFq { coeffs: vec![FqElem::ONE] }
    }

    pub fn x() -> Self {
        PolyFq { coeffs: vec![FqElem::ZERO, FqElem::ONE] }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::new(vec![c])
    }

    /// Build from ascending coefficients, trimming high zeros.
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyFq { coeffs }
    }

    /// Build from integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    /// Build from element indices.
    pub fn from_indices(coeffs: &[u32]) -> Self {
        Self::new(coeffs.iter().map(|&c| FqElem(c)).collect())
    }

    pub fn monomial(c: FqElem, k: usize) -> Self {
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FqElem::ONE]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FqElem::ONE
    }

    pub fn add(&self, o: &Self, ctx: &FieldCtx) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| ctx.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self, ctx: &FieldCtx) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| ctx.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Self {
        Self::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    pub fn scale(&self, c: FqElem, ctx: &FieldCtx) -> Self {
        Self::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize, ctx: &FieldCtx) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self, ctx);
        }
        out
    }

    /// Divide by the leading coefficient. Returns (lead, monic part).
    pub fn monic(&self, ctx: &FieldCtx) -> (FqElem, Self) {
        let lc = self.lead();
        if lc.is_zero() || lc == FqElem::ONE {
            return (lc, self.clone());
        }
        let inv = ctx.inv(lc).expect("nonzero lead");
        (lc, self.scale(inv, ctx))
    }

    pub fn divrem(&self, d: &Self, ctx: &FieldCtx) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = ctx.inv(d.lead()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut quo = vec![FqElem::ZERO; r.len() - dd];
        for k in (0..quo.len()).rev() {
            let top = r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = ctx.mul(top, inv);
            quo[k] = c;
            for (i, &b) in d.coeffs.iter().enumerate() {
                r[k + i] = ctx.sub(r[k + i], ctx.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Self::new(quo), Self::new(r)))
    }

    pub fn rem(&self, d: &Self, ctx: &FieldCtx) -> Self {
        self.divrem(d, ctx).expect("nonzero divisor").1
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self, ctx: &FieldCtx) -> Result<Self> {
        let (q, r) = self.divrem(d, ctx)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision("polynomial division over F_q".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self, ctx: &FieldCtx) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx);
            a = b;
            b = r;
        }
        a.monic(ctx).1
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ctx.mul(c, ctx.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElem, ctx: &FieldCtx) -> FqElem {
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn mulmod(&self, o: &Self, m: &Self, ctx: &FieldCtx) -> Self {
        self.mul(o, ctx).rem(m, ctx)
    }

    pub fn powmod(&self, mut k: u128, m: &Self, ctx: &FieldCtx) -> Self {
        let mut base = self.rem(m, ctx);
        let mut out = Self::one().rem(m, ctx);
        while k > 0 {
            if k & 1 == 1 {
                out = out.mulmod(&base, m, ctx);
            }
            k >>= 1;
            if k > 0 {
                base = base.mulmod(&base, m, ctx);
            }
        }
        out
    }

    pub fn is_squarefree(&self, ctx: &FieldCtx) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative(ctx), ctx).deg() == 0)
    }

    /// Rabin's test: x^{q^n} = x mod f and gcd(x^{q^{n/r}} - x, f) = 1 for
    /// every prime r dividing n.
    pub fn is_irreducible(&self, ctx: &FieldCtx) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.deg();
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic(ctx).1;
        let x = Self::x();
        let q = ctx.q() as u128;
        let mut frob = vec![x.rem(&f, ctx)];
        for _ in 0..n {
            let next = frob.last().unwrap().powmod(q, &f, ctx);
            frob.push(next);
        }
        if frob[n].sub(&x, ctx).rem(&f, ctx) != Self::zero() {
            return Ok(false);
        }
        for r in prime_divisors(n as u64) {
            let h = frob[n / r as usize].sub(&x, ctx);
            if f.gcd(&h, ctx).deg() > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). The leading coefficient is returned
    /// separately.
    pub fn factor(&self, ctx: &FieldCtx) -> Result<(FqElem, Vec<Factor>)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (lc, f) = self.monic(ctx);
        let mut out: Vec<Factor> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (part, mult) in squarefree_decomposition(&f, ctx) {
            for (block, k) in distinct_degree(&part, ctx) {
                let mut pieces = Vec::new();
                equal_degree(&block, k, ctx, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|p| (p, mult)));
            }
        }
        out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
        // merge equal factors coming from different squarefree layers
        let mut merged: Vec<Factor> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += m,
                _ => merged.push((p, m)),
            }
        }
        Ok((lc, merged))
    }

    /// p-th root of a polynomial in x^p.
    fn pth_root(&self, ctx: &FieldCtx) -> Self {
        let p = ctx.p() as usize;
        let k = (ctx.q() / ctx.p()) as u64;
        Self::new(self.coeffs.iter().step_by(p).map(|&c| ctx.pow(c, k)).collect())
    }

    /// The image of this polynomial under an embedding of its coefficient field.
    pub fn map_coeffs(&self, f: impl Fn(FqElem) -> FqElem) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }
}

/// Squarefree decomposition of a monic polynomial: pairs (part, multiplicity)
/// with pairwise coprime squarefree parts and f = prod part^mult.
pub fn squarefree_decomposition(f: &PolyFq, ctx: &FieldCtx) -> Vec<Factor> {
    let mut out = Vec::new();
    sff(f, 1, ctx, &mut out);
    out
}

fn sff(f: &PolyFq, scale: usize, ctx: &FieldCtx, out: &mut Vec<Factor>) {
    if f.deg() == 0 {
        return;
    }
    let df = f.derivative(ctx);
    if df.is_zero() {
        sff(&f.pth_root(ctx), scale * ctx.p() as usize, ctx, out);
        return;
    }
    let mut c = f.gcd(&df, ctx);
    let mut w = f.div_exact(&c, ctx).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c, ctx);
        let fac = w.div_exact(&y, ctx).unwrap();
        if fac.deg() > 0 {
            out.push((fac, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, ctx).unwrap();
    }
    if c.deg() > 0 {
        sff(&c.pth_root(ctx), scale * ctx.p() as usize, ctx, out);
    }
}

/// Split a monic squarefree polynomial into products of irreducibles of
/// equal degree: pairs (product, degree).
pub fn distinct_degree(f: &PolyFq, ctx: &FieldCtx) -> Vec<(PolyFq, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyFq::x();
    let mut h = x.rem(&rest, ctx);
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.powmod(ctx.q() as u128, &rest, ctx);
        let g = rest.gcd(&h.sub(&x, ctx), ctx);
        if g.deg() > 0 {
            rest = rest.div_exact(&g, ctx).unwrap();
            h = h.rem(&rest, ctx);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &PolyFq, k: usize, ctx: &FieldCtx, rng: &mut ChaCha8Rng, out: &mut Vec<PolyFq>) {
    let n = f.deg();
    if n == k {
        out.push(f.clone());
        return;
    }
    let exp = ((ctx.q() as u128).pow(k as u32) - 1) / 2;
    loop {
        let a = PolyFq::new((0..n).map(|_| FqElem(rng.gen_range(0..ctx.q()))).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = a.powmod(exp, f, ctx).sub(&PolyFq::one(), ctx);
        let g = f.gcd(&b, ctx);
        if g.deg() > 0 && g.deg() < n {
            let other = f.div_exact(&g, ctx).unwrap();
            equal_degree(&g, k, ctx, rng, out);
            equal_degree(&other, k, ctx, rng, out);
            return;
        }
    }
}

/// R(f, h) = prod_{f(b) = 0} h(b) for monic f, computed by the Euclidean
/// recursion.
pub fn root_resultant(f: &PolyFq, h: &PolyFq, ctx: &FieldCtx) -> FqElem {
    debug_assert!(f.is_monic());
    let mut f = f.clone();
    let mut h = h.rem(&f, ctx);
    let mut acc = FqElem::ONE;
    loop {
        let n = f.deg();
        if n == 0 {
            return acc;
        }
        if h.is_zero() {
            return FqElem::ZERO;
        }
        let m = h.deg();
        if m == 0 {
            return ctx.mul(acc, ctx.pow(h.lead(), n as u64));
        }
        // prod_{f(b)=0} h(b) = (-1)^{nm} lc(h)^n prod_{h(c)=0} f(c)
        let (lc, hm) = h.monic(ctx);
        acc = ctx.mul(acc, ctx.pow(lc, n as u64));
        if (n * m) % 2 == 1 {
            acc = ctx.neg(acc);
        }
        h = f.rem(&hm, ctx);
        f = hm;
    }
}

/// Capacity of the fixed buffers used by [`root_resultant_small`].
pub const SMALL_DEGREE: usize = 48;

/// Allocation-free [`root_resultant`] for monic `f` with deg f, deg h below
/// [`SMALL_DEGREE`]. Coefficients are ascending; `h` may carry high zeros.
pub fn root_resultant_small(f: &[FqElem], h: &[FqElem], ctx: &FieldCtx) -> FqElem {
    let mut a = [FqElem::ZERO; SMALL_DEGREE];
    let mut b = [FqElem::ZERO; SMALL_DEGREE];
    let mut la = f.len();
    let mut lb = h.len();
    a[..la].copy_from_slice(f);
    b[..lb].copy_from_slice(h);
    let (mut a, mut b) = (&mut a, &mut b);
    // b <- b mod a (a monic)
    reduce_in_place(b, &mut lb, a, la, ctx);
    let mut acc = FqElem::ONE;
    loop {
        let da = la - 1;
        if da == 0 {
            return acc;
        }
        while lb > 0 && b[lb - 1].is_zero() {
            lb -= 1;
        }
        if lb == 0 {
            return FqElem::ZERO;
        }
        let db = lb - 1;
        let lc = b[db];
        if db == 0 {
            return ctx.mul(acc, ctx.pow(lc, da as u64));
        }
        acc = ctx.mul(acc, ctx.pow(lc, da as u64));
        if (da * db) % 2 == 1 {
            acc = ctx.neg(acc);
        }
        if lc != FqElem::ONE {
            let inv = ctx.inv(lc).unwrap();
            for c in b[..lb].iter_mut() {
                *c = ctx.mul(*c, inv);
            }
        }
        reduce_in_place(a, &mut la, b, lb, ctx);
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut la, &mut lb);
    }
}

/// r <- r mod m for monic m of length lm.
fn reduce_in_place(r: &mut [FqElem], lr: &mut usize, m: &[FqElem], lm: usize, ctx: &FieldCtx) {
    let dm = lm - 1;
    while *lr > dm {
        let top = r[*lr - 1];
        *lr -= 1;
        if top.is_zero() {
            continue;
        }
        let shift = *lr - dm;
        for i in 0..dm {
            r[shift + i] = ctx.sub(r[shift + i], ctx.mul(top, m[i]));
        }
    }
}

/// Iterator over all monic polynomials of degree `n`, in increasing order of
/// the tuple (c_0, ..., c_{n-1}) with c_0 most significant.
pub struct MonicIter {
    q: u32,
    digits: Vec<u32>,
    done: bool,
}

impl MonicIter {
    pub fn new(ctx: &FieldCtx, n: usize) -> Self {
        MonicIter { q: ctx.q(), digits: vec![0; n], done: false }
    }

    /// Position of the monic polynomial with the given low coefficients in
    /// this order.
    pub fn rank(q: u32, low: &[u32]) -> u64 {
        low.iter().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
    }

    /// The monic polynomial at a given position.
    pub fn unrank(q: u32, n: usize, mut idx: u64) -> PolyFq {
        let mut c = vec![FqElem::ZERO; n + 1];
        c[n] = FqElem::ONE;
        for i in (0..n).rev() {
            c[i] = FqElem((idx % q as u64) as u32);
            idx /= q as u64;
        }
        PolyFq::new(c)
    }
}

impl Iterator for MonicIter {
    type Item = PolyFq;

    fn next(&mut self) -> Option<PolyFq> {
        if self.done {
            return None;
        }
        let mut c: Vec<FqElem> = self.digits.iter().map(|&d| FqElem(d)).collect();
        c.push(FqElem::ONE);
        let item = PolyFq::new(c);
        // increment with c_{n-1} as the least significant digit
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}

/// Every monic squarefree polynomial of degree `n` in enumeration order.
pub fn enumerate_squarefree(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = PolyFq> + '_ {
    MonicIter::new(ctx, n).filter(move |f| f.is_squarefree(ctx).unwrap())
}

/// Every monic irreducible polynomial of degree `n` in enumeration order.
pub fn enumerate_irreducible(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = PolyFq> + '_ {
    MonicIter::new(ctx, n).filter(move |f| f.is_irreducible(ctx).unwrap())
}

/// An embedding of F_q into F_{q^k}, sending the generator of F_q to the
/// smallest-index root of its modulus in the larger field.
pub struct Embedding {
    images: Vec<FqElem>,
}

impl Embedding {
    pub fn new(small: &FieldCtx, big: &FieldCtx) -> Result<Self> {
        if small.p() != big.p() || big.e() % small.e() != 0 {
            return Err(Error::InvalidInput("field is not a subfield".into()));
        }
        let m = small.modulus();
        let eval = |z: FqElem| {
            m.iter()
                .rev()
                .fold(FqElem::ZERO, |acc, &c| big.add(big.mul(acc, z), big.from_int(c as i64)))
        };
        let root = big.elements().find(|&z| eval(z).is_zero()).expect("modulus splits in extension");
        let images = small
            .elements()
            .map(|a| {
                a.coords(small)
                    .iter()
                    .rev()
                    .fold(FqElem::ZERO, |acc, &c| big.add(big.mul(acc, root), big.from_int(c as i64)))
            })
            .collect();
        Ok(Embedding { images })
    }

    pub fn map(&self, a: FqElem) -> FqElem {
        self.images[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn predicates_on_small_cases() {
        let k = f3();
        let x2 = PolyFq::from_ints(&k, &[0, 0, 1]);
        assert!(!x2.is_squarefree(&k).unwrap());
        let x2p1 = PolyFq::from_ints(&k, &[1, 0, 1]);
        assert!(x2p1.is_irreducible(&k).unwrap());
        let f23 = FieldCtx::new(23, 1).unwrap();
        let f = PolyFq::from_ints(&f23, &[5, 0, 0, 2, 0, 0, 1]);
        assert!(f.is_irreducible(&f23).unwrap());
        assert_eq!(PolyFq::zero().is_squarefree(&k), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_x2_minus_1() {
        let k = f3();
        let f = PolyFq::from_ints(&k, &[-1, 0, 1]);
        let (_, fs) = f.factor(&k).unwrap();
        assert_eq!(fs, vec![(PolyFq::from_ints(&k, &[1, 1]), 1), (PolyFq::from_ints(&k, &[2, 1]), 1)]);
    }

    #[test]
    fn factor_with_pth_powers() {
        let k = FieldCtx::new(3, 2).unwrap();
        // (x + a)^3 (x^2 + 1)^2 x
        let a = k.generator();
        let lin = PolyFq::new(vec![a, FqElem::ONE]);
        let quad = PolyFq::from_ints(&k, &[1, 0, 1]);
        let f = lin.pow(3, &k).mul(&quad.pow(2, &k), &k).mul(&PolyFq::x(), &k);
        let (lc, fs) = f.factor(&k).unwrap();
        assert_eq!(lc, FqElem::ONE);
        let total: usize = fs.iter().map(|(p, m)| p.deg() * m).sum();
        assert_eq!(total, 8);
        let back = fs.iter().fold(PolyFq::one(), |acc, (p, m)| acc.mul(&p.pow(*m, &k), &k));
        assert_eq!(back, f);
        assert!(fs.iter().all(|(p, _)| p.is_irreducible(&k).unwrap()));
    }

    #[test]
    fn squarefree_counts() {
        let k = f3();
        assert_eq!(enumerate_squarefree(&k, 1).count(), 3);
        assert_eq!(enumerate_squarefree(&k, 3).count(), 18);
        let k5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(enumerate_squarefree(&k5, 2).count(), 20);
    }

    #[test]
    fn enumeration_order_and_rank() {
        let k = f3();
        let all: Vec<_> = MonicIter::new(&k, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], PolyFq::from_ints(&k, &[0, 0, 1]));
        assert_eq!(all[1], PolyFq::from_ints(&k, &[0, 1, 1]));
        assert_eq!(all[3], PolyFq::from_ints(&k, &[1, 0, 1]));
        for (i, f) in all.iter().enumerate() {
            assert_eq!(MonicIter::unrank(3, 2, i as u64), *f);
            assert_eq!(MonicIter::rank(3, &f.indices()[..2]), i as u64);
        }
    }

    #[test]
    fn root_resultant_matches_roots() {
        let k = FieldCtx::new(7, 1).unwrap();
        // f = (x-1)(x-2)(x-4)
        let f = PolyFq::from_ints(&k, &[-1, 1]).mul(&PolyFq::from_ints(&k, &[-2, 1]), &k).mul(&PolyFq::from_ints(&k, &[-4, 1]), &k);
        let h = PolyFq::from_ints(&k, &[3, 0, 1, 5]);
        let direct = [1, 2, 4].iter().fold(FqElem::ONE, |acc, &r| k.mul(acc, h.eval(k.from_int(r), &k)));
        assert_eq!(root_resultant(&f, &h, &k), direct);
        assert_eq!(root_resultant_small(f.coeffs(), h.coeffs(), &k), direct);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = FieldCtx::new(3, 2).unwrap();
        let big = FieldCtx::new(3, 4).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.map(small.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(small.add(a, b)), big.add(emb.map(a), emb.map(b)));
            }
        }
    }
}
