//! L-functions, Weil polynomials and their real counterparts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::field::FieldCtx;
use crate::algebra::polyfq::Embedding;
use crate::algebra::PolyInt;
use crate::charsums::CharCtx;
use crate::error::{Error, Result};

/// A monic q-symplectic integer polynomial of degree 2g.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilPoly {
    p: PolyInt,
    q: u64,
    g: usize,
}

/// Monic h of degree g with P(T) = T^g h(T + q/T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealWeilPoly {
    pub h: PolyInt,
    pub q: u64,
}

/// Whether P(T) q^g = T^{2g} P(q/T), i.e. a_{2g-i} q^g = a_i q^i.
pub fn is_symplectic(p: &PolyInt, q: u64) -> bool {
    if p.is_zero() || !p.is_monic() || p.deg() % 2 == 1 {
        return false;
    }
    let g = p.deg() / 2;
    let qb = BigInt::from(q);
    (0..=2 * g).all(|i| p.coeff(2 * g - i) * qb.pow(g as u32) == p.coeff(i) * qb.pow(i as u32))
}

impl WeilPoly {
    pub fn new(p: PolyInt, q: u64) -> Result<Self> {
        if !is_symplectic(&p, q) {
            return Err(Error::NotSymplectic);
        }
        let g = p.deg() / 2;
        Ok(WeilPoly { p, q, g })
    }

    pub fn from_i64(coeffs: &[i64], q: u64) -> Result<Self> {
        Self::new(PolyInt::from_i64(coeffs), q)
    }

    pub fn poly(&self) -> &PolyInt {
        &self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Z(u) = u^{2g} P(1/u).
    pub fn zeta_numerator(&self) -> PolyInt {
        self.p.reversed()
    }
}

/// L(u, χ_f) from direct coefficient sums.
pub fn l_function(ctx: &CharCtx) -> Result<PolyInt> {
    if ctx.degree() < 2 {
        return Err(Error::InvalidInput("L-function needs deg f >= 2".into()));
    }
    Ok(PolyInt::from_i64(&ctx.coeff_sums()?))
}

/// Z_f from L: L itself for odd n, L/(1 - u) for even n.
pub fn zeta_from_l(l: &PolyInt, n: usize) -> Result<PolyInt> {
    if n % 2 == 1 {
        return Ok(l.clone());
    }
    // L(u) = (1 - u) Z(u) with (1 - u) = -(u - 1)
    let (quo, rem) = l.divrem_monic(&PolyInt::from_i64(&[-1, 1]));
    if !rem.is_zero() {
        return Err(Error::InexactDivision("L(1) != 0 for even degree".into()));
    }
    Ok(quo.neg())
}

/// P_f as the reversal of Z_f.
pub fn weil_from_zeta(z: &PolyInt, q: u64) -> Result<WeilPoly> {
    if z.coeff(0) != BigInt::one() {
        return Err(Error::NotSymplectic);
    }
    let mut c = z.coeffs().to_vec();
    if c.len() % 2 == 0 {
        return Err(Error::NotSymplectic);
    }
    c.reverse();
    WeilPoly::new(PolyInt::new(c), q)
}

pub fn weil_poly(ctx: &CharCtx) -> Result<WeilPoly> {
    let l = l_function(ctx)?;
    let z = zeta_from_l(&l, ctx.degree())?;
    weil_from_zeta(&z, ctx.field().q() as u64)
}

/// P_f from A_0..A_g only, completing Z_f by its functional equation
/// z_{2g-k} = q^{g-k} z_k. Agrees with [`weil_poly`].
pub fn weil_poly_fast(ctx: &CharCtx) -> Result<WeilPoly> {
    let g = ctx.genus();
    let q = ctx.field().q() as u64;
    let a = ctx.coeff_sums_upto(g)?;
    let mut z: Vec<BigInt> = vec![BigInt::zero(); 2 * g + 1];
    let mut acc = 0i64;
    for k in 0..=g {
        z[k] = if ctx.degree() % 2 == 0 {
            acc += a[k];
            BigInt::from(acc)
        } else {
            BigInt::from(a[k])
        };
    }
    let qb = BigInt::from(q);
    for k in 0..g {
        z[2 * g - k] = &z[k] * qb.pow((g - k) as u32);
    }
    weil_from_zeta(&PolyInt::new(z), q)
}

/// Express P(T) = sum_k h_k T^{g-k} (T^2 + q)^k by eliminating from the top.
pub fn real_weil(p: &WeilPoly) -> Result<RealWeilPoly> {
    let g = p.genus();
    let base = PolyInt::from_i64(&[p.q as i64, 0, 1]);
    let mut rest = p.poly().clone();
    let mut h = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        let c = rest.coeff(g + k);
        if c.is_zero() {
            continue;
        }
        let term = PolyInt::monomial(c.clone(), g - k).mul(&base.pow(k));
        rest = rest.sub(&term);
        h[k] = c;
    }
    if !rest.is_zero() {
        return Err(Error::NotSymplectic);
    }
    Ok(RealWeilPoly { h: PolyInt::new(h), q: p.q })
}

impl RealWeilPoly {
    /// T^g h(T + q/T)
    pub fn reconstruct(&self) -> PolyInt {
        let g = self.h.deg();
        let base = PolyInt::from_i64(&[self.q as i64, 0, 1]);
        (0..=g).fold(PolyInt::zero(), |acc, k| {
            acc.add(&PolyInt::monomial(self.h.coeff(k), g - k).mul(&base.pow(k)))
        })
    }
}

/// Number of points on the smooth projective model of y^2 = f(x) over
/// F_{q^k}, for odd deg f.
pub fn point_count(ctx: &CharCtx, k: u32) -> Result<i64> {
    if ctx.degree() % 2 == 0 {
        return Err(Error::EvenDegreeUnsupported);
    }
    let small = ctx.field();
    let big = FieldCtx::new(small.p(), small.e() * k)?;
    let emb = Embedding::new(small, &big)?;
    let f = ctx.modulus().map_coeffs(|c| emb.map(c));
    let sum: i64 = big.elements().map(|x| big.eta(f.eval(x, &big)) as i64).sum();
    Ok(big.q() as i64 + 1 + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyFq;

    #[test]
    fn f23_example() {
        let k = FieldCtx::new(23, 1).unwrap();
        let c = CharCtx::new(&k, PolyFq::from_ints(&k, &[5, 0, 0, 2, 0, 0, 1])).unwrap();
        let l = l_function(&c).unwrap();
        let z = zeta_from_l(&l, 6).unwrap();
        assert_eq!(z, PolyInt::from_i64(&[1, 0, -29, 0, 529]));
        let p = weil_poly(&c).unwrap();
        assert_eq!(p.poly(), &PolyInt::from_i64(&[529, 0, -29, 0, 1]));
        assert_eq!(weil_poly_fast(&c).unwrap(), p);
        let h = real_weil(&p).unwrap();
        assert_eq!(h.h, PolyInt::from_i64(&[-75, 0, 1]));
        assert_eq!(&h.reconstruct(), p.poly());
    }

    #[test]
    fn f3_degree_two() {
        let k = FieldCtx::new(3, 1).unwrap();
        let c = CharCtx::new(&k, PolyFq::from_ints(&k, &[1, 0, 1])).unwrap();
        assert_eq!(l_function(&c).unwrap(), PolyInt::from_i64(&[1, -1]));
        let p = weil_poly(&c).unwrap();
        assert_eq!(p.poly(), &PolyInt::one());
        assert_eq!(p.genus(), 0);
    }

    #[test]
    fn real_weil_examples() {
        let p = WeilPoly::from_i64(&[9, -6, 1], 9).unwrap();
        assert_eq!(real_weil(&p).unwrap().h, PolyInt::from_i64(&[-6, 1]));
        let p = WeilPoly::new(PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).unwrap();
        assert_eq!(real_weil(&p).unwrap().h, PolyInt::from_i64(&[3, 1]).pow(2));
        assert_eq!(WeilPoly::from_i64(&[1, 1, 1], 9), Err(Error::NotSymplectic));
    }

    #[test]
    fn point_count_of_y2_eq_x() {
        let k = FieldCtx::new(5, 1).unwrap();
        let c = CharCtx::new(&k, PolyFq::x()).unwrap();
        assert_eq!(point_count(&c, 1).unwrap(), 6);
    }
}
