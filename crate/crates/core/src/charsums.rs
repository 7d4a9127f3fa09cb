//! Quadratic residue symbols modulo f and the character sums built on them.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::polyfq::{enumerate_irreducible, root_resultant, root_resultant_small, MonicIter, SMALL_DEGREE};
use crate::algebra::{FieldCtx, FqElem, PolyFq};
use crate::bias::SqrtQNumber;
use crate::error::{Error, Result};

/// Largest number of symbol evaluations a direct enumeration may perform.
pub const ENUMERATION_CAP: u64 = 100_000_000;

/// The primitive quadratic character modulo a monic squarefree f.
#[derive(Clone, Debug)]
pub struct CharCtx<'a> {
    field: &'a FieldCtx,
    f: PolyFq,
    factors: Vec<PolyFq>,
}

/// Exact prime race counts in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaceCount {
    pub n: usize,
    pub n_plus: u64,
    pub n_minus: u64,
    /// n (N+ - N-) / q^{n/2}
    pub pi_value: SqrtQNumber,
}

impl RaceCount {
    pub fn pi_f64(&self) -> f64 {
        self.pi_value.to_f64()
    }

    pub fn difference(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

fn enumeration_size(q: u32, d: usize) -> Result<u64> {
    (q as u64)
        .checked_pow(d as u32)
        .filter(|&s| s <= ENUMERATION_CAP)
        .ok_or_else(|| Error::TooLarge(format!("enumerating degree {d} over F_{q}")))
}

impl<'a> CharCtx<'a> {
    pub fn new(field: &'a FieldCtx, f: PolyFq) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_monic() {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        if f.deg() == 0 {
            return Err(Error::InvalidInput("modulus must be nonconstant".into()));
        }
        if !f.is_squarefree(field)? {
            return Err(Error::InvalidInput("modulus must be squarefree".into()));
        }
        let (_, fs) = f.factor(field)?;
        let factors = fs.into_iter().map(|(p, _)| p).collect();
        Ok(CharCtx { field, f, factors })
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    pub fn modulus(&self) -> &PolyFq {
        &self.f
    }

    pub fn factors(&self) -> &[PolyFq] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    /// ε_f: 1 when deg f is even, else 0.
    pub fn eps(&self) -> i64 {
        (self.degree() % 2 == 0) as i64
    }

    /// Genus of the associated curve, ⌊(n - 1)/2⌋.
    pub fn genus(&self) -> usize {
        (self.degree() - 1) / 2
    }

    /// χ_f(h) as the product over prime factors P of f of h^{(|P|-1)/2} mod P.
    pub fn residue_symbol(&self, h: &PolyFq) -> Result<i8> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ctx = self.field;
        let mut out = 1i8;
        for p in &self.factors {
            let r = h.rem(p, ctx);
            if r.is_zero() {
                return Ok(0);
            }
            let exp = ((ctx.q() as u128).pow(p.deg() as u32) - 1) / 2;
            let v = r.powmod(exp, p, ctx);
            if !v.is_one() {
                out = -out;
            }
        }
        Ok(out)
    }

    /// χ_f(h) through the quadratic character of prod_{f(b)=0} h(b).
    #[inline]
    pub fn symbol(&self, h: &PolyFq) -> i8 {
        self.symbol_coeffs(h.coeffs())
    }

    #[inline]
    fn symbol_coeffs(&self, h: &[FqElem]) -> i8 {
        let r = if self.f.deg() < SMALL_DEGREE && h.len() <= SMALL_DEGREE {
            root_resultant_small(self.f.coeffs(), h, self.field)
        } else {
            root_resultant(&self.f, &PolyFq::new(h.to_vec()), self.field)
        };
        self.field.eta(r)
    }

    /// A_d = sum of χ_f over monic polynomials of degree d.
    pub fn coeff_sum(&self, d: usize) -> Result<i64> {
        enumeration_size(self.field.q(), d)?;
        let q = self.field.q();
        let mut h = vec![FqElem::ZERO; d + 1];
        h[d] = FqElem::ONE;
        let mut total = 0i64;
        loop {
            total += self.symbol_coeffs(&h) as i64;
            // odometer over the low coefficients
            let mut i = 0;
            loop {
                if i == d {
                    return Ok(total);
                }
                h[i].0 += 1;
                if h[i].0 < q {
                    break;
                }
                h[i].0 = 0;
                i += 1;
            }
        }
    }

    /// [A_0, ..., A_{n-1}] by direct enumeration.
    pub fn coeff_sums(&self) -> Result<Vec<i64>> {
        self.coeff_sums_upto(self.degree() - 1)
    }

    /// [A_0, ..., A_k].
    pub fn coeff_sums_upto(&self, k: usize) -> Result<Vec<i64>> {
        (0..=k).map(|d| self.coeff_sum(d)).collect()
    }

    /// (N+, N-) over monic irreducibles of degree d.
    pub fn irreducible_counts(&self, d: usize) -> Result<(u64, u64)> {
        enumeration_size(self.field.q(), d)?;
        let mut plus = 0;
        let mut minus = 0;
        for h in enumerate_irreducible(self.field, d) {
            match self.symbol(&h) {
                1 => plus += 1,
                -1 => minus += 1,
                _ => {}
            }
        }
        Ok((plus, minus))
    }

    pub fn prime_race_count(&self, n: usize) -> Result<RaceCount> {
        if n == 0 {
            return Err(Error::InvalidInput("race degree must be at least 1".into()));
        }
        let (n_plus, n_minus) = self.irreducible_counts(n)?;
        let q = self.field.q() as u64;
        let num = BigRational::from_integer(BigInt::from(n as i64 * (n_plus as i64 - n_minus as i64)));
        let pi_value = SqrtQNumber::rational(num, q).mul(&SqrtQNumber::sqrt_q_pow(-(n as i64), q));
        Ok(RaceCount { n, n_plus, n_minus, pi_value })
    }

    /// c_n = sum over d | n of d * sum_{deg P = d} χ_f(P)^{n/d}.
    pub fn von_mangoldt_sum(&self, n: usize) -> Result<i64> {
        Ok(self.prime_power_correction(n)? + self.race_term(n, n)?)
    }

    /// The proper prime-power part of c_n: sum over d | n, d < n, of
    /// d * sum_{deg P = d} χ_f(P)^{n/d}. Then n (N+ − N−) = c_n minus this.
    pub fn prime_power_correction(&self, n: usize) -> Result<i64> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let mut total = 0i64;
        for d in (1..n).filter(|d| n % d == 0) {
            total += self.race_term(n, d)?;
        }
        Ok(total)
    }

    fn race_term(&self, n: usize, d: usize) -> Result<i64> {
        let (plus, minus) = self.irreducible_counts(d)?;
        let inner = if (n / d) % 2 == 1 { plus as i64 - minus as i64 } else { (plus + minus) as i64 };
        Ok(d as i64 * inner)
    }

    /// c_n as sum of Λ(F) χ_f(F) over all monic F of degree n, scanning
    /// every monic polynomial and factoring it.
    pub fn von_mangoldt_scan(&self, n: usize) -> Result<i64> {
        enumeration_size(self.field.q(), n)?;
        let ctx = self.field;
        let mut total = 0i64;
        for h in MonicIter::new(ctx, n) {
            let (_, fs) = h.factor(ctx)?;
            if let [(p, k)] = fs.as_slice() {
                let s = self.symbol(p) as i64;
                total += p.deg() as i64 * s.pow(*k as u32);
            }
        }
        Ok(total)
    }
}

/// Coefficients c_1..c_N of u L'(u)/L(u) for L(u) = sum A_d u^d, A_0 = 1.
pub fn log_derivative_coeffs(a: &[i64], count: usize) -> Vec<i64> {
    let coeff = |d: usize| a.get(d).copied().unwrap_or(0) as i128;
    let mut c: Vec<i128> = Vec::with_capacity(count);
    for n in 1..=count {
        let mut v = n as i128 * coeff(n);
        for k in 1..n {
            v -= c[k - 1] * coeff(n - k);
        }
        c.push(v);
    }
    c.into_iter().map(|v| v as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_symbols() {
        let k = FieldCtx::new(3, 1).unwrap();
        let c = CharCtx::new(&k, PolyFq::from_ints(&k, &[1, 0, 1])).unwrap();
        assert_eq!(c.residue_symbol(&PolyFq::x()).unwrap(), 1);
        assert_eq!(c.residue_symbol(&PolyFq::from_ints(&k, &[1, 1])).unwrap(), -1);
        assert_eq!(c.coeff_sums().unwrap(), vec![1, -1]);
        let race = c.prime_race_count(1).unwrap();
        assert_eq!((race.n_plus, race.n_minus), (1, 2));
        assert!((race.pi_f64() + 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.von_mangoldt_sum(1).unwrap(), -1);
        assert_eq!(c.von_mangoldt_sum(2).unwrap(), -1);
        assert_eq!(c.von_mangoldt_scan(2).unwrap(), -1);
        // c_2 = 2 (N+ − N−) in degree 2 plus the squares of the linear primes
        let race = c.prime_race_count(2).unwrap();
        assert_eq!(c.prime_power_correction(2).unwrap(), 3);
        assert_eq!(2 * race.difference(), -1 - 3);
    }

    #[test]
    fn squares_are_residues() {
        let k = FieldCtx::new(5, 1).unwrap();
        let c = CharCtx::new(&k, PolyFq::from_ints(&k, &[1, 2, 0, 1])).unwrap();
        for g in MonicIter::new(&k, 2) {
            let sq = g.mul(&g, &k);
            let expect = if c.modulus().gcd(&g, &k).deg() > 0 { 0 } else { 1 };
            assert_eq!(c.residue_symbol(&sq).unwrap(), expect);
        }
    }

    #[test]
    fn log_derivative_of_one_minus_u() {
        assert_eq!(log_derivative_coeffs(&[1, -1], 4), vec![-1, -1, -1, -1]);
    }
}
