//! Certified fixed-point interval arithmetic.
//!
//! An [`Ival`] at precision `w` is the closed interval [lo/2^w, hi/2^w].
//! Every operation rounds outward, so the exact result of the corresponding
//! real operation always lies inside the returned interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ival {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shift_floor(a: &BigInt, k: u32) -> BigInt {
    a >> k
}

fn shift_ceil(a: &BigInt, k: u32) -> BigInt {
    -((-a) >> k)
}

impl Ival {
    pub fn point(v: BigInt, prec: u32) -> Self {
        Ival { lo: v.clone(), hi: v, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::point(BigInt::from(n) << prec, prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::point(n << prec, prec)
    }

    /// Enclosure of the dyadic interval [lo/2^e, hi/2^e] at precision `prec`.
    pub fn from_dyadic(lo: &BigInt, hi: &BigInt, e: u32, prec: u32) -> Self {
        if prec >= e {
            Ival { lo: lo << (prec - e), hi: hi << (prec - e), prec }
        } else {
            Ival { lo: shift_floor(lo, e - prec), hi: shift_ceil(hi, e - prec), prec }
        }
    }

    pub fn hull(&self, o: &Self) -> Self {
        Ival { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone(), prec: self.prec }
    }

    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Width bound as a power of two exponent: width <= 2^result.
    pub fn width_log2(&self) -> i64 {
        let w = self.width_ulps();
        if w.is_zero() {
            return -(self.prec as i64) - 1;
        }
        w.bits() as i64 - self.prec as i64
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn mid_f64(&self) -> f64 {
        let m: BigInt = (&self.lo + &self.hi) >> 1;
        let bits = m.bits() as i64;
        let shift = (bits - 60).max(0) as u32;
        let top = (&m >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.prec as i32)
    }

    pub fn neg(&self) -> Self {
        Ival { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        Ival { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Ival { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prods = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = prods.iter().min().unwrap();
        let hi = prods.iter().max().unwrap();
        Ival { lo: shift_floor(lo, self.prec), hi: shift_ceil(hi, self.prec), prec: self.prec }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if k.is_negative() {
            Ival { lo: b, hi: a, prec: self.prec }
        } else {
            Ival { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by an interval not containing zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let s = BigInt::one() << self.prec;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let num = a * &s;
                let f = num.div_floor(b);
                let c = ceil_div(&num, b);
                lo = Some(lo.map_or(f.clone(), |v| v.min(f)));
                hi = Some(hi.map_or(c.clone(), |v| v.max(c)));
            }
        }
        Some(Ival { lo: lo.unwrap(), hi: hi.unwrap(), prec: self.prec })
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self) -> Self {
        let lo = if self.lo.is_negative() { BigInt::zero() } else { (&self.lo << self.prec).sqrt() };
        let hi_arg = if self.hi.is_negative() { BigInt::zero() } else { &self.hi << self.prec };
        let mut hi = hi_arg.sqrt();
        if &hi * &hi < hi_arg {
            hi += 1;
        }
        Ival { lo, hi, prec: self.prec }
    }

    /// Enclosure of π.
    pub fn pi(prec: u32) -> Self {
        let w = prec + 16;
        // π = 16 atan(1/5) - 4 atan(1/239)
        let (a, ea) = atan_inv(5, w);
        let (b, eb) = atan_inv(239, w);
        let v = BigInt::from(16) * a - BigInt::from(4) * b;
        let err = BigInt::from(16 * ea + 4 * eb + 1);
        Ival { lo: &v - &err, hi: &v + &err, prec: w }.round_to(prec)
    }

    /// Round outward to a lower precision.
    pub fn round_to(&self, prec: u32) -> Self {
        if prec >= self.prec {
            return Ival { lo: &self.lo << (prec - self.prec), hi: &self.hi << (prec - self.prec), prec };
        }
        let k = self.prec - prec;
        Ival { lo: shift_floor(&self.lo, k), hi: shift_ceil(&self.hi, k), prec }
    }

    /// Enclosure of atan over the interval (atan is increasing).
    pub fn atan(&self) -> Self {
        let lo = atan_point(&self.lo, self.prec).lo;
        let hi = atan_point(&self.hi, self.prec).hi;
        Ival { lo, hi, prec: self.prec }
    }

    /// Enclosure of the angle of (x, y) for y > 0: π/2 - atan(x/y).
    pub fn atan2_upper(y: &Self, x: &Self) -> Option<Self> {
        if !y.is_positive() {
            return None;
        }
        let half_pi = Self::pi(y.prec).half_outward();
        let ratio = x.div(y)?;
        Some(half_pi.sub(&ratio.atan()))
    }

    fn half_outward(&self) -> Self {
        Ival { lo: shift_floor(&self.lo, 1), hi: shift_ceil(&self.hi, 1), prec: self.prec }
    }
}

/// atan(1/n) at precision w with an absolute error bound in ulps.
fn atan_inv(n: u64, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let n_big = BigInt::from(n);
    let n2 = BigInt::from(n * n);
    let mut power = &one / &n_big; // 1/n^(2k+1), truncated
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &n2;
        k += 1;
    }
    (sum, 2 * k + 2)
}

/// Enclosure of atan(a / 2^w).
fn atan_point(a: &BigInt, w: u32) -> Ival {
    let one = BigInt::one() << w;
    if a.is_zero() {
        return Ival::point(BigInt::zero(), w);
    }
    if a.is_negative() {
        return atan_point(&-a, w).neg();
    }
    let g = w + 24;
    if a > &one {
        // atan(t) = π/2 - atan(1/t)
        let t = Ival::point(a << 24u32, g);
        let inv = Ival::from_int(1, g).div(&t).unwrap();
        let inner = Ival { lo: atan_point(&inv.lo, g).lo, hi: atan_point(&inv.hi, g).hi, prec: g };
        return Ival::pi(g).half_outward().sub(&inner).round_to(w);
    }
    // three halvings: atan(t) = 2 atan(t / (1 + sqrt(1 + t^2)))
    let mut t = Ival::point(a << 24u32, g);
    let mut factor = 1i64;
    for _ in 0..3 {
        let denom = Ival::from_int(1, g).add(&Ival::from_int(1, g).add(&t.mul(&t)).sqrt());
        t = t.div(&denom).unwrap();
        factor *= 2;
    }
    let lo = atan_series(&t.lo, g);
    let hi = atan_series(&t.hi, g);
    Ival { lo: lo.lo, hi: hi.hi, prec: g }.scale_int(factor).round_to(w)
}

/// Taylor series of atan at a small dyadic point, with error accounting.
fn atan_series(v: &BigInt, w: u32) -> Ival {
    if v.is_negative() {
        return atan_series(&-v, w).neg();
    }
    let v2 = (v * v) >> w;
    let mut power = v.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = (&power * &v2) >> w;
        k += 1;
    }
    let err = BigInt::from((k + 2) * (k + 2) + 2);
    Ival { lo: &sum - &err, hi: &sum + &err, prec: w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(iv: &Ival, v: f64) -> bool {
        let scale = 2f64.powi(iv.prec as i32);
        iv.lo.to_f64().unwrap() / scale <= v + 1e-15 && iv.hi.to_f64().unwrap() / scale >= v - 1e-15
    }

    #[test]
    fn pi_enclosure() {
        let p = Ival::pi(200);
        assert!(contains(&p.round_to(60), std::f64::consts::PI));
        assert!(p.width_log2() < -190);
    }

    #[test]
    fn atan_values() {
        for &(n, d) in &[(1i64, 1u32), (3, 2), (-7, 3), (1, 5), (13, 2)] {
            let x = Ival::point(BigInt::from(n) << (100 - d), 100);
            let a = x.atan();
            let exact = ((n as f64) / 2f64.powi(d as i32)).atan();
            assert!(contains(&a.round_to(50), exact), "atan({n}/2^{d})");
            assert!(a.width_log2() < -80);
        }
        let one = Ival::from_int(1, 120).atan();
        let quarter_pi = Ival::pi(120).half_outward().half_outward();
        assert!(one.sub(&quarter_pi).contains_zero());
    }

    #[test]
    fn sqrt_and_atan2() {
        let two = Ival::from_int(2, 80).sqrt();
        assert!(contains(&two.round_to(50), 2f64.sqrt()));
        let theta = Ival::atan2_upper(&Ival::from_int(1, 80), &Ival::from_int(-1, 80)).unwrap();
        assert!(contains(&theta.round_to(50), 3.0 * std::f64::consts::FRAC_PI_4));
    }
}
