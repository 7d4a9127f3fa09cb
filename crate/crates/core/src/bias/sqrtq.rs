//! Exact numbers a + b√q with rational a, b.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtQNumber {
    a: BigRational,
    b: BigRational,
    q: u64,
}

/// Integer square root of q when q is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

impl SqrtQNumber {
    pub fn new(a: BigRational, b: BigRational, q: u64) -> Self {
        match exact_sqrt(q) {
            Some(s) => SqrtQNumber { a: a + b * BigRational::from_integer(BigInt::from(s)), b: BigRational::zero(), q },
            None => SqrtQNumber { a, b, q },
        }
    }

    pub fn rational(a: BigRational, q: u64) -> Self {
        SqrtQNumber { a, b: BigRational::zero(), q }
    }

    pub fn zero(q: u64) -> Self {
        Self::rational(BigRational::zero(), q)
    }

    /// q^{k/2} for integer k.
    pub fn sqrt_q_pow(k: i64, q: u64) -> Self {
        let half = BigRational::from_integer(BigInt::from(q)).pow((k.div_euclid(2)) as i32);
        if k.rem_euclid(2) == 0 {
            Self::rational(half, q)
        } else {
            Self::new(BigRational::zero(), half, q)
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        SqrtQNumber { a: &self.a + &o.a, b: &self.b + &o.b, q: self.q }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SqrtQNumber { a: &self.a - &o.a, b: &self.b - &o.b, q: self.q }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let q = BigRational::from_integer(BigInt::from(self.q));
        SqrtQNumber {
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }

    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.q));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.a) + ratio_f64(&self.b) * (self.q as f64).sqrt()
    }
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back for huge numerators/denominators
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for SqrtQNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let s = format!("{}*sqrt({})", self.b.abs(), self.q);
        let s = if self.b.abs().is_one() { format!("sqrt({})", self.q) } else { s };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{s}")
            } else {
                write!(f, "{s}")
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {s}", self.a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sign_cases() {
        // 25 > 20, so 5 - 2√5 is positive
        assert_eq!(SqrtQNumber::new(r(5, 1), r(-2, 1), 5).signum(), 1);
        assert_eq!(SqrtQNumber::new(r(4, 1), r(-2, 1), 5).signum(), -1);
        assert_eq!(SqrtQNumber::new(r(0, 1), r(-1, 3), 7).signum(), -1);
        assert_eq!(SqrtQNumber::new(r(1, 1), r(1, 1), 9), SqrtQNumber::rational(r(4, 1), 9));
    }

    #[test]
    fn powers_of_sqrt_q() {
        let s = SqrtQNumber::sqrt_q_pow(3, 5);
        assert_eq!(s.mul(&SqrtQNumber::sqrt_q_pow(1, 5)), SqrtQNumber::rational(r(25, 1), 5));
        assert_eq!(SqrtQNumber::sqrt_q_pow(-2, 7), SqrtQNumber::rational(r(1, 7), 7));
    }
}
