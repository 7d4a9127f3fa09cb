use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AngleFactor, MAX_PRECISION};
use crate::algebra::interval::Ival;
use crate::algebra::PolyInt;
use crate::error::{Error, Result};
use crate::zeta::WeilPoly;

/// One distinct angle θ in [0, π] of a conjugate pair α, ᾱ = √q e^{±iθ}.
#[derive(Clone, Debug)]
pub struct Angle {
    pub theta: Ival,
    pub multiplicity: usize,
    /// θ = π k / d in lowest terms when the angle is a rational multiple of π.
    pub exact: Option<(u64, u64)>,
    /// Index of the reduced-polynomial factor carrying this angle.
    pub factor: usize,
    root: DyadicRoot,
    q: u64,
}

/// A root of `h` isolated in [lo/2^k, hi/2^k].
#[derive(Clone, Debug)]
pub struct DyadicRoot {
    pub h: PolyInt,
    pub lo: BigInt,
    pub hi: BigInt,
    pub k: u32,
}

/// s^n h(a/s) with s = 2^k.
fn homogeneous_eval(h: &PolyInt, a: &BigInt, k: u32) -> BigInt {
    let n = h.deg();
    let c = h.coeffs();
    let mut acc = c[n].clone();
    for i in (0..n).rev() {
        acc = acc * a + (&c[i] << (k as usize * (n - i)));
    }
    acc
}

fn rat_poly(h: &PolyInt) -> Vec<BigRational> {
    h.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rat_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = rat_trim(r);
    }
    r
}

fn sturm_sequence(h: &PolyInt) -> Vec<Vec<BigRational>> {
    let mut seq = vec![rat_poly(h), rat_poly(&h.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            return seq;
        }
        let r: Vec<BigRational> = rat_rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            return seq;
        }
        seq.push(r);
    }
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for p in seq {
        let v = p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
        let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn dyadic(a: &BigInt, k: u32) -> BigRational {
    BigRational::new(a.clone(), BigInt::from(1) << k)
}

/// Isolating dyadic intervals for the real roots of an irreducible integer
/// polynomial, in increasing order. A linear polynomial yields a point.
pub fn isolate_real_roots(h: &PolyInt) -> Vec<DyadicRoot> {
    let n = h.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let (q, r) = (-h.coeff(0)).div_rem(&h.coeff(1));
        if r.is_zero() {
            return vec![DyadicRoot { h: h.clone(), lo: q.clone(), hi: q, k: 0 }];
        }
    }
    let seq = sturm_sequence(h);
    // Cauchy bound
    let lead = h.lead().abs();
    let bound: BigInt = h.coeffs().iter().map(|c| c.abs()).max().unwrap() / &lead + 2;
    let mut todo = vec![(-bound.clone(), bound, 0u32)];
    let mut out = Vec::new();
    while let Some((lo, hi, k)) = todo.pop() {
        let count = sign_changes(&seq, &dyadic(&lo, k)) - sign_changes(&seq, &dyadic(&hi, k));
        match count {
            0 => {}
            1 => out.push(DyadicRoot { h: h.clone(), lo, hi, k }),
            _ => {
                let mid = &lo + &hi;
                todo.push((lo * 2, mid.clone(), k + 1));
                todo.push((mid, hi * 2, k + 1));
            }
        }
    }
    out.sort_by_key(|a| dyadic(&a.lo, a.k));
    out
}

impl DyadicRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Bisect until the width is at most 2^{-bits}.
    pub fn refine(&mut self, bits: u32) {
        if self.is_exact() {
            return;
        }
        let s_lo = homogeneous_eval(&self.h, &self.lo, self.k).signum();
        while self.k < bits + (&self.hi - &self.lo).bits() as u32 {
            let mid = &self.lo + &self.hi;
            let k = self.k + 1;
            let s = homogeneous_eval(&self.h, &mid, k).signum();
            if s.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                self.k = k;
                return;
            }
            if s == s_lo {
                self.lo = mid;
                self.hi = &self.hi * 2;
            } else {
                self.hi = mid;
                self.lo = &self.lo * 2;
            }
            self.k = k;
        }
    }

    pub fn enclosure(&self, prec: u32) -> Ival {
        Ival::from_dyadic(&self.lo, &self.hi, self.k, prec)
    }
}

impl Angle {
    pub fn mid_f64(&self) -> f64 {
        self.theta.mid_f64()
    }

    /// x = 2√q cos θ enclosed at precision `bits`.
    fn trace(&self, bits: u32) -> Ival {
        let mut root = self.root.clone();
        root.refine(bits + 8);
        root.enclosure(bits + 16)
    }

    /// θ enclosed with width at most 2^{-bits/2}, raising precision as needed.
    pub fn enclosure(&self, bits: u32) -> Result<Ival> {
        let mut w = bits.max(32);
        loop {
            if let Some(t) = theta_from_trace(&self.trace(w), self.q, w + 16) {
                if t.width_log2() <= -((bits / 2) as i64) {
                    return Ok(t);
                }
            }
            if w >= MAX_PRECISION {
                return Err(Error::PrecisionExhausted(w));
            }
            w = (2 * w).min(MAX_PRECISION);
        }
    }

    /// Enclosures of cos θ and sin θ at precision `bits`.
    pub fn cos_sin(&self, bits: u32) -> (Ival, Ival) {
        let w = bits + 16;
        let x = self.trace(bits).round_to(w);
        let two_root_q = Ival::from_int(4 * self.q as i64, w).sqrt();
        let c = x.div(&two_root_q).unwrap();
        let s = Ival::from_int(4 * self.q as i64, w).sub(&x.mul(&x)).sqrt().div(&two_root_q).unwrap();
        (c, s)
    }
}

fn theta_from_trace(x: &Ival, q: u64, prec: u32) -> Option<Ival> {
    let x = x.round_to(prec);
    let four_q = Ival::from_int(4 * q as i64, prec);
    let y = four_q.sub(&x.mul(&x)).sqrt();
    Ival::atan2_upper(&y, &x)
}

fn exact_multiple(theta: &Ival, d: u64) -> Option<(u64, u64)> {
    let pi = Ival::pi(theta.prec);
    let k = (theta.mid_f64() * d as f64 / std::f64::consts::PI).round();
    if !(0.0..=d as f64).contains(&k) {
        return None;
    }
    let k = k as u64;
    let target = pi.scale_int(k as i64).div(&Ival::from_int(d as i64, theta.prec))?;
    if !theta.sub(&target).contains_zero() {
        return None;
    }
    let g = k.gcd(&d);
    Some((k / g, d / g))
}

pub(super) fn angles_of_factors(factors: &[AngleFactor], q: u64, bits: u32) -> Result<Vec<Angle>> {
    let mut out = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for root in isolate_real_roots(&f.real) {
            let mut a = Angle {
                theta: Ival::from_int(0, bits),
                multiplicity: f.multiplicity,
                exact: None,
                factor: i,
                root,
                q,
            };
            a.theta = a.enclosure(bits)?;
            a.exact = f.rational_d.and_then(|d| exact_multiple(&a.theta, d));
            out.push(a);
        }
    }
    out.sort_by(|a, b| a.mid_f64().total_cmp(&b.mid_f64()));
    Ok(out)
}

/// All distinct angles in [0, π] with multiplicities, including θ = 0 and
/// θ = π for the roots ±√q. Multiplicities of 0 and π count roots, the
/// others count conjugate pairs.
pub fn numeric_angles(p: &WeilPoly, bits: u32) -> Result<Vec<(Ival, usize)>> {
    let report = super::spectral_report_with(p, bits)?;
    let w = report.angles.first().map_or(bits + 16, |a| a.theta.prec);
    let mut out = Vec::new();
    if report.m0 > 0 {
        out.push((Ival::from_int(0, w), report.m0));
    }
    for a in &report.angles {
        out.push((a.theta.round_to(w), a.multiplicity));
    }
    if report.mpi > 0 {
        out.push((Ival::pi(w), report.mpi));
    }
    Ok(out)
}
