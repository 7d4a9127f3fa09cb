use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{collisions_of, power_transform, spectral_report_with, SpectralReport};
use super::{DEFAULT_HEIGHT, DEFAULT_PRECISION, MAX_PRECISION};
use crate::algebra::interval::Ival;
use crate::algebra::lll::lll;
use crate::zeta::WeilPoly;

/// Integer coefficients of k_0 π + Σ k_j θ_j ≡ 0 (mod 2π).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationVector {
    pub k0: i64,
    pub k: Vec<i64>,
}

impl RelationVector {
    pub fn new(k0: i64, k: Vec<i64>) -> Self {
        RelationVector { k0, k }
    }

    pub fn is_zero(&self) -> bool {
        self.k0 == 0 && self.k.iter().all(|&x| x == 0)
    }

    /// k_0 + Σ k_j mod 2.
    pub fn parity(&self) -> u8 {
        (self.k0 + self.k.iter().sum::<i64>()).rem_euclid(2) as u8
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    /// Σ |k_i| over all coefficients including k_0.
    pub fn kappa(&self) -> u64 {
        self.k0.unsigned_abs() + self.k.iter().map(|x| x.unsigned_abs()).sum::<u64>()
    }

    pub fn height(&self) -> u64 {
        self.k.iter().chain(std::iter::once(&self.k0)).map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// First nonzero θ-coefficient positive, k_0 reduced to {0, −1}.
    pub fn normalized(&self) -> Self {
        let sign = self.k.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
        let k: Vec<i64> = self.k.iter().map(|x| x * sign).collect();
        let k0 = if (self.k0 * sign).rem_euclid(2) == 0 { 0 } else { -1 };
        RelationVector { k0, k }
    }
}

impl std::fmt::Display for RelationVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ks: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
        write!(f, "({};{})", self.k0, ks.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationStatus {
    ExactVerified,
    Refuted,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiStatus {
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LiCertificate {
    TrivialZero { m0: usize, mpi: usize },
    /// A ratio of distinct roots (or a repeated root when d = 1) is a d-th
    /// root of unity; `relation` is the matching angle relation when found.
    Torsion { d: u64, relation: Option<RelationVector> },
    Relation { relation: RelationVector, exact: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiVerdict {
    pub status: LiStatus,
    pub certificate: Option<LiCertificate>,
    pub height: i64,
    pub precision: u32,
}

fn max_width_log2(v: &[Ival]) -> i64 {
    v.iter().map(|x| x.width_log2()).max().unwrap_or(0)
}

/// Integer relation among (π, θ_1, …, θ_r) of height at most `height`
/// consistent with the given enclosures, found by lattice reduction.
pub fn find_candidate_relation(angles: &[Ival], height: i64) -> Option<RelationVector> {
    if angles.is_empty() {
        return None;
    }
    let prec = angles.iter().map(|a| a.prec).max().unwrap();
    let xs: Vec<Ival> = std::iter::once(Ival::pi(prec)).chain(angles.iter().map(|a| a.round_to(prec))).collect();
    let reliable = (-max_width_log2(&xs)).max(0) as u32;
    if reliable < 40 {
        return None;
    }
    let scale_bits = reliable - 10;
    let n = xs.len();
    let basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::one();
            let mid: BigInt = (&xs[i].lo + &xs[i].hi) >> 1;
            row[n] = if scale_bits >= prec { mid << (scale_bits - prec) } else { mid >> (prec - scale_bits) };
            row
        })
        .collect();
    let reduced = lll(basis);
    let mut best: Option<RelationVector> = None;
    for row in reduced {
        let coeffs: Option<Vec<i64>> = row[..n].iter().map(|c| c.to_i64()).collect();
        let Some(mut coeffs) = coeffs else { continue };
        if coeffs[1..].iter().all(|&c| c == 0) {
            continue;
        }
        let g = coeffs.iter().fold(0i64, |a, &b| a.gcd(&b));
        coeffs.iter_mut().for_each(|c| *c /= g);
        if coeffs.iter().any(|c| c.abs() > height) {
            continue;
        }
        let residual = xs.iter().zip(&coeffs).fold(Ival::from_int(0, prec), |acc, (x, &c)| acc.add(&x.scale_int(c)));
        if !residual.contains_zero() {
            continue;
        }
        let cand = RelationVector::new(coeffs[0], coeffs[1..].to_vec()).normalized();
        if best.as_ref().is_none_or(|b| cand.kappa() < b.kappa()) {
            best = Some(cand);
        }
    }
    best
}

struct Complex {
    re: Ival,
    im: Ival,
}

impl Complex {
    fn mul(&self, o: &Complex) -> Complex {
        Complex { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }
}

/// Whether the relation holds among the angles of P.
pub fn verify_relation(p: &WeilPoly, k: &RelationVector) -> RelationStatus {
    match spectral_report_with(p, DEFAULT_PRECISION) {
        Ok(report) => verify_in_report(&report, k),
        Err(_) => RelationStatus::Unknown,
    }
}

pub(crate) fn verify_in_report(report: &SpectralReport, k: &RelationVector) -> RelationStatus {
    use RelationStatus::*;
    if k.k.len() != report.r() {
        return Refuted;
    }
    let active: Vec<usize> = (0..k.k.len()).filter(|&j| k.k[j] != 0).collect();
    if active.is_empty() {
        return if k.k0 % 2 == 0 { ExactVerified } else { Refuted };
    }
    if active.iter().all(|&j| report.angles[j].exact.is_some()) {
        // Σ k_j a_j / d_j + k_0 must be an even integer
        let total = active.iter().fold(BigRational::from_integer(BigInt::from(k.k0)), |acc, &j| {
            let (a, d) = report.angles[j].exact.unwrap();
            acc + BigRational::new(BigInt::from(k.k[j]) * BigInt::from(a), BigInt::from(d))
        });
        let even = total.is_integer() && total.to_integer().is_even();
        return if even { ExactVerified } else { Refuted };
    }
    if active.len() == 1 {
        return verify_single(report, active[0], k);
    }
    verify_by_norm(report, k)
}

/// k θ + k_0 π ≡ 0 for one angle: exactly u^{2k} = 1 via the power
/// transform of the angle's factor, then the sign of u^k from the enclosure.
fn verify_single(report: &SpectralReport, j: usize, k: &RelationVector) -> RelationStatus {
    let angle = &report.angles[j];
    let kj = k.k[j].unsigned_abs();
    let f = &report.factors[angle.factor].poly;
    let q = BigInt::from(report.q);
    if !power_transform(f, 2 * kj).eval(&q.pow(kj as u32)).is_zero() {
        return RelationStatus::Refuted;
    }
    let mut w = DEFAULT_PRECISION;
    loop {
        let Ok(theta) = angle.enclosure(w) else { return RelationStatus::Unknown };
        let t = theta.scale_int(k.k[j]);
        let pi = Ival::pi(t.prec);
        let m = (t.mid_f64() / std::f64::consts::PI).round() as i64;
        if t.sub(&pi.scale_int(m)).contains_zero() && t.width_log2() < -4 {
            return if (m + k.k0).rem_euclid(2) == 0 { RelationStatus::ExactVerified } else { RelationStatus::Refuted };
        }
        if w >= MAX_PRECISION {
            return RelationStatus::Unknown;
        }
        w *= 2;
    }
}

/// Interval evaluation of ∏ u_j^{k_j} against (−1)^{k_0}. A nonzero
/// difference γ = β − ±√q^K, with β a product of roots, is an algebraic
/// integer of degree at most D = 2^{r+1} r! whose conjugates are bounded by
/// 2√q^K, so |γ| < (2√q^K)^{1−D} forces γ = 0.
fn verify_by_norm(report: &SpectralReport, k: &RelationVector) -> RelationStatus {
    let r = report.r() as u32;
    let degree: u64 = (1u64 << (r + 1)) * (1..=r as u64).product::<u64>();
    let total: u64 = k.k.iter().map(|x| x.unsigned_abs()).sum();
    let q = BigInt::from(report.q);
    let bound = (BigInt::one() << (2 * (degree as usize - 1))) * q.pow((total * degree) as u32);
    let mut w = DEFAULT_PRECISION;
    loop {
        let wp = w + 32;
        let mut z = Complex { re: Ival::from_int(1, wp), im: Ival::from_int(0, wp) };
        for (j, &kj) in k.k.iter().enumerate() {
            if kj == 0 {
                continue;
            }
            let (c, s) = report.angles[j].cos_sin(wp);
            let (c, s) = (c.round_to(wp), s.round_to(wp));
            let u = Complex { re: c, im: if kj > 0 { s } else { s.neg() } };
            for _ in 0..kj.unsigned_abs() {
                z = z.mul(&u);
            }
        }
        let target = if k.k0.rem_euclid(2) == 0 { 1 } else { -1 };
        let dre = z.re.sub(&Ival::from_int(target, wp));
        if !dre.contains_zero() || !z.im.contains_zero() {
            return RelationStatus::Refuted;
        }
        let e = dre.lo.abs().max(dre.hi.abs()) + z.im.lo.abs().max(z.im.hi.abs());
        if &e * &e * &bound < BigInt::one() << (2 * wp as usize) {
            return RelationStatus::ExactVerified;
        }
        if w >= MAX_PRECISION {
            return RelationStatus::Unknown;
        }
        w *= 2;
    }
}

/// Relation from θ_i ± θ_j = 2πb/d among the report's angles, for a torsion
/// order d.
fn torsion_relation(report: &SpectralReport, d: u64) -> Option<RelationVector> {
    let r = report.r();
    let pi = std::f64::consts::PI;
    for i in 0..r {
        for j in i..r {
            for sign in [1i64, -1] {
                if i == j && sign < 0 {
                    continue;
                }
                let s = report.angles[i].mid_f64() + sign as f64 * report.angles[j].mid_f64();
                let b = (s * d as f64 / (2.0 * pi)).round();
                if (s * d as f64 - 2.0 * pi * b).abs() > 1e-9 {
                    continue;
                }
                let mut k = vec![0i64; r];
                k[i] += d as i64;
                k[j] += sign * d as i64;
                let k0 = -2 * b as i64;
                let g = k.iter().fold(k0, |a, &x| a.gcd(&x));
                let rel = RelationVector::new(k0 / g, k.iter().map(|x| x / g).collect()).normalized();
                if !rel.k.iter().all(|&x| x == 0) && verify_in_report(report, &rel) == RelationStatus::ExactVerified {
                    return Some(rel);
                }
            }
        }
    }
    None
}

pub fn li_verdict(p: &WeilPoly) -> LiVerdict {
    li_verdict_with(p, DEFAULT_HEIGHT, DEFAULT_PRECISION)
}

pub fn li_verdict_with(p: &WeilPoly, height: i64, precision: u32) -> LiVerdict {
    match spectral_report_with(p, precision) {
        Ok(report) => li_verdict_from(&report, height),
        Err(_) => LiVerdict { status: LiStatus::Unknown, certificate: None, height, precision },
    }
}

pub fn li_verdict_from(report: &SpectralReport, height: i64) -> LiVerdict {
    let fails = |c| LiVerdict { status: LiStatus::Fails, certificate: Some(c), height, precision: report.precision };
    if report.m0 > 0 || report.mpi > 0 {
        return fails(LiCertificate::TrivialZero { m0: report.m0, mpi: report.mpi });
    }
    let deg = &report.degeneracy;
    if let Some(d) = deg.witness {
        let relation = deg
            .ratio_orders
            .iter()
            .chain(std::iter::once(&d))
            .find_map(|&e| torsion_relation(report, e));
        return fails(LiCertificate::Torsion { d, relation });
    }
    let thetas: Vec<Ival> = report.angles.iter().map(|a| a.theta.clone()).collect();
    if let Some(rel) = find_candidate_relation(&thetas, height) {
        if verify_in_report(report, &rel) == RelationStatus::ExactVerified {
            return fails(LiCertificate::Relation { relation: rel, exact: true });
        }
    }
    LiVerdict { status: LiStatus::Unknown, certificate: None, height, precision: report.precision }
}

/// Re-check an LI certificate from scratch.
pub fn verify_certificate(p: &WeilPoly, cert: &LiCertificate) -> RelationStatus {
    use RelationStatus::*;
    let report = match spectral_report_with(p, DEFAULT_PRECISION) {
        Ok(r) => r,
        Err(_) => return Unknown,
    };
    match cert {
        LiCertificate::TrivialZero { m0, mpi } => {
            let ok = (*m0 > 0 || *mpi > 0) && report.m0 == *m0 && report.mpi == *mpi;
            if ok { ExactVerified } else { Refuted }
        }
        LiCertificate::Torsion { d, relation } => {
            let exact = if *d == 1 {
                report.factors.iter().any(|f| f.multiplicity > 1)
            } else {
                collisions_of(&report, *d) > 0
            };
            if !exact {
                return Refuted;
            }
            match relation {
                Some(rel) => verify_in_report(&report, rel),
                None => ExactVerified,
            }
        }
        LiCertificate::Relation { relation, .. } => verify_in_report(&report, relation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn angle(v: f64) -> Ival {
        // exact rational multiples of π for the examples
        let pi = Ival::pi(200);
        let (num, den) = if (v - PI / 2.0).abs() < 1e-12 { (1, 2) } else { (2, 3) };
        pi.scale_int(num).div(&Ival::from_int(den, 200)).unwrap()
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(find_candidate_relation(&[angle(PI / 2.0)], 20), Some(RelationVector::new(-1, vec![2])));
        assert_eq!(find_candidate_relation(&[angle(2.0 * PI / 3.0)], 20), Some(RelationVector::new(0, vec![3])));
        let r = spectral_report_with(&WeilPoly::from_i64(&[5, 1, 1], 5).unwrap(), 200).unwrap();
        let thetas: Vec<Ival> = r.angles.iter().map(|a| a.theta.clone()).collect();
        assert_eq!(find_candidate_relation(&thetas, 20), None);
    }

    #[test]
    fn verify_examples() {
        let sq = WeilPoly::new(crate::algebra::PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).unwrap();
        assert_eq!(verify_relation(&sq, &RelationVector::new(0, vec![3])), RelationStatus::ExactVerified);
        assert_eq!(verify_relation(&sq, &RelationVector::new(-1, vec![3])), RelationStatus::Refuted);
        let p = WeilPoly::from_i64(&[5, 1, 1], 5).unwrap();
        assert_eq!(verify_relation(&p, &RelationVector::new(1, vec![2])), RelationStatus::Refuted);
        let p = WeilPoly::from_i64(&[529, 0, -29, 0, 1], 23).unwrap();
        assert_eq!(verify_relation(&p, &RelationVector::new(-1, vec![1, 1])), RelationStatus::ExactVerified);
        assert_eq!(verify_relation(&p, &RelationVector::new(0, vec![1, 1])), RelationStatus::Refuted);
        assert_eq!(verify_relation(&p, &RelationVector::new(0, vec![1, -1])), RelationStatus::Refuted);
    }

    #[test]
    fn li_examples() {
        let v = li_verdict(&WeilPoly::from_i64(&[9, -6, 1], 9).unwrap());
        assert_eq!(v.status, LiStatus::Fails);
        assert_eq!(v.certificate, Some(LiCertificate::TrivialZero { m0: 2, mpi: 0 }));

        let p = WeilPoly::from_i64(&[529, 0, -29, 0, 1], 23).unwrap();
        let v = li_verdict(&p);
        assert_eq!(v.status, LiStatus::Fails);
        let cert = v.certificate.unwrap();
        assert_eq!(cert, LiCertificate::Torsion { d: 2, relation: Some(RelationVector::new(-1, vec![1, 1])) });
        assert_eq!(verify_certificate(&p, &cert), RelationStatus::ExactVerified);

        let v = li_verdict(&WeilPoly::from_i64(&[5, 1, 1], 5).unwrap());
        assert_eq!(v.status, LiStatus::Unknown);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn norm_path_verifies_irrational_relation() {
        // θ and π − θ from a product of two conjugate-angle factors
        let p = WeilPoly::new(
            crate::algebra::PolyInt::from_i64(&[5, 1, 1]).mul(&crate::algebra::PolyInt::from_i64(&[5, -1, 1])),
            5,
        )
        .unwrap();
        let report = spectral_report_with(&p, 200).unwrap();
        assert_eq!(verify_in_report(&report, &RelationVector::new(-1, vec![1, 1])), RelationStatus::ExactVerified);
        assert_eq!(verify_in_report(&report, &RelationVector::new(0, vec![2, 1])), RelationStatus::Refuted);
    }
}
