//! The roots α_j = √q e^{iθ_j} of a Weil polynomial: trivial zeros, power
//! transforms, degeneracy, rational angles, numeric angles and the LI verdict.

mod angles;
mod relations;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{factor_int, PolyInt};
use crate::bias::sqrtq::exact_sqrt;
use crate::error::Result;
use crate::zeta::{real_weil, WeilPoly};

pub use angles::{isolate_real_roots, numeric_angles, Angle};
pub use relations::{
    find_candidate_relation, li_verdict, li_verdict_from, li_verdict_with, verify_certificate, verify_relation,
    LiCertificate, LiStatus, LiVerdict, RelationStatus, RelationVector,
};

/// Default working precision for angle enclosures.
pub const DEFAULT_PRECISION: u32 = 200;
/// Precision ceiling of the doubling policy.
pub const MAX_PRECISION: u32 = 4096;
/// Default coefficient bound of the relation search.
pub const DEFAULT_HEIGHT: i64 = 20;

/// An irreducible factor of the reduced polynomial and its real Weil
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleFactor {
    pub poly: PolyInt,
    pub real: PolyInt,
    pub multiplicity: usize,
    /// Minimal d with α^{2d} = q^d for the roots of this factor.
    pub rational_d: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub degenerate: bool,
    /// Smallest d witnessing degeneracy (1 for a repeated root).
    pub witness: Option<u64>,
    pub repeated_root: bool,
    /// Orders d where a ratio of distinct roots first becomes a d-th root of unity.
    pub ratio_orders: Vec<u64>,
    /// lcm of the ratio orders and of 2d over the rational-angle orders d.
    pub modulus: u64,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub q: u64,
    pub g: usize,
    pub m0: usize,
    pub mpi: usize,
    pub reduced: PolyInt,
    pub factors: Vec<AngleFactor>,
    pub angles: Vec<Angle>,
    pub degeneracy: DegeneracyReport,
    pub precision: u32,
}

impl SpectralReport {
    /// Number of distinct non-real conjugate pairs.
    pub fn r(&self) -> usize {
        self.angles.len()
    }

    pub fn torsion_modulus(&self) -> u64 {
        self.degeneracy.modulus
    }

    pub fn all_angles_rational(&self) -> bool {
        self.angles.iter().all(|a| a.exact.is_some())
    }

    pub fn multiplicity_total(&self) -> usize {
        self.m0 + self.mpi + 2 * self.angles.iter().map(|a| a.multiplicity).sum::<usize>()
    }
}

fn multiplicity_of(p: &PolyInt, d: &PolyInt) -> (usize, PolyInt) {
    let mut m = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.div_exact(d) {
        cur = q;
        m += 1;
    }
    (m, cur)
}

/// (m_0, m_π, P with the roots ±√q removed).
pub fn trivial_zero_multiplicities(p: &WeilPoly) -> (usize, usize, PolyInt) {
    let q = p.q();
    match exact_sqrt(q) {
        Some(s) => {
            let s = BigInt::from(s);
            let (m0, rest) = multiplicity_of(p.poly(), &PolyInt::linear(s.clone()));
            let (mpi, rest) = multiplicity_of(&rest, &PolyInt::linear(-s));
            (m0, mpi, rest)
        }
        None => {
            let (m, rest) = multiplicity_of(p.poly(), &PolyInt::from_i64(&[-(q as i64), 0, 1]));
            (m, m, rest)
        }
    }
}

/// The monic polynomial whose roots are the d-th powers of the roots of P.
pub fn power_transform(p: &PolyInt, d: u64) -> PolyInt {
    let n = p.deg();
    if n == 0 || d == 1 {
        return p.clone();
    }
    let sums = p.power_sums(n * d as usize);
    let picked: Vec<BigInt> = (1..=n).map(|k| sums[k * d as usize - 1].clone()).collect();
    PolyInt::from_power_sums(&picked)
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// D(g): all d <= 6 (4g^2)^2 with φ(d) <= 4g^2.
pub fn scan_set(g: usize) -> Vec<u64> {
    let b = 4 * (g as u64) * (g as u64);
    let b = b.max(1);
    (1..=6 * b * b).filter(|&d| euler_phi(d) <= b).collect()
}

/// Number of coincidences among the d-th powers of the roots of a
/// squarefree S: deg gcd(S_(d), S_(d)').
fn collisions(s: &PolyInt, sums: &[BigInt], d: u64) -> usize {
    let n = s.deg();
    let picked: Vec<BigInt> = (1..=n).map(|k| sums[k * d as usize - 1].clone()).collect();
    let sd = PolyInt::from_power_sums(&picked);
    sd.gcd(&sd.derivative()).deg()
}

/// Collision count of the d-th powers over the squarefree kernel of the
/// reduced polynomial.
pub(crate) fn collisions_of(report: &SpectralReport, d: u64) -> usize {
    let kernel = report.factors.iter().fold(PolyInt::one(), |acc, f| acc.mul(&f.poly));
    if kernel.deg() < 2 {
        return 0;
    }
    let sums = kernel.power_sums(kernel.deg() * d as usize);
    collisions(&kernel, &sums, d)
}

fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}

/// Minimal d in the scan set with α^{2d} = q^d for the roots of `f`.
fn rational_order(f: &PolyInt, q: u64, scan: &[u64]) -> Option<u64> {
    let n = f.deg();
    let max_d = *scan.last()?;
    let sums = f.power_sums(n * 2 * max_d as usize);
    let qb = BigInt::from(q);
    scan.iter().copied().find(|&d| {
        let picked: Vec<BigInt> = (1..=n).map(|k| sums[k * 2 * d as usize - 1].clone()).collect();
        PolyInt::from_power_sums(&picked).eval(&qb.pow(d as u32)).is_zero()
    })
}

fn factor_reduced(reduced: &PolyInt, q: u64, scan: &[u64]) -> Result<Vec<AngleFactor>> {
    if reduced.deg() == 0 {
        return Ok(Vec::new());
    }
    let fact = factor_int(reduced)?;
    fact.factors
        .into_iter()
        .map(|(poly, multiplicity)| {
            let w = WeilPoly::new(poly.clone(), q)?;
            let real = real_weil(&w)?.h;
            let rational_d = rational_order(&poly, q, scan);
            Ok(AngleFactor { poly, real, multiplicity, rational_d })
        })
        .collect()
}

fn degeneracy_from(factors: &[AngleFactor], g: usize) -> DegeneracyReport {
    let repeated_root = factors.iter().any(|f| f.multiplicity > 1);
    let kernel = factors.iter().fold(PolyInt::one(), |acc, f| acc.mul(&f.poly));
    let mut ratio_orders = Vec::new();
    if kernel.deg() >= 2 {
        let scan = scan_set(g);
        let max_d = *scan.last().unwrap();
        let sums = kernel.power_sums(kernel.deg() * max_d as usize);
        let mut counts: Vec<(u64, usize)> = Vec::new();
        for &d in &scan {
            let c = collisions(&kernel, &sums, d);
            let new = counts.iter().filter(|(e, _)| d % e == 0).all(|&(_, ce)| c > ce);
            if d > 1 && new && c > 0 {
                ratio_orders.push(d);
            }
            counts.push((d, c));
        }
    }
    let witness = if repeated_root { Some(1) } else { ratio_orders.first().copied() };
    let modulus = lcm_all(
        ratio_orders
            .iter()
            .copied()
            .chain(factors.iter().filter_map(|f| f.rational_d.map(|d| 2 * d))),
    );
    DegeneracyReport { degenerate: witness.is_some(), witness, repeated_root, ratio_orders, modulus }
}

/// Degeneracy of P, computed on the polynomial with trivial zeros removed.
pub fn degeneracy(p: &WeilPoly) -> Result<DegeneracyReport> {
    let (_, _, reduced) = trivial_zero_multiplicities(p);
    let factors = factor_reduced(&reduced, p.q(), &scan_set(p.genus()))?;
    Ok(degeneracy_from(&factors, p.genus()))
}

/// Minimal d with α^{2d} = q^d for each irreducible factor of the reduced
/// polynomial, `None` when no d in the scan set works.
pub fn rational_angle_orders(p: &WeilPoly) -> Result<Vec<(PolyInt, Option<u64>)>> {
    let (_, _, reduced) = trivial_zero_multiplicities(p);
    let factors = factor_reduced(&reduced, p.q(), &scan_set(p.genus()))?;
    Ok(factors.into_iter().map(|f| (f.poly, f.rational_d)).collect())
}

pub fn spectral_report(p: &WeilPoly) -> Result<SpectralReport> {
    spectral_report_with(p, DEFAULT_PRECISION)
}

pub fn spectral_report_with(p: &WeilPoly, precision: u32) -> Result<SpectralReport> {
    let (m0, mpi, reduced) = trivial_zero_multiplicities(p);
    let factors = factor_reduced(&reduced, p.q(), &scan_set(p.genus()))?;
    let degeneracy = degeneracy_from(&factors, p.genus());
    let angles = angles::angles_of_factors(&factors, p.q(), precision)?;
    Ok(SpectralReport { q: p.q(), g: p.genus(), m0, mpi, reduced, factors, angles, degeneracy, precision })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weil(c: &[i64], q: u64) -> WeilPoly {
        WeilPoly::from_i64(c, q).unwrap()
    }

    #[test]
    fn trivial_zero_examples() {
        let (m0, mpi, r) = trivial_zero_multiplicities(&weil(&[9, -6, 1], 9));
        assert_eq!((m0, mpi, r), (2, 0, PolyInt::one()));
        let p = weil(&[529, 0, -29, 0, 1], 23);
        let (m0, mpi, r) = trivial_zero_multiplicities(&p);
        assert_eq!((m0, mpi), (0, 0));
        assert_eq!(&r, p.poly());
        let odd = PolyInt::from_i64(&[-5, 0, 1]).mul(&PolyInt::from_i64(&[5, 1, 1]));
        assert!(WeilPoly::new(odd, 5).is_err());
        let p = WeilPoly::new(PolyInt::from_i64(&[-5, 0, 1]).pow(2).mul(&PolyInt::from_i64(&[5, 1, 1])), 5).unwrap();
        let (m0, mpi, r) = trivial_zero_multiplicities(&p);
        assert_eq!((m0, mpi, r), (2, 2, PolyInt::from_i64(&[5, 1, 1])));
    }

    #[test]
    fn power_transform_examples() {
        let p = PolyInt::from_i64(&[9, -6, 1]);
        assert_eq!(power_transform(&p, 2), PolyInt::from_i64(&[81, -18, 1]));
        assert_eq!(power_transform(&PolyInt::from_i64(&[9, 3, 1]), 3), PolyInt::from_i64(&[-27, 1]).pow(2));
        assert_eq!(power_transform(&p, 1), p);
    }

    #[test]
    fn power_transform_matches_resultant() {
        // Res_X(P(X), t - X^d) = prod (t - α^d) up to sign for monic P
        let p = PolyInt::from_i64(&[5, 1, 1]);
        for d in 1..6u64 {
            let pt = power_transform(&p, d);
            for t in -3..4i64 {
                let xd = PolyInt::monomial(BigInt::from(-1), d as usize).add(&PolyInt::from_i64(&[t]));
                let res = p.resultant(&xd);
                let sign = if (p.deg() * d as usize) % 2 == 0 { 1 } else { -1 };
                let res = res * BigInt::from(sign);
                let direct = pt.eval(&BigInt::from(t));
                assert!(res == direct || res == -direct.clone(), "d={d} t={t}");
            }
        }
    }

    #[test]
    fn degeneracy_examples() {
        let d = degeneracy(&weil(&[529, 0, -29, 0, 1], 23)).unwrap();
        assert!(d.degenerate);
        assert_eq!((d.witness, d.modulus), (Some(2), 2));
        let sq = WeilPoly::new(PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).unwrap();
        let d = degeneracy(&sq).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.modulus, 6);
        let d = degeneracy(&weil(&[5, 1, 1], 5)).unwrap();
        assert!(!d.degenerate);
        assert_eq!(d.modulus, 1);
    }

    #[test]
    fn rational_orders() {
        let r = rational_angle_orders(&weil(&[9, 3, 1], 9)).unwrap();
        assert_eq!(r[0].1, Some(3));
        let r = rational_angle_orders(&weil(&[7, 0, 1], 7)).unwrap();
        assert_eq!(r[0].1, Some(2));
        let r = rational_angle_orders(&weil(&[5, 1, 1], 5)).unwrap();
        assert_eq!(r[0].1, None);
    }

    #[test]
    fn scan_set_bounds() {
        assert_eq!(scan_set(1), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert!(scan_set(2).iter().all(|&d| euler_phi(d) <= 16));
    }
}
