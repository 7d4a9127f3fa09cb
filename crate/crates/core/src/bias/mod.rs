//! The main term Δ_f(n) = ½(1 + (−1)^n) + t_n / q^{n/2} of the race and its
//! asymptotic behaviour.

pub mod sqrtq;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::interval::Ival;
use crate::algebra::PolyInt;
use crate::error::{Error, Result};
use crate::spectral::{self, li_verdict_from, LiCertificate, LiVerdict, RelationVector, SpectralReport, DEFAULT_HEIGHT};
use crate::zeta::WeilPoly;

pub use sqrtq::SqrtQNumber;

/// Smallest sample count accepted by the estimate modes.
pub const MIN_SAMPLES: u64 = 1000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// t_1, …, t_count: power sums of the roots of P.
pub fn power_sums(p: &WeilPoly, count: usize) -> Vec<BigInt> {
    p.poly().power_sums(count)
}

/// t_n for a single n, via T^n mod P. t_0 = 2g.
pub fn power_sum_at(p: &WeilPoly, n: u64) -> BigInt {
    let poly = p.poly();
    let deg = poly.deg();
    let mut t = vec![BigInt::from(deg)];
    t.extend(poly.power_sums(deg.saturating_sub(1)));
    if (n as usize) < t.len() {
        return t[n as usize].clone();
    }
    let mut result = PolyInt::one();
    let mut base = PolyInt::x();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base).divrem_monic(poly).1;
        }
        base = base.mul(&base).divrem_monic(poly).1;
        e >>= 1;
    }
    result.coeffs().iter().zip(&t).map(|(c, ti)| c * ti).sum()
}

/// Δ_f(n) exactly in ℚ(√q).
pub fn delta_exact(p: &WeilPoly, n: u64) -> SqrtQNumber {
    let q = p.q();
    let parity = SqrtQNumber::rational(rat(if n % 2 == 0 { 1 } else { 0 }, 1), q);
    let t = SqrtQNumber::rational(BigRational::from_integer(power_sum_at(p, n)), q);
    parity.add(&t.mul(&SqrtQNumber::sqrt_q_pow(-(n as i64), q)))
}

/// Δ_f(n) from the angle decomposition
/// (m_0 + ½) + (m_π + ½)(−1)^n + Σ 2 m_θ cos(nθ).
pub fn delta_direct(report: &SpectralReport, n: u64) -> f64 {
    DeltaEval::new(report).value(n)
}

/// Floating evaluation of Δ along the orbit n ↦ n·(π, θ_1, …, θ_r), with
/// phases θ/2π stored as 128-bit fixed-point turns.
#[derive(Clone, Debug)]
pub(crate) struct DeltaEval {
    m0: f64,
    mpi: f64,
    terms: Vec<(u128, f64)>,
    scale: f64,
}

fn turns(theta: &Ival) -> u128 {
    let prec = theta.prec.max(160);
    let t = theta.round_to(prec);
    let two_pi = Ival::pi(prec).scale_int(2);
    let frac = t.div(&two_pi).unwrap();
    let mid: BigInt = (&frac.lo + &frac.hi) >> 1;
    let shifted: BigInt = if prec >= 128 { mid >> (prec - 128) } else { mid << (128 - prec) };
    let modulus = BigInt::from(1u8) << 128;
    shifted.mod_floor(&modulus).to_u128().unwrap()
}

impl DeltaEval {
    pub(crate) fn new(report: &SpectralReport) -> Self {
        let terms: Vec<(u128, f64)> =
            report.angles.iter().map(|a| (turns(&a.theta), 2.0 * a.multiplicity as f64)).collect();
        let scale = 1.0 + report.m0 as f64 + report.mpi as f64 + terms.iter().map(|t| t.1).sum::<f64>();
        DeltaEval { m0: report.m0 as f64, mpi: report.mpi as f64, terms, scale }
    }

    pub(crate) fn value(&self, n: u64) -> f64 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let osc: f64 = self
            .terms
            .iter()
            .map(|&(f, w)| {
                let phase = (n as u128).wrapping_mul(f) as f64 / 2f64.powi(128);
                w * (std::f64::consts::TAU * phase).cos()
            })
            .sum();
        self.m0 + 0.5 + (self.mpi + 0.5) * sign + osc
    }

    /// Sign when the floating value is clear of zero.
    pub(crate) fn clear_sign(&self, n: u64) -> Option<i8> {
        let v = self.value(n);
        if v.abs() > 1e-9 * self.scale {
            Some(if v > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    pub dens_zero: BigRational,
    /// lcm(2, M); the zero classes are residues modulo this.
    pub modulus: u64,
    pub classes: Vec<u64>,
}

impl ZeroSet {
    pub fn contains(&self, n: u64) -> bool {
        self.classes.contains(&(n % self.modulus))
    }
}

pub fn zero_density(p: &WeilPoly) -> Result<ZeroSet> {
    let report = spectral::spectral_report(p)?;
    Ok(zero_density_from(p, &report))
}

/// Residue classes mod lcm(2, M) on which Δ vanishes identically. Each
/// subsequence satisfies a recurrence of order at most 2g + 2, so 2g + 2
/// leading zeros decide it.
pub fn zero_density_from(p: &WeilPoly, report: &SpectralReport) -> ZeroSet {
    let modulus = report.torsion_modulus().lcm(&2);
    let order = 2 * p.genus() as u64 + 2;
    let classes: Vec<u64> = (0..modulus)
        .into_par_iter()
        .filter(|&r| (0..order).all(|i| delta_exact(p, r + modulus * i).is_zero()))
        .collect();
    let dens_zero = BigRational::new(BigInt::from(classes.len()), BigInt::from(modulus));
    ZeroSet { dens_zero, modulus, classes }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    ExactPeriodic,
    Empirical(u64),
    MonteCarlo(u64),
}

impl DensityMode {
    pub fn name(&self) -> String {
        match self {
            DensityMode::ExactPeriodic => "exact".into(),
            DensityMode::Empirical(n) => format!("empirical:{n}"),
            DensityMode::MonteCarlo(n) => format!("montecarlo:{n}"),
        }
    }
}

/// Which estimator to use when the sequence is not provably periodic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityRequest {
    #[default]
    Auto,
    Empirical,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactDensities {
    pub pos: BigRational,
    pub neg: BigRational,
    pub zero: BigRational,
    pub period: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub mode: DensityMode,
    pub dens_pos: f64,
    pub dens_neg: f64,
    pub dens_zero: f64,
    /// 0 for exact densities, 3/√N otherwise.
    pub half_width: f64,
    pub exact: Option<ExactDensities>,
    pub modulus: u64,
    pub seed: Option<u64>,
}

pub fn sign_densities(p: &WeilPoly, n: u64, request: DensityRequest, seed: u64) -> Result<DensityReport> {
    let report = spectral::spectral_report(p)?;
    let zeros = zero_density_from(p, &report);
    sign_densities_from(p, &report, &zeros, n, request, seed)
}

pub fn sign_densities_from(
    p: &WeilPoly,
    report: &SpectralReport,
    zeros: &ZeroSet,
    n: u64,
    request: DensityRequest,
    seed: u64,
) -> Result<DensityReport> {
    if request == DensityRequest::Auto && report.all_angles_rational() {
        return Ok(exact_periodic(p, report));
    }
    if n < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, got: n });
    }
    let eval = DeltaEval::new(report);
    let (counts, mode, seed) = match request {
        DensityRequest::MonteCarlo => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << 48)).collect();
            let counts = samples
                .par_iter()
                .map(|&m| sign_counts(if zeros.contains(m) { 0 } else { eval.clear_sign(m).unwrap_or(0) }))
                .reduce(|| [0; 3], add_counts);
            (counts, DensityMode::MonteCarlo(n), Some(seed))
        }
        _ => {
            let counts = (1..=n)
                .into_par_iter()
                .map(|m| {
                    let s = if zeros.contains(m) {
                        0
                    } else {
                        eval.clear_sign(m).unwrap_or_else(|| delta_exact(p, m).signum())
                    };
                    sign_counts(s)
                })
                .reduce(|| [0; 3], add_counts);
            (counts, DensityMode::Empirical(n), None)
        }
    };
    let total = n as f64;
    Ok(DensityReport {
        mode,
        dens_pos: counts[0] as f64 / total,
        dens_neg: counts[1] as f64 / total,
        dens_zero: counts[2] as f64 / total,
        half_width: 3.0 / total.sqrt(),
        exact: None,
        modulus: report.torsion_modulus(),
        seed,
    })
}

fn sign_counts(s: i8) -> [u64; 3] {
    match s {
        1 => [1, 0, 0],
        -1 => [0, 1, 0],
        _ => [0, 0, 1],
    }
}

fn add_counts(a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Period of Δ when every angle is a rational multiple of π.
pub fn exact_period(report: &SpectralReport) -> Option<u64> {
    report.angles.iter().try_fold(2u64, |acc, a| a.exact.map(|(_, d)| acc.lcm(&(2 * d))))
}

fn exact_periodic(p: &WeilPoly, report: &SpectralReport) -> DensityReport {
    let period = exact_period(report).unwrap();
    let counts = (0..period)
        .into_par_iter()
        .map(|n| sign_counts(delta_exact(p, n).signum()))
        .reduce(|| [0; 3], add_counts);
    let frac = |c: u64| BigRational::new(BigInt::from(c), BigInt::from(period));
    let exact = ExactDensities { pos: frac(counts[0]), neg: frac(counts[1]), zero: frac(counts[2]), period };
    DensityReport {
        mode: DensityMode::ExactPeriodic,
        dens_pos: counts[0] as f64 / period as f64,
        dens_neg: counts[1] as f64 / period as f64,
        dens_zero: counts[2] as f64 / period as f64,
        half_width: 0.0,
        exact: Some(exact),
        modulus: report.torsion_modulus(),
        seed: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub mean: BigRational,
    pub variance: BigRational,
    pub support: (i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalMoments {
    pub mean: f64,
    pub variance: f64,
    pub min: f64,
    pub max: f64,
    pub n: u64,
}

pub fn moments(p: &WeilPoly) -> Result<Moments> {
    Ok(moments_from(&spectral::spectral_report(p)?))
}

/// Mean m_0 + ½, variance (m_π + ½)² + 2 Σ m_θ², support
/// [m_0 − m_π − 2Σm_θ, m_0 + m_π + 1 + 2Σm_θ].
pub fn moments_from(report: &SpectralReport) -> Moments {
    let m0 = report.m0 as i64;
    let mpi = report.mpi as i64;
    let sum_m: i64 = report.angles.iter().map(|a| a.multiplicity as i64).sum();
    let sum_m2: i64 = report.angles.iter().map(|a| (a.multiplicity * a.multiplicity) as i64).sum();
    let half_pi = rat(2 * mpi + 1, 2);
    Moments {
        mean: rat(2 * m0 + 1, 2),
        variance: &half_pi * &half_pi + rat(2 * sum_m2, 1),
        support: (m0 - mpi - 2 * sum_m, m0 + mpi + 1 + 2 * sum_m),
    }
}

/// Mean, variance and range of Δ(1), …, Δ(n).
pub fn empirical_moments(report: &SpectralReport, n: u64) -> EmpiricalMoments {
    let eval = DeltaEval::new(report);
    let (sum, sum2, min, max) = (1..=n)
        .into_par_iter()
        .map(|m| {
            let v = eval.value(m);
            (v, v * v, v, v)
        })
        .reduce(
            || (0.0, 0.0, f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2.min(b.2), a.3.max(b.3)),
        );
    let mean = sum / n as f64;
    EmpiricalMoments { mean, variance: sum2 / n as f64 - mean * mean, min, max, n }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    /// An odd relation k_0 + Σ k_j ≡ 1 (mod 2), verified.
    Asymmetric(RelationVector),
    /// No odd relation was found but irrational angles leave it undecided.
    Unknown,
}

pub fn symmetry_test(p: &WeilPoly) -> Result<Symmetry> {
    Ok(symmetry_from(&spectral::spectral_report(p)?))
}

pub fn symmetry_from(report: &SpectralReport) -> Symmetry {
    symmetry_with(report, &li_verdict_from(report, DEFAULT_HEIGHT))
}

/// Symmetry decision reusing an LI verdict already computed for the report.
pub fn symmetry_with(report: &SpectralReport, verdict: &LiVerdict) -> Symmetry {
    let all: Vec<usize> = (0..report.r()).collect();
    if let Some(rel) = odd_relation_among(report, &all, true) {
        return Symmetry::Asymmetric(rel);
    }
    if report.all_angles_rational() {
        return Symmetry::Symmetric;
    }
    let found = match verdict.certificate.clone() {
        Some(LiCertificate::Torsion { relation: Some(rel), .. }) => Some(rel),
        Some(LiCertificate::Relation { relation, exact: true }) => Some(relation),
        _ => None,
    };
    match found {
        Some(rel) if rel.is_odd() => Symmetry::Asymmetric(rel),
        _ => Symmetry::Unknown,
    }
}

/// Shortest odd relation supported on the rational angles among `indices`
/// (and on π when `with_pi`), found by breadth-first search over
/// (ℤ/2L) × (ℤ/2) where θ_j = π t_j / L.
pub fn odd_relation_among(report: &SpectralReport, indices: &[usize], with_pi: bool) -> Option<RelationVector> {
    let rational: Vec<(usize, u64, u64)> = indices
        .iter()
        .filter_map(|&j| report.angles[j].exact.map(|(k, d)| (j, k, d)))
        .collect();
    let l = rational.iter().fold(1u64, |acc, &(_, _, d)| acc.lcm(&d));
    let modulus = 2 * l;
    // generator 0 is π (absent when it is excluded), then the rational angles
    let pi_step = if with_pi { vec![l] } else { Vec::new() };
    let offset = pi_step.len();
    let steps: Vec<u64> = pi_step.into_iter().chain(rational.iter().map(|&(_, k, d)| k * (l / d))).collect();
    let states = (modulus * 2) as usize;
    let index = |s: u64, par: u64| (s * 2 + par) as usize;
    let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; states];
    let mut seen = vec![false; states];
    seen[0] = true;
    let mut queue = VecDeque::from([(0u64, 0u64)]);
    let target = index(0, 1);
    while let Some((s, par)) = queue.pop_front() {
        if index(s, par) == target {
            break;
        }
        for (g, &step) in steps.iter().enumerate() {
            for sign in [1i64, -1] {
                let ns = if sign > 0 { (s + step) % modulus } else { (s + modulus - step % modulus) % modulus };
                let np = par ^ 1;
                let i = index(ns, np);
                if !seen[i] {
                    seen[i] = true;
                    parent[i] = Some((index(s, par), g, sign));
                    queue.push_back((ns, np));
                }
            }
        }
    }
    if !seen[target] {
        return None;
    }
    let mut k0 = 0i64;
    let mut k = vec![0i64; report.r()];
    let mut cur = target;
    while let Some((prev, g, sign)) = parent[cur] {
        if g < offset {
            k0 += sign;
        } else {
            k[rational[g - offset].0] += sign;
        }
        cur = prev;
    }
    Some(RelationVector::new(k0, k).normalized())
}

pub fn delta_leq(p: &WeilPoly, n: u64) -> Result<f64> {
    Ok(delta_leq_from(&spectral::spectral_report(p)?, n))
}

/// Main term of the degree ≤ n race: each root α contributes with weight
/// α / (α − 1).
pub fn delta_leq_from(report: &SpectralReport, n: u64) -> f64 {
    let s = (report.q as f64).sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut v = (report.m0 as f64 + 0.5) * s / (s - 1.0) + (report.mpi as f64 + 0.5) * s / (s + 1.0) * sign;
    for a in &report.angles {
        let theta = a.theta.mid_f64();
        let (ar, ai) = (s * theta.cos(), s * theta.sin());
        // w = α / (α − 1)
        let (dr, di) = (ar - 1.0, ai);
        let den = dr * dr + di * di;
        let (wr, wi) = ((ar * dr + ai * di) / den, (ai * dr - ar * di) / den);
        let phase = (n as u128).wrapping_mul(turns(&a.theta)) as f64 / 2f64.powi(128);
        let (c, sn) = ((std::f64::consts::TAU * phase).cos(), (std::f64::consts::TAU * phase).sin());
        v += 2.0 * a.multiplicity as f64 * (wr * c - wi * sn);
    }
    v
}

/// Bound on |Δ_≤(n) − Δ(n)|: every weight differs from 1 by at most
/// 1 / (√q − 1), and the weights carry total mass 2g + 1.
pub fn delta_leq_bound(g: usize, q: u64) -> f64 {
    (2 * g + 1) as f64 / ((q as f64).sqrt() - 1.0)
}
