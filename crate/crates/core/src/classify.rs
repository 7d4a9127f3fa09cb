//! Complete, lower-order and reversed bias classifiers with checkable
//! certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::field::is_prime_u64;
use crate::algebra::{factor_int, FieldCtx, PolyInt};
use crate::bias::{
    delta_exact, exact_period, odd_relation_among, sign_densities_from, symmetry_with, zero_density_from,
    DensityReport, DensityRequest, Symmetry, ZeroSet,
};
use crate::bias::sqrtq::exact_sqrt;
use crate::error::{Error, Result};
use crate::spectral::{self, li_verdict_from, LiVerdict, RelationVector, SpectralReport};
use crate::zeta::{real_weil, WeilPoly};

pub const DEFAULT_PRIME_BOUND: u64 = 500;
pub const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BiasType {
    Complete,
    LowerOrder,
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BiasStatus {
    Yes,
    No,
    Unknown,
}

impl BiasStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BiasStatus::Yes => "yes",
            BiasStatus::No => "no",
            BiasStatus::Unknown => "unknown",
        }
    }
}

/// Densities in a serializable form; exact values are written as fractions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensitySummary {
    pub mode: String,
    pub pos: String,
    pub neg: String,
    pub zero: String,
    pub half_width: f64,
    pub seed: Option<u64>,
}

impl From<&DensityReport> for DensitySummary {
    fn from(d: &DensityReport) -> Self {
        let (pos, neg, zero) = match &d.exact {
            Some(e) => (e.pos.to_string(), e.neg.to_string(), e.zero.to_string()),
            None => (format!("{:.6}", d.dens_pos), format!("{:.6}", d.dens_neg), format!("{:.6}", d.dens_zero)),
        };
        DensitySummary { mode: d.mode.name(), pos, neg, zero, half_width: d.half_width, seed: d.seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleEvidence {
    pub primes: Vec<u64>,
    /// Observed factor-degree multisets (descending) with the first prime showing each.
    pub types: BTreeMap<String, u64>,
    pub has_pair_transposition: bool,
    pub has_signed_four_cycle: bool,
    /// h_P irreducible over ℤ, which forces transitivity on the root pairs.
    pub transitive_on_pairs: bool,
}

impl CycleEvidence {
    pub fn witness(&self) -> Option<(String, u64)> {
        self.types
            .iter()
            .find(|(t, _)| {
                let parts: Vec<usize> = t.split(',').map(|x| x.parse().unwrap()).collect();
                is_pair_transposition(&parts) || is_four_cycle(&parts)
            })
            .map(|(t, r)| (t.clone(), *r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficientCompleteData {
    pub l1: PolyInt,
    pub l2: PolyInt,
    pub d1: usize,
    pub d2: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// No complete bias over a non-square field.
    NonSquareField { q: u64 },
    /// P(√q) ≠ 0.
    NoCentralZero { q: u64 },
    /// Δ vanishes identically on these classes.
    VanishingClasses { modulus: u64, classes: Vec<u64> },
    /// No class vanishes identically; any zero set is finite.
    NoVanishingClass { modulus: u64, degenerate: bool },
    SufficientComplete {
        case: String,
        m0: usize,
        mpi: usize,
        d1: usize,
        d2: usize,
        relation: Option<RelationVector>,
    },
    /// The necessary condition for a complete bias fails.
    NecessaryComplete { symmetric: Option<bool>, m0: usize, mpi: usize, sum_m: usize },
    /// One exact period of Δ and the resulting densities.
    PeriodTable { period: u64, values: Vec<String>, pos: String, neg: String, zero: String },
    /// No odd relation among the angles can exist and m_0 ≥ m_π.
    GaloisChain {
        m0: usize,
        mpi: usize,
        separable: bool,
        nondegenerate: bool,
        h_irreducible: bool,
        witness_type: String,
        witness_prime: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasVerdict {
    pub bias_type: BiasType,
    pub status: BiasStatus,
    pub certificate: Option<Certificate>,
    pub densities: Option<DensitySummary>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifySettings {
    pub height: i64,
    pub precision: u32,
    pub prime_bound: u64,
    pub samples: u64,
    pub request: DensityRequest,
    pub seed: u64,
}

impl Default for ClassifySettings {
    fn default() -> Self {
        ClassifySettings {
            height: spectral::DEFAULT_HEIGHT,
            precision: spectral::DEFAULT_PRECISION,
            prime_bound: DEFAULT_PRIME_BOUND,
            samples: DEFAULT_SAMPLES,
            request: DensityRequest::Auto,
            seed: 0,
        }
    }
}

/// Everything the classifiers need, computed once per polynomial.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub p: WeilPoly,
    pub report: SpectralReport,
    pub zeros: ZeroSet,
    pub densities: DensityReport,
    pub li: LiVerdict,
    pub symmetry: Symmetry,
    pub settings: ClassifySettings,
}

impl Analysis {
    pub fn new(p: &WeilPoly, settings: ClassifySettings) -> Result<Self> {
        let report = spectral::spectral_report_with(p, settings.precision)?;
        let zeros = zero_density_from(p, &report);
        let densities = sign_densities_from(p, &report, &zeros, settings.samples, settings.request, settings.seed)?;
        let li = li_verdict_from(&report, settings.height);
        let symmetry = symmetry_with(&report, &li);
        Ok(Analysis { p: p.clone(), report, zeros, densities, li, symmetry, settings })
    }

    fn summary(&self) -> Option<DensitySummary> {
        Some(DensitySummary::from(&self.densities))
    }

    fn verdict(&self, bias_type: BiasType, status: BiasStatus, certificate: Option<Certificate>) -> BiasVerdict {
        BiasVerdict { bias_type, status, certificate, densities: self.summary() }
    }

    fn sum_m(&self) -> usize {
        self.report.angles.iter().map(|a| a.multiplicity).sum()
    }

    fn period_table(&self) -> Option<Certificate> {
        let exact = self.densities.exact.as_ref()?;
        let period = exact_period(&self.report)?;
        let values = (0..period).map(|n| delta_exact(&self.p, n).to_string()).collect();
        Some(Certificate::PeriodTable {
            period,
            values,
            pos: exact.pos.to_string(),
            neg: exact.neg.to_string(),
            zero: exact.zero.to_string(),
        })
    }
}

/// Split the reduced polynomial into L_1 · L_2 with L_2 the largest even
/// divisor: even irreducible factors and products F(T)·F(−T).
pub fn sufficient_complete_data(report: &SpectralReport) -> SufficientCompleteData {
    let mut l1 = PolyInt::one();
    let mut l2 = PolyInt::one();
    let mut used = vec![0usize; report.factors.len()];
    for (i, f) in report.factors.iter().enumerate() {
        let mirror = f.poly.negate_var();
        let mirror = if mirror.lead().is_negative() { mirror.neg() } else { mirror };
        if mirror == f.poly {
            l2 = l2.mul(&f.poly.pow(f.multiplicity));
            used[i] = f.multiplicity;
            continue;
        }
        if let Some(j) = report.factors.iter().position(|g| g.poly == mirror) {
            if j > i {
                let m = f.multiplicity.min(report.factors[j].multiplicity);
                l2 = l2.mul(&f.poly.mul(&mirror).pow(m));
                used[i] = m;
                used[j] = m;
            }
        }
    }
    for (i, f) in report.factors.iter().enumerate() {
        l1 = l1.mul(&f.poly.pow(f.multiplicity - used[i]));
    }
    let (d1, d2) = (l1.deg(), l2.deg());
    SufficientCompleteData { l1, l2, d1, d2 }
}

/// Angles carried by L_1 in the sufficient-condition split.
fn l1_angles(report: &SpectralReport, data: &SufficientCompleteData) -> Vec<usize> {
    (0..report.r())
        .filter(|&j| {
            let f = &report.factors[report.angles[j].factor].poly;
            data.l1.div_exact(f).is_some()
        })
        .collect()
}

pub fn classify_complete(p: &WeilPoly) -> Result<BiasVerdict> {
    Ok(classify_complete_in(&Analysis::new(p, ClassifySettings::default())?))
}

pub fn classify_complete_in(a: &Analysis) -> BiasVerdict {
    use BiasStatus::*;
    let t = BiasType::Complete;
    let (m0, mpi) = (a.report.m0, a.report.mpi);
    let q = a.report.q;
    if exact_sqrt(q).is_none() {
        return a.verdict(t, No, Some(Certificate::NonSquareField { q }));
    }
    if m0 == 0 {
        return a.verdict(t, No, Some(Certificate::NoCentralZero { q }));
    }
    if !a.zeros.classes.is_empty() {
        let cert = Certificate::VanishingClasses { modulus: a.zeros.modulus, classes: a.zeros.classes.clone() };
        return a.verdict(t, No, Some(cert));
    }
    let data = sufficient_complete_data(&a.report);
    let (d1, d2) = (data.d1, data.d2);
    let sufficient = |case: &str, relation| Certificate::SufficientComplete {
        case: case.into(),
        m0,
        mpi,
        d1,
        d2,
        relation,
    };
    if m0 > mpi + d1 && m0 + mpi + 1 > d1 + d2 {
        return a.verdict(t, Yes, Some(sufficient("1", None)));
    }
    if m0 >= mpi + d1 && m0 + mpi + 1 >= d1 + d2 {
        let l1 = l1_angles(&a.report, &data);
        if l1.iter().any(|&j| a.report.angles[j].exact.is_none()) {
            return a.verdict(t, Yes, Some(sufficient("2a", None)));
        }
        if let Some(rel) = odd_relation_among(&a.report, &l1, false) {
            return a.verdict(t, Yes, Some(sufficient("2b", Some(rel))));
        }
    }
    if let Some(exact) = &a.densities.exact {
        let status = if exact.pos == BigRational::from_integer(1.into()) { Yes } else { No };
        return a.verdict(t, status, a.period_table());
    }
    let sum_m = a.sum_m();
    let symmetric = match a.symmetry {
        Symmetry::Symmetric => Some(true),
        Symmetry::Asymmetric(_) => Some(false),
        Symmetry::Unknown => None,
    };
    let necessary_fails = |c| Certificate::NecessaryComplete { symmetric: c, m0, mpi, sum_m };
    if m0 <= mpi {
        return a.verdict(t, No, Some(necessary_fails(symmetric)));
    }
    if symmetric == Some(true) {
        let branch = if a.report.r() == 0 { m0 > mpi && m0 > a.report.g } else { m0 >= mpi + 2 * sum_m };
        if !branch {
            return a.verdict(t, No, Some(necessary_fails(symmetric)));
        }
    }
    a.verdict(t, Unknown, None)
}

pub fn classify_lower_order(p: &WeilPoly) -> Result<BiasVerdict> {
    Ok(classify_lower_order_in(&Analysis::new(p, ClassifySettings::default())?))
}

pub fn classify_lower_order_in(a: &Analysis) -> BiasVerdict {
    let t = BiasType::LowerOrder;
    if a.zeros.classes.is_empty() {
        let cert = Certificate::NoVanishingClass { modulus: a.zeros.modulus, degenerate: a.report.degeneracy.degenerate };
        a.verdict(t, BiasStatus::No, Some(cert))
    } else {
        let cert = Certificate::VanishingClasses { modulus: a.zeros.modulus, classes: a.zeros.classes.clone() };
        a.verdict(t, BiasStatus::Yes, Some(cert))
    }
}

pub fn classify_reversed(p: &WeilPoly) -> Result<BiasVerdict> {
    Ok(classify_reversed_in(&Analysis::new(p, ClassifySettings::default())?))
}

pub fn classify_reversed_in(a: &Analysis) -> BiasVerdict {
    use BiasStatus::*;
    let t = BiasType::Reversed;
    if let Some(exact) = &a.densities.exact {
        let status = if exact.neg > BigRational::new(1.into(), 2.into()) { Yes } else { No };
        return a.verdict(t, status, a.period_table());
    }
    let (m0, mpi) = (a.report.m0, a.report.mpi);
    if m0 > 0 || mpi > 0 {
        return a.verdict(t, Unknown, None);
    }
    let separable = a.report.factors.iter().all(|f| f.multiplicity == 1);
    let nondegenerate = !a.report.degeneracy.degenerate;
    if !separable || !nondegenerate {
        return a.verdict(t, Unknown, None);
    }
    let Ok(evidence) = galois_cycle_evidence(&a.p, a.settings.prime_bound) else {
        return a.verdict(t, Unknown, None);
    };
    match evidence.witness() {
        Some((witness_type, witness_prime)) if evidence.transitive_on_pairs => {
            let cert = Certificate::GaloisChain {
                m0,
                mpi,
                separable,
                nondegenerate,
                h_irreducible: true,
                witness_type,
                witness_prime,
            };
            a.verdict(t, No, Some(cert))
        }
        _ => a.verdict(t, Unknown, None),
    }
}

fn is_pair_transposition(t: &[usize]) -> bool {
    t.first() == Some(&2) && t[1..].iter().all(|&d| d == 1)
}

fn is_four_cycle(t: &[usize]) -> bool {
    t.first() == Some(&4) && t[1..].iter().all(|&d| d == 1)
}

/// Factor-degree patterns of P modulo small primes r not dividing q·disc(P).
/// Inside the hyperoctahedral group a lone transposition is some (i −i) and
/// a lone 4-cycle is some (i j −i −j).
pub fn galois_cycle_evidence(p: &WeilPoly, prime_bound: u64) -> Result<CycleEvidence> {
    let poly = p.poly();
    let disc = poly.disc_resultant();
    if disc.is_zero() {
        return Err(Error::NotSeparable);
    }
    let h = real_weil(p)?.h;
    let hf = factor_int(&h)?;
    let transitive_on_pairs = hf.factors.len() == 1 && hf.factors[0].1 == 1;
    let q = BigInt::from(p.q());
    let mut primes = Vec::new();
    let mut types = BTreeMap::new();
    for r in (3..=prime_bound).filter(|&r| is_prime_u64(r)) {
        let rb = BigInt::from(r);
        if (&disc % &rb).is_zero() || (&q % &rb).is_zero() {
            continue;
        }
        let ctx = FieldCtx::new(r as u32, 1)?;
        let (_, factors) = poly.to_fq(&ctx).factor(&ctx)?;
        let mut degrees: Vec<usize> = factors.iter().flat_map(|(f, m)| std::iter::repeat_n(f.deg(), *m)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let key = degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        types.entry(key).or_insert(r);
        primes.push(r);
    }
    let has = |f: fn(&[usize]) -> bool| {
        types.keys().any(|t: &String| f(&t.split(',').map(|x| x.parse().unwrap()).collect::<Vec<usize>>()))
    };
    let has_pair_transposition = has(is_pair_transposition);
    let has_signed_four_cycle = has(is_four_cycle);
    Ok(CycleEvidence { primes, types, has_pair_transposition, has_signed_four_cycle, transitive_on_pairs })
}

/// σ² ≤ (b − μ)(μ − a).
pub fn bhatia_davis_bound(a: &BigRational, b: &BigRational, mu: &BigRational, sigma2: &BigRational) -> Result<bool> {
    if a > mu || mu > b {
        return Err(Error::BadBounds);
    }
    Ok(sigma2 <= &((b - mu) * (mu - a)))
}

/// All three verdicts plus the LI verdict for one polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub complete: BiasVerdict,
    pub lower: BiasVerdict,
    pub reversed: BiasVerdict,
    pub li: LiVerdict,
}

pub fn classify_all(p: &WeilPoly, settings: ClassifySettings) -> Result<(Analysis, Classification)> {
    let a = Analysis::new(p, settings)?;
    let c = Classification {
        complete: classify_complete_in(&a),
        lower: classify_lower_order_in(&a),
        reversed: classify_reversed_in(&a),
        li: a.li.clone(),
    };
    Ok((a, c))
}

/// Minimum of Σ cos(ℓγ_i) over one period of rational angles γ_i = π k_i/d_i.
pub fn min_cos_sum(angles: &[(u64, u64)]) -> f64 {
    let period = angles.iter().fold(1u64, |acc, &(_, d)| num_integer::lcm(acc, 2 * d));
    (0..period)
        .map(|l| {
            angles
                .iter()
                .map(|&(k, d)| (std::f64::consts::PI * (l * k) as f64 / d as f64).cos())
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// The lower bound −N + 1 + cos(π(1 − 1/κ)) for an odd relation of weight κ.
pub fn asymmetry_gap(n: usize, kappa: u64) -> f64 {
    -(n as f64) + 1.0 + (std::f64::consts::PI * (1.0 - 1.0 / kappa as f64)).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weil(c: &[i64], q: u64) -> WeilPoly {
        WeilPoly::from_i64(c, q).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn complete_examples() {
        let v = classify_complete(&weil(&[9, -6, 1], 9)).unwrap();
        assert_eq!(v.status, BiasStatus::Yes);
        assert!(matches!(v.certificate, Some(Certificate::SufficientComplete { ref case, m0: 2, mpi: 0, d1: 0, .. }) if case == "1"));
        let v = classify_complete(&weil(&[3, 1, 1], 3)).unwrap();
        assert_eq!((v.status, v.certificate), (BiasStatus::No, Some(Certificate::NonSquareField { q: 3 })));
        let v = classify_complete(&weil(&[529, 0, -29, 0, 1], 23)).unwrap();
        assert_eq!(v.status, BiasStatus::No);
    }

    #[test]
    fn lower_examples() {
        let v = classify_lower_order(&weil(&[529, 0, -29, 0, 1], 23)).unwrap();
        assert_eq!(v.status, BiasStatus::Yes);
        assert_eq!(v.certificate, Some(Certificate::VanishingClasses { modulus: 2, classes: vec![1] }));
        assert_eq!(classify_lower_order(&weil(&[9, -6, 1], 9)).unwrap().status, BiasStatus::No);
        let v = classify_lower_order(&weil(&[5, 1, 1], 5)).unwrap();
        assert_eq!(v.status, BiasStatus::No);
        assert_eq!(v.certificate, Some(Certificate::NoVanishingClass { modulus: 2, degenerate: false }));
    }

    #[test]
    fn reversed_examples() {
        let p = WeilPoly::new(PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).unwrap();
        let v = classify_reversed(&p).unwrap();
        assert_eq!(v.status, BiasStatus::Yes);
        match v.certificate {
            Some(Certificate::PeriodTable { period, values, neg, .. }) => {
                assert_eq!(period, 6);
                assert_eq!(values, vec!["5", "-2", "-1", "4", "-1", "-2"]);
                assert_eq!(neg, "2/3");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_reversed(&weil(&[9, -6, 1], 9)).unwrap().status, BiasStatus::No);
    }

    #[test]
    fn sufficient_split() {
        let p = WeilPoly::new(
            PolyInt::from_i64(&[-3, 1]).pow(2).mul(&PolyInt::from_i64(&[81, 0, -9, 0, 1])),
            9,
        )
        .unwrap();
        let r = spectral::spectral_report(&p).unwrap();
        let d = sufficient_complete_data(&r);
        assert_eq!((d.d1, d.d2), (0, 4));
        let p = WeilPoly::new(PolyInt::from_i64(&[9, 1, 1]).mul(&PolyInt::from_i64(&[9, -1, 1])), 9).unwrap();
        let r = spectral::spectral_report(&p).unwrap();
        let d = sufficient_complete_data(&r);
        assert_eq!((d.d1, d.d2), (0, 4));
        assert_eq!(d.l1.mul(&d.l2), r.reduced);
    }

    #[test]
    fn cycle_evidence() {
        assert!(matches!(
            galois_cycle_evidence(&weil(&[9, -6, 1], 9), 100),
            Err(Error::NotSeparable)
        ));
        let e = galois_cycle_evidence(&weil(&[529, 0, -29, 0, 1], 23), 100).unwrap();
        assert!(!e.types.is_empty());
        assert!(e.types.keys().all(|t| t != "2,1,1"));
    }

    #[test]
    fn bhatia_davis() {
        assert!(bhatia_davis_bound(&rat(-4, 1), &rat(5, 1), &rat(1, 2), &rat(33, 4)).unwrap());
        assert!(bhatia_davis_bound(&rat(1, 1), &rat(1, 1), &rat(1, 1), &rat(0, 1)).unwrap());
        assert!(!bhatia_davis_bound(&rat(0, 1), &rat(1, 1), &rat(1, 2), &rat(1, 3)).unwrap());
        assert!(matches!(bhatia_davis_bound(&rat(0, 1), &rat(1, 1), &rat(2, 1), &rat(0, 1)), Err(Error::BadBounds)));
    }

    #[test]
    fn asymmetry_gap_on_reversed_example() {
        // angles 2π/3 twice (multiplicity 2) and their conjugates, relation κ = 3
        let angles = [(2, 3), (2, 3)];
        assert!(min_cos_sum(&angles) >= asymmetry_gap(2, 3) - 1e-12);
    }
}
