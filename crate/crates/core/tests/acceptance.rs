use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufWriter;
use std::process::ExitCode;
use std::time::Instant;

use fqrace::algebra::{FieldCtx, FqElem, PolyFq, PolyInt};
use fqrace::bias::{
    delta_direct, delta_exact, empirical_moments, moments_from, power_sum_at, sign_densities, symmetry_test,
    DensityRequest, Symmetry,
};
use fqrace::census::{census_for_each, CensusSpec};
use fqrace::charsums::{log_derivative_coeffs, CharCtx};
use fqrace::classify::{
    bhatia_davis_bound, classify_all, classify_complete, classify_reversed, BiasStatus, Certificate,
    ClassifySettings,
};
use fqrace::spectral::{spectral_report, verify_certificate, LiStatus, RelationStatus};
use fqrace::sympcount::symplectic_census;
use fqrace::zeta::{is_symplectic, l_function, weil_poly, weil_poly_fast, zeta_from_l, WeilPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random monic squarefree polynomial of the given degree.
fn random_squarefree(rng: &mut ChaCha8Rng, k: &FieldCtx, deg: usize) -> PolyFq {
    loop {
        let mut c: Vec<FqElem> = (0..deg).map(|_| FqElem(rng.gen_range(0..k.q()))).collect();
        c.push(FqElem::ONE);
        let f = PolyFq::new(c);
        if f.is_squarefree(k).unwrap() {
            return f;
        }
    }
}

fn f23_example() -> Outcome {
    let start = Instant::now();
    let k = FieldCtx::new(23, 1).map_err(err)?;
    let ctx = CharCtx::new(&k, PolyFq::from_ints(&k, &[5, 0, 0, 2, 0, 0, 1])).map_err(err)?;
    let weil = weil_poly_fast(&ctx).map_err(err)?;
    let z = weil.zeta_numerator();
    ensure(z == PolyInt::from_i64(&[1, 0, -29, 0, 529]), || format!("Z = {z:?}"))?;
    let (a, c) = classify_all(&weil, ClassifySettings::default()).map_err(err)?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(c.lower.status == BiasStatus::Yes, || format!("lower = {:?}", c.lower.status))?;
    ensure(c.complete.status == BiasStatus::No, || format!("complete = {:?}", c.complete.status))?;
    ensure(a.zeros.dens_zero == BigRational::new(1.into(), 2.into()), || format!("dens_zero = {}", a.zeros.dens_zero))?;
    let odd: Vec<u64> = (0..a.zeros.modulus).filter(|r| r % 2 == 1).collect();
    ensure(a.zeros.classes == odd, || format!("zero classes {:?} mod {}", a.zeros.classes, a.zeros.modulus))?;
    ensure(elapsed < 1.0, || format!("runtime {elapsed:.3} s"))?;
    let l = l_function(&ctx).map_err(err)?;
    ensure(l == PolyInt::from_i64(&[1, -1]).mul(&z), || format!("enumerated L = {l:?} is not (1 - u) Z"))?;
    ensure(zeta_from_l(&l, 6).map_err(err)? == z, || "Z from enumerated L".into())?;
    Ok(format!("Z = 1 - 29u^2 + 529u^4 = L/(1 - u), lower = yes, zeros = odd n, {elapsed:.3} s"))
}

fn f9_example() -> Outcome {
    let k = FieldCtx::new(3, 2).map_err(err)?;
    let target = PolyInt::from_i64(&[9, -6, 1]);
    for j in (1..8u64).filter(|j| j % 2 == 1) {
        let a = k.pow_gen(j);
        let f = PolyFq::new(vec![k.pow(a, 7), FqElem(2), FqElem::ZERO, FqElem(2), FqElem::ONE]);
        let Ok(ctx) = CharCtx::new(&k, f) else { continue };
        let weil = weil_poly(&ctx).map_err(err)?;
        if weil.poly() != &target {
            continue;
        }
        let v = classify_complete(&weil).map_err(err)?;
        ensure(v.status == BiasStatus::Yes, || format!("complete = {:?}", v.status))?;
        match &v.certificate {
            Some(Certificate::SufficientComplete { case, .. }) if case == "1" => {}
            other => return Err(format!("certificate {other:?}")),
        }
        for n in 1..=1000 {
            let d = delta_exact(&weil, n);
            let ok = d.sqrt_part().is_zero() && (d.rational_part() == &int(2) || d.rational_part() == &int(3));
            ensure(ok, || format!("Delta({n}) = {d}"))?;
        }
        return Ok(format!("a = g^{j}, P = (T - 3)^2, sufficient case 1, Delta in {{2, 3}} for n <= 1000"));
    }
    Err("no generator gives P = (T - 3)^2".into())
}

fn reversed_example() -> Outcome {
    let weil = WeilPoly::new(PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).map_err(err)?;
    let expected = [5, -2, -1, 4, -1, -2];
    for n in 0..600u64 {
        let d = delta_exact(&weil, n);
        ensure(d.sqrt_part().is_zero() && d.rational_part() == &int(expected[(n % 6) as usize]), || {
            format!("Delta({n}) = {d}")
        })?;
    }
    let exact = sign_densities(&weil, 0, DensityRequest::Auto, 0).map_err(err)?.exact.ok_or("densities not exact")?;
    ensure(exact.neg == BigRational::new(2.into(), 3.into()), || format!("dens_neg = {}", exact.neg))?;
    ensure(classify_reversed(&weil).map_err(err)?.status == BiasStatus::Yes, || "reversed verdict".into())?;
    match symmetry_test(&weil).map_err(err)? {
        Symmetry::Asymmetric(r) if r.is_odd() && r.kappa() == 3 => {}
        other => return Err(format!("symmetry {other:?}")),
    }
    Ok("period 6 values (5,-2,-1,4,-1,-2), dens_neg = 2/3, asymmetric with kappa = 3".into())
}

/// Largest q^n for which c_n is taken from enumerating irreducibles.
const DIRECT_CAP: u64 = 60_000;

fn spectral_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fields = [(3, 1, 3..=6), (5, 1, 3..=6), (3, 2, 3..=5), (5, 2, 3..=4)];
    let (mut polys, mut direct, mut derived) = (0, 0, 0);
    for (p, e, degs) in fields {
        let k = FieldCtx::new(p, e).map_err(err)?;
        let q = k.q() as u64;
        for i in 0..55 {
            let deg = degs.clone().nth(i % degs.clone().count()).unwrap();
            let ctx = CharCtx::new(&k, random_squarefree(&mut rng, &k, deg)).map_err(err)?;
            let weil = weil_poly(&ctx).map_err(err)?;
            let from_l = log_derivative_coeffs(&ctx.coeff_sums().map_err(err)?, 10);
            for n in 1..=10usize {
                let rhs = -power_sum_at(&weil, n as u64) - ctx.eps();
                let c = if q.pow(n as u32) <= DIRECT_CAP {
                    direct += 1;
                    ctx.von_mangoldt_sum(n).map_err(err)?
                } else {
                    derived += 1;
                    from_l[n - 1]
                };
                ensure(BigInt::from(c) == rhs, || format!("F_{q}, f = {:?}, c_{n} = {c}, -t - eps = {rhs}", ctx.modulus()))?;
            }
            polys += 1;
        }
    }
    let mut races = 0;
    for (p, count) in [(3, 12), (5, 2)] {
        let k = FieldCtx::new(p, 1).map_err(err)?;
        for i in 0..count {
            let ctx = CharCtx::new(&k, random_squarefree(&mut rng, &k, 3 + i % 3)).map_err(err)?;
            let weil = weil_poly(&ctx).map_err(err)?;
            for n in 1..=8usize {
                let c = -power_sum_at(&weil, n as u64) - ctx.eps();
                let race = ctx.prime_race_count(n).map_err(err)?;
                let lhs = BigInt::from(n as i64 * race.difference());
                let rhs = c - ctx.prime_power_correction(n).map_err(err)?;
                ensure(lhs == rhs, || format!("F_{p} n = {n}: n(N+ - N-) = {lhs}, decomposition {rhs}"))?;
                races += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 600.0, || format!("runtime {elapsed:.1} s"))?;
    Ok(format!(
        "{polys} polynomials, {direct} c_n by enumeration, {derived} by log-derivative, {races} race decompositions, {elapsed:.1} s"
    ))
}

fn nonsquare_exclusion() -> Outcome {
    let mut total = 0;
    for p in [3, 5, 7] {
        for n in [3, 4, 5] {
            let mut bad = None;
            let summary = census_for_each(&CensusSpec::full(p, 1, n), |entry| {
                let r = &entry.record;
                if bad.is_none() && (r.m0 != r.mpi || r.complete == BiasStatus::Yes) {
                    bad = Some(format!("F_{p} f = {:?}: m0 = {}, mpi = {}, complete = {:?}", r.f_coeffs, r.m0, r.mpi, r.complete));
                }
                Ok(())
            })
            .map_err(err)?;
            if let Some(b) = bad {
                return Err(b);
            }
            ensure(summary.complete.yes == 0, || format!("F_{p} n = {n}: {} complete", summary.complete.yes))?;
            total += summary.total;
        }
    }
    Ok(format!("{total} records over q in {{3,5,7}}, n in {{3,4,5}}: no complete bias, m0 = mpi throughout"))
}

fn square_census() -> Outcome {
    let start = Instant::now();
    let k = FieldCtx::new(3, 2).map_err(err)?;
    let examples: BTreeSet<Vec<u32>> = (1..8u64)
        .filter(|j| j % 2 == 1)
        .map(|j| vec![k.pow(k.pow_gen(j), 7).index(), 2, 0, 2, 1])
        .collect();
    let (mut yes, mut found, mut bad) = (0, false, None);
    let summary = census_for_each(&CensusSpec::full(3, 2, 4), |entry| {
        let r = &entry.record;
        if r.complete == BiasStatus::Yes {
            yes += 1;
            let p3 = entry.weil.poly().eval(&BigInt::from(3));
            if bad.is_none() && !(p3.is_zero() && r.m0 > r.mpi) {
                bad = Some(format!("f = {:?}: P(3) = {p3}, m0 = {}, mpi = {}", r.f_coeffs, r.m0, r.mpi));
            }
            if examples.contains(&r.f_coeffs) && entry.weil.poly() == &PolyInt::from_i64(&[9, -6, 1]) {
                found = true;
            }
        }
        Ok(())
    })
    .map_err(err)?;
    let elapsed = start.elapsed().as_secs_f64();
    if let Some(b) = bad {
        return Err(b);
    }
    ensure(summary.total == 5832, || format!("{} records", summary.total))?;
    ensure(found, || "the F_9 example is not among the complete-bias records".into())?;
    ensure(elapsed < 600.0, || format!("runtime {elapsed:.1} s"))?;
    Ok(format!("5832 records, {yes} complete, all with P(3) = 0 and m0 > mpi, example included, {elapsed:.1} s"))
}

fn symplectic_counts() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("sympcount");
    std::fs::create_dir_all(&dir).map_err(err)?;
    let mut tables = 0;
    let mut omega_checked = 0;
    for l in [5u64, 7, 11, 13] {
        let nonsquare = (2..l).find(|&a| (1..l).all(|x| x * x % l != a)).unwrap();
        for g in [1usize, 2] {
            for qbar in [1, nonsquare] {
                let t = symplectic_census(l, g, qbar).map_err(err)?;
                let file = File::create(dir.join(format!("l{l}_g{g}_q{qbar}.csv"))).map_err(err)?;
                t.write_csv(BufWriter::new(file)).map_err(err)?;
                let tag = format!("l = {l}, g = {g}, qbar = {qbar}");
                ensure(t.all_members_valid, || format!("{tag}: invalid member"))?;
                let roots = (0..l).filter(|s| s * s % l == qbar).count();
                ensure(t.vanish.len() == roots, || format!("{tag}: {} vanish rows, {roots} roots", t.vanish.len()))?;
                for v in &t.vanish {
                    ensure(v.count == l.pow(g as u32 - 1), || format!("{tag}: vanish at {} = {}", v.s, v.count))?;
                }
                ensure(t.h_injective && t.h_image == t.size, || format!("{tag}: h not bijective"))?;
                ensure(t.size == l.pow(g as u32), || format!("{tag}: size {}", t.size))?;
                if l >= 7 {
                    for o in &t.omega {
                        ensure(o.within_tolerance, || {
                            format!("{tag}: omega k = {} n = {:?} normalized {:.3}", o.k, o.n, o.normalized)
                        })?;
                        omega_checked += 1;
                    }
                }
                tables += 1;
            }
        }
    }
    Ok(format!("{tables} tables, vanish counts l^(g-1), h bijective, {omega_checked} omega bounds, counts in {}", dir.display()))
}

fn moments_bhatia_davis() -> Outcome {
    const N: u64 = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0f64;
    for (p, e, degs) in [(5, 1, [3usize, 4, 5, 6]), (3, 2, [3, 4, 5, 5])] {
        let k = FieldCtx::new(p, e).map_err(err)?;
        for i in 0..50 {
            let ctx = CharCtx::new(&k, random_squarefree(&mut rng, &k, degs[i % 4])).map_err(err)?;
            let weil = weil_poly(&ctx).map_err(err)?;
            let report = spectral_report(&weil).map_err(err)?;
            let theory = moments_from(&report);
            let emp = empirical_moments(&report, N);
            let width = (theory.support.1 - theory.support.0) as f64;
            let tol = 10.0 * width / (N as f64).sqrt();
            let tag = format!("F_{} f = {:?}", k.q(), ctx.modulus());
            let mean_err = (emp.mean - f64_of(&theory.mean)).abs();
            let var_err = (emp.variance - f64_of(&theory.variance)).abs();
            ensure(mean_err <= tol, || format!("{tag}: mean {} vs {}", emp.mean, theory.mean))?;
            ensure(var_err <= tol, || format!("{tag}: variance {} vs {}", emp.variance, theory.variance))?;
            worst = worst.max(mean_err / tol).max(var_err / tol);
            let r = |x: f64| BigRational::from_f64(x).unwrap();
            let mu = emp.mean.clamp(emp.min, emp.max);
            // Floating round-off can push an extremal two-point sample a few ulps past equality.
            let slack = 1e-9 * (1.0 + emp.max.abs().max(emp.min.abs())).powi(2);
            let holds = bhatia_davis_bound(&r(emp.min), &r(emp.max), &r(mu), &r(emp.variance - slack)).map_err(err)?;
            ensure(holds, || format!("{tag}: Bhatia-Davis fails"))?;
        }
    }
    Ok(format!("100 polynomials, N = 10^5, worst error {:.3} of tolerance, Bhatia-Davis holds", worst))
}

fn f64_of(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

fn structural_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut weils = Vec::new();
    for (p, e, max_deg) in [(3, 1, 7), (5, 1, 6), (7, 1, 5), (3, 2, 5), (5, 2, 4)] {
        let k = FieldCtx::new(p, e).map_err(err)?;
        for i in 0..40 {
            let deg = 3 + i % (max_deg - 2);
            let ctx = CharCtx::new(&k, random_squarefree(&mut rng, &k, deg)).map_err(err)?;
            let weil = weil_poly(&ctx).map_err(err)?;
            ensure(is_symplectic(weil.poly(), weil.q()), || format!("{:?} not symplectic", ctx.modulus()))?;
            ensure(weil.genus() == ctx.genus(), || "genus".into())?;
            if (k.q() as u64).pow(deg as u32 + 1) <= 200_000 {
                for d in deg..=deg + 1 {
                    ensure(ctx.coeff_sum(d).map_err(err)? == 0, || format!("A_{d} != 0 for {:?}", ctx.modulus()))?;
                }
            }
            weils.push(weil);
        }
    }
    let k3 = FieldCtx::new(3, 1).map_err(err)?;
    for n in [3, 4, 5] {
        for f in fqrace::algebra::enumerate_squarefree(&k3, n) {
            weils.push(weil_poly(&CharCtx::new(&k3, f).map_err(err)?).map_err(err)?);
        }
    }
    let mut fails = 0;
    let mut reports = Vec::new();
    for w in &weils {
        let (a, c) = classify_all(w, ClassifySettings::default()).map_err(err)?;
        ensure(a.report.multiplicity_total() == 2 * w.genus(), || format!("{:?}: multiplicities", w.poly()))?;
        if c.li.status == LiStatus::Fails {
            let cert = c.li.certificate.as_ref().ok_or("Fails without certificate")?;
            ensure(verify_certificate(w, cert) == RelationStatus::ExactVerified, || {
                format!("{:?}: certificate {cert:?} does not verify", w.poly())
            })?;
            fails += 1;
        }
        reports.push(a.report);
    }
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let i = rng.gen_range(0..weils.len());
        let n = rng.gen_range(0..400u64);
        let exact = delta_exact(&weils[i], n).to_f64();
        let direct = delta_direct(&reports[i], n);
        worst = worst.max((exact - direct).abs());
    }
    ensure(worst <= 1e-9, || format!("delta disagreement {worst:e}"))?;
    Ok(format!(
        "{} Weil polynomials symplectic, A_d vanish, multiplicities 2g, {fails} LI certificates verified, delta error {worst:.1e}",
        weils.len()
    ))
}

fn certified_negative() -> Outcome {
    let mut found = None;
    let mut negatives = 0;
    census_for_each(&CensusSpec::full(3, 1, 5), |entry| {
        if entry.record.reversed != BiasStatus::No {
            return Ok(());
        }
        negatives += 1;
        if let Some(Certificate::GaloisChain {
            separable: true,
            nondegenerate: true,
            h_irreducible: true,
            witness_type,
            witness_prime,
            ..
        }) = &entry.classification.reversed.certificate
        {
            if found.is_none() && !witness_type.is_empty() {
                found = Some(format!("f = {:?}, cycle type {witness_type} at {witness_prime}", entry.record.f_coeffs));
            }
        }
        Ok(())
    })
    .map_err(err)?;
    let example = found.ok_or("no reversed = No record with a full certificate chain")?;
    Ok(format!("{negatives} certified negatives over F_3 degree 5, e.g. {example}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("F_23 lower-order example", f23_example),
        ("F_9 complete-bias example", f9_example),
        ("reversed periodic example", reversed_example),
        ("spectral identity and race decomposition", spectral_identity),
        ("non-square exclusion census", nonsquare_exclusion),
        ("square-q census", square_census),
        ("symplectic counts", symplectic_counts),
        ("moments and Bhatia-Davis", moments_bhatia_davis),
        ("structural invariants", structural_invariants),
        ("certified negatives", certified_negative),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id == *f || name.contains(f.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS {id} ({name}): {detail}"),
            Err(msg) => {
                println!("FAIL {id} ({name}): {msg}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
