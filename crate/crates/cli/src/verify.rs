//! Built-in regression suite over the worked examples.

use std::io::{self, Write};

use fqrace::algebra::{FieldCtx, FqElem, PolyFq, PolyInt};
use fqrace::bias::{delta_exact, power_sum_at, sign_densities, symmetry_test, zero_density, DensityRequest, Symmetry};
use fqrace::census::{census_scan, CensusSpec};
use fqrace::charsums::CharCtx;
use fqrace::classify::{classify_complete, classify_lower_order, classify_reversed, BiasStatus};
use fqrace::sympcount::symplectic_census;
use fqrace::zeta::{l_function, weil_poly_fast, WeilPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::Failure;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: fqrace::Error) -> String {
    e.to_string()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn f3_symbols() -> Check {
    let k = FieldCtx::new(3, 1).map_err(err)?;
    let c = CharCtx::new(&k, PolyFq::from_ints(&k, &[1, 0, 1])).map_err(err)?;
    ensure(c.residue_symbol(&PolyFq::x()).map_err(err)? == 1, || "χ(x) != 1".into())?;
    ensure(c.residue_symbol(&PolyFq::from_ints(&k, &[1, 1])).map_err(err)? == -1, || "χ(x+1) != -1".into())?;
    ensure(c.coeff_sums().map_err(err)? == vec![1, -1], || "coefficient sums".into())?;
    let r = c.prime_race_count(1).map_err(err)?;
    ensure((r.n_plus, r.n_minus) == (1, 2), || format!("race counts {} {}", r.n_plus, r.n_minus))
}

fn f23_lower_order() -> Check {
    let k = FieldCtx::new(23, 1).map_err(err)?;
    let ctx = CharCtx::new(&k, PolyFq::from_ints(&k, &[5, 0, 0, 2, 0, 0, 1])).map_err(err)?;
    let weil = weil_poly_fast(&ctx).map_err(err)?;
    let z = PolyInt::from_i64(&[1, 0, -29, 0, 529]);
    ensure(weil.zeta_numerator() == z, || format!("zeta numerator {}", weil.zeta_numerator()))?;
    let l = l_function(&ctx).map_err(err)?;
    ensure(l == z.mul(&PolyInt::from_i64(&[1, -1])), || format!("L = {l}"))?;
    let zs = zero_density(&weil).map_err(err)?;
    ensure(zs.dens_zero == ratio(1, 2), || format!("zero density {}", zs.dens_zero))?;
    ensure(classify_lower_order(&weil).map_err(err)?.status == BiasStatus::Yes, || "lower-order verdict".into())?;
    ensure(classify_complete(&weil).map_err(err)?.status == BiasStatus::No, || "complete verdict".into())
}

fn f9_complete() -> Check {
    let k = FieldCtx::new(3, 2).map_err(err)?;
    let target = PolyInt::from_i64(&[9, -6, 1]);
    for j in (1..8u64).filter(|j| j % 2 == 1) {
        let a = k.pow_gen(j);
        let c = k.pow(a, 7);
        let f = PolyFq::new(vec![c, FqElem(2), FqElem::ZERO, FqElem(2), FqElem::ONE]);
        let Ok(ctx) = CharCtx::new(&k, f) else { continue };
        let weil = weil_poly_fast(&ctx).map_err(err)?;
        if weil.poly() != &target {
            continue;
        }
        ensure(classify_complete(&weil).map_err(err)?.status == BiasStatus::Yes, || "complete verdict".into())?;
        for n in 1..=1000 {
            let d = delta_exact(&weil, n);
            let ok = d.sqrt_part() == &ratio(0, 1) && (d.rational_part() == &ratio(2, 1) || d.rational_part() == &ratio(3, 1));
            ensure(ok, || format!("Δ({n}) = {d}"))?;
        }
        return Ok(());
    }
    Err("no generator a gives P_f = (T - 3)^2".into())
}

fn reversed_example() -> Check {
    let weil = WeilPoly::new(PolyInt::from_i64(&[9, 3, 1]).pow(2), 9).map_err(err)?;
    let expected = [5, -2, -1, 4, -1, -2];
    for n in 0..12u64 {
        let d = delta_exact(&weil, n);
        let want = ratio(expected[(n % 6) as usize], 1);
        ensure(d.rational_part() == &want && d.sqrt_part() == &ratio(0, 1), || format!("Δ({n}) = {d}"))?;
    }
    let dens = sign_densities(&weil, 0, DensityRequest::Auto, 0).map_err(err)?;
    let exact = dens.exact.ok_or("densities not exact")?;
    ensure(exact.neg == ratio(2, 3), || format!("dens_neg = {}", exact.neg))?;
    ensure(classify_reversed(&weil).map_err(err)?.status == BiasStatus::Yes, || "reversed verdict".into())?;
    match symmetry_test(&weil).map_err(err)? {
        Symmetry::Asymmetric(r) => ensure(r.kappa() == 3, || format!("κ = {}", r.kappa())),
        other => Err(format!("symmetry {other:?}")),
    }
}

fn spectral_identity() -> Check {
    let k = FieldCtx::new(3, 1).map_err(err)?;
    for n in [3, 4] {
        for f in fqrace::algebra::enumerate_squarefree(&k, n) {
            let ctx = CharCtx::new(&k, f).map_err(err)?;
            let weil = weil_poly_fast(&ctx).map_err(err)?;
            for m in 1..=6usize {
                let t = power_sum_at(&weil, m as u64);
                let c = ctx.von_mangoldt_sum(m).map_err(err)?;
                ensure(BigInt::from(c) == -t.clone() - ctx.eps(), || format!("c_{m} = {c}, t_{m} = {t}"))?;
            }
        }
    }
    Ok(())
}

fn symplectic_small() -> Check {
    let t = symplectic_census(5, 1, 1).map_err(err)?;
    ensure(t.size == 5 && t.vanish_ok() && t.h_injective, || "ℓ = 5 table".into())?;
    ensure(t.irreducible == 2, || format!("irreducible count {}", t.irreducible))
}

fn census_f3() -> Check {
    let c = census_scan(&CensusSpec::full(3, 1, 3)).map_err(err)?;
    ensure(c.records.len() == 18, || format!("{} records", c.records.len()))?;
    ensure(c.summary.complete.yes == 0, || "complete bias over F_3".into())
}

pub fn run() -> Result<(), Failure> {
    let checks: [(&str, fn() -> Check); 7] = [
        ("f3-symbols", f3_symbols),
        ("f23-lower-order", f23_lower_order),
        ("f9-complete", f9_complete),
        ("reversed-periodic", reversed_example),
        ("spectral-identity", spectral_identity),
        ("symplectic-counts", symplectic_small),
        ("census-f3", census_f3),
    ];
    let mut out = io::stdout().lock();
    let mut failed = Vec::new();
    for (name, check) in checks {
        match check() {
            Ok(()) => writeln!(out, "ok   {name}")?,
            Err(m) => {
                writeln!(out, "FAIL {name}: {m}")?;
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failed.join(", ")))
    }
}
