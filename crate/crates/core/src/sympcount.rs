//! Brute-force counts over the q-symplectic polynomials of degree 2g in F_ℓ[T].

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::field::is_prime_u64;
use crate::algebra::{FieldCtx, FqElem, PolyFq};
use crate::census::TOOL_VERSION;
use crate::error::{Error, Result};

/// Largest space size ℓ^g a census may enumerate.
pub const SPACE_CAP: u64 = 10_000_000;

/// The constant C in the tolerance C/√ℓ for normalized ω-counts.
pub const OMEGA_TOLERANCE: f64 = 5.0;

/// Monic degree-2g polynomials P over F_ℓ with P(T) = q̄^{-g} T^{2g} P(q̄/T).
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    field: FieldCtx,
    l: u32,
    g: usize,
    qbar: u32,
}

fn check_params(l: u64, qbar: u64) -> Result<()> {
    if l == 2 || !is_prime_u64(l) || l > u32::MAX as u64 {
        return Err(Error::BadParams(format!("ℓ = {l} is not an odd prime")));
    }
    if qbar % l == 0 {
        return Err(Error::BadParams(format!("q̄ = {qbar} vanishes mod {l}")));
    }
    Ok(())
}

impl SymplecticSpace {
    pub fn new(l: u64, g: usize, qbar: u64) -> Result<Self> {
        check_params(l, qbar)?;
        let field = FieldCtx::new(l as u32, 1)?;
        Ok(SymplecticSpace { field, l: l as u32, g, qbar: (qbar % l) as u32 })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn size(&self) -> Option<u64> {
        (self.l as u64).checked_pow(self.g as u32)
    }

    /// The member whose free coefficients a_g, ..., a_{2g-1} are the base-ℓ
    /// digits of `idx`, a_g least significant.
    pub fn member(&self, mut idx: u64) -> PolyFq {
        let (l, g) = (self.l as u64, self.g);
        let f = &self.field;
        let mut a = vec![FqElem::ZERO; 2 * g + 1];
        a[2 * g] = FqElem::ONE;
        for c in a.iter_mut().skip(g).take(g) {
            *c = FqElem((idx % l) as u32);
            idx /= l;
        }
        let q = FqElem(self.qbar);
        for i in 0..g {
            a[i] = f.mul(f.pow(q, (g - i) as u64), a[2 * g - i]);
        }
        PolyFq::new(a)
    }

    /// Whether P satisfies the q̄-symplectic functional equation.
    pub fn is_member(&self, p: &PolyFq) -> bool {
        let g = self.g;
        if p.deg() != 2 * g || !p.is_monic() {
            return false;
        }
        let f = &self.field;
        let q = FqElem(self.qbar);
        let c = p.coeffs();
        (0..=2 * g).all(|i| {
            let rhs = f.mul(f.pow(q, (2 * g - i) as u64), c[2 * g - i]);
            f.mul(f.pow(q, g as u64), c[i]) == rhs
        })
    }

    /// h_P with P(T) = T^g h_P(T + q̄/T), from the Dickson recursion
    /// D_{j+1} = x D_j − q̄ D_{j−1}.
    pub fn h_of(&self, p: &PolyFq) -> PolyFq {
        let f = &self.field;
        let g = self.g;
        let c = p.coeffs();
        let qneg = f.neg(FqElem(self.qbar));
        let x = PolyFq::new(vec![FqElem::ZERO, FqElem::ONE]);
        let mut h = PolyFq::new(vec![c[g]]);
        let mut prev = PolyFq::new(vec![f.from_int(2)]);
        let mut cur = x.clone();
        for j in 1..=g {
            h = h.add(&cur.scale(c[g + j], f), f);
            let next = x.mul(&cur, f).add(&prev.scale(qneg, f), f);
            prev = std::mem::replace(&mut cur, next);
        }
        h
    }
}

/// All ℓ^g members of the space, in index order.
pub fn enumerate_symplectic(l: u64, g: usize, qbar: u64) -> Result<impl Iterator<Item = PolyFq>> {
    let space = SymplecticSpace::new(l, g, qbar)?;
    let n = space.size().ok_or_else(|| Error::TooLarge(format!("{l}^{g}")))?;
    Ok((0..n).map(move |i| space.member(i)))
}

/// Every (k, n̄) with k ≥ 1 and g = k + Σ (2i+1) n_i, n̄ trimmed of trailing zeros.
pub fn omega_partitions(g: usize) -> Vec<(usize, Vec<usize>)> {
    fn odd_parts(m: usize, max_i: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            let mut v = acc.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return;
        }
        if acc.len() > max_i {
            return;
        }
        let part = 2 * acc.len() + 1;
        for n in 0..=m / part {
            acc.push(n);
            odd_parts(m - n * part, max_i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=g {
        let m = g - k;
        let mut parts = Vec::new();
        odd_parts(m, m.saturating_sub(1) / 2, &mut Vec::new(), &mut parts);
        out.extend(parts.into_iter().map(|n| (k, n)));
    }
    out
}

/// 2k ∏ 2^{n_i} (2i+1)^{n_i} n_i!, the reciprocal of the main-term constant.
pub fn omega_weight(k: usize, n: &[usize]) -> f64 {
    let mut w = 2.0 * k as f64;
    for (i, &ni) in n.iter().enumerate() {
        let fact: f64 = (1..=ni).map(|j| j as f64).product();
        w *= 2f64.powi(ni as i32) * ((2 * i + 1) as f64).powi(ni as i32) * fact;
    }
    w
}

fn omega_key(n: &[usize]) -> String {
    n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishCount {
    pub s: u32,
    pub count: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaCount {
    pub k: usize,
    pub n: Vec<usize>,
    pub count: u64,
    /// |ω| · 2k ∏ 2^{n_i}(2i+1)^{n_i} n_i! / ℓ^g
    pub normalized: f64,
    /// The same ratio against a main term twice as large.
    pub normalized_doubled: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    /// ℓ > 4g², the range where the asymptotic count is established.
    pub lemma_range: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticTable {
    pub l: u32,
    pub g: usize,
    pub qbar: u32,
    pub size: u64,
    pub all_members_valid: bool,
    pub vanish: Vec<VanishCount>,
    pub factor_types: BTreeMap<String, u64>,
    pub squarefree: u64,
    pub omega: Vec<OmegaCount>,
    pub h_injective: bool,
    pub h_image: u64,
    pub irreducible: u64,
    pub irreducible_fraction: f64,
    pub asymptotic_fraction: f64,
}

#[derive(Clone, Default)]
struct Partial {
    valid: u64,
    vanish: Vec<u64>,
    types: BTreeMap<String, u64>,
    squarefree: u64,
    omega: BTreeMap<(usize, Vec<usize>), u64>,
    irreducible: u64,
    h: Vec<u64>,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.valid += o.valid;
        if self.vanish.len() < o.vanish.len() {
            self.vanish.resize(o.vanish.len(), 0);
        }
        for (a, b) in self.vanish.iter_mut().zip(&o.vanish) {
            *a += b;
        }
        for (k, v) in o.types {
            *self.types.entry(k).or_default() += v;
        }
        self.squarefree += o.squarefree;
        for (k, v) in o.omega {
            *self.omega.entry(k).or_default() += v;
        }
        self.irreducible += o.irreducible;
        self.h.extend(o.h);
        self
    }
}

fn type_string(factors: &[(PolyFq, usize)]) -> String {
    let mut parts: Vec<(usize, usize)> = factors.iter().map(|(p, m)| (p.deg(), *m)).collect();
    parts.sort();
    parts
        .iter()
        .map(|&(d, m)| if m == 1 { d.to_string() } else { format!("{d}^{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The ω-class (k, n̄) of a squarefree member: exactly one even-degree
/// factor and no linear factor T − s with s² = q̄.
fn omega_class(factors: &[(PolyFq, usize)], roots: &[FqElem]) -> Option<(usize, Vec<usize>)> {
    let even: Vec<usize> = factors.iter().map(|(p, _)| p.deg()).filter(|d| d % 2 == 0).collect();
    if even.len() != 1 {
        return None;
    }
    let mut n = Vec::new();
    for (p, _) in factors {
        let d = p.deg();
        if d % 2 == 0 {
            continue;
        }
        if d == 1 && roots.iter().any(|&s| p.coeffs()[0].0 == s.0) {
            return None;
        }
        let i = (d - 1) / 2;
        if n.len() <= i {
            n.resize(i + 1, 0);
        }
        n[i] += 1;
    }
    // odd factors pair with their q̄-reciprocals
    let mut n: Vec<usize> = n.into_iter().map(|c| c / 2).collect();
    while n.last() == Some(&0) {
        n.pop();
    }
    Some((even[0] / 2, n))
}

/// Full census of one symplectic space.
pub fn symplectic_census(l: u64, g: usize, qbar: u64) -> Result<SymplecticTable> {
    let space = SymplecticSpace::new(l, g, qbar)?;
    let size = space
        .size()
        .filter(|&s| s <= SPACE_CAP)
        .ok_or_else(|| Error::TooLarge(format!("symplectic space of size {l}^{g}")))?;
    let f = space.field();
    let roots = f.sqrt(FqElem(space.qbar));
    // the roots s of q̄ appear as linear factors T − s, i.e. constant term −s
    let neg_roots: Vec<FqElem> = roots.iter().map(|&s| f.neg(s)).collect();
    let lq = space.l as u64;

    let partial = (0..size)
        .into_par_iter()
        .fold(Partial::default, |mut acc, idx| {
            let p = space.member(idx);
            acc.valid += space.is_member(&p) as u64;
            if acc.vanish.len() < roots.len() {
                acc.vanish.resize(roots.len(), 0);
            }
            for (i, &s) in roots.iter().enumerate() {
                acc.vanish[i] += p.eval(s, f).is_zero() as u64;
            }
            let (_, factors) = p.factor(f).expect("nonzero polynomial");
            *acc.types.entry(type_string(&factors)).or_default() += 1;
            let squarefree = factors.iter().all(|(_, m)| *m == 1);
            if squarefree {
                acc.squarefree += 1;
                if let Some(key) = omega_class(&factors, &neg_roots) {
                    *acc.omega.entry(key).or_default() += 1;
                }
            }
            acc.irreducible += (factors.len() == 1 && factors[0].1 == 1) as u64;
            let h = space.h_of(&p);
            let rank = if h.deg() == g && h.is_monic() {
                h.coeffs()[..g].iter().rev().fold(0u64, |r, c| r * lq + c.0 as u64)
            } else {
                u64::MAX
            };
            acc.h.push(rank);
            acc
        })
        .reduce(Partial::default, Partial::merge);

    let mut h = partial.h;
    h.sort_unstable();
    let valid_image = h.last().is_none_or(|&r| r != u64::MAX);
    h.dedup();
    let h_image = h.len() as u64;

    let tolerance = OMEGA_TOLERANCE / (l as f64).sqrt();
    let lemma_range = l > 4 * (g as u64).pow(2);
    let omega = omega_partitions(g)
        .into_iter()
        .map(|(k, n)| {
            let count = partial.omega.get(&(k, n.clone())).copied().unwrap_or(0);
            let normalized = count as f64 * omega_weight(k, &n) / size as f64;
            OmegaCount {
                k,
                n,
                count,
                normalized,
                normalized_doubled: normalized / 2.0,
                tolerance,
                within_tolerance: (normalized - 1.0).abs() <= tolerance,
                lemma_range,
            }
        })
        .collect();

    let vanish = roots
        .iter()
        .enumerate()
        .map(|(i, s)| VanishCount {
            s: s.0,
            count: partial.vanish.get(i).copied().unwrap_or(0),
            expected: lq.pow(g as u32 - 1),
        })
        .collect();

    Ok(SymplecticTable {
        l: space.l,
        g,
        qbar: space.qbar,
        size,
        all_members_valid: partial.valid == size,
        vanish,
        factor_types: partial.types,
        squarefree: partial.squarefree,
        omega,
        h_injective: valid_image && h_image == size,
        h_image,
        irreducible: partial.irreducible,
        irreducible_fraction: partial.irreducible as f64 / size as f64,
        asymptotic_fraction: 1.0 / (2 * g) as f64,
    })
}

impl SymplecticTable {
    pub fn vanish_ok(&self) -> bool {
        self.vanish.iter().all(|v| v.count == v.expected)
    }

    pub fn omega_ok(&self) -> bool {
        self.omega.iter().all(|o| o.within_tolerance)
    }

    /// Long-format CSV with a `# {header json}` line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::json!({
            "tool_version": TOOL_VERSION,
            "settings": { "l": self.l, "g": self.g, "qbar": self.qbar, "omega_tolerance": OMEGA_TOLERANCE },
        });
        writeln!(w, "# {header}")?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(TABLE_COLUMNS).map_err(|e| Error::Io(e.to_string()))?;
        let mut row = |kind: &str, key: String, count: u64, expected: String, normalized: String, ok: String| {
            let (l, g, q) = (self.l.to_string(), self.g.to_string(), self.qbar.to_string());
            out.write_record([l.as_str(), &g, &q, kind, &key, &count.to_string(), &expected, &normalized, &ok])
                .map_err(|e| Error::Io(e.to_string()))
        };
        row("size", String::new(), self.size, String::new(), String::new(), self.all_members_valid.to_string())?;
        for v in &self.vanish {
            row("vanish", format!("s={}", v.s), v.count, v.expected.to_string(), String::new(), (v.count == v.expected).to_string())?;
        }
        for (t, c) in &self.factor_types {
            row("factor_type", t.clone(), *c, String::new(), String::new(), String::new())?;
        }
        row("squarefree", String::new(), self.squarefree, String::new(), String::new(), String::new())?;
        for o in &self.omega {
            row(
                "omega",
                format!("k={};n={}", o.k, omega_key(&o.n)),
                o.count,
                String::new(),
                format!("{:.6}", o.normalized),
                o.within_tolerance.to_string(),
            )?;
        }
        row("h_image", String::new(), self.h_image, self.size.to_string(), String::new(), self.h_injective.to_string())?;
        row(
            "irreducible",
            String::new(),
            self.irreducible,
            String::new(),
            format!("{:.6}", self.irreducible_fraction),
            String::new(),
        )?;
        out.flush()?;
        Ok(())
    }
}

/// Column row of [`SymplecticTable::write_csv`].
pub const TABLE_COLUMNS: [&str; 9] = ["l", "g", "qbar", "kind", "key", "count", "expected", "normalized", "ok"];
