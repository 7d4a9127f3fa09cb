//! Scans over sets of moduli f and the per-modulus record format.
//!
//! Field elements are written by their index Σ c_i p^i in the power basis,
//! which for a prime field is the residue itself.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::polyfq::MonicIter;
use crate::algebra::{FieldCtx, FqElem, PolyFq};
use crate::charsums::CharCtx;
use crate::classify::{classify_all, Analysis, BiasStatus, Classification, ClassifySettings, DensitySummary};
use crate::error::{Error, Result};
use crate::spectral::LiStatus;
use crate::zeta::{weil_poly_fast, WeilPoly};

/// Largest number of monic polynomials a full scan may enumerate.
pub const FULL_SCAN_CAP: u64 = 10_000_000;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COLUMNS: [&str; 19] = [
    "p",
    "e",
    "n",
    "f_coeffs",
    "P_coeffs",
    "g",
    "m0",
    "mpi",
    "degenerate",
    "M",
    "li_status",
    "complete",
    "lower",
    "reversed",
    "dens_pos",
    "dens_neg",
    "dens_zero",
    "density_mode",
    "seed",
];

const CHUNK: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanMode {
    /// Every monic squarefree f of degree n.
    Full,
    /// `count` squarefree f drawn uniformly with replacement.
    Sample { count: u64, seed: u64 },
    /// f_t = g(x)(x − t) for every t with g(t) ≠ 0; g is given by element indices.
    Family { g: Vec<u32> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSpec {
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub mode: ScanMode,
    pub settings: ClassifySettings,
}

impl CensusSpec {
    pub fn full(p: u32, e: u32, n: usize) -> Self {
        CensusSpec { p, e, n, mode: ScanMode::Full, settings: ClassifySettings::default() }
    }

    pub fn sample(p: u32, e: u32, n: usize, count: u64, seed: u64) -> Self {
        CensusSpec { p, e, n, mode: ScanMode::Sample { count, seed }, settings: ClassifySettings::default() }
    }

    /// A family scan; n is deg g + 1.
    pub fn family(p: u32, e: u32, g: Vec<u32>) -> Self {
        let n = g.len();
        CensusSpec { p, e, n, mode: ScanMode::Family { g }, settings: ClassifySettings::default() }
    }

    pub fn header(&self) -> CensusHeader {
        CensusHeader {
            tool_version: TOOL_VERSION.to_string(),
            settings: serde_json::to_value(self).expect("spec serializes"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusHeader {
    pub tool_version: String,
    pub settings: Value,
}

/// One row of a census.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRecord {
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub f_coeffs: Vec<u32>,
    pub p_coeffs: Vec<BigInt>,
    pub g: usize,
    pub m0: usize,
    pub mpi: usize,
    pub degenerate: bool,
    pub modulus: u64,
    pub li_status: LiStatus,
    pub complete: BiasStatus,
    pub lower: BiasStatus,
    pub reversed: BiasStatus,
    pub dens_pos: String,
    pub dens_neg: String,
    pub dens_zero: String,
    pub density_mode: String,
    pub seed: u64,
}

/// A record together with the full in-memory classification it came from.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub record: CensusRecord,
    pub weil: WeilPoly,
    pub classification: Classification,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub yes: u64,
    pub no: u64,
    pub unknown: u64,
}

impl VerdictCounts {
    fn add(&mut self, s: BiasStatus) {
        match s {
            BiasStatus::Yes => self.yes += 1,
            BiasStatus::No => self.no += 1,
            BiasStatus::Unknown => self.unknown += 1,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.yes += o.yes;
        self.no += o.no;
        self.unknown += o.unknown;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: u64,
    pub complete: VerdictCounts,
    pub lower: VerdictCounts,
    pub reversed: VerdictCounts,
    pub degenerate: u64,
    pub li_fails: u64,
}

impl Summary {
    pub fn add(&mut self, r: &CensusRecord) {
        self.total += 1;
        self.complete.add(r.complete);
        self.lower.add(r.lower);
        self.reversed.add(r.reversed);
        self.degenerate += r.degenerate as u64;
        self.li_fails += (r.li_status == LiStatus::Fails) as u64;
    }

    pub fn merge(&mut self, o: &Self) {
        self.total += o.total;
        self.complete.merge(&o.complete);
        self.lower.merge(&o.lower);
        self.reversed.merge(&o.reversed);
        self.degenerate += o.degenerate;
        self.li_fails += o.li_fails;
    }

    pub fn fraction(&self, count: u64) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            count as f64 / self.total as f64
        }
    }

    pub fn li_failure_fraction(&self) -> f64 {
        self.fraction(self.li_fails)
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: Summary,
}

fn field_and_check(spec: &CensusSpec) -> Result<FieldCtx> {
    let field = FieldCtx::new(spec.p, spec.e)?;
    if spec.n == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    Ok(field)
}

fn family_base(field: &FieldCtx, g: &[u32]) -> Result<PolyFq> {
    let q = field.q();
    if let Some(c) = g.iter().find(|&&c| c >= q) {
        return Err(Error::BadFamily(format!("coefficient {c} is not an element of F_{q}")));
    }
    let poly = PolyFq::new(g.iter().map(|&c| FqElem(c)).collect());
    if poly.is_zero() || !poly.is_monic() {
        return Err(Error::BadFamily("g must be monic".into()));
    }
    if poly.deg() == 0 || poly.deg() % 2 == 1 {
        return Err(Error::BadFamily(format!("g has degree {}, expected a positive even degree", poly.deg())));
    }
    if !poly.is_squarefree(field)? {
        return Err(Error::BadFamily("g is not squarefree".into()));
    }
    Ok(poly)
}

/// The moduli of a scan in enumeration order, produced lazily in chunks.
enum Moduli<'a> {
    Full { field: &'a FieldCtx, n: usize, next: u64, end: u64 },
    Sample { field: &'a FieldCtx, n: usize, left: u64, rng: ChaCha8Rng },
    Family { field: &'a FieldCtx, g: PolyFq, next: u32 },
}

impl Moduli<'_> {
    fn next_chunk(&mut self) -> Vec<PolyFq> {
        let mut out = Vec::new();
        match self {
            Moduli::Full { field, n, next, end } => {
                let q = field.q();
                while out.len() < CHUNK && *next < *end {
                    out.push(MonicIter::unrank(q, *n, *next));
                    *next += 1;
                }
                // squarefree filtering happens per worker
            }
            Moduli::Sample { field, n, left, rng } => {
                let q = field.q();
                while out.len() < CHUNK && *left > 0 {
                    let mut c: Vec<FqElem> = (0..*n).map(|_| FqElem(rng.gen_range(0..q))).collect();
                    c.push(FqElem::ONE);
                    let f = PolyFq::new(c);
                    if f.is_squarefree(field).unwrap_or(false) {
                        out.push(f);
                        *left -= 1;
                    }
                }
            }
            Moduli::Family { field, g, next } => {
                let q = field.q();
                while out.len() < CHUNK && *next < q {
                    let t = FqElem(*next);
                    *next += 1;
                    if !g.eval(t, field).is_zero() {
                        let lin = PolyFq::new(vec![field.neg(t), FqElem::ONE]);
                        out.push(g.mul(&lin, field));
                    }
                }
            }
        }
        out
    }
}

/// Classify one modulus into a census entry.
pub fn census_entry(field: &FieldCtx, f: &PolyFq, settings: ClassifySettings) -> Result<CensusEntry> {
    let ctx = CharCtx::new(field, f.clone())?;
    let weil = weil_poly_fast(&ctx)?;
    let (analysis, classification) = classify_all(&weil, settings)?;
    let record = make_record(field, f, &analysis, &classification);
    Ok(CensusEntry { record, weil, classification })
}

fn make_record(field: &FieldCtx, f: &PolyFq, a: &Analysis, c: &Classification) -> CensusRecord {
    let d = DensitySummary::from(&a.densities);
    CensusRecord {
        p: field.p(),
        e: field.e(),
        n: f.deg(),
        f_coeffs: f.coeffs().iter().map(|c| c.index()).collect(),
        p_coeffs: a.p.poly().coeffs().to_vec(),
        g: a.p.genus(),
        m0: a.report.m0,
        mpi: a.report.mpi,
        degenerate: a.report.degeneracy.degenerate,
        modulus: a.report.degeneracy.modulus,
        li_status: c.li.status,
        complete: c.complete.status,
        lower: c.lower.status,
        reversed: c.reversed.status,
        dens_pos: d.pos,
        dens_neg: d.neg,
        dens_zero: d.zero,
        density_mode: d.mode,
        seed: a.settings.seed,
    }
}

fn moduli<'a>(field: &'a FieldCtx, spec: &CensusSpec) -> Result<Moduli<'a>> {
    let q = field.q() as u64;
    Ok(match &spec.mode {
        ScanMode::Full => {
            let end = q
                .checked_pow(spec.n as u32)
                .filter(|&s| s <= FULL_SCAN_CAP)
                .ok_or_else(|| Error::TooLarge(format!("full scan of degree {} over F_{q}", spec.n)))?;
            Moduli::Full { field, n: spec.n, next: 0, end }
        }
        ScanMode::Sample { count, seed } => {
            Moduli::Sample { field, n: spec.n, left: *count, rng: ChaCha8Rng::seed_from_u64(*seed) }
        }
        ScanMode::Family { g } => {
            let g = family_base(field, g)?;
            if g.deg() + 1 != spec.n {
                return Err(Error::BadFamily(format!(
                    "g of degree {} gives moduli of degree {}, not {}",
                    g.deg(),
                    g.deg() + 1,
                    spec.n
                )));
            }
            Moduli::Family { field, g, next: 0 }
        }
    })
}

/// Validate a spec without scanning.
pub fn check_spec(spec: &CensusSpec) -> Result<()> {
    let field = field_and_check(spec)?;
    moduli(&field, spec).map(|_| ())
}

/// Run a scan, handing every entry to `sink` in enumeration order.
pub fn census_for_each(spec: &CensusSpec, mut sink: impl FnMut(CensusEntry) -> Result<()>) -> Result<Summary> {
    let field = field_and_check(spec)?;
    let mut moduli = moduli(&field, spec)?;
    let full = spec.mode == ScanMode::Full;
    let mut summary = Summary::default();
    loop {
        let chunk = moduli.next_chunk();
        if chunk.is_empty() {
            break;
        }
        let entries: Vec<Option<CensusEntry>> = chunk
            .par_iter()
            .map(|f| {
                if full && !f.is_squarefree(&field)? {
                    return Ok(None);
                }
                census_entry(&field, f, spec.settings).map(Some)
            })
            .collect::<Result<_>>()?;
        for e in entries.into_iter().flatten() {
            summary.add(&e.record);
            sink(e)?;
        }
    }
    Ok(summary)
}

/// Run a scan and keep the records.
pub fn census_scan(spec: &CensusSpec) -> Result<Census> {
    let mut records = Vec::new();
    let summary = census_for_each(spec, |e| {
        records.push(e.record);
        Ok(())
    })?;
    Ok(Census { records, summary })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn li_str(s: LiStatus) -> &'static str {
    match s {
        LiStatus::Fails => "fails",
        LiStatus::Unknown => "unknown",
    }
}

impl CensusRecord {
    /// Column values in [`COLUMNS`] order.
    pub fn to_row(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.e.to_string(),
            self.n.to_string(),
            join(&self.f_coeffs),
            join(&self.p_coeffs),
            self.g.to_string(),
            self.m0.to_string(),
            self.mpi.to_string(),
            self.degenerate.to_string(),
            self.modulus.to_string(),
            li_str(self.li_status).to_string(),
            self.complete.as_str().to_string(),
            self.lower.as_str().to_string(),
            self.reversed.as_str().to_string(),
            self.dens_pos.clone(),
            self.dens_neg.clone(),
            self.dens_zero.clone(),
            self.density_mode.clone(),
            self.seed.to_string(),
        ]
    }

    /// Parse a row in [`COLUMNS`] order; errors carry the column index.
    pub fn from_row(row: &[String]) -> std::result::Result<Self, (usize, String)> {
        if row.len() != COLUMNS.len() {
            return Err((row.len().min(COLUMNS.len() - 1), format!("expected {} fields, found {}", COLUMNS.len(), row.len())));
        }
        fn num<T: std::str::FromStr>(row: &[String], i: usize) -> std::result::Result<T, (usize, String)> {
            row[i].trim().parse().map_err(|_| (i, format!("invalid value {:?}", row[i])))
        }
        fn list<T: std::str::FromStr>(row: &[String], i: usize) -> std::result::Result<Vec<T>, (usize, String)> {
            let s = row[i].trim();
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split(';')
                .map(|t| t.trim().parse().map_err(|_| (i, format!("invalid coefficient {t:?}"))))
                .collect()
        }
        fn status(row: &[String], i: usize) -> std::result::Result<BiasStatus, (usize, String)> {
            match row[i].trim() {
                "yes" => Ok(BiasStatus::Yes),
                "no" => Ok(BiasStatus::No),
                "unknown" => Ok(BiasStatus::Unknown),
                s => Err((i, format!("invalid verdict {s:?}"))),
            }
        }
        let li_status = match row[10].trim() {
            "fails" => LiStatus::Fails,
            "unknown" => LiStatus::Unknown,
            s => return Err((10, format!("invalid LI status {s:?}"))),
        };
        Ok(CensusRecord {
            p: num(row, 0)?,
            e: num(row, 1)?,
            n: num(row, 2)?,
            f_coeffs: list(row, 3)?,
            p_coeffs: list(row, 4)?,
            g: num(row, 5)?,
            m0: num(row, 6)?,
            mpi: num(row, 7)?,
            degenerate: num(row, 8)?,
            modulus: num(row, 9)?,
            li_status,
            complete: status(row, 11)?,
            lower: status(row, 12)?,
            reversed: status(row, 13)?,
            dens_pos: row[14].clone(),
            dens_neg: row[15].clone(),
            dens_zero: row[16].clone(),
            density_mode: row[17].clone(),
            seed: num(row, 18)?,
        })
    }

    /// The record as a JSON object with numeric columns as numbers.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (col, v) in COLUMNS.iter().zip(self.to_row()) {
            let value = match *col {
                "p" | "e" | "n" | "g" | "m0" | "mpi" | "M" | "seed" => Value::Number(v.parse::<u64>().unwrap().into()),
                "degenerate" => Value::Bool(self.degenerate),
                _ => Value::String(v),
            };
            m.insert(col.to_string(), value);
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> std::result::Result<Self, (usize, String)> {
        let obj = v.as_object().ok_or((0, "record is not an object".to_string()))?;
        let mut row = Vec::with_capacity(COLUMNS.len());
        for (i, col) in COLUMNS.iter().enumerate() {
            let s = match obj.get(*col) {
                Some(Value::String(s)) => s.clone(),
                Some(Value::Number(n)) => n.to_string(),
                Some(Value::Bool(b)) => b.to_string(),
                Some(other) => return Err((i, format!("unexpected value {other}"))),
                None => return Err((i, "missing field".to_string())),
            };
            row.push(s);
        }
        Self::from_row(&row)
    }
}

fn parse_error(line: usize, (field, message): (usize, String)) -> Error {
    Error::Parse { line, field: COLUMNS[field].to_string(), message }
}

fn check_version(header: &CensusHeader) -> Result<()> {
    if header.tool_version != TOOL_VERSION {
        return Err(Error::Version { found: header.tool_version.clone(), expected: TOOL_VERSION.to_string() });
    }
    Ok(())
}

/// Streaming CSV writer: a `# {header json}` comment line, the column row, then records.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(mut w: W, header: &CensusHeader) -> Result<Self> {
        writeln!(w, "# {}", serde_json::to_string(header).expect("header serializes"))?;
        let mut inner = csv::Writer::from_writer(w);
        inner.write_record(COLUMNS).map_err(csv_io)?;
        Ok(CsvSink { inner })
    }

    pub fn write(&mut self, r: &CensusRecord) -> Result<()> {
        self.inner.write_record(r.to_row()).map_err(csv_io)
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Streaming JSON-lines writer: the header object, then one object per record.
pub struct JsonSink<W: Write> {
    inner: W,
}

impl<W: Write> JsonSink<W> {
    pub fn new(mut w: W, header: &CensusHeader) -> Result<Self> {
        writeln!(w, "{}", serde_json::to_string(header).expect("header serializes"))?;
        Ok(JsonSink { inner: w })
    }

    pub fn write(&mut self, r: &CensusRecord) -> Result<()> {
        writeln!(self.inner, "{}", r.to_json())?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv<W: Write>(w: W, header: &CensusHeader, records: &[CensusRecord]) -> Result<()> {
    let mut sink = CsvSink::new(w, header)?;
    for r in records {
        sink.write(r)?;
    }
    sink.finish()
}

pub fn write_json<W: Write>(w: W, header: &CensusHeader, records: &[CensusRecord]) -> Result<()> {
    let mut sink = JsonSink::new(w, header)?;
    for r in records {
        sink.write(r)?;
    }
    sink.finish()
}

fn read_header(line: Option<std::io::Result<String>>, strip: &str) -> Result<CensusHeader> {
    let line = line.transpose()?.unwrap_or_default();
    let body = line.strip_prefix(strip).ok_or_else(|| Error::Parse {
        line: 1,
        field: "header".into(),
        message: "missing version header".into(),
    })?;
    let header: CensusHeader = serde_json::from_str(body).map_err(|e| Error::Parse {
        line: 1,
        field: "header".into(),
        message: e.to_string(),
    })?;
    check_version(&header)?;
    Ok(header)
}

/// Read a CSV census. Line numbers in errors count from 1 at the header comment.
pub fn read_csv<R: BufRead>(r: R) -> Result<(CensusHeader, Vec<CensusRecord>)> {
    let mut lines = r.lines();
    let header = read_header(lines.next(), "# ")?;
    let columns = lines.next().transpose()?.unwrap_or_default();
    if columns.trim() != COLUMNS.join(",") {
        return Err(Error::Parse { line: 2, field: "columns".into(), message: format!("unexpected column row {columns:?}") });
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 3;
        if line.trim().is_empty() {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
        let row = reader
            .records()
            .next()
            .transpose()
            .map_err(|e| Error::Parse { line: lineno, field: "row".into(), message: e.to_string() })?
            .unwrap_or_default();
        let row: Vec<String> = row.iter().map(str::to_string).collect();
        records.push(CensusRecord::from_row(&row).map_err(|e| parse_error(lineno, e))?);
    }
    Ok((header, records))
}

/// Read a JSON-lines census.
pub fn read_json<R: BufRead>(r: R) -> Result<(CensusHeader, Vec<CensusRecord>)> {
    let mut lines = r.lines();
    let header = read_header(lines.next(), "")?;
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&line)
            .map_err(|e| Error::Parse { line: lineno, field: "row".into(), message: e.to_string() })?;
        records.push(CensusRecord::from_json(&v).map_err(|e| parse_error(lineno, e))?);
    }
    Ok((header, records))
}
