use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqrace::algebra::{FieldCtx, PolyFq, PolyInt};
use fqrace::bias::{delta_exact, moments_from, power_sum_at, DensityRequest, Symmetry};
use fqrace::census::{census_for_each, check_spec, CensusSpec, CsvSink, JsonSink};
use fqrace::charsums::CharCtx;
use fqrace::classify::{classify_all, ClassifySettings, DensitySummary, DEFAULT_PRIME_BOUND, DEFAULT_SAMPLES};
use fqrace::spectral::{DEFAULT_HEIGHT, DEFAULT_PRECISION};
use fqrace::sympcount::symplectic_census;
use fqrace::zeta::weil_poly_fast;
use fqrace::Error;
use serde_json::{json, Value};

mod parse;
mod verify;

#[derive(Parser)]
#[command(name = "fqrace", version, about = "Quadratic-character prime races over F_q[x]")]
struct Cli {
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModulusArgs {
    /// Characteristic (odd prime).
    #[arg(long)]
    p: u32,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Coefficients of f, ascending degree, e.g. 5,0,0,2,0,0,1 or [1,2],0,1.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(Args, Clone)]
struct SettingsArgs {
    /// Height bound for integer relations among angles.
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    height: i64,
    /// Working precision in bits for angle enclosures.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Largest prime used for Frobenius cycle types.
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    /// Sample count for non-periodic density estimates.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    /// Density estimator when Δ is not provably periodic.
    #[arg(long, value_enum, default_value_t = Estimator::Auto)]
    density: Estimator,
    /// Seed for Monte Carlo density estimates.
    #[arg(long, default_value_t = 0)]
    density_seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    Auto,
    Empirical,
    Montecarlo,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl SettingsArgs {
    fn settings(&self) -> ClassifySettings {
        ClassifySettings {
            height: self.height,
            precision: self.precision,
            prime_bound: self.prime_bound,
            samples: self.samples,
            request: match self.density {
                Estimator::Auto => DensityRequest::Auto,
                Estimator::Empirical => DensityRequest::Empirical,
                Estimator::Montecarlo => DensityRequest::MonteCarlo,
            },
            seed: self.density_seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print L(u), P_f, the spectrum, the LI verdict and the bias verdicts as JSON.
    Analyze {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Exact prime race counts up to degree N next to −Δ_f(n).
    Race {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        n: usize,
    },
    /// Classify every modulus in H_n(F_q), a random sample, or a family g(x)(x − t).
    Census {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Degree of the moduli (implied by --family).
        #[arg(long, required_unless_present = "family")]
        n: Option<usize>,
        /// Number of random moduli instead of a full scan.
        #[arg(long, requires = "seed", conflicts_with = "family")]
        sample: Option<u64>,
        /// Seed for --sample.
        #[arg(long)]
        seed: Option<u64>,
        /// Coefficients of a squarefree monic g of even degree.
        #[arg(long, allow_hyphen_values = true)]
        family: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Brute-force counts over q̄-symplectic polynomials in F_ℓ[T].
    Sympcount {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        qbar: u64,
        /// Write the long-format CSV table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact values of Δ_f(n) for n = 1..=N.
    Delta {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        n_max: u64,
    },
    /// Run the built-in regression suite.
    Verify,
}

enum Failure {
    Usage(String),
    Verify(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPrime(_)
            | Error::EvenCharacteristic
            | Error::TooLarge(_)
            | Error::ZeroPolynomial
            | Error::DegreeCap(..)
            | Error::InvalidInput(_)
            | Error::NotSymplectic
            | Error::BadFamily(_)
            | Error::BadParams(_)
            | Error::TooFewSamples { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool");
    }
    let result = match cli.command {
        Command::Analyze { modulus, settings } => analyze(&modulus, &settings),
        Command::Race { modulus, n } => race(&modulus, n),
        Command::Census { p, e, n, sample, seed, family, out, format, settings } => {
            census(p, e, n, sample, seed, family, out, format, &settings)
        }
        Command::Sympcount { l, g, qbar, out } => sympcount(l, g, qbar, out),
        Command::Delta { modulus, n_max } => delta(&modulus, n_max),
        Command::Verify => verify::run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn field_and_modulus(m: &ModulusArgs) -> Result<(FieldCtx, PolyFq), Failure> {
    let field = FieldCtx::new(m.p, m.e)?;
    let f = parse::parse_poly(&field, &m.f).map_err(Failure::Usage)?;
    // validates monic, nonconstant and squarefree
    CharCtx::new(&field, f.clone())?;
    Ok((field, f))
}

fn coeff_strings(c: &[num_bigint::BigInt]) -> Vec<String> {
    c.iter().map(|x| x.to_string()).collect()
}

fn print_json(v: &Value) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure::Runtime(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn symmetry_json(s: &Symmetry) -> Value {
    match s {
        Symmetry::Symmetric => json!({ "status": "symmetric" }),
        Symmetry::Asymmetric(r) => json!({ "status": "asymmetric", "relation": r.to_string(), "kappa": r.kappa() }),
        Symmetry::Unknown => json!({ "status": "unknown" }),
    }
}

fn analyze(m: &ModulusArgs, s: &SettingsArgs) -> CmdResult {
    let (field, f) = field_and_modulus(m)?;
    let ctx = CharCtx::new(&field, f.clone())?;
    let weil = weil_poly_fast(&ctx)?;
    let z = weil.zeta_numerator();
    let l = if f.deg() % 2 == 0 { PolyInt::from_i64(&[1, -1]).mul(&z) } else { z.clone() };
    let (a, c) = classify_all(&weil, s.settings())?;
    let r = &a.report;
    let angles: Vec<Value> = r
        .angles
        .iter()
        .map(|t| {
            json!({
                "theta": t.mid_f64(),
                "multiplicity": t.multiplicity,
                "exact": t.exact.map(|(k, d)| format!("{k}π/{d}")),
            })
        })
        .collect();
    let mo = moments_from(r);
    let out = json!({
        "field": {
            "p": field.p(),
            "e": field.e(),
            "q": field.q(),
            "modulus": field.modulus(),
        },
        "f": parse::format_poly(&field, &f),
        "L": coeff_strings(l.coeffs()),
        "zeta_numerator": coeff_strings(z.coeffs()),
        "weil_poly": coeff_strings(weil.poly().coeffs()),
        "genus": weil.genus(),
        "spectral": {
            "m0": r.m0,
            "mpi": r.mpi,
            "reduced": coeff_strings(r.reduced.coeffs()),
            "angles": angles,
            "degeneracy": r.degeneracy,
            "precision": r.precision,
        },
        "li": c.li,
        "complete": c.complete,
        "lower_order": c.lower,
        "reversed": c.reversed,
        "densities": DensitySummary::from(&a.densities),
        "zero_set": {
            "density": a.zeros.dens_zero.to_string(),
            "modulus": a.zeros.modulus,
            "classes": a.zeros.classes,
        },
        "moments": {
            "mean": mo.mean.to_string(),
            "variance": mo.variance.to_string(),
            "support": [mo.support.0, mo.support.1],
        },
        "symmetry": symmetry_json(&a.symmetry),
    });
    print_json(&out)
}

fn race(m: &ModulusArgs, n: usize) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let (field, f) = field_and_modulus(m)?;
    let ctx = CharCtx::new(&field, f)?;
    let weil = weil_poly_fast(&ctx)?;
    let mut out = io::stdout().lock();
    writeln!(out, "n\tN+\tN-\tn(N+-N-)\tc_n-correction\tPi\t-Delta\tPi+Delta")?;
    let mut all_ok = true;
    for k in 1..=n {
        let rc = ctx.prime_race_count(k)?;
        let t = power_sum_at(&weil, k as u64);
        let c_n: i64 = -i64::try_from(t).map_err(|e| Failure::Runtime(e.to_string()))? - ctx.eps();
        let predicted = c_n - ctx.prime_power_correction(k)?;
        let actual = k as i64 * rc.difference();
        all_ok &= predicted == actual;
        let d = delta_exact(&weil, k as u64).to_f64();
        writeln!(
            out,
            "{k}\t{}\t{}\t{actual}\t{predicted}\t{:.9}\t{:.9}\t{:.3e}",
            rc.n_plus,
            rc.n_minus,
            rc.pi_f64(),
            -d,
            rc.pi_f64() + d
        )?;
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Verify("race counts disagree with the spectral decomposition".into()))
    }
}

fn delta(m: &ModulusArgs, n_max: u64) -> CmdResult {
    let (field, f) = field_and_modulus(m)?;
    let ctx = CharCtx::new(&field, f)?;
    let weil = weil_poly_fast(&ctx)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "n\tDelta\tfloat")?;
    for n in 1..=n_max {
        let d = delta_exact(&weil, n);
        writeln!(out, "{n}\t{d}\t{:.12}", d.to_f64())?;
    }
    out.flush()?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn census(
    p: u32,
    e: u32,
    n: Option<usize>,
    sample: Option<u64>,
    seed: Option<u64>,
    family: Option<String>,
    out: PathBuf,
    format: Format,
    s: &SettingsArgs,
) -> CmdResult {
    let field = FieldCtx::new(p, e)?;
    let mut spec = match (&family, sample) {
        (Some(g), _) => {
            let g = parse::parse_coeffs(&field, g).map_err(Failure::Usage)?;
            let spec = CensusSpec::family(p, e, g.iter().map(|c| c.index()).collect());
            if n.is_some_and(|n| n != spec.n) {
                return Err(Failure::Usage(format!("--n disagrees with the family degree {}", spec.n)));
            }
            spec
        }
        (None, Some(count)) => CensusSpec::sample(p, e, n.unwrap_or(0), count, seed.unwrap_or(0)),
        (None, None) => CensusSpec::full(p, e, n.unwrap_or(0)),
    };
    spec.settings = s.settings();
    if spec.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    check_spec(&spec)?;
    let file = File::create(&out).map_err(|err| Failure::Usage(format!("cannot create {}: {err}", out.display())))?;
    let writer = BufWriter::new(file);
    let header = spec.header();
    let summary = match format {
        Format::Csv => {
            let mut sink = CsvSink::new(writer, &header)?;
            let summary = census_for_each(&spec, |entry| sink.write(&entry.record))?;
            sink.finish()?;
            summary
        }
        Format::Json => {
            let mut sink = JsonSink::new(writer, &header)?;
            let summary = census_for_each(&spec, |entry| sink.write(&entry.record))?;
            sink.finish()?;
            summary
        }
    };
    print_json(&json!({
        "out": out.display().to_string(),
        "q": field.q(),
        "n": spec.n,
        "summary": summary,
        "li_failure_fraction": summary.li_failure_fraction(),
    }))
}

fn sympcount(l: u64, g: usize, qbar: u64, out: Option<PathBuf>) -> CmdResult {
    let table = symplectic_census(l, g, qbar)?;
    if let Some(path) = out {
        let file = File::create(&path).map_err(|err| Failure::Usage(format!("cannot create {}: {err}", path.display())))?;
        table.write_csv(BufWriter::new(file))?;
    }
    print_json(&serde_json::to_value(&table).map_err(|e| Failure::Runtime(e.to_string()))?)
}
