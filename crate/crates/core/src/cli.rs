//! The `conespan` command-line harness.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a mathematical
//! invariant is violated (a machine-readable JSON record goes to stderr).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::scalar::is_prime_u64;
use crate::algebra::{binomial, Scalar};
use crate::error::Error;
use crate::geometry::{
    moment_points, passes_genericity_screen, random_points, PointConfiguration, DEFAULT_BOUND,
};
use crate::linalg::{random_prime, rank_exact, rank_mod_p};
use crate::spans::report::sample_rng;
use crate::spans::{
    apply_point_functional, build_m, coefficient_span_dimension, cone_span_dimension_sampled_with,
    conjectured_dimension, expected_vanishing_dimension, lemma2_witness, m_matrix_dimension,
    sample_cone, vanishing_dimension, FieldMode, SamplingOptions, SpanReport, WitnessMethod,
    DEFAULT_SATURATION,
};

/// Overrides the first prime used by `--field mod`.
pub const PRIME_ENV: &str = "CONESPAN_PRIME";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Largest `--dmax` accepted by `conjecture` with exact arithmetic.
pub const EXACT_DMAX: usize = 13;

#[derive(Parser, Debug)]
#[command(
    name = "conespan",
    version,
    about = "Exact span dimensions of cone polynomials through points in projective space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of the span V(n,d) of cone polynomials.
    Dim {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_SATURATION)]
        saturation: usize,
        /// Read the configuration from a JSON file instead of generating it.
        #[arg(long)]
        points: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare dim V(2,d) with the conjectured three-case formula for d = 2..=dmax.
    Conjecture {
        #[arg(long)]
        dmax: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::MMatrix)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the point functional to random cone polynomials.
    Lemma1 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        points: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the moment-curve witness by every applicable method.
    Lemma2 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build M(d), check its symmetry type and report its rank.
    Mmatrix {
        #[arg(long)]
        d: usize,
        /// Comma-separated subset of symmetry,rank,parity,sampling.
        #[arg(long, value_delimiter = ',', default_value = "symmetry,rank,parity")]
        checks: Vec<Check>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a configuration as JSON, or inspect one from a file.
    Points {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, required_unless_present = "inspect")]
        d: Option<usize>,
        #[arg(long)]
        inspect: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    /// Seeded random generic points (the default).
    #[arg(long, conflicts_with = "moment")]
    pub random: bool,
    /// Use the moment-curve points (1, i, i^2, ..., i^n) instead.
    #[arg(long)]
    pub moment: bool,
    #[arg(long, value_enum, default_value_t = FieldArg::Exact)]
    pub field: FieldArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Sampling,
    MMatrix,
    Coeff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Exact,
    Mod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Symmetry,
    Rank,
    Parity,
    Sampling,
}

/// What a subcommand produced before formatting.
struct Rendered {
    json: Value,
    csv: String,
    text: String,
    violation: Option<Value>,
}

enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(detail) => Failure::Violation(json!({
                "violation": "invariant",
                "detail": detail,
            })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (format, out) = output_target(&cli.command);
    match execute(&cli.command) {
        Ok(rendered) => {
            let body = match format {
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&rendered.json).expect("values serialize");
                    s.push('\n');
                    s
                }
                Format::Csv => rendered.csv,
                Format::Text => rendered.text,
            };
            if let Err(e) = emit(&body, out.as_ref(), stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            match rendered.violation {
                Some(v) => {
                    let _ = writeln!(stderr, "{v}");
                    EXIT_VIOLATION
                }
                None => EXIT_OK,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Violation(v)) => {
            let _ = writeln!(stderr, "{v}");
            EXIT_VIOLATION
        }
    }
}

fn emit(body: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn output_target(cmd: &Command) -> (Format, Option<PathBuf>) {
    match cmd {
        Command::Dim { common, .. }
        | Command::Conjecture { common, .. }
        | Command::Lemma1 { common, .. }
        | Command::Mmatrix { common, .. }
        | Command::Points { common, .. } => (common.format, common.out.clone()),
        Command::Lemma2 { format, out, .. } => (*format, out.clone()),
    }
}

fn execute(cmd: &Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Dim {
            n,
            d,
            method,
            saturation,
            points,
            common,
        } => cmd_dim(*n, *d, *method, *saturation, points.as_ref(), common),
        Command::Conjecture {
            dmax,
            method,
            common,
        } => cmd_conjecture(*dmax, *method, common),
        Command::Lemma1 {
            n,
            d,
            trials,
            points,
            common,
        } => cmd_lemma1(*n, *d, *trials, points.as_ref(), common),
        Command::Lemma2 { n, d, .. } => cmd_lemma2(*d, *n),
        Command::Mmatrix { d, checks, common } => cmd_mmatrix(*d, checks, common),
        Command::Points {
            n,
            d,
            inspect,
            common,
        } => cmd_points(*n, *d, inspect.as_ref(), common),
    }
}

/// The two primes used by `--field mod`: random 61-bit primes drawn from the
/// seed, the first replaced by `$CONESPAN_PRIME` when set.
pub fn modular_primes(seed: u64) -> Result<[u64; 2], String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let first = match std::env::var(PRIME_ENV) {
        Ok(v) => {
            let p: u64 = v
                .trim()
                .parse()
                .map_err(|_| format!("{PRIME_ENV}={v:?} is not an integer"))?;
            if !(3..1 << 63).contains(&p) || !is_prime_u64(p) {
                return Err(format!("{PRIME_ENV}={p} is not an odd prime below 2^63"));
            }
            p
        }
        Err(_) => random_prime(&mut rng, 61),
    };
    let mut second = random_prime(&mut rng, 61);
    while second == first {
        second = random_prime(&mut rng, 61);
    }
    Ok([first, second])
}

fn field_mode(common: &Common) -> Result<FieldMode, Failure> {
    match common.field {
        FieldArg::Exact => Ok(FieldMode::Exact),
        FieldArg::Mod => modular_primes(common.seed)
            .map(FieldMode::Modular)
            .map_err(Failure::Usage),
    }
}

fn configuration(
    n: usize,
    d: usize,
    seed: u64,
    file: Option<&PathBuf>,
    common: &Common,
) -> Result<PointConfiguration, Failure> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let c = PointConfiguration::from_json(&text)?;
        if c.n() != n || c.d() != d {
            return Err(Failure::Usage(format!(
                "{} holds {} points in P^{}, expected {d} in P^{n}",
                path.display(),
                c.d(),
                c.n()
            )));
        }
        return Ok(c);
    }
    if n < 2 || d < 1 {
        return Err(Failure::Usage(format!(
            "need n >= 2 and d >= 1 (got n={n}, d={d})"
        )));
    }
    Ok(if common.moment {
        moment_points(d, n)?
    } else {
        random_points(d, n, seed, common.bound)?
    })
}

fn report_csv(reports: &[SpanReport]) -> String {
    let mut s = String::from("n,d,method,dimension,certified,expected,samples_used\n");
    for r in reports {
        let method = serde_json::to_value(r.method).expect("enum serializes");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.n,
            r.d,
            method.as_str().unwrap_or_default(),
            r.dimension,
            r.certified,
            r.expected.map(|e| e.to_string()).unwrap_or_default(),
            r.samples_used
        );
    }
    s
}

fn cmd_dim(
    n: usize,
    d: usize,
    method: MethodArg,
    saturation: usize,
    points: Option<&PathBuf>,
    common: &Common,
) -> Result<Rendered, Failure> {
    let s = configuration(n, d, common.seed, points, common)?;
    let field = field_mode(common)?;
    let method = match method {
        MethodArg::Auto if n == 2 => MethodArg::MMatrix,
        MethodArg::Auto => MethodArg::Sampling,
        m => m,
    };
    let report = match method {
        MethodArg::MMatrix => m_matrix_dimension(&s, field)?,
        MethodArg::Coeff => coefficient_span_dimension(&s, field)?,
        _ => cone_span_dimension_sampled_with(
            &s,
            d,
            &SamplingOptions {
                seed: common.seed,
                saturation,
                bound: common.bound,
                field,
            },
        )?,
    };
    let text = format!(
        "dim V({n},{d}) = {} via {:?} ({}); C(d+n,n)-d = {}; expected {}; proven bound {}\n",
        report.dimension,
        report.method,
        if report.certified {
            "certified"
        } else {
            "not certified"
        },
        expected_vanishing_dimension(n, d),
        report
            .expected
            .map(|e| e.to_string())
            .unwrap_or_else(|| "n/a".into()),
        report.upper_bound(),
    );
    Ok(Rendered {
        json: serde_json::to_value(&report).expect("report serializes"),
        csv: report_csv(std::slice::from_ref(&report)),
        text,
        violation: None,
    })
}

#[derive(Serialize)]
struct ConjectureRow {
    d: usize,
    computed: usize,
    conjectured: usize,
    #[serde(rename = "match")]
    matches: bool,
    certified: bool,
}

fn cmd_conjecture(dmax: usize, method: MethodArg, common: &Common) -> Result<Rendered, Failure> {
    if dmax < 2 {
        return Err(Failure::Usage(format!(
            "--dmax must be at least 2, got {dmax}"
        )));
    }
    if common.field == FieldArg::Exact && dmax > EXACT_DMAX {
        return Err(Failure::Usage(format!(
            "--dmax {dmax} exceeds {EXACT_DMAX} in exact mode; use --field mod"
        )));
    }
    let field = field_mode(common)?;
    let rows: Vec<ConjectureRow> = (2..=dmax)
        .into_par_iter()
        .map(|d| -> Result<ConjectureRow, Failure> {
            let seed = common.seed.wrapping_add(d as u64);
            let s = configuration(2, d, seed, None, common)?;
            let report = match method {
                MethodArg::Sampling => cone_span_dimension_sampled_with(
                    &s,
                    d,
                    &SamplingOptions {
                        seed,
                        bound: common.bound,
                        field,
                        ..SamplingOptions::default()
                    },
                )?,
                MethodArg::Coeff => coefficient_span_dimension(&s, field)?,
                _ => m_matrix_dimension(&s, field)?,
            };
            let conjectured = conjectured_dimension(d);
            Ok(ConjectureRow {
                d,
                computed: report.dimension,
                conjectured,
                matches: report.dimension == conjectured,
                certified: report.certified,
            })
        })
        .collect::<Result<_, _>>()?;

    let mismatches: Vec<usize> = rows.iter().filter(|r| !r.matches).map(|r| r.d).collect();
    let mut csv = String::from("d,computed,conjectured,match,certified\n");
    let mut text = format!(
        "{:>3} {:>9} {:>12} {:>6}\n",
        "d", "computed", "conjectured", "match"
    );
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.d, r.computed, r.conjectured, r.matches, r.certified
        );
        let _ = writeln!(
            text,
            "{:>3} {:>9} {:>12} {:>6}",
            r.d,
            r.computed,
            r.conjectured,
            if r.matches { "yes" } else { "NO" }
        );
    }
    let violation = (!mismatches.is_empty()).then(|| {
        json!({
            "violation": "conjecture_mismatch",
            "d": mismatches,
        })
    });
    Ok(Rendered {
        json: json!({
            "n": 2,
            "dmax": dmax,
            "configuration": if common.moment { "moment" } else { "random" },
            "seed": common.seed,
            "all_match": mismatches.is_empty(),
            "rows": rows,
        }),
        csv,
        text,
        violation,
    })
}

fn cmd_lemma1(
    n: usize,
    d: usize,
    trials: usize,
    points: Option<&PathBuf>,
    common: &Common,
) -> Result<Rendered, Failure> {
    let s = configuration(n, d, common.seed, points, common)?;
    let values = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample_rng(common.seed, k as u64);
            let cone = sample_cone(&s, &mut rng, common.bound)?;
            apply_point_functional(&s, &cone.poly)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let zeros = values.iter().filter(|v| v.is_zero()).count();
    let odd = d % 2 == 1;
    let violation = (odd && zeros != trials).then(|| {
        let first = values.iter().position(|v| !v.is_zero()).unwrap_or_default();
        json!({
            "violation": "lemma1_nonzero",
            "d": d,
            "n": n,
            "trial": first,
            "value": values[first].to_string(),
        })
    });
    let json = json!({
        "n": n,
        "d": d,
        "trials": trials,
        "zeros": zeros,
        "nonzero": trials - zeros,
        "expect_zero": odd,
    });
    Ok(Rendered {
        csv: format!(
            "n,d,trials,zeros,nonzero,expect_zero\n{n},{d},{trials},{zeros},{},{odd}\n",
            trials - zeros
        ),
        text: format!(
            "point functional on {trials} cone polynomials (n={n}, d={d}): {zeros}/{trials} exact zeros\n"
        ),
        json,
        violation,
    })
}

fn cmd_lemma2(d: usize, n: usize) -> Result<Rendered, Failure> {
    let methods: Vec<WitnessMethod> = WitnessMethod::ALL
        .into_iter()
        .filter(|m| {
            *m != WitnessMethod::ClosedForm || d <= crate::spans::witness::CLOSED_FORM_LIMIT
        })
        .filter(|m| *m != WitnessMethod::Permanent || d <= crate::linalg::permanent::RYSER_LIMIT)
        .collect();
    let mut values = serde_json::Map::new();
    let mut computed = Vec::new();
    for m in &methods {
        let v = lemma2_witness(d, n, *m)?;
        values.insert(m.name().into(), Value::String(v.to_string()));
        computed.push(v);
    }
    let agree = computed.windows(2).all(|w| w[0] == w[1]);
    let positive = computed
        .iter()
        .all(|v| *v > num_rational::BigRational::from_i64(0));
    let violation = (!agree || !positive).then(|| {
        json!({
            "violation": if agree { "lemma2_not_positive" } else { "lemma2_disagreement" },
            "d": d,
            "n": n,
            "values": values.clone(),
        })
    });
    let mut csv = String::from("method,value\n");
    let mut text = format!("witness value for d={d}, n={n}:\n");
    for (m, v) in methods.iter().zip(&computed) {
        let _ = writeln!(csv, "{},{v}", m.name());
        let _ = writeln!(text, "  {:<12} {v}", m.name());
    }
    let _ = writeln!(text, "agree: {agree}, positive: {positive}");
    Ok(Rendered {
        json: json!({
            "d": d,
            "n": n,
            "values": values,
            "agree": agree,
            "positive": positive,
        }),
        csv,
        text,
        violation,
    })
}

fn cmd_mmatrix(d: usize, checks: &[Check], common: &Common) -> Result<Rendered, Failure> {
    let s = configuration(2, d, common.seed, None, common)?;
    let field = field_mode(common)?;
    let m = build_m(&s)?;
    let mut out = serde_json::Map::new();
    out.insert("d".into(), json!(d));
    out.insert("size".into(), json!(m.rows()));
    let mut problems = Vec::new();
    let mut text = format!("M({d}) is {0}x{0}\n", m.rows());

    let wants = |c: Check| checks.contains(&c);
    if wants(Check::Symmetry) {
        let odd = d % 2 == 1;
        let ok = m.is_symmetric_with_sign(odd);
        let kind = if odd { "skew-symmetric" } else { "symmetric" };
        out.insert("symmetry".into(), json!(kind));
        out.insert("symmetry_ok".into(), json!(ok));
        let _ = writeln!(text, "transpose = (-1)^d M: {ok} ({kind})");
        if !ok {
            problems.push(format!("M({d}) is not {kind}"));
        }
    }
    let rank = if wants(Check::Rank) || wants(Check::Parity) || wants(Check::Sampling) {
        let r = match field {
            FieldMode::Exact => rank_exact(&m),
            FieldMode::Modular([p, q]) => rank_mod_p(&m, p)?.max(rank_mod_p(&m, q)?),
        };
        out.insert("rank".into(), json!(r));
        out.insert("conjectured".into(), json!(conjectured_dimension(d)));
        let _ = writeln!(text, "rank: {r} (conjectured {})", conjectured_dimension(d));
        Some(r)
    } else {
        None
    };
    if let (true, Some(r)) = (wants(Check::Parity), rank) {
        let parity = if r % 2 == 0 { "even" } else { "odd" };
        out.insert("rank_parity".into(), json!(parity));
        let _ = writeln!(text, "rank parity: {parity}");
        if d % 2 == 1 && r % 2 == 1 {
            problems.push(format!("odd rank {r} for skew-symmetric M({d})"));
        }
    }
    if let (true, Some(r)) = (wants(Check::Sampling), rank) {
        let sampled = cone_span_dimension_sampled_with(
            &s,
            d,
            &SamplingOptions {
                seed: common.seed,
                bound: common.bound,
                field,
                ..SamplingOptions::default()
            },
        )?;
        out.insert("sampled_dimension".into(), json!(sampled.dimension));
        let _ = writeln!(text, "sampled dimension: {}", sampled.dimension);
        if sampled.dimension != r {
            problems.push(format!(
                "rank {r} differs from sampled dimension {}",
                sampled.dimension
            ));
        }
    }
    let mut csv = String::from("key,value\n");
    for (k, v) in &out {
        let _ = writeln!(csv, "{k},{}", v.to_string().trim_matches('"'));
    }
    let violation = (!problems.is_empty()).then(|| {
        json!({
            "violation": "mmatrix",
            "d": d,
            "detail": problems,
        })
    });
    Ok(Rendered {
        json: Value::Object(out),
        csv,
        text,
        violation,
    })
}

fn cmd_points(
    n: usize,
    d: Option<usize>,
    inspect: Option<&PathBuf>,
    common: &Common,
) -> Result<Rendered, Failure> {
    let s = match (inspect, d) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            PointConfiguration::from_json(&text)?
        }
        (None, Some(d)) => configuration(n, d, common.seed, None, common)?,
        (None, None) => return Err(Failure::Usage("--d or --inspect is required".into())),
    };
    let coords = s.integer_coords()?;
    let mut csv = String::new();
    let mut text = String::new();
    for p in &coords {
        let row: Vec<String> = p.iter().map(i64::to_string).collect();
        let _ = writeln!(csv, "{}", row.join(","));
        let _ = writeln!(text, "({})", row.join(" : "));
    }
    let json = if inspect.is_some() {
        let vd = vanishing_dimension(&s, s.d());
        let expected = binomial(s.d() + s.n(), s.n()) - s.d();
        let _ = writeln!(
            text,
            "vanishing dimension {vd} (generic value {expected}); generic: {}",
            passes_genericity_screen(&s)
        );
        json!({
            "n": s.n(),
            "points": coords,
            "d": s.d(),
            "vanishing_dimension": vd,
            "expected_vanishing_dimension": expected,
            "generic": vd == expected,
        })
    } else {
        json!({ "n": s.n(), "points": coords })
    };
    Ok(Rendered {
        json,
        csv,
        text,
        violation: None,
    })
}
