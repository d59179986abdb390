//! The `ecsum` command line.
//!
//! ```text
//! ecsum add   --curve Q,a=0,b=1 --points "(0,1);(0,-1)"
//! ecsum sum3  --curve Fp:5,a=1,b=1 --points "(0,1);(2,1);(4,2)" --json
//! ecsum sumn  --input sum.json [--fallback]
//! ecsum check assoc --curve Fp:10007 --trials 10000 --seed 7
//! ecsum prove theorem2 --json
//! ```
//!
//! Exit status is 0 on success, 1 when a property or identity fails and 2
//! on usage or input errors, including non-generic inputs.

use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::identity::{prove, ProofTarget, ProveOptions, MERSENNE_61};
use crate::multisum::{cofactors, iterated_sum, multisum_with_cofactors};
use crate::suites::{
    assoc_suite, multisum_suite, sum3_suite, vanishing_suite, PointSource, SuiteReport,
};
use crate::sum3::{sum3_symmetric, triple_coeffs};
use crate::wire::{parse_curve_spec, parse_points, PointJson, SumInput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ecsum",
    version,
    about = "Exact sums of points on elliptic curves"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// `Q` or `Fp:<prime>`, optionally followed by `,a=<val>,b=<val>`
    #[arg(long, global = true)]
    curve: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials for `check` (per point count for multisum and vanishing) and `prove` fallbacks
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Add two points with the chord-tangent law
    Add {
        #[arg(long)]
        points: String,
    },
    /// Sum three points with the symmetric closed form
    Sum3 {
        #[arg(long)]
        points: String,
    },
    /// Sum n points with the cofactor formulas
    Sumn {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        points: Option<String>,
        /// JSON file `{"curve": {...}, "points": [...]}`
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        /// Use the left fold when the closed form does not apply
        #[arg(long)]
        fallback: bool,
    },
    /// Run a seeded randomized property suite
    Check {
        #[arg(value_enum)]
        suite: SuiteKind,
        /// Run over each of these prime fields with random curves
        #[arg(long, value_delimiter = ',', conflicts_with = "curve")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Check a built-in identity symbolically
    Prove {
        /// eq2 | lemma | theorem2 | theorem2_x | theorem2_y | detm3 | detm:<n>
        identity: String,
        /// Expand without the curve relations y_i^2 = x_i^3 + a x_i + b
        #[arg(long, conflicts_with = "relations")]
        no_relations: bool,
        /// Force the curve relations on
        #[arg(long)]
        relations: bool,
        #[arg(long, default_value_t = 30_000)]
        timeout_ms: u64,
        #[arg(long, default_value_t = MERSENNE_61)]
        prime: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteKind {
    Assoc,
    Sum3,
    Multisum,
    Vanishing,
}

const DEFAULT_CHECK_TRIALS: usize = 1000;
const DEFAULT_FIELD: &str = "Fp:10007";

/// What a command produced: an exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Runs one invocation. `args` excludes the program name.
pub fn run_command<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("ecsum".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.global.json;
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => error_outcome(&e, json),
    }
}

fn error_outcome(e: &Error, json: bool) -> Outcome {
    let stderr = if json {
        let mut v = json!({ "error": e.to_string() });
        if let Error::NonGeneric(h) = e {
            v["hypothesis"] = json!(h.tag());
        }
        format!("{v}\n")
    } else {
        format!("error: {e}\n")
    };
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr,
    }
}

fn render<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        format!("{}\n", serde_json::to_string(value).expect("serializable"))
    } else {
        text()
    }
}

fn required_curve(global: &GlobalArgs) -> Result<Curve> {
    let desc = global
        .curve
        .as_deref()
        .ok_or_else(|| Error::Parse("--curve <field>,a=<val>,b=<val> is required".into()))?;
    parse_curve_spec(desc)?.require_curve()
}

fn points_on(curve: &Curve, text: &str, expected: Option<usize>) -> Result<Vec<Point>> {
    let pts = parse_points(text, curve.field())?;
    if let Some(n) = expected {
        if pts.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} points, got {}",
                pts.len()
            )));
        }
    }
    for p in &pts {
        curve.ensure_on_curve(p)?;
    }
    Ok(pts)
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    match cli.command {
        Command::Add { points } => {
            let curve = required_curve(g)?;
            let pts = points_on(&curve, &points, Some(2))?;
            let (sum, case) = curve.add_traced(&pts[0], &pts[1])?;
            let body = json!({ "point": PointJson::from_point(&sum), "case": case.name() });
            Ok(Outcome::ok(render(g.json, &body, || format!("{sum}\n"))))
        }
        Command::Sum3 { points } => {
            let curve = required_curve(g)?;
            let pts = points_on(&curve, &points, Some(3))?;
            let p4 = sum3_symmetric(&curve, &pts[0], &pts[1], &pts[2])?;
            let t = triple_coeffs(&pts[0], &pts[1], &pts[2])?;
            let (x4, y4) = p4.coords().expect("generic sum is affine");
            let body = Sum3Json {
                x4: x4.to_string(),
                y4: y4.to_string(),
                v: t.v.to_string(),
                c0: t.c0.to_string(),
                c1: t.c1.to_string(),
                c2: t.c2.to_string(),
            };
            let text = || {
                format!(
                    "P4 = {p4}\nV  = {}\nc0 = {}\nc1 = {}\nc2 = {}\n",
                    body.v, body.c0, body.c1, body.c2
                )
            };
            Ok(Outcome::ok(render(g.json, &body, text)))
        }
        Command::Sumn {
            points,
            input,
            fallback,
        } => {
            let (curve, pts) = match (points, input) {
                (Some(text), _) => {
                    let curve = required_curve(g)?;
                    let pts = points_on(&curve, &text, None)?;
                    (curve, pts)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let (curve, pts) = SumInput::from_json(&text)?.decode()?;
                    for p in &pts {
                        curve.ensure_on_curve(p)?;
                    }
                    (curve, pts)
                }
                (None, None) => unreachable!("clap requires one of --points, --input"),
            };
            let body = sumn(&curve, &pts, fallback)?;
            let text = || format!("{} ({})\n", body.display, body.method);
            Ok(Outcome::ok(render(g.json, &body, text)))
        }
        Command::Check {
            suite,
            primes,
            min_n,
            max_n,
        } => {
            if min_n < 2 || min_n > max_n {
                return Err(Error::Parse(format!(
                    "need 2 <= min-n <= max-n, got {min_n}..{max_n}"
                )));
            }
            let sources = check_sources(g, &primes)?;
            let trials = g.trials.map_or(DEFAULT_CHECK_TRIALS, |t| t as usize);
            let ns: Vec<usize> = (min_n..=max_n).collect();
            let reports: Vec<SuiteReport> = sources
                .iter()
                .map(|src| match suite {
                    SuiteKind::Assoc => assoc_suite(src, trials, g.seed),
                    SuiteKind::Sum3 => sum3_suite(src, trials, g.seed),
                    SuiteKind::Multisum => multisum_suite(src, &ns, trials, g.seed),
                    SuiteKind::Vanishing => vanishing_suite(src, &ns, trials, g.seed),
                })
                .collect();
            let passed = reports.iter().all(SuiteReport::passed);
            let body = json!({ "passed": passed, "reports": reports });
            let text = || {
                let mut s: String = reports.iter().map(|r| r.to_string()).collect();
                s.push_str(if passed { "PASS\n" } else { "FAIL\n" });
                s
            };
            let stdout = render(g.json, &body, text);
            Ok(Outcome {
                code: if passed { EXIT_OK } else { EXIT_FAILED },
                stdout,
                stderr: String::new(),
            })
        }
        Command::Prove {
            identity,
            no_relations,
            relations,
            timeout_ms,
            prime,
        } => {
            let target: ProofTarget = identity.parse()?;
            let opts = ProveOptions {
                timeout: Duration::from_millis(timeout_ms),
                trials: g
                    .trials
                    .map_or(ProveOptions::default().trials, |t| t as usize),
                prime,
                seed: g.seed,
                use_curve_relations: match (no_relations, relations) {
                    (true, _) => Some(false),
                    (_, true) => Some(true),
                    _ => None,
                },
            };
            let v = prove(target, &opts)?;
            let text = || {
                let how = match (v.trials, v.prime) {
                    (Some(t), Some(p)) => format!("schwartz-zippel, {t} trials mod {p}"),
                    _ => "exact".to_string(),
                };
                let verdict = if v.result { "holds" } else { "FAILS" };
                format!("{}: {verdict} ({how}, {} ms)\n", v.identity, v.elapsed_ms)
            };
            let stdout = render(g.json, &v, text);
            Ok(Outcome {
                code: if v.result { EXIT_OK } else { EXIT_FAILED },
                stdout,
                stderr: String::new(),
            })
        }
    }
}

#[derive(Serialize)]
struct Sum3Json {
    x4: String,
    y4: String,
    #[serde(rename = "V")]
    v: String,
    c0: String,
    c1: String,
    c2: String,
}

#[derive(Serialize)]
struct SumnJson {
    x: Option<String>,
    y: Option<String>,
    cofactors: Vec<String>,
    method: &'static str,
    #[serde(skip)]
    display: String,
}

fn sumn(curve: &Curve, pts: &[Point], fallback: bool) -> Result<SumnJson> {
    let (sum, cof, method) = match multisum_with_cofactors(curve, pts) {
        Ok((sum, cof)) => {
            let cof = cof.as_slice().iter().map(ToString::to_string).collect();
            (sum, cof, "closed-form")
        }
        Err(Error::NonGeneric(_)) | Err(Error::PointNotOnCurve(_)) if fallback => {
            let cof = cofactors(pts)
                .map(|c| c.as_slice().iter().map(ToString::to_string).collect())
                .unwrap_or_default();
            (iterated_sum(curve, pts)?, cof, "iterated")
        }
        Err(e) => return Err(e),
    };
    Ok(SumnJson {
        x: sum.x().map(ToString::to_string),
        y: sum.y().map(ToString::to_string),
        cofactors: cof,
        method,
        display: sum.to_string(),
    })
}

fn check_sources(g: &GlobalArgs, primes: &[u64]) -> Result<Vec<PointSource>> {
    if !primes.is_empty() {
        return primes
            .iter()
            .map(|&p| FieldDescriptor::prime(p).map(PointSource::for_field))
            .collect();
    }
    let spec = parse_curve_spec(g.curve.as_deref().unwrap_or(DEFAULT_FIELD))?;
    let source = match spec.curve()? {
        Some(curve) => PointSource::for_curve(curve)?,
        None => PointSource::for_field(spec.field),
    };
    Ok(vec![source])
}
