use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::builtin::{check_builtin, Budget, BuiltinIdentity, Relations};
use super::sz::{builtin_program, sz_check, vanishing_program, MERSENNE_61};
use crate::error::{Error, Result};

/// Something `prove` can be asked to establish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofTarget {
    Builtin(BuiltinIdentity),
    /// Both coordinates of the three-point closed form.
    ClosedForm,
    /// `det M = 0` for `n` points, randomized only.
    DetM(usize),
}

impl FromStr for ProofTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(n) = s.strip_prefix("detm:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad point count in {s:?}")))?;
            if n < 2 {
                return Err(Error::Parse(format!("{s}: need at least 2 points")));
            }
            return Ok(ProofTarget::DetM(n));
        }
        if s == "theorem2" {
            return Ok(ProofTarget::ClosedForm);
        }
        BuiltinIdentity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .map(ProofTarget::Builtin)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

impl fmt::Display for ProofTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTarget::Builtin(id) => write!(f, "{}", id.name()),
            ProofTarget::ClosedForm => write!(f, "theorem2"),
            ProofTarget::DetM(n) => write!(f, "detm:{n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProveOptions {
    /// Budget for exact expansion before falling back to randomized testing.
    pub timeout: Duration,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    /// Overrides each identity's own relation setting.
    pub use_curve_relations: Option<bool>,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            timeout: Duration::from_secs(30),
            trials: 20,
            prime: MERSENNE_61,
            seed: 0,
            use_curve_relations: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofMode {
    Exact,
    #[serde(rename = "schwartz-zippel")]
    SchwartzZippel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub mode: ProofMode,
    pub result: bool,
    pub trials: Option<usize>,
    pub prime: Option<u64>,
    pub elapsed_ms: u64,
}

/// Checks a target by exact expansion where available, falling back to
/// randomized testing if the expansion exceeds `opts.timeout`.
pub fn prove(target: ProofTarget, opts: &ProveOptions) -> Result<Verdict> {
    let start = Instant::now();
    let budget = Budget::until(start + opts.timeout);
    let ids: &[BuiltinIdentity] = match &target {
        ProofTarget::Builtin(id) => std::slice::from_ref(id),
        ProofTarget::ClosedForm => &[BuiltinIdentity::ClosedFormX, BuiltinIdentity::ClosedFormY],
        ProofTarget::DetM(n) => {
            let r = sz_check(vanishing_program(*n), opts.trials, opts.prime, opts.seed)?;
            return Ok(randomized(&target, r.passed, r.trials, opts, start));
        }
    };
    let mut all = true;
    for &id in ids {
        let rel = opts
            .use_curve_relations
            .unwrap_or(id.relations() == Relations::Curve);
        match check_builtin(id, rel, &budget) {
            Ok(ok) => all &= ok,
            Err(Error::Timeout) => return fallback(&target, ids, opts, start),
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict {
        identity: target.to_string(),
        mode: ProofMode::Exact,
        result: all,
        trials: None,
        prime: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn fallback(
    target: &ProofTarget,
    ids: &[BuiltinIdentity],
    opts: &ProveOptions,
    start: Instant,
) -> Result<Verdict> {
    let mut passed = true;
    let mut trials = 0;
    for &id in ids {
        let r = sz_check(builtin_program(id), opts.trials, opts.prime, opts.seed)?;
        passed &= r.passed;
        trials += r.trials;
    }
    Ok(randomized(target, passed, trials, opts, start))
}

fn randomized(
    target: &ProofTarget,
    passed: bool,
    trials: usize,
    opts: &ProveOptions,
    start: Instant,
) -> Verdict {
    Verdict {
        identity: target.to_string(),
        mode: ProofMode::SchwartzZippel,
        result: passed,
        trials: Some(trials),
        prime: Some(opts.prime),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
