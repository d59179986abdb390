//! Seeded randomized property suites.
//!
//! Trial `i` of every suite draws from ChaCha stream `i` under the suite
//! seed, so a failing trial can be replayed on its own and reports are
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{mordell17_corpus, AddCase, Curve, Point};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::multisum::{iterated_sum, multisum_with_cofactors, verify_vanishing};
use crate::sum3::{parabola_coeffs, slope_sum, sum3_symmetric, triple_coeffs};

/// Attempts allowed to draw one generic configuration.
pub const MAX_GENERIC_ATTEMPTS: usize = 10_000;

/// Failures kept verbatim in a report.
const MAX_RECORDED_FAILURES: usize = 10;

/// Where suite inputs come from.
#[derive(Clone, Debug)]
pub enum PointSource {
    /// A fresh random curve per trial over a prime field.
    RandomCurves(FieldDescriptor),
    /// One fixed curve over a prime field.
    FixedCurve(Curve),
    /// A fixed list of points on one curve (used over Q).
    Corpus(Curve, Vec<Point>),
}

impl PointSource {
    /// Random curves over `Fp`, or the `y^2 = x^3 + 17` corpus over Q.
    pub fn for_field(field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rationals => {
                let (c, pts) = mordell17_corpus(3);
                PointSource::Corpus(c, pts)
            }
            FieldDescriptor::Prime(_) => PointSource::RandomCurves(field),
        }
    }

    /// A fixed curve: random points over `Fp`, the 17-corpus if the curve
    /// is `y^2 = x^3 + 17` over Q.
    pub fn for_curve(curve: Curve) -> Result<Self> {
        match curve.field() {
            FieldDescriptor::Prime(_) => Ok(PointSource::FixedCurve(curve)),
            FieldDescriptor::Rationals => {
                let (c, pts) = mordell17_corpus(3);
                if c == curve {
                    Ok(PointSource::Corpus(c, pts))
                } else {
                    Err(Error::Parse(
                        "randomized suites over Q only support y^2 = x^3 + 17 (Q,a=0,b=17)".into(),
                    ))
                }
            }
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            PointSource::RandomCurves(f) => *f,
            PointSource::FixedCurve(c) | PointSource::Corpus(c, _) => c.field(),
        }
    }

    fn curve<R: Rng>(&self, rng: &mut R) -> Curve {
        match self {
            PointSource::RandomCurves(f) => Curve::random(*f, rng),
            PointSource::FixedCurve(c) | PointSource::Corpus(c, _) => c.clone(),
        }
    }

    fn point<R: Rng>(&self, curve: &Curve, rng: &mut R) -> Point {
        match self {
            PointSource::Corpus(_, pts) => pts.choose(rng).expect("nonempty corpus").clone(),
            _ => curve.random_point_signed(rng).expect("prime field"),
        }
    }

    /// A curve and `n` points drawn from it.
    pub fn sample<R: Rng>(&self, n: usize, rng: &mut R) -> (Curve, Vec<Point>) {
        let curve = self.curve(rng);
        let pts = (0..n).map(|_| self.point(&curve, rng)).collect();
        (curve, pts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub check: String,
    pub detail: String,
}

/// Aggregate outcome of one suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: u64,
    pub failed: u64,
    pub resamples: u64,
    pub counts: BTreeMap<String, u64>,
    pub failures: Vec<TrialFailure>,
}

impl SuiteReport {
    fn new(suite: &str, field: FieldDescriptor, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            field: field.to_string(),
            seed,
            trials: 0,
            checks: 0,
            failed: 0,
            resamples: 0,
            counts: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn bump(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_default() += 1;
    }

    fn expect(&mut self, trial: usize, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(TrialFailure {
                    trial,
                    check: check.to_string(),
                    detail: detail(),
                });
            }
        }
    }

    fn error(&mut self, trial: usize, check: &str, e: &Error) {
        self.expect(trial, check, false, || e.to_string());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} over {} (seed {}): {} trials, {} checks, {} failed, {} resamples",
            self.suite,
            self.field,
            self.seed,
            self.trials,
            self.checks,
            self.failed,
            self.resamples
        )?;
        for (k, v) in &self.counts {
            writeln!(f, "  {k}: {v}")?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "  FAIL trial {} [{}]: {}",
                fail.trial, fail.check, fail.detail
            )?;
        }
        Ok(())
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Special configurations forced into the associativity suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Injection {
    Random,
    ThirdEqualsFirst,
    ThirdOppositeFirst,
    ThirdOppositePartial,
    Doubling,
    SecondOppositeFirst,
}

const INJECTIONS: [Injection; 6] = [
    Injection::Random,
    Injection::ThirdEqualsFirst,
    Injection::ThirdOppositeFirst,
    Injection::ThirdOppositePartial,
    Injection::Doubling,
    Injection::SecondOppositeFirst,
];

impl Injection {
    fn name(self) -> &'static str {
        match self {
            Injection::Random => "inject:random",
            Injection::ThirdEqualsFirst => "inject:p3=p1",
            Injection::ThirdOppositeFirst => "inject:p3=-p1",
            Injection::ThirdOppositePartial => "inject:p3=-(p1+p2)",
            Injection::Doubling => "inject:p2=p1",
            Injection::SecondOppositeFirst => "inject:p2=-p1",
        }
    }
}

/// Associativity, commutativity, inverses and closure of the addition law,
/// with the special configurations injected in rotation.
pub fn assoc_suite(source: &PointSource, trials: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("assoc", source.field(), seed);
    for t in 0..trials {
        rep.trials += 1;
        let mut rng = trial_rng(seed, t);
        let (curve, mut pts) = source.sample(3, &mut rng);
        let inj = INJECTIONS[t % INJECTIONS.len()];
        rep.bump(inj.name());
        match inj {
            Injection::Random => {}
            Injection::ThirdEqualsFirst => pts[2] = pts[0].clone(),
            Injection::ThirdOppositeFirst => pts[2] = pts[0].negate(),
            Injection::ThirdOppositePartial => {
                pts[2] = curve.add_unchecked(&pts[0], &pts[1]).0.negate();
            }
            Injection::Doubling => pts[1] = pts[0].clone(),
            Injection::SecondOppositeFirst => pts[1] = pts[0].negate(),
        }
        if let Err(e) = assoc_trial(&curve, &pts, t, &mut rep) {
            rep.error(t, "assoc", &e);
        }
    }
    rep
}

fn assoc_trial(curve: &Curve, pts: &[Point], t: usize, rep: &mut SuiteReport) -> Result<()> {
    let (p1, p2, p3) = (&pts[0], &pts[1], &pts[2]);
    let (s12, c12) = curve.add_traced(p1, p2)?;
    let (lhs, c_l) = curve.add_traced(&s12, p3)?;
    let (s23, c23) = curve.add_traced(p2, p3)?;
    let (rhs, c_r) = curve.add_traced(p1, &s23)?;
    for c in [c12, c_l, c23, c_r] {
        rep.bump(format!("case:{}", c.name()));
    }
    rep.expect(t, "associativity", lhs == rhs, || {
        format!("{p1} {p2} {p3}: {lhs} != {rhs}")
    });
    for p in [&s12, &lhs, &s23, &rhs] {
        rep.expect(t, "closure", curve.is_on_curve(p)?, || {
            format!("{p} off curve")
        });
    }
    let s21 = curve.add(p2, p1)?;
    rep.expect(t, "commutativity", s12 == s21, || format!("{p1} + {p2}"));
    let inv = curve.add(p1, &p1.negate())?;
    rep.expect(t, "inverse", inv.is_infinity(), || {
        format!("{p1} + -{p1} = {inv}")
    });
    let id = curve.add(p1, &Point::Infinity)?;
    rep.expect(t, "identity", id == *p1, || format!("{p1} + O = {id}"));
    // P3 = -P1 with both steps of the left side chords: the sum is P2
    if *p3 == p1.negate() && c12 == AddCase::Chord && c_l == AddCase::Chord {
        rep.bump("branch:p3=-p1");
        rep.expect(t, "p3=-p1 gives p2", lhs == *p2, || {
            format!("{lhs} != {p2}")
        });
    }
    Ok(())
}

fn draw_generic<T, R: Rng>(
    source: &PointSource,
    n: usize,
    rng: &mut R,
    rep: &mut SuiteReport,
    mut attempt: impl FnMut(&Curve, &[Point]) -> Result<T>,
) -> Result<(Curve, Vec<Point>, T)> {
    let mut last = None;
    for _ in 0..MAX_GENERIC_ATTEMPTS {
        let (curve, pts) = source.sample(n, rng);
        match attempt(&curve, &pts) {
            Ok(v) => return Ok((curve, pts, v)),
            Err(e @ Error::NonGeneric(_)) => {
                rep.resamples += 1;
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The symmetric three-point closed form against the addition law, with
/// the slope-sum, parabola and vanishing-determinant properties.
pub fn sum3_suite(source: &PointSource, trials: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("sum3", source.field(), seed);
    for t in 0..trials {
        rep.trials += 1;
        let mut rng = trial_rng(seed, t);
        let drawn = draw_generic(source, 3, &mut rng, &mut rep, |c, p| {
            sum3_symmetric(c, &p[0], &p[1], &p[2])
        });
        let result = drawn.and_then(|(curve, pts, p4)| sum3_trial(&curve, &pts, &p4, t, &mut rep));
        if let Err(e) = result {
            rep.error(t, "sum3", &e);
        }
    }
    rep
}

fn sum3_trial(
    curve: &Curve,
    pts: &[Point],
    p4: &Point,
    t: usize,
    rep: &mut SuiteReport,
) -> Result<()> {
    let (p1, p2, p3) = (&pts[0], &pts[1], &pts[2]);
    let oracle = curve.add(&curve.add(p1, p2)?, p3)?;
    rep.expect(t, "oracle", *p4 == oracle, || {
        format!("{p1} {p2} {p3}: {p4} != {oracle}")
    });
    rep.expect(t, "closure", curve.is_on_curve(p4)?, || {
        format!("{p4} off curve")
    });
    for perm in PERMUTATIONS {
        // the partial-sum hypothesis depends on the order
        match sum3_symmetric(curve, &pts[perm[0]], &pts[perm[1]], &pts[perm[2]]) {
            Ok(q) => rep.expect(t, "permutation", q == *p4, || {
                format!("{perm:?}: {q} != {p4}")
            }),
            Err(Error::NonGeneric(_)) => rep.bump("permutation:skipped"),
            Err(e) => return Err(e),
        }
    }

    let coeffs = triple_coeffs(p1, p2, p3)?;
    let slopes = slope_sum(curve, p1, p2, p3)?;
    rep.expect(t, "lemma:c2!=0", !coeffs.c2.is_zero(), || "c2 = 0".into());
    let residual = &coeffs.c2 * &(&slopes.alpha + &slopes.alpha_tilde) - &coeffs.v;
    rep.expect(t, "lemma", residual.is_zero(), || {
        format!("residual {residual}")
    });
    // alpha + alpha~ = 0 when P3 = -P1, whenever P1 + P2 != ±P1
    match slope_sum(curve, p1, p2, &p1.negate()) {
        Ok(s) => {
            rep.bump("lemma:p3=-p1");
            let sum = &s.alpha + &s.alpha_tilde;
            rep.expect(t, "lemma:p3=-p1", sum.is_zero(), || {
                format!("alpha + alpha~ = {sum}")
            });
        }
        Err(Error::NonGeneric(_)) => {}
        Err(e) => return Err(e),
    }

    let (x1, y1) = p1.coords().expect("affine");
    let (x2, y2) = p2.coords().expect("affine");
    let (x3, _) = p3.coords().expect("affine");
    let eq2 = &coeffs.c1 + &(&(x1 + x2) * &coeffs.c2) - (x1 - x3) * (x3 - x2) * (y1 - y2);
    rep.expect(t, "eq2", eq2.is_zero(), || format!("residual {eq2}"));

    let swapped = triple_coeffs(p2, p1, p3)?;
    let alternating = swapped.v == -&coeffs.v
        && swapped.c0 == -&coeffs.c0
        && swapped.c1 == -&coeffs.c1
        && swapped.c2 == -&coeffs.c2;
    rep.expect(t, "alternating", alternating, || {
        "swap did not negate".into()
    });

    rep.expect(t, "det_m", verify_vanishing(pts, p4)?, || {
        format!("det M != 0 for {p4}")
    });

    let parabola = parabola_coeffs(p1, p2, p3)?;
    let (x4, y4) = p4.coords().expect("affine");
    for p in pts {
        let (x, y) = p.coords().expect("affine");
        rep.expect(
            t,
            "parabola:interpolates",
            parabola.residual(x, y).is_zero(),
            || format!("{p}"),
        );
    }
    let r = parabola.residual(x4, &-y4);
    rep.expect(t, "parabola:-p4", r.is_zero(), || format!("residual {r}"));
    Ok(())
}

/// The n-point closed form against the left fold, for each `n` in `ns`.
pub fn multisum_suite(
    source: &PointSource,
    ns: &[usize],
    samples: usize,
    seed: u64,
) -> SuiteReport {
    let mut rep = SuiteReport::new("multisum", source.field(), seed);
    for &n in ns {
        for s in 0..samples {
            let t = rep.trials;
            rep.trials += 1;
            let mut rng = trial_rng(seed ^ ((n as u64) << 32), s);
            let drawn = draw_generic(source, n, &mut rng, &mut rep, multisum_with_cofactors);
            let result = drawn.and_then(|(curve, pts, (sum, cof))| {
                rep.bump(format!("n={n}"));
                let oracle = iterated_sum(&curve, &pts)?;
                rep.expect(t, "oracle", sum == oracle, || {
                    format!("n={n}: {sum} != {oracle}")
                });
                let mut shuffled = pts.clone();
                shuffled.shuffle(&mut rng);
                match multisum_with_cofactors(&curve, &shuffled) {
                    Ok((q, _)) => {
                        rep.bump("permutation");
                        rep.expect(t, "permutation", q == sum, || {
                            format!("n={n}: {q} != {sum}")
                        });
                    }
                    // another order may take a non-chord fold step
                    Err(Error::NonGeneric(_)) => rep.bump("permutation:skipped"),
                    Err(e) => return Err(e),
                }
                if n == 2 {
                    let (chord, case) = curve.add_traced(&pts[0], &pts[1])?;
                    rep.expect(
                        t,
                        "n=2:chord",
                        case == AddCase::Chord && chord == sum,
                        || format!("{chord} ({case:?}) != {sum}"),
                    );
                }
                if n == 3 {
                    let tc = triple_coeffs(&pts[0], &pts[1], &pts[2])?;
                    let bridge = *cof.c(3) == -&tc.v
                        && *cof.c(0) == tc.c0
                        && *cof.c(1) == tc.c1
                        && *cof.c(2) == tc.c2;
                    rep.expect(t, "n=3:bridge", bridge, || {
                        "c_3 != -V or c_0..2 mismatch".into()
                    });
                    match sum3_symmetric(&curve, &pts[0], &pts[1], &pts[2]) {
                        Ok(q) => rep.expect(t, "n=3:sum3", q == sum, || format!("{q} != {sum}")),
                        Err(Error::NonGeneric(_)) => rep.bump("n=3:sum3:skipped"),
                        Err(e) => return Err(e),
                    }
                }
                Ok(())
            });
            if let Err(e) = result {
                rep.error(t, "multisum", &e);
            }
        }
    }
    rep
}

/// `det M = 0` at the true sum, for each `n` in `ns`.
pub fn vanishing_suite(
    source: &PointSource,
    ns: &[usize],
    samples: usize,
    seed: u64,
) -> SuiteReport {
    let mut rep = SuiteReport::new("vanishing", source.field(), seed);
    for &n in ns {
        for s in 0..samples {
            let t = rep.trials;
            rep.trials += 1;
            let mut rng = trial_rng(seed ^ ((n as u64) << 32), s);
            let drawn = draw_generic(source, n, &mut rng, &mut rep, multisum_with_cofactors);
            let result = drawn.and_then(|(curve, pts, _)| {
                rep.bump(format!("n={n}"));
                let next = iterated_sum(&curve, &pts)?;
                rep.expect(t, "vanishing", verify_vanishing(&pts, &next)?, || {
                    format!("n={n}: det M != 0")
                });
                Ok(())
            });
            if let Err(e) = result {
                rep.error(t, "vanishing", &e);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn suites_pass_on_small_runs() {
        let src = PointSource::for_field(f(10007));
        for rep in [
            assoc_suite(&src, 120, 1),
            sum3_suite(&src, 50, 2),
            multisum_suite(&src, &[2, 3, 4, 5], 20, 3),
            vanishing_suite(&src, &[2, 3, 4, 5], 20, 4),
        ] {
            assert!(rep.passed(), "{rep}");
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn assoc_hits_every_case() {
        let rep = assoc_suite(&PointSource::for_field(f(10007)), 120, 7);
        for key in [
            "case:identity",
            "case:chord",
            "case:tangent",
            "case:vertical",
            "branch:p3=-p1",
        ] {
            assert!(
                rep.counts.get(key).copied().unwrap_or(0) > 0,
                "{key} missing: {rep}"
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let src = PointSource::for_field(f(10007));
        assert_eq!(sum3_suite(&src, 30, 5), sum3_suite(&src, 30, 5));
    }

    #[test]
    fn rational_corpus_suite() {
        let rep = sum3_suite(&PointSource::for_field(FieldDescriptor::Rationals), 20, 1);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn fixed_rational_curve_must_be_the_corpus_curve() {
        let q = FieldDescriptor::Rationals;
        assert!(PointSource::for_curve(Curve::from_i64(q, 0, 17).unwrap()).is_ok());
        assert!(PointSource::for_curve(Curve::from_i64(q, 0, 1).unwrap()).is_err());
    }

    #[test]
    fn broken_law_is_detected() {
        // a triple violating genericity forced through the trial directly
        let src = PointSource::for_field(f(10007));
        let mut rng = trial_rng(0, 0);
        let (curve, pts) = src.sample(3, &mut rng);
        let mut rep = SuiteReport::new("sum3", f(10007), 0);
        let wrong = pts[0].clone();
        if sum3_symmetric(&curve, &pts[0], &pts[1], &pts[2]).is_ok() {
            sum3_trial(&curve, &pts, &wrong, 0, &mut rep).ok();
            assert!(!rep.passed());
            assert!(rep.failures.iter().any(|f| f.check == "oracle"));
        }
    }
}
