//! Randomized identity testing over a large prime field.
//!
//! A program evaluates a cleared identity (something that must be zero) at
//! a random input. Inputs are curve points, so the curve relations hold by
//! construction. If the underlying polynomial is nonzero of total degree `D`,
//! each trial passes with probability at most `D / p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::builtin::BuiltinIdentity;
use super::rational::RationalExpression;
use crate::curve::{Curve, Point};
use crate::error::{Error, Hypothesis, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::multisum::{cofactors, iterated_sum, x_block_degree, SumMatrix};
use crate::sum3::{slope_sum, sum3_symmetric, triple_coeffs};

/// `2^61 - 1`, the default modulus for randomized checks.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Resamples allowed per trial when a program reports a non-generic input.
pub const MAX_RESAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SzReport {
    pub passed: bool,
    /// Trials evaluated (stops early at the first nonzero value).
    pub trials: usize,
    pub resamples: usize,
}

/// Runs `trials` independent evaluations of `program` over `F_prime`.
///
/// Trial `i` draws from its own ChaCha stream `i` under `seed`, so any single
/// trial can be replayed. `Error::NonGeneric` from the program triggers a
/// resample; other errors propagate.
pub fn sz_check<F>(mut program: F, trials: usize, prime: u64, seed: u64) -> Result<SzReport>
where
    F: FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue>,
{
    let field = FieldDescriptor::prime(prime).map_err(|_| Error::BadPrime(prime))?;
    let mut resamples = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut attempt = 0;
        let value = loop {
            match program(&mut rng, field) {
                Ok(v) => break v,
                Err(Error::NonGeneric(h)) => {
                    attempt += 1;
                    resamples += 1;
                    if attempt > MAX_RESAMPLES {
                        return Err(Error::NonGeneric(h));
                    }
                }
                Err(e) => return Err(e),
            }
        };
        if !value.is_zero() {
            return Ok(SzReport {
                passed: false,
                trials: trial + 1,
                resamples,
            });
        }
    }
    Ok(SzReport {
        passed: true,
        trials,
        resamples,
    })
}

fn random_points<R: Rng + ?Sized>(curve: &Curve, n: usize, rng: &mut R) -> Vec<Point> {
    (0..n)
        .map(|_| curve.random_point_signed(rng).expect("prime field"))
        .collect()
}

fn affine_sum(curve: &Curve, points: &[Point]) -> Result<Point> {
    let next = iterated_sum(curve, points)?;
    if next.is_infinity() {
        return Err(Error::NonGeneric(Hypothesis::AffineInputs));
    }
    Ok(next)
}

/// `det M` for `n` random points on a random curve and their sum.
pub fn vanishing_program(
    n: usize,
) -> impl FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue> {
    move |rng, field| {
        let curve = Curve::random(field, rng);
        let points = random_points(&curve, n, rng);
        let next = affine_sum(&curve, &points)?;
        Ok(SumMatrix::new(&points, &next)?.det())
    }
}

/// Negative control: the last-row expansion of `det M` with `c_0` bumped by one.
pub fn perturbed_vanishing_program(
    n: usize,
) -> impl FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue> {
    move |rng, field| {
        let curve = Curve::random(field, rng);
        let points = random_points(&curve, n, rng);
        let next = affine_sum(&curve, &points)?;
        let (x, y) = next.coords().expect("affine");
        let mut c = cofactors(&points)?.as_slice().to_vec();
        c[0] = &c[0] + &field.one();
        let h = x_block_degree(n);
        let mut value = field.zero();
        let mut pow = field.one();
        for (l, cl) in c.iter().enumerate() {
            let k = if l <= h { field.one() } else { -y };
            value = value + cl * &(&pow * &k);
            pow = if l == h { field.one() } else { &pow * x };
        }
        Ok(value)
    }
}

/// The identically-zero program.
pub fn zero_program() -> impl FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue> {
    |_, field| Ok(field.zero())
}

/// Numeric form of a built-in identity: both sides evaluated with field
/// arithmetic on random points of a random curve.
pub fn builtin_program(
    id: BuiltinIdentity,
) -> impl FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue> {
    move |rng, field| {
        let curve = Curve::random(field, rng);
        let pts = random_points(&curve, 3, rng);
        let (p1, p2, p3) = (&pts[0], &pts[1], &pts[2]);
        match id {
            BuiltinIdentity::CoefficientRelation => {
                let t = triple_coeffs(p1, p2, p3)?;
                let c = |p: &Point| p.coords().map(|(x, y)| (x.clone(), y.clone())).unwrap();
                let ((x1, y1), (x2, y2), (x3, _)) = (c(p1), c(p2), c(p3));
                Ok(&t.c1 + &(&(&x1 + &x2) * &t.c2) - (&x1 - &x3) * (&x3 - &x2) * (&y1 - &y2))
            }
            BuiltinIdentity::SlopeSum => {
                let s = slope_sum(&curve, p1, p2, p3)?;
                let t = triple_coeffs(p1, p2, p3)?;
                Ok(&t.c2 * &(&s.alpha + &s.alpha_tilde) - &t.v)
            }
            BuiltinIdentity::ClosedFormX | BuiltinIdentity::ClosedFormY => {
                let closed = sum3_symmetric(&curve, p1, p2, p3)?;
                let folded = iterated_sum(&curve, &pts)?;
                let pick = |p: &Point| {
                    if id == BuiltinIdentity::ClosedFormX {
                        p.x().cloned()
                    } else {
                        p.y().cloned()
                    }
                };
                match (pick(&closed), pick(&folded)) {
                    (Some(a), Some(b)) => Ok(a - b),
                    _ => Ok(field.one()),
                }
            }
            BuiltinIdentity::Vanishing3 => vanishing_program(3)(rng, field),
        }
    }
}

/// Evaluates `lhs.num * rhs.den - rhs.num * lhs.den` at random points of a
/// random curve; a zero denominator counts as a non-generic sample.
pub fn expression_program<'a>(
    lhs: &'a RationalExpression,
    rhs: &'a RationalExpression,
) -> impl FnMut(&mut ChaCha8Rng, FieldDescriptor) -> Result<FieldValue> + 'a {
    move |rng, field| {
        let n = lhs.points();
        let curve = Curve::random(field, rng);
        let pts = random_points(&curve, n, rng);
        let xs: Vec<_> = pts.iter().map(|p| p.x().unwrap().clone()).collect();
        let ys: Vec<_> = pts.iter().map(|p| p.y().unwrap().clone()).collect();
        let ev = |p: &super::poly::SparsePolynomial| p.eval(&xs, &ys, curve.a(), curve.b());
        let (ln, ld, rn, rd) = (
            ev(lhs.num())?,
            ev(lhs.den())?,
            ev(rhs.num())?,
            ev(rhs.den())?,
        );
        if ld.is_zero() || rd.is_zero() {
            return Err(Error::NonGeneric(Hypothesis::NonzeroDenominator(
                "identity denominator",
            )));
        }
        Ok(ln * rd - rn * ld)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_program_passes() {
        let r = sz_check(zero_program(), 20, MERSENNE_61, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.trials, 20);
    }

    #[test]
    fn vanishing_holds_for_four_points() {
        assert!(
            sz_check(vanishing_program(4), 20, MERSENNE_61, 2)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn perturbed_identity_is_caught() {
        let r = sz_check(perturbed_vanishing_program(4), 20, MERSENNE_61, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.trials, 1);
    }

    #[test]
    fn bad_prime() {
        assert_eq!(sz_check(zero_program(), 1, 91, 0), Err(Error::BadPrime(91)));
        assert_eq!(sz_check(zero_program(), 1, 3, 0), Err(Error::BadPrime(3)));
    }

    #[test]
    fn builtin_programs_pass() {
        for id in BuiltinIdentity::ALL {
            assert!(
                sz_check(builtin_program(id), 20, MERSENNE_61, 4)
                    .unwrap()
                    .passed,
                "{id:?}"
            );
        }
    }

    #[test]
    fn resampling_is_bounded() {
        let always_degenerate = |_: &mut ChaCha8Rng, _: FieldDescriptor| -> Result<FieldValue> {
            Err(Error::NonGeneric(Hypothesis::AffineInputs))
        };
        assert!(matches!(
            sz_check(always_degenerate, 1, MERSENNE_61, 0),
            Err(Error::NonGeneric(_))
        ));
    }

    #[test]
    fn trials_replay_from_seed() {
        let mut seen = Vec::new();
        let record = |rng: &mut ChaCha8Rng, f: FieldDescriptor| {
            seen.push(f.sample(rng));
            Ok(f.zero())
        };
        sz_check(record, 5, 10007, 11).unwrap();
        let mut again = Vec::new();
        let record = |rng: &mut ChaCha8Rng, f: FieldDescriptor| {
            again.push(f.sample(rng));
            Ok(f.zero())
        };
        sz_check(record, 5, 10007, 11).unwrap();
        assert_eq!(seen, again);
    }
}
