//! The three-point identities as symbolic statements over
//! `Q[x1, x2, x3, y1, y2, y3, a, b]`.
//!
//! `V, c0, c1, c2` are built from their defining 3x3 matrices by symbolic
//! cofactor expansion, and the sum `(P1 + P2) + P3` by composing two symbolic
//! chord additions, so every statement compares two independent
//! constructions.

use std::time::Instant;

use super::poly::{poly_det, SparsePolynomial};
use super::rational::RationalExpression;
use crate::error::{Error, Result};

const POINTS: usize = 3;

/// Whether the curve relations `y_i^2 = x_i^3 + a x_i + b` may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relations {
    Free,
    Curve,
}

impl Relations {
    pub fn from_flag(use_curve_relations: bool) -> Self {
        if use_curve_relations {
            Relations::Curve
        } else {
            Relations::Free
        }
    }

    fn reduce(self, e: RationalExpression) -> Result<RationalExpression> {
        match self {
            Relations::Free => Ok(e),
            Relations::Curve => e.map(SparsePolynomial::curve_normal_form),
        }
    }
}

/// Wall-clock deadline checked between symbolic steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn until(deadline: Instant) -> Self {
        Budget {
            deadline: Some(deadline),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

/// The built-in identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinIdentity {
    /// `c1 + (x1 + x2) c2 = (x1 - x3)(x3 - x2)(y1 - y2)`, no relations needed.
    CoefficientRelation,
    /// `c2 (alpha + alpha~) = V`.
    SlopeSum,
    /// `x4 = -x1 - x2 - x3 + (V^2 - 2 c1 c2) / c2^2`.
    ClosedFormX,
    /// `y4 = -(c2 x4^2 + c1 x4 + c0) / V`.
    ClosedFormY,
    /// `det [1 x_i x_i^2 y_i ; 1 x4 x4^2 -y4] = 0`.
    Vanishing3,
}

impl BuiltinIdentity {
    pub const ALL: [BuiltinIdentity; 5] = [
        BuiltinIdentity::CoefficientRelation,
        BuiltinIdentity::SlopeSum,
        BuiltinIdentity::ClosedFormX,
        BuiltinIdentity::ClosedFormY,
        BuiltinIdentity::Vanishing3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinIdentity::CoefficientRelation => "eq2",
            BuiltinIdentity::SlopeSum => "lemma",
            BuiltinIdentity::ClosedFormX => "theorem2_x",
            BuiltinIdentity::ClosedFormY => "theorem2_y",
            BuiltinIdentity::Vanishing3 => "detm3",
        }
    }

    /// Relations under which the identity is expected to hold.
    pub fn relations(self) -> Relations {
        match self {
            BuiltinIdentity::CoefficientRelation => Relations::Free,
            _ => Relations::Curve,
        }
    }

    /// Builds `(lhs, rhs)`. With [`Relations::Curve`] intermediate results are
    /// kept in curve normal form, which changes nothing modulo the relations.
    pub fn build(
        self,
        rel: Relations,
        budget: &Budget,
    ) -> Result<(RationalExpression, RationalExpression)> {
        let t = SymbolicTriple::new();
        match self {
            BuiltinIdentity::CoefficientRelation => {
                let lhs = &t.c1 + &(&(&x(1) + &x(2)) * &t.c2);
                let rhs = &(&(&x(1) - &x(3)) * &(&x(3) - &x(2))) * &(&y(1) - &y(2));
                Ok((lhs.into(), rhs.into()))
            }
            BuiltinIdentity::SlopeSum => {
                let s = compose(rel, budget)?;
                let lhs =
                    RationalExpression::from_poly(t.c2.clone()).mul(&s.alpha.add(&s.alpha_tilde));
                Ok((rel.reduce(lhs)?, t.v.clone().into()))
            }
            BuiltinIdentity::ClosedFormX => {
                let s = compose(rel, budget)?;
                Ok((s.x4, t.closed_x4()?))
            }
            BuiltinIdentity::ClosedFormY => {
                let s = compose(rel, budget)?;
                let rhs = rel.reduce(t.closed_y4(&t.closed_x4()?)?)?;
                budget.check()?;
                Ok((s.y4, rhs))
            }
            BuiltinIdentity::Vanishing3 => {
                let s = compose(rel, budget)?;
                // expand along the last row (1, x4, x4^2, -y4)
                let minors: Vec<SparsePolynomial> = (0..4)
                    .map(|j| {
                        let rows: Vec<Vec<SparsePolynomial>> = (1..=3)
                            .map(|i| {
                                let full = [one(), x(i), &x(i) * &x(i), y(i)];
                                full.iter()
                                    .enumerate()
                                    .filter(|&(k, _)| k != j)
                                    .map(|(_, p)| p.clone())
                                    .collect()
                            })
                            .collect();
                        poly_det(&rows)
                    })
                    .collect();
                let x4sq = rel.reduce(s.x4.square())?;
                budget.check()?;
                let last = [
                    RationalExpression::from_poly(one()),
                    s.x4.clone(),
                    x4sq,
                    s.y4.neg(),
                ];
                let mut det = RationalExpression::from_poly(SparsePolynomial::zero(POINTS));
                for (j, (entry, minor)) in last.iter().zip(minors).enumerate() {
                    // row index 3 (0-based): sign (-1)^(3 + j)
                    let term = entry.mul(&minor.into());
                    det = if (3 + j) % 2 == 0 {
                        det.add(&term)
                    } else {
                        det.sub(&term)
                    };
                    det = rel.reduce(det)?;
                    budget.check()?;
                }
                Ok((det, SparsePolynomial::zero(POINTS).into()))
            }
        }
    }
}

fn x(i: usize) -> SparsePolynomial {
    SparsePolynomial::x(POINTS, i)
}

fn y(i: usize) -> SparsePolynomial {
    SparsePolynomial::y(POINTS, i)
}

fn one() -> SparsePolynomial {
    SparsePolynomial::one(POINTS)
}

/// Symbolic `V, c0, c1, c2` from their defining determinants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTriple {
    pub v: SparsePolynomial,
    pub c0: SparsePolynomial,
    pub c1: SparsePolynomial,
    pub c2: SparsePolynomial,
}

impl SymbolicTriple {
    pub fn new() -> Self {
        let det_of = |cols: &dyn Fn(usize) -> Vec<SparsePolynomial>| {
            poly_det(&(1..=3).map(cols).collect::<Vec<_>>())
        };
        SymbolicTriple {
            v: det_of(&|i| vec![one(), x(i), &x(i) * &x(i)]),
            c0: det_of(&|i| vec![x(i), &x(i) * &x(i), y(i)]),
            c1: -&det_of(&|i| vec![one(), &x(i) * &x(i), y(i)]),
            c2: det_of(&|i| vec![one(), x(i), y(i)]),
        }
    }

    /// `-x1 - x2 - x3 + (V^2 - 2 c1 c2) / c2^2`
    pub fn closed_x4(&self) -> Result<RationalExpression> {
        let two = SparsePolynomial::from_i64(POINTS, 2);
        let sum = &(&x(1) + &x(2)) + &x(3);
        let c2sq = &self.c2 * &self.c2;
        let num = &(&(&self.v * &self.v) - &(&two * &(&self.c1 * &self.c2))) - &(&sum * &c2sq);
        RationalExpression::new(num, c2sq)
    }

    /// `-(c2 x4^2 + c1 x4 + c0) / V` at a given `x4`.
    pub fn closed_y4(&self, x4: &RationalExpression) -> Result<RationalExpression> {
        let c = |p: &SparsePolynomial| RationalExpression::from_poly(p.clone());
        let inner = c(&self.c2)
            .mul(&x4.square())
            .add(&c(&self.c1).mul(x4))
            .add(&c(&self.c0));
        inner.neg().div(&c(&self.v))
    }

    /// Each coefficient with points `i` and `j` exchanged.
    pub fn swap_points(&self, i: usize, j: usize) -> Self {
        SymbolicTriple {
            v: self.v.swap_points(i, j),
            c0: self.c0.swap_points(i, j),
            c1: self.c1.swap_points(i, j),
            c2: self.c2.swap_points(i, j),
        }
    }
}

impl Default for SymbolicTriple {
    fn default() -> Self {
        Self::new()
    }
}

/// Symbolic `(P1 + P2) + P3` by two chord additions.
#[derive(Clone, Debug)]
pub struct ComposedSum {
    pub alpha: RationalExpression,
    pub x_partial: RationalExpression,
    pub y_partial: RationalExpression,
    pub alpha_tilde: RationalExpression,
    pub x4: RationalExpression,
    pub y4: RationalExpression,
}

struct Chord {
    alpha: RationalExpression,
    x: RationalExpression,
    y: RationalExpression,
}

fn chord(
    rel: Relations,
    (x1, y1): (&RationalExpression, &RationalExpression),
    (x2, y2): (&RationalExpression, &RationalExpression),
) -> Result<Chord> {
    let alpha = rel.reduce(y2.sub(y1).div(&x2.sub(x1))?)?;
    let x = rel.reduce(alpha.square().sub(x1).sub(x2))?;
    let y = rel.reduce(y1.neg().sub(&alpha.mul(&x.sub(x1))))?;
    Ok(Chord { alpha, x, y })
}

/// Composes `(P1 + P2) + P3` symbolically.
pub fn compose(rel: Relations, budget: &Budget) -> Result<ComposedSum> {
    let p: Vec<(RationalExpression, RationalExpression)> =
        (1..=3).map(|i| (x(i).into(), y(i).into())).collect();
    let first = chord(rel, (&p[0].0, &p[0].1), (&p[1].0, &p[1].1))?;
    budget.check()?;
    let second = chord(rel, (&first.x, &first.y), (&p[2].0, &p[2].1))?;
    budget.check()?;
    Ok(ComposedSum {
        alpha: first.alpha,
        x_partial: first.x,
        y_partial: first.y,
        alpha_tilde: second.alpha,
        x4: second.x,
        y4: second.y,
    })
}

/// Decides `lhs = rhs` by cross-multiplication, optionally modulo the curve
/// relations.
pub fn check_identity(
    lhs: &RationalExpression,
    rhs: &RationalExpression,
    use_curve_relations: bool,
) -> Result<bool> {
    if lhs.points() != rhs.points() {
        return Err(Error::ArityMismatch(lhs.points(), rhs.points()));
    }
    let reduce = |p: SparsePolynomial| {
        if use_curve_relations {
            p.curve_normal_form()
        } else {
            p
        }
    };
    for den in [lhs.den(), rhs.den()] {
        if reduce(den.clone()).is_zero() {
            return Err(Error::ZeroDenominator(den.to_string()));
        }
    }
    let diff = &(lhs.num() * rhs.den()) - &(rhs.num() * lhs.den());
    Ok(reduce(diff).is_zero())
}

/// Builds a built-in identity and checks it under `use_curve_relations`.
pub fn check_builtin(
    id: BuiltinIdentity,
    use_curve_relations: bool,
    budget: &Budget,
) -> Result<bool> {
    let rel = Relations::from_flag(use_curve_relations);
    let (lhs, rhs) = id.build(rel, budget)?;
    budget.check()?;
    check_identity(&lhs, &rhs, use_curve_relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq2_holds_without_relations() {
        assert!(check_builtin(
            BuiltinIdentity::CoefficientRelation,
            false,
            &Budget::unlimited()
        )
        .unwrap());
    }

    #[test]
    fn lemma_needs_relations() {
        let b = Budget::unlimited();
        assert!(!check_builtin(BuiltinIdentity::SlopeSum, false, &b).unwrap());
        assert!(check_builtin(BuiltinIdentity::SlopeSum, true, &b).unwrap());
    }

    #[test]
    fn symbolic_triple_matches_expanded_forms() {
        let t = SymbolicTriple::new();
        let v = &(&(&x(1) - &x(2)) * &(&x(2) - &x(3))) * &(&x(3) - &x(1));
        assert_eq!(t.v, v);
        let sq = |i| &x(i) * &x(i);
        let c1 = &(&(&(&sq(2) - &sq(3)) * &y(1)) + &(&(&sq(3) - &sq(1)) * &y(2)))
            + &(&(&sq(1) - &sq(2)) * &y(3));
        assert_eq!(t.c1, c1);
        let c2 = &(&(&(&x(3) - &x(2)) * &y(1)) + &(&(&x(1) - &x(3)) * &y(2)))
            + &(&(&x(2) - &x(1)) * &y(3));
        assert_eq!(t.c2, c2);
    }

    #[test]
    fn coefficients_alternate_under_transpositions() {
        let t = SymbolicTriple::new();
        for (i, j) in [(1, 2), (2, 3), (1, 3)] {
            let s = t.swap_points(i, j);
            assert_eq!(s.v, -&t.v);
            assert_eq!(s.c0, -&t.c0);
            assert_eq!(s.c1, -&t.c1);
            assert_eq!(s.c2, -&t.c2);
        }
    }

    #[test]
    fn expired_budget_times_out() {
        let past = Budget::until(Instant::now());
        std::thread::sleep(std::time::Duration::from_millis(2));
        assert_eq!(
            check_builtin(BuiltinIdentity::ClosedFormX, true, &past),
            Err(Error::Timeout)
        );
    }
}
