use std::fmt;

use super::poly::SparsePolynomial;
use crate::error::{Error, Result};

/// An unreduced quotient of polynomials. Equality of two expressions is
/// decided by cross-multiplication, never by gcd reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpression {
    num: SparsePolynomial,
    den: SparsePolynomial,
}

impl RationalExpression {
    pub fn new(num: SparsePolynomial, den: SparsePolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(num.to_string()));
        }
        Ok(RationalExpression { num, den })
    }

    pub fn from_poly(p: SparsePolynomial) -> Self {
        let den = SparsePolynomial::one(p.points());
        RationalExpression { num: p, den }
    }

    pub fn num(&self) -> &SparsePolynomial {
        &self.num
    }

    pub fn den(&self) -> &SparsePolynomial {
        &self.den
    }

    pub fn points(&self) -> usize {
        self.num.points()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    // Shares a denominator when one divides the other, which keeps the
    // composed chord formulas at their natural size.
    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let join =
            |l: SparsePolynomial, r: SparsePolynomial| if subtract { &l - &r } else { &l + &r };
        let (a, b, c, d) = (&self.num, &self.den, &other.num, &other.den);
        if b == d {
            return RationalExpression {
                num: join(a.clone(), c.clone()),
                den: b.clone(),
            };
        }
        if let Some(q) = divides(d, b) {
            return RationalExpression {
                num: join(a.clone(), c * &q),
                den: b.clone(),
            };
        }
        if let Some(q) = divides(b, d) {
            return RationalExpression {
                num: join(a * &q, c.clone()),
                den: d.clone(),
            };
        }
        RationalExpression {
            num: join(a * d, c * b),
            den: b * d,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalExpression {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator(other.den.to_string()));
        }
        let (a, b, c, d) = (&self.num, &self.den, &other.num, &other.den);
        if let Some(q) = divides(d, b) {
            return Ok(RationalExpression {
                num: a.clone(),
                den: &q * c,
            });
        }
        if let Some(q) = divides(b, d) {
            return Ok(RationalExpression {
                num: a * &q,
                den: c.clone(),
            });
        }
        Ok(RationalExpression {
            num: a * d,
            den: b * c,
        })
    }

    pub fn neg(&self) -> Self {
        RationalExpression {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = SparsePolynomial::from_i64(self.points(), k);
        RationalExpression {
            num: &self.num * &k,
            den: self.den.clone(),
        }
    }

    /// Applies `f` to numerator and denominator, e.g. reduction modulo the
    /// curve relations.
    pub fn map(&self, f: impl Fn(&SparsePolynomial) -> SparsePolynomial) -> Result<Self> {
        RationalExpression::new(f(&self.num), f(&self.den))
    }
}

/// `big / small` when `small` divides `big` exactly (and is not constant 1).
fn divides(small: &SparsePolynomial, big: &SparsePolynomial) -> Option<SparsePolynomial> {
    if small.total_degree()? > big.total_degree()? || small.len() > big.len() {
        return None;
    }
    big.div_exact(small)
}

impl From<SparsePolynomial> for RationalExpression {
    fn from(p: SparsePolynomial) -> Self {
        RationalExpression::from_poly(p)
    }
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> SparsePolynomial {
        SparsePolynomial::x(2, i)
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(
            RationalExpression::new(x(1), SparsePolynomial::zero(2)),
            Err(Error::ZeroDenominator(_))
        ));
        let zero = RationalExpression::from_poly(SparsePolynomial::zero(2));
        assert!(RationalExpression::from_poly(x(1)).div(&zero).is_err());
    }

    #[test]
    fn shared_denominators_stay_small() {
        let d = &x(2) - &x(1);
        let r = RationalExpression::new(x(1), &d * &d).unwrap();
        let s = RationalExpression::new(x(2), d.clone()).unwrap();
        let sum = r.add(&s);
        assert_eq!(sum.den(), &(&d * &d));
        let q = r.div(&s).unwrap();
        assert_eq!(q.den(), &(&d * &x(2)));
        assert_eq!(q.num(), &x(1));
    }
}
