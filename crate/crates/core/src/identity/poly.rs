//! Sparse multivariate polynomials over Q in the variables
//! `x1..xn, y1..yn, a, b`, with reduction modulo the curve relations
//! `y_i^2 = x_i^3 + a x_i + b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

/// A variable of the polynomial ring; point indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    Y(usize),
    A,
    B,
}

type Exps = SmallVec<[u8; 16]>;

/// An exponent vector over `(x1..xn, y1..yn, a, b)`.
///
/// Ordered graded-lexicographically with the y-variables heaviest, then the
/// x-variables, then `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one(points: usize) -> Monomial {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, 2 * points + 2),
        }
    }

    pub fn points(&self) -> usize {
        (self.exps.len() - 2) / 2
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, v: Var) -> u8 {
        self.exps[slot(self.points(), v)]
    }

    fn with_exponent(&self, v: Var, e: u8) -> Monomial {
        let i = slot(self.points(), v);
        let mut exps = self.exps.clone();
        let degree = self.degree - exps[i] as u32 + e as u32;
        exps[i] = e;
        Monomial { degree, exps }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Exps>>()?;
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }

    fn priority(&self) -> impl Iterator<Item = u8> + '_ {
        let n = self.points();
        self.exps[n..2 * n]
            .iter()
            .chain(&self.exps[..n])
            .chain(&self.exps[2 * n..])
            .copied()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.priority().cmp(other.priority()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn slot(points: usize, v: Var) -> usize {
    match v {
        Var::X(i) => {
            assert!((1..=points).contains(&i), "x{i} out of range");
            i - 1
        }
        Var::Y(i) => {
            assert!((1..=points).contains(&i), "y{i} out of range");
            points + i - 1
        }
        Var::A => 2 * points,
        Var::B => 2 * points + 1,
    }
}

/// A polynomial with rational coefficients; no zero coefficient is stored,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    points: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(points: usize) -> Self {
        SparsePolynomial {
            points,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(points: usize) -> Self {
        Self::constant(points, BigRational::one())
    }

    pub fn from_i64(points: usize, k: i64) -> Self {
        Self::constant(points, BigRational::from_integer(k.into()))
    }

    pub fn constant(points: usize, c: BigRational) -> Self {
        let mut p = Self::zero(points);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(points), c);
        }
        p
    }

    pub fn var(points: usize, v: Var) -> Self {
        let m = Monomial::one(points).with_exponent(v, 1);
        SparsePolynomial {
            points,
            terms: BTreeMap::from([(m, BigRational::one())]),
        }
    }

    pub fn x(points: usize, i: usize) -> Self {
        Self::var(points, Var::X(i))
    }

    pub fn y(points: usize, i: usize) -> Self {
        Self::var(points, Var::Y(i))
    }

    /// Number of points the variable set is built for.
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(self * other)
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.points == other.points {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.points, other.points))
        }
    }

    fn assert_arity(&self, other: &Self) {
        assert_eq!(self.points, other.points, "polynomial arity mismatch");
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.points);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        SparsePolynomial {
            points: self.points,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.points);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_term(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn small_coeffs(&self) -> Option<Vec<(&Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if c.is_integer() {
                    c.numer().to_i64().map(|k| (m, k))
                } else {
                    None
                }
            })
            .collect()
    }

    fn mul_small(
        lhs: &[(&Monomial, i64)],
        rhs: &[(&Monomial, i64)],
    ) -> Option<HashMap<Monomial, i128>> {
        let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(lhs.len() * 4);
        for (ma, ca) in lhs {
            for (mb, cb) in rhs {
                let prod = (*ca as i128).checked_mul(*cb as i128)?;
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = slot.checked_add(prod)?;
            }
        }
        Some(acc)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.assert_arity(other);
        if let (Some(l), Some(r)) = (self.small_coeffs(), other.small_coeffs()) {
            if let Some(acc) = Self::mul_small(&l, &r) {
                let terms = acc
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c))))
                    .collect();
                return SparsePolynomial {
                    points: self.points,
                    terms,
                };
            }
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SparsePolynomial {
            points: self.points,
            terms,
        }
    }

    /// `x_i^3 + a x_i + b`, the value a relation substitutes for `y_i^2`.
    pub fn curve_rhs(points: usize, i: usize) -> Self {
        let x = Self::x(points, i);
        &(&x.pow(3) + &(&Self::var(points, Var::A) * &x)) + &Self::var(points, Var::B)
    }

    /// Normal form modulo `y_i^2 = x_i^3 + a x_i + b`: every y-exponent ends
    /// up at most 1.
    pub fn curve_normal_form(&self) -> Self {
        let n = self.points;
        let rhs: Vec<Self> = (1..=n).map(|i| Self::curve_rhs(n, i)).collect();
        let mut powers: HashMap<(usize, u32), Self> = HashMap::new();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut base = m.clone();
            let mut subs = Vec::new();
            for i in 1..=n {
                let e = m.exponent(Var::Y(i));
                if e >= 2 {
                    base = base.with_exponent(Var::Y(i), e % 2);
                    subs.push((i, (e / 2) as u32));
                }
            }
            if subs.is_empty() {
                Self::add_term(&mut out, base, c.clone());
            } else {
                let mut factor = Self::constant(n, c.clone());
                for &(i, k) in &subs {
                    let pw = powers
                        .entry((i, k))
                        .or_insert_with(|| rhs[i - 1].pow(k))
                        .clone();
                    factor = &factor * &pw;
                }
                for (fm, fc) in factor.terms {
                    Self::add_term(&mut out, fm.mul(&base), fc);
                }
            }
        }
        SparsePolynomial {
            points: n,
            terms: out,
        }
    }

    /// One rewrite step for point `i`: each term with `y_i^e`, `e >= 2`,
    /// becomes `y_i^(e-2) (x_i^3 + a x_i + b)`.
    pub fn rewrite_once(&self, i: usize) -> Self {
        let n = self.points;
        let rhs = Self::curve_rhs(n, i);
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(Var::Y(i));
            if e < 2 {
                Self::add_term(&mut out, m.clone(), c.clone());
                continue;
            }
            let base = m.with_exponent(Var::Y(i), e - 2);
            for (rm, rc) in &rhs.terms {
                Self::add_term(&mut out, rm.mul(&base), rc * c);
            }
        }
        SparsePolynomial {
            points: n,
            terms: out,
        }
    }

    /// Whether every y-exponent is at most 1.
    pub fn is_curve_reduced(&self) -> bool {
        self.terms
            .keys()
            .all(|m| (1..=self.points).all(|i| m.exponent(Var::Y(i)) < 2))
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_arity(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.points);
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.divide(lm)?;
            let c = rc / lc;
            for (dm, dc) in &divisor.terms {
                Self::add_term(&mut rem.terms, dm.mul(&m), -(dc * &c));
            }
            Self::add_term(&mut quot.terms, m, c);
        }
        Some(quot)
    }

    /// Evaluates at `x_i = xs[i-1]`, `y_i = ys[i-1]` and the given `a`, `b`.
    pub fn eval(
        &self,
        xs: &[FieldValue],
        ys: &[FieldValue],
        a: &FieldValue,
        b: &FieldValue,
    ) -> Result<FieldValue> {
        let n = self.points;
        if xs.len() != n || ys.len() != n {
            return Err(Error::ArityMismatch(n, xs.len().min(ys.len())));
        }
        let field: FieldDescriptor = a.descriptor();
        let values: Vec<&FieldValue> = xs.iter().chain(ys).chain([a, b]).collect();
        for v in &values {
            a.same_field(v)?;
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_rational(c)?;
            for (v, &e) in values.iter().zip(&m.exps) {
                if e > 0 {
                    t = &t * &v.pow(e as u32);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Applies the variable permutation that swaps points `i` and `j`.
    pub fn swap_points(&self, i: usize, j: usize) -> Self {
        let n = self.points;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.swap(slot(n, Var::X(i)), slot(n, Var::X(j)));
                exps.swap(slot(n, Var::Y(i)), slot(n, Var::Y(j)));
                (
                    Monomial {
                        degree: m.degree,
                        exps,
                    },
                    c.clone(),
                )
            })
            .collect();
        SparsePolynomial { points: n, terms }
    }
}

/// Cofactor expansion of a small square matrix of polynomials.
pub fn poly_det(rows: &[Vec<SparsePolynomial>]) -> SparsePolynomial {
    let n = rows.len();
    assert!(
        n > 0 && rows.iter().all(|r| r.len() == n),
        "square matrix required"
    );
    if n == 1 {
        return rows[0][0].clone();
    }
    let points = rows[0][0].points();
    let mut acc = SparsePolynomial::zero(points);
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SparsePolynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.assert_arity(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            SparsePolynomial::add_term(&mut terms, m.clone(), c.clone());
        }
        SparsePolynomial {
            points: self.points,
            terms,
        }
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.assert_arity(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            SparsePolynomial::add_term(&mut terms, m.clone(), -c);
        }
        SparsePolynomial {
            points: self.points,
            terms,
        }
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        SparsePolynomial {
            points: self.points,
            terms,
        }
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.points;
        let names: Vec<String> = (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .chain(["a".to_string(), "b".to_string()])
            .collect();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = m
                .exps
                .iter()
                .zip(&names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| {
                    if *e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> SparsePolynomial {
        SparsePolynomial::x(3, i)
    }

    fn y(i: usize) -> SparsePolynomial {
        SparsePolynomial::y(3, i)
    }

    fn k(c: i64) -> SparsePolynomial {
        SparsePolynomial::from_i64(3, c)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(1) + &y(1)) * &(&x(1) - &y(1));
        assert_eq!(p, &(&x(1) * &x(1)) - &(&y(1) * &y(1)));
        assert_eq!(&p + &SparsePolynomial::zero(3), p);
    }

    #[test]
    fn vandermonde_expansion() {
        let v = &(&(&x(1) - &x(2)) * &(&x(2) - &x(3))) * &(&x(3) - &x(1));
        assert_eq!(v.len(), 6);
        let rows: Vec<Vec<_>> = (1..=3).map(|i| vec![k(1), x(i), &x(i) * &x(i)]).collect();
        assert_eq!(poly_det(&rows), v);
    }

    #[test]
    fn arity_is_checked() {
        let p = SparsePolynomial::x(2, 1);
        assert_eq!(p.checked_add(&x(1)), Err(Error::ArityMismatch(2, 3)));
    }

    #[test]
    fn normal_form_examples() {
        let a = SparsePolynomial::var(3, Var::A);
        let b = SparsePolynomial::var(3, Var::B);
        let relation = &(&(&(&y(1) * &y(1)) - &x(1).pow(3)) - &(&a * &x(1))) - &b;
        assert!(relation.curve_normal_form().is_zero());
        let cube = y(1).pow(3).curve_normal_form();
        assert_eq!(cube, &y(1) * &SparsePolynomial::curve_rhs(3, 1));
    }

    #[test]
    fn normal_form_sum_of_cubes_identity() {
        // (x3 - x2)(y1^2 - y3^2) - (x1 - x3)(y3^2 - y2^2) = V (x1 + x2 + x3)
        let sq = |i| &y(i) * &y(i);
        let lhs =
            &(&(&x(3) - &x(2)) * &(&sq(1) - &sq(3))) - &(&(&x(1) - &x(3)) * &(&sq(3) - &sq(2)));
        let v = &(&(&x(1) - &x(2)) * &(&x(2) - &x(3))) * &(&x(3) - &x(1));
        let rhs = &v * &(&(&x(1) + &x(2)) + &x(3));
        assert_ne!(lhs, rhs);
        assert_eq!(lhs.curve_normal_form(), rhs);
    }

    #[test]
    fn exact_division() {
        let d = &x(2) - &x(1);
        let q = &(&y(1) * &y(2)) + &x(3).pow(2);
        assert_eq!((&d * &q).div_exact(&d), Some(q.clone()));
        assert_eq!((&(&d * &q) + &k(1)).div_exact(&d), None);
        assert_eq!(
            SparsePolynomial::zero(3).div_exact(&d),
            Some(SparsePolynomial::zero(3))
        );
    }

    #[test]
    fn leading_term_prefers_y() {
        let p = &x(1).pow(2) + &(&y(1) * &x(2));
        let (m, _) = p.leading_term().unwrap();
        assert_eq!(m.exponent(Var::Y(1)), 1);
    }

    #[test]
    fn display() {
        let p = &(&x(1) * &x(1)) - &k(2);
        assert_eq!(p.to_string(), "x1^2 - 2");
        assert_eq!(SparsePolynomial::zero(3).to_string(), "0");
    }
}
