//! Short Weierstrass curves `y^2 = x^3 + ax + b` and the chord-tangent law.
//!
//! [`Curve::add`] is the ground truth every closed-form formula in this
//! crate is checked against.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

/// A point in affine coordinates, or the point at infinity `O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: FieldValue, y: FieldValue },
}

impl Point {
    /// Builds an affine point; the two coordinates must share a field.
    pub fn new(x: FieldValue, y: FieldValue) -> Result<Point> {
        x.same_field(&y)?;
        Ok(Point::Affine { x, y })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldValue> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&FieldValue> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn coords(&self) -> Option<(&FieldValue, &FieldValue)> {
        match self {
            Point::Affine { x, y } => Some((x, y)),
            Point::Infinity => None,
        }
    }

    pub fn descriptor(&self) -> Option<FieldDescriptor> {
        self.x().map(FieldValue::descriptor)
    }

    /// `-O = O`, `-(x, y) = (x, -y)`.
    pub fn negate(&self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

/// Which rule of the addition law produced a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AddCase {
    /// One summand is `O`.
    Identity,
    /// Distinct x-coordinates: chord slope.
    Chord,
    /// Doubling a point with `y != 0`: tangent slope.
    Tangent,
    /// `x1 = x2`, `y1 = -y2` (including doubling a point with `y = 0`): result `O`.
    Vertical,
}

impl AddCase {
    pub fn name(self) -> &'static str {
        match self {
            AddCase::Identity => "identity",
            AddCase::Chord => "chord",
            AddCase::Tangent => "tangent",
            AddCase::Vertical => "vertical",
        }
    }
}

/// Coefficients of a nonsingular curve `y^2 = x^3 + ax + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    a: FieldValue,
    b: FieldValue,
}

impl Curve {
    pub fn new(a: FieldValue, b: FieldValue) -> Result<Curve> {
        a.same_field(&b)?;
        let f = a.descriptor();
        let disc = &f.from_i64(4) * &a.pow(3) + &f.from_i64(27) * &b.square();
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { a, b })
    }

    pub fn from_i64(field: FieldDescriptor, a: i64, b: i64) -> Result<Curve> {
        Curve::new(field.from_i64(a), field.from_i64(b))
    }

    /// A uniformly random nonsingular curve over `field`.
    pub fn random<R: Rng + ?Sized>(field: FieldDescriptor, rng: &mut R) -> Curve {
        loop {
            if let Ok(c) = Curve::new(field.sample(rng), field.sample(rng)) {
                return c;
            }
        }
    }

    pub fn a(&self) -> &FieldValue {
        &self.a
    }

    pub fn b(&self) -> &FieldValue {
        &self.b
    }

    pub fn field(&self) -> FieldDescriptor {
        self.a.descriptor()
    }

    /// Right-hand side `x^3 + ax + b`.
    pub fn rhs(&self, x: &FieldValue) -> FieldValue {
        &(&x.square() + &self.a) * x + &self.b
    }

    pub fn is_on_curve(&self, p: &Point) -> Result<bool> {
        match p {
            Point::Infinity => Ok(true),
            Point::Affine { x, y } => {
                self.a.same_field(x)?;
                Ok(y.square() == self.rhs(x))
            }
        }
    }

    pub fn ensure_on_curve(&self, p: &Point) -> Result<()> {
        if self.is_on_curve(p)? {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve(p.to_string()))
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.add_traced(p, q).map(|(r, _)| r)
    }

    /// Adds two points and reports which rule of the law applied.
    pub fn add_traced(&self, p: &Point, q: &Point) -> Result<(Point, AddCase)> {
        self.ensure_on_curve(p)?;
        self.ensure_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// The addition law without membership checks. Callers guarantee both
    /// points lie on this curve.
    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> (Point, AddCase) {
        let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
            (None, _) => return (q.clone(), AddCase::Identity),
            (_, None) => return (p.clone(), AddCase::Identity),
            (Some(a), Some(b)) => (a, b),
        };
        let (alpha, case) = if x1 != x2 {
            let slope = (y2 - y1) * (x2 - x1).inv().expect("x1 != x2");
            (slope, AddCase::Chord)
        } else if *y1 == -y2 {
            return (Point::Infinity, AddCase::Vertical);
        } else {
            let f = x1.descriptor();
            let num = &f.from_i64(3) * &x1.square() + &self.a;
            let den = &f.from_i64(2) * y1;
            (
                num * den.inv().expect("y1 != 0 in the tangent case"),
                AddCase::Tangent,
            )
        };
        let x3 = &alpha.square() - x1 - x2;
        let y3 = -y1 - &alpha * &(&x3 - x1);
        (Point::Affine { x: x3, y: y3 }, case)
    }

    pub fn double(&self, p: &Point) -> Result<Point> {
        self.add(p, p)
    }

    /// `k * P` by left-to-right double-and-add; negative `k` negates.
    pub fn scalar_mul(&self, k: i64, p: &Point) -> Result<Point> {
        self.ensure_on_curve(p)?;
        let base = if k < 0 { p.negate() } else { p.clone() };
        let k = k.unsigned_abs();
        let mut acc = Point::Infinity;
        for bit in (0..u64::BITS - k.leading_zeros()).rev() {
            acc = self.add_unchecked(&acc, &acc).0;
            if (k >> bit) & 1 == 1 {
                acc = self.add_unchecked(&acc, &base).0;
            }
        }
        Ok(acc)
    }

    /// A random affine point over a prime field: sample x until
    /// `x^3 + ax + b` is a square, then take the smaller root.
    /// Returns `None` over Q.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Point> {
        let field = self.field();
        field.modulus()?;
        loop {
            let x = field.sample(rng);
            if let Some(y) = self.rhs(&x).sqrt() {
                return Some(Point::Affine { x, y });
            }
        }
    }

    /// Like [`Curve::random_point`] but with a uniformly random sign on `y`.
    pub fn random_point_signed<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Point> {
        let p = self.random_point(rng)?;
        Some(if rng.gen() { p.negate() } else { p })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + ({})x + ({}) over {}",
            self.a,
            self.b,
            self.field()
        )
    }
}

/// The integral points `(-2,3), (-1,4), (2,5), (4,9), (8,23)` of `y^2 = x^3 + 17` over Q.
pub fn mordell17() -> (Curve, Vec<Point>) {
    let q = FieldDescriptor::Rationals;
    let curve = Curve::from_i64(q, 0, 17).expect("nonsingular");
    let points = [(-2, 3), (-1, 4), (2, 5), (4, 9), (8, 23)]
        .into_iter()
        .map(|(x, y)| Point::Affine {
            x: q.from_i64(x),
            y: q.from_i64(y),
        })
        .collect();
    (curve, points)
}

/// Rational points of `y^2 = x^3 + 17` of modest height: the integral points,
/// their multiples `k * P` for `0 < |k| <= max_multiple`, and pairwise sums
/// of integral points and their negatives.
pub fn mordell17_corpus(max_multiple: i64) -> (Curve, Vec<Point>) {
    let (curve, base) = mordell17();
    let mut out: Vec<Point> = Vec::new();
    let mut push = |p: Point| {
        if !p.is_infinity() && !out.contains(&p) {
            out.push(p);
        }
    };
    for p in &base {
        for k in 1..=max_multiple {
            let kp = curve.scalar_mul(k, p).expect("on curve");
            push(kp.negate());
            push(kp);
        }
    }
    for (i, p) in base.iter().enumerate() {
        for q in &base[i + 1..] {
            push(curve.add(p, q).expect("on curve"));
            push(curve.add(p, &q.negate()).expect("on curve"));
        }
    }
    (curve, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn pt(f: FieldDescriptor, x: i64, y: i64) -> Point {
        Point::Affine {
            x: f.from_i64(x),
            y: f.from_i64(y),
        }
    }

    #[test]
    fn membership() {
        let e17 = Curve::from_i64(q(), 0, 17).unwrap();
        assert!(e17.is_on_curve(&pt(q(), -2, 3)).unwrap());
        assert!(e17.is_on_curve(&Point::Infinity).unwrap());
        let e1 = Curve::from_i64(q(), 0, 1).unwrap();
        assert!(!e1.is_on_curve(&pt(q(), 1, 1)).unwrap());
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert!(matches!(
            e1.is_on_curve(&pt(f5, 0, 1)),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn singular_curves_are_rejected() {
        assert_eq!(Curve::from_i64(q(), 0, 0), Err(Error::SingularCurve));
        // 4(-3)^3 + 27(2)^2 = 0
        assert_eq!(Curve::from_i64(q(), -3, 2), Err(Error::SingularCurve));
    }

    #[test]
    fn negation() {
        assert_eq!(pt(q(), 0, 1).negate(), pt(q(), 0, -1));
        assert_eq!(Point::Infinity.negate(), Point::Infinity);
        assert_eq!(pt(q(), -1, 0).negate(), pt(q(), -1, 0));
    }

    #[test]
    fn addition_cases() {
        let e = Curve::from_i64(q(), 0, 1).unwrap();
        assert_eq!(
            e.add_traced(&pt(q(), 0, 1), &pt(q(), 2, 3)).unwrap(),
            (pt(q(), -1, 0), AddCase::Chord)
        );
        assert_eq!(
            e.add_traced(&pt(q(), 0, 1), &pt(q(), 0, -1)).unwrap(),
            (Point::Infinity, AddCase::Vertical)
        );
        assert_eq!(
            e.add_traced(&pt(q(), 0, 1), &pt(q(), 0, 1)).unwrap(),
            (pt(q(), 0, -1), AddCase::Tangent)
        );
        let p = pt(q(), 2, 3);
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(e.add(&Point::Infinity, &p).unwrap(), p);
        // vertical tangent at a 2-torsion point
        assert_eq!(
            e.add_traced(&pt(q(), -1, 0), &pt(q(), -1, 0)).unwrap(),
            (Point::Infinity, AddCase::Vertical)
        );
    }

    #[test]
    fn add_rejects_off_curve_points() {
        let e = Curve::from_i64(q(), 0, 1).unwrap();
        assert!(matches!(
            e.add(&pt(q(), 1, 1), &pt(q(), 0, 1)),
            Err(Error::PointNotOnCurve(_))
        ));
    }

    #[test]
    fn scalar_multiples_of_torsion_point() {
        let e = Curve::from_i64(q(), 0, 1).unwrap();
        let p = pt(q(), 2, 3);
        assert_eq!(e.scalar_mul(2, &p).unwrap(), pt(q(), 0, 1));
        assert_eq!(e.scalar_mul(3, &p).unwrap(), pt(q(), -1, 0));
        assert_eq!(e.scalar_mul(1, &p).unwrap(), p);
        assert_eq!(e.scalar_mul(6, &p).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(-2, &p).unwrap(), pt(q(), 0, -1));
        assert_eq!(e.scalar_mul(7, &p).unwrap(), p);
    }

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let (e, pts) = mordell17();
        let p = &pts[0];
        let mut acc = Point::Infinity;
        for k in 0..8 {
            assert_eq!(e.scalar_mul(k, p).unwrap(), acc);
            assert_eq!(e.scalar_mul(-k, p).unwrap(), acc.negate());
            acc = e.add(&acc, p).unwrap();
        }
    }

    #[test]
    fn corpus_points_are_on_curve() {
        let (e, pts) = mordell17_corpus(3);
        assert!(pts.len() > 30);
        for p in &pts {
            assert!(e.is_on_curve(p).unwrap(), "{p}");
        }
    }

    #[test]
    fn random_points_over_prime_field() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = FieldDescriptor::prime(10007).unwrap();
        let e = Curve::random(f, &mut rng);
        for _ in 0..100 {
            let p = e.random_point(&mut rng).unwrap();
            assert!(e.is_on_curve(&p).unwrap());
        }
        assert!(mordell17().0.random_point(&mut rng).is_none());
    }
}
