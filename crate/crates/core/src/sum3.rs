//! Closed form for `(P1 + P2) + P3` that is symmetric in the three points.
//!
//! With `V` the Vandermonde determinant of the x-coordinates and `c0, c1, c2`
//! the determinants obtained by substituting the y-column,
//!
//! ```text
//! x4 = -x1 - x2 - x3 + (V^2 - 2 c1 c2) / c2^2
//! y4 = -(c2 x4^2 + c1 x4 + c0) / V
//! ```
//!
//! Each of `V, c0, c1, c2` is alternating in the points, so both expressions
//! are invariant under every permutation of the inputs.

use crate::curve::{Curve, Point};
use crate::error::{Error, Hypothesis, Result};
use crate::field::FieldValue;

/// The four 3x3 determinants attached to a triple of affine points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCoefficients {
    /// `det [1 x_i x_i^2] = (x1 - x2)(x2 - x3)(x3 - x1)`
    pub v: FieldValue,
    /// `det [x_i x_i^2 y_i]`
    pub c0: FieldValue,
    /// `-det [1 x_i^2 y_i]`
    pub c1: FieldValue,
    /// `det [1 x_i y_i]`
    pub c2: FieldValue,
}

/// Chord slopes of `(P1, P2)` and of `(P1 + P2, P3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopePair {
    pub alpha: FieldValue,
    pub alpha_tilde: FieldValue,
    /// The intermediate point `P1 + P2`.
    pub partial: Point,
}

/// The parabola `y = u2 x^2 + u1 x + u0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabola {
    pub u0: FieldValue,
    pub u1: FieldValue,
    pub u2: FieldValue,
}

impl Parabola {
    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        &(&(&self.u2 * x) + &self.u1) * x + &self.u0
    }

    /// `y - (u2 x^2 + u1 x + u0)`; zero iff `(x, y)` lies on the parabola.
    pub fn residual(&self, x: &FieldValue, y: &FieldValue) -> FieldValue {
        y - self.eval(x)
    }
}

type Coords<'a> = [(&'a FieldValue, &'a FieldValue); 3];

fn affine3<'a>(p1: &'a Point, p2: &'a Point, p3: &'a Point) -> Result<Coords<'a>> {
    let c = [p1.coords(), p2.coords(), p3.coords()];
    let [Some(a), Some(b), Some(c)] = c else {
        return Err(Error::NonGeneric(Hypothesis::AffineInputs));
    };
    for (x, y) in [b, c] {
        a.0.same_field(x)?;
        a.0.same_field(y)?;
    }
    a.0.same_field(a.1)?;
    Ok([a, b, c])
}

fn coeffs_of(pts: &Coords<'_>) -> TripleCoefficients {
    let [(x1, y1), (x2, y2), (x3, y3)] = *pts;
    let (d12, d23, d31) = (x1 - x2, x2 - x3, x3 - x1);
    let v = &(&d12 * &d23) * &d31;
    let (s1, s2, s3) = (x1.square(), x2.square(), x3.square());
    // cofactor expansions along the y-column
    let c0 = y1 * &(&(x2 * x3) * &(x3 - x2))
        + y2 * &(&(x1 * x3) * &(x1 - x3))
        + y3 * &(&(x1 * x2) * &(x2 - x1));
    let c1 = y1 * &(&s2 - &s3) + y2 * &(&s3 - &s1) + y3 * &(&s1 - &s2);
    let c2 = y1 * &(x3 - x2) + y2 * &(x1 - x3) + y3 * &(x2 - x1);
    TripleCoefficients { v, c0, c1, c2 }
}

/// `V, c0, c1, c2` for three affine points. No curve membership is needed.
pub fn triple_coeffs(p1: &Point, p2: &Point, p3: &Point) -> Result<TripleCoefficients> {
    Ok(coeffs_of(&affine3(p1, p2, p3)?))
}

fn require_distinct_x(pts: &Coords<'_>) -> Result<()> {
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        if pts[i].0 == pts[j].0 {
            return Err(Error::NonGeneric(Hypothesis::DistinctX {
                i: i + 1,
                j: j + 1,
            }));
        }
    }
    Ok(())
}

/// `(P1 + P2) + P3` by the symmetric closed form.
///
/// Requires `P1 != ±P2`, `P2 != ±P3`, `P1 != ±P3` and `P1 + P2 != ±P3`; any
/// violation is reported as [`Error::NonGeneric`] naming the hypothesis.
pub fn sum3_symmetric(curve: &Curve, p1: &Point, p2: &Point, p3: &Point) -> Result<Point> {
    let pts = affine3(p1, p2, p3)?;
    for p in [p1, p2, p3] {
        curve.ensure_on_curve(p)?;
    }
    require_distinct_x(&pts)?;
    let partial = curve.add_unchecked(p1, p2).0;
    if partial.x() == Some(pts[2].0) {
        return Err(Error::NonGeneric(Hypothesis::PartialSumNotOpposite));
    }
    let TripleCoefficients { v, c0, c1, c2 } = coeffs_of(&pts);
    assert!(!c2.is_zero(), "c2 vanished on a generic triple");
    let f = v.descriptor();
    let two = f.from_i64(2);
    let sum_x = pts[0].0 + pts[1].0 + pts[2].0;
    let x4 = (v.square() - &two * &(&c1 * &c2)) * c2.square().inv().expect("c2 != 0") - sum_x;
    let y4 = -((&c2 * &x4.square()) + &c1 * &x4 + &c0) * v.inv().expect("V != 0");
    Ok(Point::Affine { x: x4, y: y4 })
}

/// The slopes `alpha` of `P1, P2` and `alpha~` of `P1 + P2, P3`.
///
/// Needs `x1 != x2` and `P1 + P2 != ±P3` so both are chord slopes. The
/// returned pair always satisfies `c2 (alpha + alpha~) = V`, so
/// `alpha + alpha~ = V / c2` whenever the x-coordinates are distinct, and
/// `alpha + alpha~ = 0` when `P3 = -P1`.
pub fn slope_sum(curve: &Curve, p1: &Point, p2: &Point, p3: &Point) -> Result<SlopePair> {
    let pts = affine3(p1, p2, p3)?;
    for p in [p1, p2, p3] {
        curve.ensure_on_curve(p)?;
    }
    let [(x1, y1), (x2, y2), (x3, y3)] = pts;
    if x1 == x2 {
        return Err(Error::NonGeneric(Hypothesis::DistinctX { i: 1, j: 2 }));
    }
    let alpha = (y2 - y1) * (x2 - x1).inv().expect("x1 != x2");
    let partial = curve.add_unchecked(p1, p2).0;
    let (xt, yt) = partial.coords().expect("chord sum of distinct x is affine");
    if xt == x3 {
        return Err(Error::NonGeneric(Hypothesis::PartialSumNotOpposite));
    }
    let alpha_tilde = (y3 - yt) * (x3 - xt).inv().expect("x3 != x~");
    let TripleCoefficients { v, c2, .. } = coeffs_of(&pts);
    assert!(
        (&c2 * &(&alpha + &alpha_tilde) - &v).is_zero(),
        "c2 (alpha + alpha~) != V"
    );
    Ok(SlopePair {
        alpha,
        alpha_tilde,
        partial,
    })
}

/// The unique parabola through three points with distinct x-coordinates,
/// `u_i = c_i / V` by Cramer's rule on the Vandermonde system.
pub fn parabola_coeffs(p1: &Point, p2: &Point, p3: &Point) -> Result<Parabola> {
    let pts = affine3(p1, p2, p3)?;
    require_distinct_x(&pts)?;
    let TripleCoefficients { v, c0, c1, c2 } = coeffs_of(&pts);
    let vinv = v.inv().expect("V != 0");
    Ok(Parabola {
        u0: c0 * &vinv,
        u1: c1 * &vinv,
        u2: c2 * &vinv,
    })
}
