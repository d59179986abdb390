//! Closed-form coordinates of `P1 + ... + Pn` from cofactors of one matrix.
//!
//! For points `P1..Pn` and their sum `P_{n+1}`, let `M` be the
//! `(n+1) x (n+1)` matrix whose row `i` is
//!
//! ```text
//! 1, x_i, ..., x_i^h,   y_i, x_i y_i, ..., x_i^(f-1) y_i        h = ceil(n/2), f = floor(n/2)
//! ```
//!
//! with the y-block of the last row negated. `det M` vanishes, and expanding
//! along the last row expresses `y_{n+1}` as a ratio of polynomials in
//! `x_{n+1}` whose coefficients are the signed cofactors
//! `c_l = (-1)^l det M_{l+1}` (delete column `l+1` and the last row).
//! Writing `d_l = c_{l+h+1}`, the x-coordinate follows from the two leading
//! coefficients of the norm of that function:
//!
//! ```text
//! n = 2m:     x_{n+1} = -sum x_k + (c_m^2 - 2 d_{m-1} d_{m-2}) / d_{m-1}^2
//! n = 2m - 1: x_{n+1} = -sum x_k + (d_{m-2}^2 - 2 c_m c_{m-1}) / c_m^2
//! ```
//!
//! with `d_{-1} = 0` so that `n = 2` reduces to the chord rule.

use crate::curve::{AddCase, Curve, Point};
use crate::det::det_exact;
use crate::error::{Error, Hypothesis, Result};
use crate::field::FieldValue;

/// The `(n+1) x (n+1)` matrix built from `n` points and a candidate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumMatrix {
    n: usize,
    rows: Vec<Vec<FieldValue>>,
}

impl SumMatrix {
    pub fn new(points: &[Point], next: &Point) -> Result<SumMatrix> {
        let coords = affine_coords(points)?;
        let (xn, yn) = next
            .coords()
            .ok_or(Error::NonGeneric(Hypothesis::AffineInputs))?;
        coords[0].0.same_field(xn)?;
        coords[0].0.same_field(yn)?;
        let n = points.len();
        let mut rows: Vec<_> = coords.iter().map(|(x, y)| matrix_row(n, x, y)).collect();
        rows.push(matrix_row(n, xn, &-yn));
        Ok(SumMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<FieldValue>] {
        &self.rows
    }

    pub fn det(&self) -> FieldValue {
        det_exact(&self.rows).expect("rows share one field")
    }
}

/// `ceil(n/2)`: highest power of x in the pure-x block.
pub fn x_block_degree(n: usize) -> usize {
    n.div_ceil(2)
}

/// `floor(n/2)`: number of columns in the y block.
pub fn y_block_width(n: usize) -> usize {
    n / 2
}

fn matrix_row(n: usize, x: &FieldValue, y: &FieldValue) -> Vec<FieldValue> {
    let h = x_block_degree(n);
    let f = y_block_width(n);
    let mut row = Vec::with_capacity(n + 1);
    let mut pow = x.descriptor().one();
    for _ in 0..=h {
        row.push(pow.clone());
        pow = &pow * x;
    }
    let mut ypow = y.clone();
    for _ in 0..f {
        row.push(ypow.clone());
        ypow = &ypow * x;
    }
    debug_assert_eq!(row.len(), n + 1);
    row
}

fn affine_coords(points: &[Point]) -> Result<Vec<(&FieldValue, &FieldValue)>> {
    if points.len() < 2 {
        return Err(Error::NonGeneric(Hypothesis::MinimumPoints {
            needed: 2,
            got: points.len(),
        }));
    }
    let coords: Vec<_> = points
        .iter()
        .map(Point::coords)
        .collect::<Option<_>>()
        .ok_or(Error::NonGeneric(Hypothesis::AffineInputs))?;
    let first = coords[0].0;
    for (x, y) in &coords {
        first.same_field(x)?;
        first.same_field(y)?;
    }
    Ok(coords)
}

/// The signed cofactors `c_0..c_n` of the last row of [`SumMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumCofactors {
    n: usize,
    c: Vec<FieldValue>,
}

impl SumCofactors {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[FieldValue] {
        &self.c
    }

    pub fn c(&self, l: usize) -> &FieldValue {
        &self.c[l]
    }

    /// `d_l = c_{l + ceil(n/2) + 1}`, with `d_{-1} = 0`.
    pub fn d(&self, l: isize) -> FieldValue {
        if l < 0 {
            return self.c[0].descriptor().zero();
        }
        assert!((l as usize) < y_block_width(self.n), "d index out of range");
        self.c[l as usize + x_block_degree(self.n) + 1].clone()
    }

    /// `x_{n+1}` given `sum x_k` over the inputs.
    pub fn next_x(&self, sum_x: &FieldValue) -> Result<FieldValue> {
        let two = sum_x.descriptor().from_i64(2);
        let (num, den, what) = if self.n.is_multiple_of(2) {
            let m = (self.n / 2) as isize;
            let lead = self.d(m - 1);
            let num = self.c(m as usize).square() - &two * &(&lead * &self.d(m - 2));
            (num, lead.square(), "d_{m-1}")
        } else {
            let m = self.n.div_ceil(2);
            let lead = self.c(m);
            let num = self.d(m as isize - 2).square() - &two * &(lead * self.c(m - 1));
            (num, lead.square(), "c_m")
        };
        let inv = den
            .inv()
            .map_err(|_| Error::NonGeneric(Hypothesis::NonzeroDenominator(what)))?;
        Ok(num * inv - sum_x)
    }

    /// `y_{n+1} = (sum_l c_l x^l) / (sum_l d_l x^l)` at `x = x_next`.
    pub fn next_y(&self, x_next: &FieldValue) -> Result<FieldValue> {
        let h = x_block_degree(self.n);
        let num = horner(&self.c[..=h], x_next);
        let den = horner(&self.c[h + 1..], x_next);
        let inv = den
            .inv()
            .map_err(|_| Error::NonGeneric(Hypothesis::NonzeroDenominator("y denominator")))?;
        Ok(num * inv)
    }
}

fn horner(coeffs: &[FieldValue], x: &FieldValue) -> FieldValue {
    coeffs
        .iter()
        .rev()
        .fold(x.descriptor().zero(), |acc, c| &acc * x + c)
}

/// All `n + 1` signed cofactors; they depend only on `P1..Pn`.
pub fn cofactors(points: &[Point]) -> Result<SumCofactors> {
    let coords = affine_coords(points)?;
    let n = points.len();
    let top: Vec<Vec<FieldValue>> = coords.iter().map(|(x, y)| matrix_row(n, x, y)).collect();
    let c = (0..=n)
        .map(|l| {
            let minor: Vec<Vec<FieldValue>> = top
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != l)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det_exact(&minor).expect("rows share one field");
            if l % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    Ok(SumCofactors { n, c })
}

fn sum_x(points: &[Point]) -> FieldValue {
    let mut it = points.iter().filter_map(Point::x);
    let first = it.next().expect("at least one point").clone();
    it.fold(first, |acc, x| acc + x)
}

/// `x_{n+1}` from the even/odd cofactor formula.
pub fn multisum_x(points: &[Point]) -> Result<FieldValue> {
    let c = cofactors(points)?;
    c.next_x(&sum_x(points))
}

/// `y_{n+1}` at a given `x_{n+1}`.
pub fn multisum_y(points: &[Point], x_next: &FieldValue) -> Result<FieldValue> {
    let c = cofactors(points)?;
    points[0].x().expect("affine").same_field(x_next)?;
    c.next_y(x_next)
}

/// `P1 + ... + Pn` by the closed form.
///
/// The configuration must be generic: every step of the left fold is a chord
/// addition and every cofactor denominator is nonzero. Anything else is
/// [`Error::NonGeneric`]; use [`iterated_sum`] for arbitrary inputs.
pub fn multisum(curve: &Curve, points: &[Point]) -> Result<Point> {
    multisum_with_cofactors(curve, points).map(|(p, _)| p)
}

/// [`multisum`] also returning the cofactors it used.
pub fn multisum_with_cofactors(curve: &Curve, points: &[Point]) -> Result<(Point, SumCofactors)> {
    affine_coords(points)?;
    for p in points {
        curve.ensure_on_curve(p)?;
    }
    let mut acc = points[0].clone();
    for (step, p) in points[1..].iter().enumerate() {
        let (next, case) = curve.add_unchecked(&acc, p);
        if case != AddCase::Chord {
            return Err(Error::NonGeneric(Hypothesis::ChordStep { step: step + 1 }));
        }
        acc = next;
    }
    let c = cofactors(points)?;
    let x = c.next_x(&sum_x(points))?;
    let y = c.next_y(&x)?;
    Ok((Point::Affine { x, y }, c))
}

/// `((P1 + P2) + P3) + ...` by the addition law; total on curve points.
pub fn iterated_sum(curve: &Curve, points: &[Point]) -> Result<Point> {
    for p in points {
        curve.ensure_on_curve(p)?;
    }
    Ok(points
        .iter()
        .fold(Point::Infinity, |acc, p| curve.add_unchecked(&acc, p).0))
}

/// Whether `det M = 0` for the matrix built from `points` and `next`.
pub fn verify_vanishing(points: &[Point], next: &Point) -> Result<bool> {
    Ok(SumMatrix::new(points, next)?.det().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::sum3::triple_coeffs;

    fn pt(f: FieldDescriptor, x: i64, y: i64) -> Point {
        Point::Affine {
            x: f.from_i64(x),
            y: f.from_i64(y),
        }
    }

    fn golden() -> (Curve, Vec<Point>) {
        let f = FieldDescriptor::prime(5).unwrap();
        (
            Curve::from_i64(f, 1, 1).unwrap(),
            vec![pt(f, 0, 1), pt(f, 2, 1), pt(f, 4, 2)],
        )
    }

    fn pair() -> (Curve, Vec<Point>) {
        let q = FieldDescriptor::Rationals;
        (
            Curve::from_i64(q, 0, 1).unwrap(),
            vec![pt(q, 0, 1), pt(q, 2, 3)],
        )
    }

    #[test]
    fn matrix_shape() {
        let (_, pts) = golden();
        let f = FieldDescriptor::prime(5).unwrap();
        let m = SumMatrix::new(&pts, &pt(f, 2, 4)).unwrap();
        assert_eq!(m.rows().len(), 4);
        // last row is (1, x4, x4^2, -y4)
        assert_eq!(
            m.rows()[3],
            vec![f.one(), f.from_i64(2), f.from_i64(4), f.from_i64(1)]
        );
        for n in 2..=9 {
            assert_eq!(1 + x_block_degree(n) + y_block_width(n), n + 1);
        }
    }

    #[test]
    fn golden_cofactors() {
        let (_, pts) = golden();
        let f = FieldDescriptor::prime(5).unwrap();
        let c = cofactors(&pts).unwrap();
        let want: Vec<_> = [1, 1, 2, 4].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(c.as_slice(), &want[..]);
        let t = triple_coeffs(&pts[0], &pts[1], &pts[2]).unwrap();
        assert_eq!((c.c(0), c.c(1), c.c(2)), (&t.c0, &t.c1, &t.c2));
        assert_eq!(c.d(0), -t.v);
    }

    #[test]
    fn pair_cofactors_give_chord_slope() {
        let (_, pts) = pair();
        let q = FieldDescriptor::Rationals;
        let c = cofactors(&pts).unwrap();
        assert_eq!(c.c(0), &q.from_i64(-2));
        assert_eq!(c.c(1), &q.from_i64(-2));
        assert_eq!(c.c(2), &q.from_i64(2));
        assert_eq!(-c.c(1) * c.c(2).inv().unwrap(), q.one());
        assert_eq!(c.d(-1), q.zero());
    }

    #[test]
    fn repeated_x_kills_the_pure_vandermonde_cofactor() {
        // for n = 2, 3 the last cofactor deletes the single y column
        let (_, pts) = golden();
        let opposite = vec![pts[0].clone(), pts[1].clone(), pts[0].negate()];
        assert!(cofactors(&opposite).unwrap().c(3).is_zero());
        let pair = [opposite[0].clone(), opposite[2].clone()];
        assert!(cofactors(&pair).unwrap().c(2).is_zero());
    }

    #[test]
    fn closed_form_coordinates() {
        let (e, pts) = golden();
        let f = FieldDescriptor::prime(5).unwrap();
        assert_eq!(multisum_x(&pts).unwrap(), f.from_i64(2));
        assert_eq!(multisum_y(&pts, &f.from_i64(2)).unwrap(), f.from_i64(4));
        assert_eq!(multisum(&e, &pts).unwrap(), pt(f, 2, 4));
        assert_eq!(iterated_sum(&e, &pts).unwrap(), pt(f, 2, 4));

        let (e, pts) = pair();
        let q = FieldDescriptor::Rationals;
        assert_eq!(multisum_x(&pts).unwrap(), q.from_i64(-1));
        assert_eq!(multisum_y(&pts, &q.from_i64(-1)).unwrap(), q.zero());
        assert_eq!(multisum(&e, &pts).unwrap(), pt(q, -1, 0));
    }

    #[test]
    fn vanishing() {
        let (_, pts) = golden();
        let f = FieldDescriptor::prime(5).unwrap();
        assert!(verify_vanishing(&pts, &pt(f, 2, 4)).unwrap());
        assert!(!verify_vanishing(&pts, &pt(f, 2, 1)).unwrap());
        let (_, pts) = pair();
        let q = FieldDescriptor::Rationals;
        assert!(verify_vanishing(&pts, &pt(q, -1, 0)).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        let (e, pts) = golden();
        let f = FieldDescriptor::prime(5).unwrap();
        let repeated = vec![pts[0].clone(), pts[0].clone(), pts[1].clone()];
        assert_eq!(
            multisum_x(&repeated),
            Err(Error::NonGeneric(Hypothesis::NonzeroDenominator("c_m")))
        );
        // P3 = -P1: V = 0 but c_2 survives, and the x formula still lands on x2
        let opposite = vec![pts[0].clone(), pts[1].clone(), pts[0].negate()];
        assert_eq!(multisum_x(&opposite).unwrap(), *pts[1].x().unwrap());
        assert_eq!(
            multisum(&e, &opposite),
            Err(Error::NonGeneric(Hypothesis::NonzeroDenominator(
                "y denominator"
            )))
        );
        assert_eq!(
            multisum(&e, &pts[..1]),
            Err(Error::NonGeneric(Hypothesis::MinimumPoints {
                needed: 2,
                got: 1
            }))
        );
        assert_eq!(
            multisum_y(&pts, &FieldDescriptor::Rationals.one()).map(|_| ()),
            Err(Error::DescriptorMismatch {
                left: f,
                right: FieldDescriptor::Rationals
            })
        );
    }

    #[test]
    fn iterated_sum_edge_cases() {
        let (e, pts) = golden();
        assert_eq!(iterated_sum(&e, &pts[..1]).unwrap(), pts[0]);
        assert_eq!(
            iterated_sum(&e, &[pts[0].clone(), pts[0].negate()]).unwrap(),
            Point::Infinity
        );
        assert_eq!(iterated_sum(&e, &[]).unwrap(), Point::Infinity);
    }
}
