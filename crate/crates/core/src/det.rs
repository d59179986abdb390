//! Exact determinants over a [`FieldValue`] matrix.

use crate::error::Result;
use crate::field::FieldValue;

/// Largest dimension handled by direct cofactor expansion.
pub const LAPLACE_MAX_DIM: usize = 4;

/// Exact determinant of a square matrix given as rows.
///
/// Dimensions up to [`LAPLACE_MAX_DIM`] are expanded by cofactors; larger
/// ones go through fraction-free (Bareiss) elimination.
///
/// Panics if the matrix is empty or not square.
pub fn det_exact(rows: &[Vec<FieldValue>]) -> Result<FieldValue> {
    check_shape(rows)?;
    if rows.len() <= LAPLACE_MAX_DIM {
        Ok(laplace(rows))
    } else {
        Ok(bareiss(rows))
    }
}

/// Fraction-free elimination regardless of size.
pub fn det_bareiss(rows: &[Vec<FieldValue>]) -> Result<FieldValue> {
    check_shape(rows)?;
    Ok(bareiss(rows))
}

/// Cofactor expansion along the first row regardless of size.
pub fn det_laplace(rows: &[Vec<FieldValue>]) -> Result<FieldValue> {
    check_shape(rows)?;
    Ok(laplace(rows))
}

fn check_shape(rows: &[Vec<FieldValue>]) -> Result<()> {
    let n = rows.len();
    assert!(n > 0, "determinant of an empty matrix");
    let first = &rows[0][0];
    for row in rows {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
        for v in row {
            first.same_field(v)?;
        }
    }
    Ok(())
}

fn laplace(rows: &[Vec<FieldValue>]) -> FieldValue {
    let n = rows.len();
    match n {
        1 => rows[0][0].clone(),
        2 => &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0],
        _ => {
            let mut acc = rows[0][0].descriptor().zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<FieldValue>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * &laplace(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn bareiss(rows: &[Vec<FieldValue>]) -> FieldValue {
    let n = rows.len();
    let field = rows[0][0].descriptor();
    let mut m: Vec<Vec<FieldValue>> = rows.to_vec();
    let mut negate = false;
    let mut prev = field.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return field.zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        let prev_inv = prev.inv().expect("Bareiss pivots are nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t * &prev_inv;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
