//! Gauss-Jordan elimination on row vectors.

use super::Scalar;

/// Brings `rows` into reduced row-echelon form, searching pivots only in the
/// first `pivot_cols` columns (trailing columns ride along, which is how the
/// solver records row operations). Returns the pivot column of each of the
/// leading rows; the remaining rows are zero in the pivot region.
///
/// Pivots are chosen as the first nonzero entry in basis order, so the output
/// is canonical for a given row space.
pub(crate) fn rref(rows: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("field element");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn canonical_form() {
        let f = Field::Rational;
        let q = |n| Scalar::from_int(f, n);
        let mut a = vec![vec![q(2), q(4), q(0)], vec![q(1), q(2), q(1)]];
        let mut b = vec![vec![q(0), q(0), q(3)], vec![q(1), q(2), q(0)]];
        let pa = rref(&mut a, 3);
        let pb = rref(&mut b, 3);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }
}
