//! Small dense complex linear solver (Gaussian elimination with partial
//! pivoting). Interpolation systems in this crate are diagonally dominant by
//! construction and never exceed a couple of hundred unknowns.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm_sqr()
                    .partial_cmp(&a[j][col].norm_sqr())
                    .expect("pivot magnitudes are finite")
            })
            .expect("non-empty pivot range");
        if a[pivot][col].norm() <= f64::MIN_POSITIVE {
            return Err(Error::InvalidArgument(
                "singular interpolation system".into(),
            ));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor.norm() == 0.0 {
                continue;
            }
            let (pivot_rows, elim_rows) = a.split_at_mut(row);
            for (target, upper) in elim_rows[0][col..].iter_mut().zip(&pivot_rows[col][col..]) {
                *target -= factor * upper;
            }
            let rhs = b[col];
            b[row] -= factor * rhs;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}
