use crate::error::{Error, Result};
use crate::scalar::Real;

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve_dense(mut a: Vec<Vec<Real>>, mut b: Vec<Real>) -> Result<Vec<Real>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if a[pivot][col].is_zero() || !a[pivot][col].is_finite() {
            return Err(Error::Exchange(format!("singular system at column {col}")));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (head, tail) = a.split_at_mut(col + 1);
        let prow = &head[col];
        for (off, row) in tail.iter_mut().enumerate() {
            let r = col + 1 + off;
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &prow[col];
            for k in col..n {
                let delta = &factor * &prow[k];
                row[k] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = b.clone();
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for k in i + 1..n {
            acc -= &a[i][k] * &x[k];
        }
        x[i] = acc / &a[i][i];
    }
    Ok(x)
}
