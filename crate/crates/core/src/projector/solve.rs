use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_CONDITION: f64 = 1e12;
pub const MAX_RESIDUAL: f64 = 1e-10;

/// A factored local system whose inverse rows can be read repeatedly.
#[derive(Debug, Clone)]
pub struct InverseRows {
    a: DMatrix<f64>,
    inv: DMatrix<f64>,
    pub condition: f64,
}

impl InverseRows {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::SingularSystem(f64::INFINITY));
        }
        let inv = a.clone().lu().try_inverse().ok_or(Error::SingularSystem(f64::INFINITY))?;
        let norm1 = |m: &DMatrix<f64>| m.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max);
        let condition = norm1(&a) * norm1(&inv);
        if !condition.is_finite() || condition > MAX_CONDITION {
            return Err(Error::SingularSystem(condition));
        }
        Ok(InverseRows { a, inv, condition })
    }

    /// `w` with `w A = e_k`.
    pub fn row(&self, k: usize) -> Result<DVector<f64>> {
        let mut w: DVector<f64> = self.inv.row(k).transpose();
        // One step of iterative refinement.
        let mut r = self.a.tr_mul(&w);
        r[k] -= 1.0;
        w -= self.inv.tr_mul(&r);
        let mut r = self.a.tr_mul(&w);
        r[k] -= 1.0;
        if r.amax() > MAX_RESIDUAL {
            return Err(Error::SingularSystem(self.condition));
        }
        Ok(w)
    }
}

/// Row `k` of `A^{-1}`.
pub fn solve_row(a: &DMatrix<f64>, k: usize) -> Result<DVector<f64>> {
    InverseRows::new(a.clone())?.row(k)
}

/// Picks `m.ncols()` rows of a tall matrix that form a well-conditioned
/// square block, by Gaussian elimination with row pivoting. Returns them in
/// increasing order, or `None` if the columns are (numerically) dependent.
pub fn select_rows(m: &DMatrix<f64>) -> Option<Vec<usize>> {
    let (nr, nc) = m.shape();
    if nr < nc {
        return None;
    }
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let mut work = m.clone();
    let mut used = vec![false; nr];
    let mut chosen = Vec::with_capacity(nc);
    for c in 0..nc {
        let (mut best, mut best_val) = (usize::MAX, 0.0);
        for r in 0..nr {
            if !used[r] && work[(r, c)].abs() > best_val {
                best = r;
                best_val = work[(r, c)].abs();
            }
        }
        if best == usize::MAX || best_val < 1e-9 * scale {
            return None;
        }
        used[best] = true;
        chosen.push(best);
        let pivot_row = work.row(best).clone_owned();
        for r in 0..nr {
            if !used[r] && work[(r, c)] != 0.0 {
                let f = work[(r, c)] / pivot_row[c];
                for k in c..nc {
                    work[(r, k)] -= f * pivot_row[k];
                }
            }
        }
    }
    chosen.sort_unstable();
    Some(chosen)
}
