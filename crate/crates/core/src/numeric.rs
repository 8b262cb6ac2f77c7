//! Scalar abstraction shared by the floating-point and exact rational code
//! paths, plus the small dense kernels both need.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Weight: nalgebra::Scalar + Num + Signed + Clone {
    fn frac(p: i64, q: i64) -> Self;
    fn int(p: i64) -> Self {
        Self::frac(p, 1)
    }
    fn to_f64(&self) -> f64;
}

impl Weight for f64 {
    fn frac(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Weight for BigRational {
    fn frac(p: i64, q: i64) -> Self {
        BigRational::from_i64(p).unwrap() / BigRational::from_i64(q).unwrap()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

pub type Exact = BigRational;

pub fn matmul<T: Weight>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.ncols(), b.nrows());
    let mut out = DMatrix::from_element(a.nrows(), b.ncols(), T::zero());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.ncols() {
                if !b[(k, j)].is_zero() {
                    out[(i, j)] = out[(i, j)].clone() + aik.clone() * b[(k, j)].clone();
                }
            }
        }
    }
    out
}

/// Row `k` of `a^{-1}` by Gauss-Jordan elimination on `a^T` with partial
/// pivoting (largest magnitude). `None` if `a` is singular.
pub fn inverse_row<T: Weight>(a: &DMatrix<T>, k: usize) -> Option<Vec<T>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    // Solve a^T x = e_k.
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row: Vec<T> = (0..n).map(|j| a[(j, i)].clone()).collect();
            row.push(if i == k { T::one() } else { T::zero() });
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&r, &s| {
                m[r][col]
                    .abs()
                    .to_f64()
                    .partial_cmp(&m[s][col].abs().to_f64())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut().skip(col) {
            *v = v.clone() / p.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            let pivot = m[col].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn to_f64_matrix<T: Weight>(a: &DMatrix<T>) -> DMatrix<f64> {
    a.map(|x| x.to_f64())
}

pub fn to_exact(a: &DMatrix<f64>) -> DMatrix<Exact> {
    a.map(|x| BigRational::from_float(x).expect("finite entry"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_row_of_identity_is_unit_vector() {
        let id = DMatrix::<f64>::identity(5, 5);
        for k in 0..5 {
            let r = inverse_row(&id, k).unwrap();
            for (j, x) in r.iter().enumerate() {
                assert_eq!(*x, if j == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn exact_inverse_row() {
        let a = DMatrix::from_row_slice(2, 2, &[2, 1, 1, 1].map(Exact::int));
        // inverse = [[1,-1],[-1,2]]
        assert_eq!(inverse_row(&a, 1).unwrap(), vec![Exact::int(-1), Exact::int(2)]);
        let s = DMatrix::from_row_slice(2, 2, &[1, 2, 2, 4].map(Exact::int));
        assert!(inverse_row(&s, 0).is_none());
    }
}
