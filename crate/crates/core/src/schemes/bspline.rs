//! Univariate uniform cubic B-splines: the 1D model of the construction and
//! the tensor factor of the regular Catmull-Clark case.
//!
//! Controls sit at integers `-2..=2`, interpolation points at
//! `-1, -1/2, 0, 1/2, 1`, and the once-refined net at `-3/2..=3/2` in steps
//! of one half.

use nalgebra::DMatrix;

use crate::numeric::Weight;

/// Centred uniform cubic B-spline with support `[-2, 2]`.
pub fn basis(t: f64) -> f64 {
    let a = t.abs();
    if a <= 1.0 {
        (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0
    } else if a <= 2.0 {
        (2.0 - a).powi(3) / 6.0
    } else {
        0.0
    }
}

/// Knot-insertion matrix (7 x 5): odd rows `(1, 6, 1)/8`, even rows
/// `(1, 1)/2`.
pub fn subdivision_matrix<T: Weight>() -> DMatrix<T> {
    let mut s = DMatrix::from_element(7, 5, T::zero());
    for r in 0..7 {
        // Fine point r sits at (r - 3)/2; control c at c - 2.
        if r % 2 == 1 {
            let c = (r - 1) / 2 + 1;
            s[(r, c - 1)] = T::frac(1, 8);
            s[(r, c)] = T::frac(6, 8);
            s[(r, c + 1)] = T::frac(1, 8);
        } else {
            let c = r / 2;
            s[(r, c)] = T::frac(1, 2);
            s[(r, c + 1)] = T::frac(1, 2);
        }
    }
    s
}

/// Limit-position matrix (5 x 7): `(1, 4, 1)/6` around each fine point.
pub fn limit_matrix<T: Weight>() -> DMatrix<T> {
    let mut l = DMatrix::from_element(5, 7, T::zero());
    for i in 0..5 {
        l[(i, i)] = T::frac(1, 6);
        l[(i, i + 1)] = T::frac(4, 6);
        l[(i, i + 2)] = T::frac(1, 6);
    }
    l
}

/// The interpolation matrix, `A[k][j] = N(x_k - j)`, as a rational table.
pub fn interpolation_matrix<T: Weight>() -> DMatrix<T> {
    const ROWS: [[i64; 5]; 5] = [
        [8, 32, 8, 0, 0],
        [1, 23, 23, 1, 0],
        [0, 8, 32, 8, 0],
        [0, 1, 23, 23, 1],
        [0, 0, 8, 32, 8],
    ];
    DMatrix::from_fn(5, 5, |i, j| T::frac(ROWS[i][j], 48))
}

/// Functional for the centre control: `[1, -8, 20, -8, 1]/6`.
pub fn center_functional<T: Weight>() -> Vec<T> {
    [1, -8, 20, -8, 1].into_iter().map(|p| T::frac(p, 6)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{inverse_row, matmul, Exact};

    #[test]
    fn l_times_s_is_the_interpolation_matrix() {
        let a = matmul(&limit_matrix::<Exact>(), &subdivision_matrix::<Exact>());
        assert_eq!(a, interpolation_matrix::<Exact>());
    }

    #[test]
    fn table_matches_basis_evaluation() {
        let a = interpolation_matrix::<f64>();
        for k in 0..5 {
            let x = -1.0 + 0.5 * k as f64;
            for j in 0..5 {
                assert!((a[(k, j)] - basis(x - (j as f64 - 2.0))).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn center_row_of_inverse() {
        let w = inverse_row(&interpolation_matrix::<Exact>(), 2).unwrap();
        assert_eq!(w, center_functional::<Exact>());
    }
}
