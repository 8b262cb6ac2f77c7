//! Reference local matrices for the regular box-spline patch and for the
//! triangular corner patch, scaled by 192.
//!
//! Regular numbering: the 19 control points of a hexagonal patch of radius
//! 2 are numbered row by row (rows of 3, 4, 5, 4, 3 points, rows parallel
//! to a lattice direction); point 10 is the centre. Interpolation point `k`
//! sits at half the offset of control point `k` from the centre.

use nalgebra::DMatrix;

use crate::numeric::Weight;

pub const REGULAR_LOOP_192: [[i64; 19]; 19] = [
    [16, 16, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 26, 3, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 16, 16, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 26, 63, 3, 0, 3, 63, 26, 0, 0, 1, 3, 0, 0, 0, 0, 0],
    [1, 3, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 0, 3, 1, 0, 0, 0, 0],
    [0, 3, 1, 0, 26, 63, 3, 0, 3, 63, 26, 0, 0, 1, 3, 0, 0, 0, 0],
    [0, 1, 3, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 0, 3, 1, 0, 0, 0],
    [0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0],
    [0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0, 0],
    [0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0],
    [0, 0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0],
    [0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0],
    [0, 0, 0, 1, 3, 0, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 3, 1, 0],
    [0, 0, 0, 0, 3, 1, 0, 0, 26, 63, 3, 0, 3, 63, 26, 0, 1, 3, 0],
    [0, 0, 0, 0, 1, 3, 0, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 3, 1],
    [0, 0, 0, 0, 0, 3, 1, 0, 0, 26, 63, 3, 0, 3, 63, 26, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 16, 16, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 3, 26, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 16, 16],
];

pub const CORNER_LOOP_192: [[i64; 21]; 21] = [
    [16, 16, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 26, 3, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 16, 16, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 26, 63, 3, 0, 3, 63, 26, 0, 0, 1, 3, 0, 0, 0, 0, 0, 0, 0],
    [1, 3, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 0, 3, 1, 0, 0, 0, 0, 0, 0],
    [0, 3, 1, 0, 26, 63, 3, 0, 3, 63, 26, 0, 0, 1, 3, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 16, 16, 0, 0, 0, 96, 16, 0, 0, 16, 0, 0, 16, 16],
    [0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 0, 3, 26, 3, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 0, 16, 16, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 3, 0, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 3, 1, 0, 0, 0],
    [0, 0, 0, 0, 3, 1, 0, 0, 26, 63, 3, 0, 3, 63, 26, 0, 1, 3, 0, 0, 0],
    [0, 0, 0, 0, 1, 3, 0, 0, 3, 63, 26, 0, 0, 26, 63, 3, 0, 3, 1, 0, 0],
    [0, 0, 0, 0, 0, 3, 1, 0, 0, 26, 63, 3, 0, 3, 63, 26, 0, 1, 3, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 16, 16, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 26, 3, 0, 1, 63, 63, 1, 3, 26, 3, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 16, 16, 0, 0, 16, 96, 16, 0, 16, 16, 0, 0],
    [0, 0, 0, 3, 1, 0, 0, 26, 63, 3, 0, 0, 63, 26, 0, 0, 3, 0, 0, 3, 1],
    [0, 0, 0, 0, 0, 0, 0, 3, 26, 3, 0, 0, 63, 63, 1, 0, 26, 3, 0, 1, 3],
];

fn scaled<T: Weight, const N: usize>(m: &[[i64; N]; N]) -> DMatrix<T> {
    DMatrix::from_fn(N, N, |i, j| T::frac(m[i][j], 192))
}

pub fn regular_loop<T: Weight>() -> DMatrix<T> {
    scaled(&REGULAR_LOOP_192)
}

pub fn corner_loop<T: Weight>() -> DMatrix<T> {
    scaled(&CORNER_LOOP_192)
}

/// Lattice position of regular label `k` (0-based) as `(row, 2 * x)`,
/// row 0 through the centre.
pub fn hex_label_position(k: usize) -> (i64, i64) {
    const LEN: [i64; 5] = [3, 4, 5, 4, 3];
    let mut k = k as i64;
    for (r, &len) in LEN.iter().enumerate() {
        if k < len {
            return (r as i64 - 2, 2 * k - (len - 1));
        }
        k -= len;
    }
    panic!("label out of range");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{inverse_row, Exact};
    use crate::projector::loop_weights;

    #[test]
    fn rows_sum_to_one() {
        for a in [regular_loop::<Exact>(), corner_loop::<Exact>()] {
            for row in a.row_iter() {
                assert_eq!(row.iter().cloned().sum::<Exact>(), Exact::int(1));
            }
        }
    }

    #[test]
    fn regular_centre_row_is_closed_form() {
        let w = inverse_row(&regular_loop::<Exact>(), 9).unwrap();
        let [w1, w2, w3, w4] = loop_weights(6, Exact::frac(5, 8), Exact::frac(1, 16));
        assert_eq!(w[9], w1);
        // Fine ring 1 around the centre is the spoke midpoints.
        for (k, x) in w.iter().enumerate() {
            let (r, c) = hex_label_position(k);
            let ring = (r.abs() + (c.abs() - r.abs()).max(0) / 2) as usize;
            let on_axis = r == 0 || c.abs() == r.abs();
            let want = match (ring, on_axis) {
                (0, _) => &w1,
                (1, _) => &w2,
                (2, true) => &w3,
                (2, false) => &w4,
                _ => unreachable!(),
            };
            assert_eq!(x, want, "label {}", k + 1);
        }
    }

    #[test]
    fn corner_functional_is_smaller() {
        let l1 = |w: Vec<Exact>| w.iter().map(|x| x.to_f64().abs()).sum::<f64>();
        // Label 13 in both numberings.
        let interior = l1(inverse_row(&regular_loop::<Exact>(), 12).unwrap());
        let corner = l1(inverse_row(&corner_loop::<Exact>(), 12).unwrap());
        assert!(corner < interior, "{corner} vs {interior}");
    }
}
