//! Dense complex Gaussian elimination for the small matching systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative pivot size below which a system is declared singular.
pub const PIVOT_TOL: f64 = 1e-13;

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
///
/// Rows are equilibrated to unit max-norm first so the pivot threshold is
/// scale free.
#[allow(clippy::needless_range_loop)]
pub fn solve<const N: usize>(
    mut m: [[Complex64; N]; N],
    mut rhs: [Complex64; N],
) -> Result<[Complex64; N]> {
    for (row, b) in m.iter_mut().zip(rhs.iter_mut()) {
        let scale = row.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::SingularSystem {
                pivot: 0.0,
                norm: 0.0,
            });
        }
        row.iter_mut().for_each(|v| *v /= scale);
        *b /= scale;
    }
    let norm = m
        .iter()
        .map(|row| row.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max);

    for col in 0..N {
        let pivot_row = (col..N)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap();
        let pivot = m[pivot_row][col].norm();
        if !(pivot >= PIVOT_TOL * norm) {
            return Err(Error::SingularSystem { pivot, norm });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for i in col + 1..N {
            let f = m[i][col] / m[col][col];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..N {
                let delta = f * m[col][j];
                m[i][j] -= delta;
            }
            let delta = f * rhs[col];
            rhs[i] -= delta;
        }
    }

    let mut x = [Complex64::new(0.0, 0.0); N];
    for i in (0..N).rev() {
        let mut acc = rhs[i];
        for j in i + 1..N {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Ok(x)
}

/// Largest componentwise backward error `|r_i| / (sum_j |m_ij x_j| + |b_i|)`.
pub fn relative_residual<const N: usize>(
    m: &[[Complex64; N]; N],
    rhs: &[Complex64; N],
    x: &[Complex64; N],
) -> f64 {
    let mut worst = 0.0f64;
    for (row, b) in m.iter().zip(rhs) {
        let mut r = -b;
        let mut scale = b.norm();
        for (a, xj) in row.iter().zip(x) {
            r += a * xj;
            scale += (a * xj).norm();
        }
        if scale > 0.0 {
            worst = worst.max(r.norm() / scale);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_needing_a_pivot() {
        let m = [
            [c(0.0, 0.0), c(1.0, 1.0), c(2.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
            [c(3.0, 0.0), c(1.0, 0.0), c(1e3, 0.0)],
        ];
        let want = [c(1.0, -2.0), c(0.5, 0.5), c(-1.0, 0.25)];
        let mut rhs = [c(0.0, 0.0); 3];
        for i in 0..3 {
            for j in 0..3 {
                rhs[i] += m[i][j] * want[j];
            }
        }
        let x = solve(m, rhs).unwrap();
        for (a, b) in x.iter().zip(&want) {
            assert!((a - b).norm() < 1e-13);
        }
        assert!(relative_residual(&m, &rhs, &x) < 1e-15);
    }

    #[test]
    fn singular_is_reported() {
        let m = [[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]];
        assert!(matches!(
            solve(m, [c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::SingularSystem { .. })
        ));
    }
}
