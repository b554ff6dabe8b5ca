//! Small dense exact linear algebra over [`Rational`].

use num_traits::{One, Signed, Zero};

use crate::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Gauss-Jordan inverse. `None` for singular or non-square input.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in 0..2 * n {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let factor = a[r][col] / a[col][col];
                for c in col..n {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix.
///
/// Symmetric elimination: a negative pivot, or a zero pivot whose row is
/// not identically zero, certifies indefiniteness.
pub fn is_psd(m: &Matrix) -> bool {
    let n = m.len();
    let mut a = m.clone();
    for k in 0..n {
        let p = a[k][k];
        if p.is_negative() {
            return false;
        }
        if p.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k] / p;
            for j in k..n {
                let delta = factor * a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    true
}

/// Brute-force check that every principal minor is nonnegative.
pub fn principal_minors_nonnegative(m: &Matrix) -> bool {
    let n = m.len();
    assert!(n < 20, "principal minor enumeration is exponential");
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Matrix = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
            .collect();
        !determinant(&sub).is_negative()
    })
}
