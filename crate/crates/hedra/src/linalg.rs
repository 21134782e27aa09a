//! Small dense linear algebra over [`Real`] and over f64.
//!
//! Matrices are `Vec<Vec<Real>>` in row-major order; everything here is
//! O(n^3) with partial pivoting, which is plenty for the 4x4..40x40 systems
//! this crate solves.

use crate::prec::Real;

/// Solve A x = b by LU with partial pivoting. Returns None on (numerical)
/// singularity. Consumes copies of its inputs.
pub fn lu_solve(a: &[Vec<Real>], b: &[Real]) -> Option<Vec<Real>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Real>> = a.to_vec();
    let mut x: Vec<Real> = b.to_vec();

    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().cmp_total(&m[j][col].abs()))?;
        if m[piv][col].is_zero() {
            return None;
        }
        m.swap(col, piv);
        x.swap(col, piv);
        let inv = m[col][col].recip();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let f = &m[row][col] * &inv;
            for k in col + 1..n {
                m[row][k] = &m[row][k] - &(&f * &m[col][k]);
            }
            x[row] = &x[row] - &(&f * &x[col]);
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let mut s = x[col].clone();
        for k in col + 1..n {
            s = &s - &(&m[col][k] * &x[k]);
        }
        x[col] = &s / &m[col][col];
    }
    Some(x)
}

pub fn mat_vec(a: &[Vec<Real>], v: &[Real]) -> Vec<Real> {
    a.iter()
        .map(|row| {
            let mut s = &row[0] * &v[0];
            for k in 1..v.len() {
                s = &s + &(&row[k] * &v[k]);
            }
            s
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Real>], b: &[Vec<Real>]) -> Vec<Vec<Real>> {
    let n = a.len();
    let m = b[0].len();
    let k2 = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = &a[i][0] * &b[0][j];
                    for k in 1..k2 {
                        s = &s + &(&a[i][k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Inverse via column-wise LU solves.
pub fn mat_inv(a: &[Vec<Real>]) -> Option<Vec<Vec<Real>>> {
    let n = a.len();
    let p = crate::prec::Prec::bits(a[0][0].prec_bits());
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Real> = (0..n)
            .map(|i| {
                if i == j {
                    Real::one(p)
                } else {
                    Real::zero(p)
                }
            })
            .collect();
        cols.push(lu_solve(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Eigenvalues of a symmetric f64 matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::Prec;

    #[test]
    fn solve_3x3() {
        let p = Prec::digits(50);
        let r = |v: i64| Real::from_i64(v, p);
        let a = vec![
            vec![r(2), r(1), r(-1)],
            vec![r(-3), r(-1), r(2)],
            vec![r(-2), r(1), r(2)],
        ];
        let b = vec![r(8), r(-11), r(-3)];
        let x = lu_solve(&a, &b).unwrap();
        // known solution (2, 3, -1)
        assert_eq!(x[0].to_bigint_round(), 2.into());
        assert_eq!(x[1].to_bigint_round(), 3.into());
        assert_eq!(x[2].to_bigint_round(), (-1).into());
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Prec::digits(50);
        let r = |v: i64| Real::from_i64(v, p);
        let a = vec![
            vec![r(4), r(7), r(2)],
            vec![r(3), r(6), r(1)],
            vec![r(2), r(5), r(3)],
        ];
        let inv = mat_inv(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[i][j].f64() - want).abs() < 1e-40);
            }
        }
    }

    #[test]
    fn jacobi_signature() {
        // diag(-1, 1, 1, 1) conjugated by a shear keeps signature (3,1)
        let a = vec![
            vec![-1.0, 0.3, 0.0, 0.1],
            vec![0.3, 1.0, 0.2, 0.0],
            vec![0.0, 0.2, 1.0, 0.0],
            vec![0.1, 0.0, 0.0, 1.0],
        ];
        let ev = sym_eigenvalues(&a);
        assert!(ev[0] < 0.0 && ev[1] > 0.0);
    }
}
