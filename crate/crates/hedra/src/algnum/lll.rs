//! LLL lattice basis reduction (δ = 0.99) on integer bases, with the
//! Gram–Schmidt data tracked in arbitrary-precision floats sized to the
//! entry magnitudes, and periodic full refreshes to absorb drift.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::prec::{Prec, Real};

const DELTA_NUM: i64 = 99;
const DELTA_DEN: i64 = 100;
/// Full GSO recompute cadence (swaps).
const REFRESH: usize = 48;
const MAX_ITERS: usize = 200_000;

struct Gso {
    mu: Vec<Vec<Real>>,
    bnorm: Vec<Real>,
    p: Prec,
}

fn compute_gso(b: &[Vec<BigInt>], p: Prec) -> Gso {
    let n = b.len();
    let m = b[0].len();
    let rows: Vec<Vec<Real>> = b
        .iter()
        .map(|row| row.iter().map(|c| Real::from_bigint(c, p)).collect())
        .collect();
    let mut bstar: Vec<Vec<Real>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Real::zero(p); n]; n];
    let mut bnorm = Vec::with_capacity(n);
    let dot = |a: &[Real], c: &[Real]| -> Real {
        let mut s = Real::zero(p);
        for k in 0..m {
            s = &s + &(&a[k] * &c[k]);
        }
        s
    };
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let mij = &dot(&rows[i], &bstar[j]) / &bnorm[j];
            for k in 0..m {
                v[k] = &v[k] - &(&mij * &bstar[j][k]);
            }
            mu[i][j] = mij;
        }
        let nb = dot(&v, &v);
        bnorm.push(nb);
        bstar.push(v);
    }
    Gso { mu, bnorm, p }
}

/// LLL-reduce an independent integer basis in place and return it.
/// Deterministic; the lattice spanned is unchanged.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let maxbits = b
        .iter()
        .flatten()
        .map(|c| c.bits())
        .max()
        .unwrap_or(0) as usize;
    let p = Prec::bits(maxbits + 4 * n + 96);
    let delta = &Real::from_i64(DELTA_NUM, p) / &Real::from_i64(DELTA_DEN, p);
    let half = &Real::from_i64(1, p) / &Real::from_i64(2, p);

    let mut g = compute_gso(&b, p);
    let mut k = 1usize;
    let mut since_refresh = 0usize;
    let mut iters = 0usize;
    while k < n {
        iters += 1;
        if iters > MAX_ITERS {
            break;
        }
        // size-reduce row k against rows k-1 .. 0
        for j in (0..k).rev() {
            if g.mu[k][j].abs().lt(&half) {
                continue;
            }
            let q = g.mu[k][j].to_bigint_round();
            if q.is_zero() {
                continue;
            }
            let qr = Real::from_bigint(&q, g.p);
            for c in 0..b[k].len() {
                let t = &b[j][c] * &q;
                b[k][c] -= t;
            }
            for i in 0..j {
                g.mu[k][i] = &g.mu[k][i] - &(&qr * &g.mu[j][i]);
            }
            g.mu[k][j] = &g.mu[k][j] - &qr;
        }
        // Lovász condition
        let m2 = &g.mu[k][k - 1] * &g.mu[k][k - 1];
        let rhs = &(&delta - &m2) * &g.bnorm[k - 1];
        if !g.bnorm[k].lt(&rhs) {
            k += 1;
            continue;
        }
        b.swap(k, k - 1);
        since_refresh += 1;
        if since_refresh >= REFRESH {
            g = compute_gso(&b, p);
            since_refresh = 0;
        } else {
            // standard GSO swap update
            let mu_ = g.mu[k][k - 1].clone();
            let bk = g.bnorm[k].clone();
            let bk1 = g.bnorm[k - 1].clone();
            let bnew = &bk + &(&(&mu_ * &mu_) * &bk1);
            g.mu[k][k - 1] = &(&mu_ * &bk1) / &bnew;
            g.bnorm[k] = &(&bk1 * &bk) / &bnew;
            g.bnorm[k - 1] = bnew;
            for i in 0..k - 1 {
                let t = g.mu[k - 1][i].clone();
                g.mu[k - 1][i] = g.mu[k][i].clone();
                g.mu[k][i] = t;
            }
            for i in k + 1..n {
                let t = g.mu[i][k].clone();
                g.mu[i][k] = &g.mu[i][k - 1] - &(&mu_ * &t);
                g.mu[i][k - 1] = &t + &(&g.mu[k][k - 1] * &g.mu[i][k]);
            }
        }
        k = k.max(2) - 1;
    }
    b
}

/// Post-hoc check that a basis satisfies the Lovász condition for all
/// consecutive pairs (used in tests).
pub fn is_lll_reduced(b: &[Vec<BigInt>]) -> bool {
    let n = b.len();
    if n <= 1 {
        return true;
    }
    let maxbits = b.iter().flatten().map(|c| c.bits()).max().unwrap_or(0) as usize;
    let p = Prec::bits(maxbits + 4 * n + 96);
    let g = compute_gso(b, p);
    let delta = &Real::from_i64(DELTA_NUM, p) / &Real::from_i64(DELTA_DEN, p);
    // small slack for float GSO rounding
    let slack = Real::parse_dec("1.000001", p).unwrap();
    for k in 1..n {
        let m2 = &g.mu[k][k - 1] * &g.mu[k][k - 1];
        let rhs = &(&delta - &m2) * &g.bnorm[k - 1];
        if (&g.bnorm[k] * &slack).lt(&rhs) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn ivec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn norm2(v: &[BigInt]) -> BigInt {
        v.iter().map(|c| c * c).sum()
    }

    #[test]
    fn identity_fixed() {
        let b = vec![ivec(&[1, 0]), ivec(&[0, 1])];
        let r = lll_reduce(b.clone());
        assert_eq!(r, b);
    }

    #[test]
    fn knapsack_2d_matches_brute_force() {
        let b = vec![ivec(&[1, 1_000_000]), ivec(&[0, 2_000_001])];
        let r = lll_reduce(b.clone());
        assert!(is_lll_reduced(&r));
        // brute-force shortest nonzero vector over the coefficient box
        let mut best: Option<BigInt> = None;
        for a in -50i64..=50 {
            for c in -50i64..=50 {
                if a == 0 && c == 0 {
                    continue;
                }
                let v = [
                    BigInt::from(a),
                    BigInt::from(a) * 1_000_000 + BigInt::from(c) * 2_000_001,
                ];
                let n = norm2(&v);
                if best.as_ref().is_none_or(|b| n < *b) {
                    best = Some(n);
                }
            }
        }
        let shortest = r.iter().map(|v| norm2(v)).min().unwrap();
        assert_eq!(shortest, best.unwrap());
    }

    #[test]
    fn determinant_magnitude_preserved() {
        let b = vec![ivec(&[4, 1]), ivec(&[2, 3])];
        let det = |m: &[Vec<BigInt>]| -> BigInt { (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).abs() };
        let d0 = det(&b);
        let r = lll_reduce(b);
        assert_eq!(det(&r), d0);
        assert!(is_lll_reduced(&r));
    }

    #[test]
    fn reduces_correlated_3d() {
        let b = vec![
            ivec(&[1, 0, 10_000_007]),
            ivec(&[0, 1, 20_000_003]),
            ivec(&[0, 0, 40_000_019]),
        ];
        let r = lll_reduce(b);
        assert!(is_lll_reduced(&r));
        // all reduced vectors should be far shorter than the inputs
        for v in &r {
            assert!(norm2(v) < BigInt::from(10_000_007i64) * 10_000_007i64);
        }
    }
}
