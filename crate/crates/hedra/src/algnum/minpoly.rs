//! Recognition of exact integer minimal polynomials from high-precision
//! complex approximations, by lattice reduction on the powers of the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ipoly::IntPoly;
use super::lll::lll_reduce;
use super::AlgError;
use crate::cplx::Cplx;
use crate::prec::Real;

/// Coefficient-height cap: relations with larger coefficients are treated
/// as numerical artifacts rather than genuine algebraic relations.
const HEIGHT_CAP_DIGITS: u32 = 40;

fn height_cap() -> BigInt {
    BigInt::from(10u32).pow(HEIGHT_CAP_DIGITS)
}

/// Powers 1, x, x^2, ..., x^d at the working precision of `x`.
fn powers(x: &Cplx, d: usize) -> Vec<Cplx> {
    let p = x.re.prec();
    let mut out = Vec::with_capacity(d + 1);
    out.push(Cplx::one(p));
    for j in 1..=d {
        let prev = out[j - 1].clone();
        out.push(&prev * x);
    }
    out
}

/// Build the recognition lattice for degree `d`: row j is the unit vector
/// e_j extended by the scaled real and imaginary parts of x^j.
fn lattice_rows(pows: &[Cplx], d: usize, digits: usize) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::with_capacity(d + 1);
    for (j, xj) in pows.iter().enumerate().take(d + 1) {
        let mut row = vec![BigInt::zero(); d + 3];
        row[j] = BigInt::from(1);
        row[d + 1] = xj.re.scaled_bigint(digits);
        row[d + 2] = xj.im.scaled_bigint(digits);
        rows.push(row);
    }
    rows
}

/// Evaluate candidate coefficients against the precomputed powers; returns
/// log10 of |sum c_j x^j| (or a very negative number when it is zero).
fn residual_log10(coeffs: &[BigInt], pows: &[Cplx]) -> f64 {
    let p = pows[0].re.prec();
    let mut acc = Cplx::zero(p);
    for (c, xj) in coeffs.iter().zip(pows) {
        if c.is_zero() {
            continue;
        }
        let cr = Real::from_bigint(c, p);
        acc = &acc + &xj.scale(&cr);
    }
    acc.abs().log10_abs()
}

/// Recognize the minimal polynomial of `x` (given to roughly twice `digits`
/// accurate decimal digits) with degree at most `dmax`.
///
/// Degrees are swept in ascending order so the first validated relation is
/// minimal. A candidate must pass a loose screen at 10^(-0.6·digits) and a
/// strict confirmation at 10^(-1.5·digits), the latter only achievable when
/// the relation is genuine and `x` carries the extra precision.
pub fn recognize_minpoly(x: &Cplx, dmax: usize, digits: usize) -> Result<IntPoly, AlgError> {
    if dmax == 0 {
        return Err(AlgError::Degenerate("dmax must be positive".into()));
    }
    let have_digits = (x.re.prec_bits() as f64 * 0.30103) as usize;
    let need = 2 * digits;
    if have_digits + 8 < need {
        return Err(AlgError::InsufficientPrecision {
            have: have_digits,
            need,
        });
    }
    let pows = powers(x, dmax);
    let loose = -0.6 * digits as f64;
    let strict = -1.5 * digits as f64;
    let cap = height_cap();
    for d in 1..=dmax {
        let rows = lattice_rows(&pows, d, digits);
        let reduced = lll_reduce(rows);
        for row in &reduced {
            let coeffs = &row[..=d];
            if coeffs.iter().all(|c| c.is_zero()) {
                continue;
            }
            if coeffs.iter().any(|c| c.abs() > cap) {
                continue;
            }
            if residual_log10(coeffs, &pows) > loose {
                continue;
            }
            let Some(poly) = IntPoly::new(coeffs.to_vec()) else {
                continue;
            };
            if poly.degree() != d {
                // relation of lower degree hiding in a higher-d row; the
                // ascending sweep will have found it already if genuine
                continue;
            }
            // strict confirmation on the normalized polynomial
            let val = poly.eval_cplx(x, x.re.prec());
            if val.abs().log10_abs() <= strict {
                return Ok(poly);
            }
        }
    }
    Err(AlgError::NoRelation { dmax, digits })
}

/// Recognize a real quantity; thin wrapper over [`recognize_minpoly`].
pub fn recognize_minpoly_real(x: &Real, dmax: usize, digits: usize) -> Result<IntPoly, AlgError> {
    let p = x.prec();
    let xc = Cplx::new(x.clone(), Real::zero(p));
    recognize_minpoly(&xc, dmax, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::Prec;

    fn real(s: &str, p: Prec) -> Real {
        Real::parse_dec(s, p).unwrap()
    }

    #[test]
    fn golden_ratio() {
        let p = Prec::digits(120);
        let phi = &(&Real::one(p) + &Real::from_i64(5, p).sqrt()) / &Real::from_i64(2, p);
        let m = recognize_minpoly_real(&phi, 8, 50).unwrap();
        assert_eq!(m.to_string(), "x^2 - x - 1");
    }

    #[test]
    fn alpha_quadratic() {
        // alpha = -3/2 - 3*sqrt(5)/10 satisfies 5x^2 + 15x + 9
        let p = Prec::digits(120);
        let s5 = Real::from_i64(5, p).sqrt();
        let alpha = &real("-1.5", p) - &(&(&Real::from_i64(3, p) * &s5) / &Real::from_i64(10, p));
        let m = recognize_minpoly_real(&alpha, 8, 50).unwrap();
        assert_eq!(m.to_string(), "5x^2 + 15x + 9");
    }

    #[test]
    fn beta_quadratic() {
        // beta = -2 - sqrt(5)/5 satisfies 5x^2 + 20x + 19
        let p = Prec::digits(120);
        let s5 = Real::from_i64(5, p).sqrt();
        let beta = &Real::from_i64(-2, p) - &(&s5 / &Real::from_i64(5, p));
        let m = recognize_minpoly_real(&beta, 8, 50).unwrap();
        assert_eq!(m.to_string(), "5x^2 + 20x + 19");
    }

    #[test]
    fn quartic_complex_value() {
        // x = 1/2 - (i/2)*sqrt(8*sqrt(5) - 5) is a root of x^4 - 2x^3 - x^2 + 2x - 19
        let p = Prec::digits(160);
        let s5 = Real::from_i64(5, p).sqrt();
        let inner = &(&Real::from_i64(8, p) * &s5) - &Real::from_i64(5, p);
        let half = &Real::one(p) / &Real::from_i64(2, p);
        let x = Cplx::new(half.clone(), (&half * &inner.sqrt()).neg());
        let m = recognize_minpoly(&x, 8, 60).unwrap();
        assert_eq!(m.to_string(), "x^4 - 2x^3 - x^2 + 2x - 19");
    }

    #[test]
    fn rational_is_degree_one() {
        let p = Prec::digits(120);
        let x = &Real::from_i64(7, p) / &Real::from_i64(3, p);
        let m = recognize_minpoly_real(&x, 6, 50).unwrap();
        assert_eq!(m.to_string(), "3x - 7");
    }

    #[test]
    fn insufficient_precision_is_reported() {
        let p = Prec::digits(40);
        let phi = &(&Real::one(p) + &Real::from_i64(5, p).sqrt()) / &Real::from_i64(2, p);
        let err = recognize_minpoly_real(&phi, 8, 50).unwrap_err();
        match err {
            AlgError::InsufficientPrecision { need, .. } => assert_eq!(need, 100),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn no_relation_for_transcendental_like_input() {
        // pi to 120 digits has no small integer relation of degree <= 4
        let p = Prec::digits(130);
        let pi = real(
            "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651",
            p,
        );
        let err = recognize_minpoly_real(&pi, 4, 50).unwrap_err();
        matches!(err, AlgError::NoRelation { .. })
            .then_some(())
            .expect("expected NoRelation");
    }
}
