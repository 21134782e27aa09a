//! Algebraic numbers and number fields presented by a primitive element,
//! with lattice-based membership testing and sequential field joins.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ipoly::IntPoly;
use super::lll::lll_reduce;
use super::minpoly::recognize_minpoly;
use super::AlgError;
use crate::cplx::Cplx;
use crate::prec::{Prec, Real};

const HEIGHT_CAP_DIGITS: u32 = 40;
const JOIN_RETRIES: usize = 20;

fn height_cap() -> BigInt {
    BigInt::from(10u32).pow(HEIGHT_CAP_DIGITS)
}

/// An algebraic number: exact minimal polynomial plus a high-precision
/// complex approximation selecting which root is meant.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    approx: Cplx,
}

impl AlgebraicNumber {
    /// Recognize the minimal polynomial of `x` (carried to roughly twice
    /// `digits` accurate decimal digits).
    pub fn recognize(x: &Cplx, dmax: usize, digits: usize) -> Result<Self, AlgError> {
        let minpoly = recognize_minpoly(x, dmax, digits)?;
        Ok(Self {
            minpoly,
            approx: x.clone(),
        })
    }

    pub fn from_parts(minpoly: IntPoly, approx: Cplx) -> Self {
        Self { minpoly, approx }
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn approx(&self) -> &Cplx {
        &self.approx
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }
}

/// A number field Q(theta) presented by a primitive element theta.
#[derive(Clone, Debug)]
pub struct NumberField {
    theta: AlgebraicNumber,
}

impl NumberField {
    /// The rational field, presented with theta = 1.
    pub fn rationals(p: Prec) -> Self {
        let minpoly = IntPoly::new(vec![BigInt::from(-1), BigInt::from(1)]).unwrap();
        Self {
            theta: AlgebraicNumber {
                minpoly,
                approx: Cplx::one(p),
            },
        }
    }

    pub fn from_primitive(theta: AlgebraicNumber) -> Self {
        Self { theta }
    }

    pub fn theta(&self) -> &AlgebraicNumber {
        &self.theta
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.theta.minpoly
    }

    pub fn degree(&self) -> usize {
        self.theta.degree()
    }

    /// Test membership of `x` and, on success, return its coordinates in the
    /// power basis 1, theta, ..., theta^(D-1).
    ///
    /// Uses a relation lattice on [1, theta, ..., theta^(D-1), x]; a short
    /// vector with nonzero coefficient on x yields coords_j = -c_j / c_x,
    /// confirmed by a strict residual check at full precision.
    pub fn contains(&self, x: &Cplx, digits: usize) -> Option<Vec<BigRational>> {
        let d = self.degree();
        let p = x.re.prec();
        // powers of theta and the probe value at working precision
        let mut vals: Vec<Cplx> = Vec::with_capacity(d + 1);
        vals.push(Cplx::one(p));
        for j in 1..d {
            let prev = vals[j - 1].clone();
            vals.push(&prev * &self.theta.approx);
        }
        vals.push(x.clone());
        let ncols = d + 1 + 2;
        let mut rows = Vec::with_capacity(d + 1);
        for (j, v) in vals.iter().enumerate() {
            let mut row = vec![BigInt::zero(); ncols];
            row[j] = BigInt::from(1);
            row[d + 1] = v.re.scaled_bigint(digits);
            row[d + 2] = v.im.scaled_bigint(digits);
            rows.push(row);
        }
        let reduced = lll_reduce(rows);
        let cap = height_cap();
        let loose = -0.6 * digits as f64;
        let strict = -1.2 * digits as f64;
        for row in &reduced {
            let coeffs = &row[..=d];
            let cx = &coeffs[d];
            if cx.is_zero() {
                continue;
            }
            if coeffs.iter().any(|c| c.abs() > cap) {
                continue;
            }
            // recompute the relation value at full precision
            let mut acc = Cplx::zero(p);
            for (c, v) in coeffs.iter().zip(&vals) {
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &v.scale(&Real::from_bigint(c, p));
            }
            let r = acc.abs().log10_abs();
            if r > loose {
                continue;
            }
            if r > strict {
                continue;
            }
            let coords = (0..d)
                .map(|j| BigRational::new(-coeffs[j].clone(), cx.clone()))
                .collect();
            return Some(coords);
        }
        None
    }

    /// Two presentations generate the same field iff each primitive element
    /// lies in the other field.
    pub fn equals(&self, other: &NumberField, digits: usize) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        self.contains(&other.theta.approx, digits).is_some()
            && other.contains(&self.theta.approx, digits).is_some()
    }
}

/// Extend `field` by one value. If the value is already contained the field
/// is returned unchanged; otherwise a new primitive element theta' =
/// theta + c * g is sought for the first small integer c that yields a
/// consistent degree (deg K and deg g both divide D, and D divides
/// deg K * deg g) and re-expresses both theta and g.
pub fn join_value(
    field: NumberField,
    x: &Cplx,
    dmax: usize,
    digits: usize,
) -> Result<NumberField, AlgError> {
    if field.contains(x, digits).is_some() {
        return Ok(field);
    }
    let p = x.re.prec();
    let g = AlgebraicNumber::recognize(x, dmax, digits)?;
    if field.degree() == 1 {
        return Ok(NumberField::from_primitive(g));
    }
    let dk = field.degree();
    let dg = g.degree();
    let bound = (dk * dg).min(dmax);
    for attempt in 0..JOIN_RETRIES {
        // c = 1, -1, 2, -2, ... capped at |c| = 8
        let mag = (attempt / 2 + 1).min(8) as i64;
        let c = if attempt % 2 == 0 { mag } else { -mag };
        let cr = Real::from_i64(c, p);
        let tp = &field.theta.approx + &g.approx.scale(&cr);
        let Ok(m) = recognize_minpoly(&tp, bound, digits) else {
            continue;
        };
        let dd = m.degree();
        if dd % dk != 0 || dd % dg != 0 || (dk * dg) % dd != 0 {
            continue;
        }
        let cand = NumberField::from_primitive(AlgebraicNumber::from_parts(m, tp));
        if cand.contains(&field.theta.approx, digits).is_some()
            && cand.contains(&g.approx, digits).is_some()
        {
            return Ok(cand);
        }
    }
    Err(AlgError::JoinFailure(JOIN_RETRIES))
}

/// Join the fields generated by the given values over Q, sequentially.
pub fn field_join(values: &[Cplx], dmax: usize, digits: usize) -> Result<NumberField, AlgError> {
    let p = values
        .first()
        .map(|v| v.re.prec())
        .unwrap_or(Prec::digits(2 * digits + 10));
    let mut field = NumberField::rationals(p);
    for v in values {
        field = join_value(field, v, dmax, digits)?;
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn creal(x: Real) -> Cplx {
        let p = x.prec();
        Cplx::new(x, Real::zero(p))
    }

    fn sqrt_int(n: i64, p: Prec) -> Real {
        Real::from_i64(n, p).sqrt()
    }

    #[test]
    fn golden_field_contains_phi_squared() {
        let p = Prec::digits(120);
        let phi = &(&Real::one(p) + &sqrt_int(5, p)) / &Real::from_i64(2, p);
        let k = field_join(&[creal(phi.clone())], 8, 50).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.minpoly().to_string(), "x^2 - x - 1");
        let phi2 = &phi * &phi;
        let coords = k.contains(&creal(phi2), 50).unwrap();
        // phi^2 = 1 + phi
        assert_eq!(coords[0], BigRational::one());
        assert_eq!(coords[1], BigRational::one());
    }

    #[test]
    fn sqrt2_field_excludes_sqrt3() {
        let p = Prec::digits(120);
        let s2 = sqrt_int(2, p);
        let s3 = sqrt_int(3, p);
        let k = field_join(&[creal(s2)], 8, 50).unwrap();
        assert_eq!(k.degree(), 2);
        assert!(k.contains(&creal(s3), 50).is_none());
    }

    #[test]
    fn join_of_sqrt2_and_sqrt3_has_degree_four() {
        let p = Prec::digits(160);
        let s2 = sqrt_int(2, p);
        let s3 = sqrt_int(3, p);
        let k = field_join(&[creal(s2.clone()), creal(s3.clone())], 12, 55).unwrap();
        assert_eq!(k.degree(), 4);
        assert!(k.contains(&creal(s2), 55).is_some());
        assert!(k.contains(&creal(s3), 55).is_some());
        let s6 = sqrt_int(6, p);
        let coords = k.contains(&creal(s6), 55).unwrap();
        assert_eq!(coords.len(), 4);
    }

    #[test]
    fn rationals_contain_rationals_only() {
        let p = Prec::digits(120);
        let q = NumberField::rationals(p);
        let x = &Real::from_i64(22, p) / &Real::from_i64(7, p);
        let coords = q.contains(&creal(x), 50).unwrap();
        assert_eq!(coords[0], BigRational::new(BigInt::from(22), BigInt::from(7)));
        assert!(q.contains(&creal(sqrt_int(2, p)), 50).is_none());
    }

    #[test]
    fn field_equality_across_presentations() {
        // Q(sqrt2 + 1) == Q(sqrt2), and != Q(sqrt3)
        let p = Prec::digits(120);
        let s2 = sqrt_int(2, p);
        let s2p1 = &s2 + &Real::one(p);
        let k1 = field_join(&[creal(s2)], 8, 50).unwrap();
        let k2 = field_join(&[creal(s2p1)], 8, 50).unwrap();
        assert!(k1.equals(&k2, 50));
        let k3 = field_join(&[creal(sqrt_int(3, p))], 8, 50).unwrap();
        assert!(!k1.equals(&k3, 50));
    }

    #[test]
    fn rational_values_do_not_extend() {
        let p = Prec::digits(120);
        let vals = vec![
            creal(&Real::from_i64(3, p) / &Real::from_i64(2, p)),
            creal(sqrt_int(5, p)),
            creal(&Real::from_i64(7, p) / &Real::from_i64(5, p)),
        ];
        let k = field_join(&vals, 8, 50).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.minpoly().to_string(), "x^2 - 5");
    }
}
