//! Complex arithmetic over [`Real`].

use crate::prec::{Prec, Real};

#[derive(Clone, Debug)]
pub struct Cplx {
    pub re: Real,
    pub im: Real,
}

impl Cplx {
    pub fn new(re: Real, im: Real) -> Self {
        Cplx { re, im }
    }

    pub fn zero(p: Prec) -> Self {
        Cplx::new(Real::zero(p), Real::zero(p))
    }

    pub fn one(p: Prec) -> Self {
        Cplx::new(Real::one(p), Real::zero(p))
    }

    pub fn from_real(re: Real) -> Self {
        let p = Prec::bits(re.prec_bits());
        Cplx::new(re, Real::zero(p))
    }

    pub fn conj(&self) -> Self {
        Cplx::new(self.re.clone(), -&self.im)
    }

    pub fn neg(&self) -> Self {
        Cplx::new(-&self.re, -&self.im)
    }

    /// self * i
    pub fn mul_i(&self) -> Self {
        Cplx::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, s: &Real) -> Self {
        Cplx::new(&self.re * s, &self.im * s)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Cplx::new(&self.re / &n, &(-&self.im) / &n)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl std::ops::Add<&Cplx> for &Cplx {
    type Output = Cplx;
    fn add(self, rhs: &Cplx) -> Cplx {
        Cplx::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub<&Cplx> for &Cplx {
    type Output = Cplx;
    fn sub(self, rhs: &Cplx) -> Cplx {
        Cplx::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul<&Cplx> for &Cplx {
    type Output = Cplx;
    fn mul(self, rhs: &Cplx) -> Cplx {
        Cplx::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl std::ops::Div<&Cplx> for &Cplx {
    type Output = Cplx;
    fn div(self, rhs: &Cplx) -> Cplx {
        self * &rhs.recip()
    }
}

/// 2x2 complex matrix.
#[derive(Clone, Debug)]
pub struct M2 {
    pub a: Cplx,
    pub b: Cplx,
    pub c: Cplx,
    pub d: Cplx,
}

impl M2 {
    pub fn new(a: Cplx, b: Cplx, c: Cplx, d: Cplx) -> Self {
        M2 { a, b, c, d }
    }

    pub fn identity(p: Prec) -> Self {
        M2::new(Cplx::one(p), Cplx::zero(p), Cplx::zero(p), Cplx::one(p))
    }

    pub fn mul(&self, o: &M2) -> M2 {
        M2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn trace(&self) -> Cplx {
        &self.a + &self.d
    }

    pub fn det(&self) -> Cplx {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> M2 {
        M2::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_basics() {
        let p = Prec::digits(40);
        let z = Cplx::new(Real::from_i64(3, p), Real::from_i64(4, p));
        assert_eq!(z.abs().to_bigint_round(), 5.into());
        let w = &z * &z.recip();
        assert!((&w.re - &Real::one(p)).abs().log10_abs() < -35.0);
        assert!(w.im.abs().log10_abs() < -35.0);
        let zi = z.mul_i();
        assert_eq!(zi.re.to_bigint_round(), (-4).into());
        assert_eq!(zi.im.to_bigint_round(), 3.into());
    }

    #[test]
    fn matrix_det_trace() {
        let p = Prec::digits(40);
        let i = |v: i64| Cplx::from_real(Real::from_i64(v, p));
        let m = M2::new(i(1), i(2), i(3), i(4));
        let d = m.det();
        assert_eq!(d.re.to_bigint_round(), (-2).into());
        let t = m.mul(&m).trace();
        // [[1,2],[3,4]]^2 = [[7,10],[15,22]], trace 29
        assert_eq!(t.re.to_bigint_round(), 29.into());
    }
}
