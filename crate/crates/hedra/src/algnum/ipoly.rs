//! Primitive integer polynomials: evaluation, derivatives, exact real-root
//! counts (Sturm), and complex roots (Durand–Kerner with Newton polish).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::cplx::Cplx;
use crate::prec::{Prec, Real};

/// A primitive integer polynomial of degree >= 1 with positive leading
/// coefficient, coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Normalize: strip trailing zeros, divide out the content, make the
    /// leading coefficient positive. None if the result is constant.
    pub fn new(mut coeffs: Vec<BigInt>) -> Option<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return None;
        }
        let mut content = BigInt::zero();
        for c in &coeffs {
            content = content.gcd(c);
        }
        if content.is_zero() {
            return None;
        }
        if coeffs.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut coeffs {
            *c /= &content;
        }
        Some(IntPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Option<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().unwrap().is_one()
    }

    /// Largest |coefficient|.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn eval_cplx(&self, x: &Cplx, p: Prec) -> Cplx {
        let mut acc = Cplx::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Cplx::from_real(Real::from_bigint(c, p));
        }
        acc
    }

    pub fn eval_real(&self, x: &Real, p: Prec) -> Real {
        let mut acc = Real::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Real::from_bigint(c, p);
        }
        acc
    }

    /// Number of distinct real roots, exactly (Sturm over the rationals).
    pub fn real_root_count(&self) -> usize {
        let q: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let q = rat_squarefree(&q);
        let chain = sturm_chain(&q);
        let v_neg = sign_variations(&chain, Sign::NegInfinity);
        let v_pos = sign_variations(&chain, Sign::PosInfinity);
        v_neg - v_pos
    }

    /// Number of conjugate pairs of non-real roots (counting the squarefree
    /// part; minimal polynomials are squarefree anyway).
    pub fn complex_place_count(&self) -> usize {
        let q: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let deg = rat_squarefree(&q).len() - 1;
        (deg - self.real_root_count()) / 2
    }

    /// All complex roots by Durand–Kerner iteration at precision `p`,
    /// deterministically initialized, Newton-polished.
    pub fn roots(&self, p: Prec) -> Vec<Cplx> {
        let d = self.degree();
        let lead = Real::from_bigint(self.coeffs.last().unwrap(), p);
        let monic: Vec<Cplx> = self
            .coeffs
            .iter()
            .map(|c| Cplx::from_real(&Real::from_bigint(c, p) / &lead))
            .collect();
        // Cauchy-style radius: 1 + max |a_i|
        let radius = 1.0
            + monic
                .iter()
                .take(d)
                .map(|c| c.abs().f64())
                .fold(0.0f64, f64::max);
        let mut z: Vec<Cplx> = (0..d)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / d as f64;
                Cplx::new(
                    Real::from_f64(0.7 * radius * th.cos(), p),
                    Real::from_f64(0.7 * radius * th.sin(), p),
                )
            })
            .collect();
        let eval = |x: &Cplx| -> Cplx {
            let mut acc = Cplx::zero(p);
            for c in monic.iter().rev() {
                acc = &(&acc * x) + c;
            }
            acc
        };
        for _ in 0..256 {
            let mut moved = f64::NEG_INFINITY;
            for i in 0..d {
                let mut denom = Cplx::one(p);
                for j in 0..d {
                    if j != i {
                        denom = &denom * &(&z[i] - &z[j]);
                    }
                }
                if denom.is_zero() {
                    continue;
                }
                let step = &eval(&z[i]) / &denom;
                moved = moved.max(step.abs().log10_abs());
                z[i] = &z[i] - &step;
            }
            if moved < -(p.0 as f64) * 0.301 + 8.0 {
                break;
            }
        }
        // Newton polish each root
        for zi in &mut z {
            *zi = self.newton_refine(zi, p, 8);
        }
        z
    }

    /// Newton iteration on this polynomial from `x0`.
    pub fn newton_refine(&self, x0: &Cplx, p: Prec, iters: usize) -> Cplx {
        let dcoeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        let mut x = x0.clone();
        for _ in 0..iters {
            let f = self.eval_cplx(&x, p);
            let mut df = Cplx::zero(p);
            for c in dcoeffs.iter().rev() {
                df = &(&df * &x) + &Cplx::from_real(Real::from_bigint(c, p));
            }
            if df.is_zero() {
                break;
            }
            x = &x - &(&f / &df);
        }
        x
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---- exact rational polynomial helpers (Sturm) ----

fn rat_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rat_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rat_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect()
}

/// Remainder of a / b (degrees exact).
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = rat_deg(b).expect("nonzero divisor");
    let lead = b[db].clone();
    while let Some(dr) = rat_deg(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &lead;
        let shift = dr - db;
        for i in 0..=db {
            let t = &b[i] * &q;
            r[i + shift] = &r[i + shift] - &t;
        }
        r = rat_trim(r);
        if r.is_empty() {
            break;
        }
    }
    rat_trim(r)
}

fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = rat_trim(a.to_vec());
    let mut y = rat_trim(b.to_vec());
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn rat_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = rat_deg(b).expect("nonzero divisor");
    let lead = b[db].clone();
    let da = match rat_deg(&r) {
        Some(d) => d,
        None => return Vec::new(),
    };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![BigRational::zero(); da - db + 1];
    while let Some(dr) = rat_deg(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        q[shift] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            r[i + shift] = &r[i + shift] - &t;
        }
        r = rat_trim(r);
    }
    q
}

fn rat_squarefree(p: &[BigRational]) -> Vec<BigRational> {
    let d = rat_derivative(p);
    if rat_deg(&d).is_none() {
        return p.to_vec();
    }
    let g = rat_gcd(p, &d);
    match rat_deg(&g) {
        Some(0) | None => p.to_vec(),
        Some(_) => rat_div_exact(p, &g),
    }
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![rat_trim(p.to_vec()), rat_trim(rat_derivative(p))];
    loop {
        let n = chain.len();
        if rat_deg(&chain[n - 1]).is_none() {
            chain.pop();
            break;
        }
        if rat_deg(&chain[n - 1]) == Some(0) {
            break;
        }
        let r = rat_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

enum Sign {
    NegInfinity,
    PosInfinity,
}

fn sign_variations(chain: &[Vec<BigRational>], at: Sign) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .filter_map(|p| {
            let d = rat_deg(p)?;
            let lead = &p[d];
            let mut s: i8 = if lead.is_negative() { -1 } else { 1 };
            if let Sign::NegInfinity = at {
                if d % 2 == 1 {
                    s = -s;
                }
            }
            Some(s)
        })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let p = IntPoly::from_i64(&[-2, 0, 2]).unwrap(); // 2x^2 - 2 -> x^2 - 1
        assert_eq!(p.coeffs(), &[BigInt::from(-1), BigInt::from(0), BigInt::from(1)]);
        assert!(p.is_monic());
        assert_eq!(p.degree(), 2);
        // leading sign flip
        let q = IntPoly::from_i64(&[1, 0, -1]).unwrap();
        assert_eq!(q, p);
        assert!(IntPoly::from_i64(&[5]).is_none());
        assert!(IntPoly::from_i64(&[]).is_none());
    }

    #[test]
    fn display_forms() {
        let p = IntPoly::from_i64(&[-2, -4, -2, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "x^4 - 2x^2 - 4x - 2");
        let q = IntPoly::from_i64(&[9, 15, 5]).unwrap();
        assert_eq!(q.to_string(), "5x^2 + 15x + 9");
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 1: two real roots
        assert_eq!(IntPoly::from_i64(&[-1, 0, 1]).unwrap().real_root_count(), 2);
        // x^2 + 1: none
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).unwrap().real_root_count(), 0);
        // x^4 - 2x^3 - x^2 + 2x - 19: two real, one complex pair
        let p = IntPoly::from_i64(&[-19, 2, -1, -2, 1]).unwrap();
        assert_eq!(p.real_root_count(), 2);
        assert_eq!(p.complex_place_count(), 1);
        // x^4 - 2x^2 - 4x - 2: two real roots, one complex pair
        let p = IntPoly::from_i64(&[-2, -4, -2, 0, 1]).unwrap();
        assert_eq!(p.real_root_count(), 2);
        assert_eq!(p.complex_place_count(), 1);
        // x^3 - 2: one real
        let p = IntPoly::from_i64(&[-2, 0, 0, 1]).unwrap();
        assert_eq!(p.real_root_count(), 1);
        assert_eq!(p.complex_place_count(), 1);
        // (x^2-1)^2 squarefree handling: two distinct real roots
        let p = IntPoly::from_i64(&[1, 0, -2, 0, 1]).unwrap();
        assert_eq!(p.real_root_count(), 2);
    }

    #[test]
    fn roots_of_quadratic() {
        let p = Prec::digits(60);
        let poly = IntPoly::from_i64(&[-1, -1, 1]).unwrap(); // x^2 - x - 1
        let roots = poly.roots(p);
        assert_eq!(roots.len(), 2);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let mut vals: Vec<f64> = roots.iter().map(|r| r.re.f64()).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - (1.0 - phi)).abs() < 1e-12);
        assert!((vals[1] - phi).abs() < 1e-12);
        for r in &roots {
            assert!(poly.eval_cplx(r, p).abs().log10_abs() < -50.0);
        }
    }

    #[test]
    fn roots_of_quartic_with_complex_pair() {
        let p = Prec::digits(60);
        let poly = IntPoly::from_i64(&[-19, 2, -1, -2, 1]).unwrap();
        let roots = poly.roots(p);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(
                poly.eval_cplx(r, p).abs().log10_abs() < -45.0,
                "residual at root"
            );
        }
        // the known complex root 0.5 - 1.795...i appears
        let found = roots.iter().any(|r| {
            (r.re.f64() - 0.5).abs() < 1e-10 && (r.im.f64().abs() - 1.795030906419045).abs() < 1e-10
        });
        assert!(found);
    }
}
