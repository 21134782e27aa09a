//! Arbitrary-precision real arithmetic on top of `astro-float`.
//!
//! Every `Real` carries its own mantissa length; binary operations round to
//! the larger of the two operand precisions (`RoundingMode::ToEven`), so a
//! computation stays at the precision its inputs were created with.
//! Precision targets are expressed in decimal digits and widened to bits with
//! a guard margin via [`Prec`].

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as ZSign};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = 3.321928094887362;
/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A working precision, in mantissa bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Prec(pub usize);

impl Prec {
    /// Precision sufficient for `d` significant decimal digits, plus guard bits.
    pub fn digits(d: usize) -> Self {
        Prec((d as f64 * LOG2_10).ceil() as usize + GUARD_BITS)
    }

    pub fn bits(b: usize) -> Self {
        Prec(b.max(64))
    }
}

/// Arbitrary-precision real number.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    fn p2(&self, other: &Real) -> usize {
        self.prec_bits().max(other.prec_bits())
    }

    pub fn prec_bits(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(64)
    }

    /// The working precision this value carries.
    pub fn prec(&self) -> Prec {
        Prec(self.prec_bits().max(64))
    }

    pub fn zero(p: Prec) -> Self {
        Real(BigFloat::from_i32(0, p.0))
    }

    pub fn one(p: Prec) -> Self {
        Real(BigFloat::from_i32(1, p.0))
    }

    pub fn from_i64(v: i64, p: Prec) -> Self {
        Real(BigFloat::from_i64(v, p.0))
    }

    pub fn from_f64(v: f64, p: Prec) -> Self {
        Real(BigFloat::from_f64(v, p.0))
    }

    pub fn from_ratio(num: i64, den: i64, p: Prec) -> Self {
        let n = BigFloat::from_i64(num, p.0);
        let d = BigFloat::from_i64(den, p.0);
        Real(n.div(&d, p.0, RM))
    }

    /// Parse a decimal literal (plain or scientific notation).
    pub fn parse_dec(s: &str, p: Prec) -> Option<Self> {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, p.0, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Real(v))
        }
    }

    /// Decimal string carrying the full mantissa of this value.
    pub fn to_dec(&self) -> String {
        with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    /// Decimal string rounded to roughly `digits` significant digits.
    pub fn to_dec_digits(&self, digits: usize) -> String {
        let bits = Prec::digits(digits).0;
        if bits >= self.prec_bits() {
            return self.to_dec();
        }
        let mut y = self.0.clone();
        if y.set_precision(bits, RM).is_err() {
            return self.to_dec();
        }
        with_cc(|cc| y.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    pub fn pi(p: Prec) -> Self {
        Real(with_cc(|cc| cc.pi(p.0, RM)))
    }

    /// cos(π·num/den).
    pub fn cos_pi_frac(num: i64, den: i64, p: Prec) -> Self {
        // work a word above target so the final cos is clean at p
        let pw = p.0 + 64;
        let pi = with_cc(|cc| cc.pi(pw, RM));
        let num_f = BigFloat::from_i64(num, pw);
        let den_f = BigFloat::from_i64(den, pw);
        let ang = pi.mul(&num_f, pw, RM).div(&den_f, pw, RM);
        let mut c = with_cc(|cc| ang.cos(pw, RM, cc));
        let _ = c.set_precision(p.0, RM);
        Real(c)
    }

    pub fn neg(&self) -> Self {
        Real(BigFloat::neg(&self.0))
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.prec_bits(), RM))
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.prec_bits(), RM))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, self.prec_bits(), RM))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    pub fn cmp_total(&self, other: &Real) -> Ordering {
        let d = self.0.cmp(&other.0).expect("NaN in comparison");
        match d {
            0 => Ordering::Equal,
            x if x < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    pub fn lt(&self, other: &Real) -> bool {
        self.cmp_total(other) == Ordering::Less
    }

    /// Approximate log10 of |self|; -inf for zero. Good to ~1e-12 relative.
    pub fn log10_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (words, n, _s, e, _inx) = self.0.as_raw_parts().expect("finite");
        // value = (m / 2^n) * 2^e with m the little-endian mantissa
        let top = *words.last().unwrap_or(&0);
        if top == 0 {
            return f64::NEG_INFINITY;
        }
        let lead = 64 - top.leading_zeros() as usize; // bits in the top word
        let frac = top as f64 / (1u128 << lead) as f64; // in [0.5, 1)
        let log2 = (e as f64) - (n as f64) + ((words.len() - 1) * 64 + lead) as f64 + frac.log2();
        log2 * std::f64::consts::LOG10_2
    }

    /// Round-to-nearest f64 (clamped to ±inf when out of range).
    pub fn f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let (words, _n, s, e, _inx) = match self.0.as_raw_parts() {
            Some(t) => t,
            None => return f64::NAN,
        };
        // value = (top bits of mantissa) * 2^(e - got), mantissa top-aligned
        let mut top: u128 = 0;
        let mut got = 0usize;
        for w in words.iter().rev() {
            if got >= 128 {
                break;
            }
            top = (top << 64) | *w as u128;
            got += 64;
        }
        let v = ldexp(top as f64, e - got as i32);
        if s == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Nearest integer as a `BigInt` (ties away from zero).
    pub fn to_bigint_round(&self) -> BigInt {
        if self.0.is_zero() {
            return BigInt::from(0);
        }
        let (words, n, s, e, _inx) = self.0.as_raw_parts().expect("finite");
        let mut bytes = Vec::with_capacity(words.len() * 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let m = BigUint::from_bytes_le(&bytes);
        // value = m * 2^(e - n)
        let shift = n as i64 - e as i64;
        let mag = if shift <= 0 {
            m << ((-shift) as usize)
        } else if (shift as usize) > n + 1 {
            BigUint::from(0u32)
        } else {
            let sh = shift as usize;
            let half = BigUint::from(1u32) << (sh - 1);
            (m + half) >> sh
        };
        let sign = if s == Sign::Neg { ZSign::Minus } else { ZSign::Plus };
        if mag == BigUint::from(0u32) {
            BigInt::from(0)
        } else {
            BigInt::from_biguint(sign, mag)
        }
    }

    pub fn from_bigint(v: &BigInt, p: Prec) -> Self {
        let (sign, mag) = v.clone().into_parts();
        if mag == BigUint::from(0u32) {
            return Real::zero(p);
        }
        let bits = mag.bits() as usize;
        let words_needed = bits.div_ceil(64);
        let shifted = mag << (words_needed * 64 - bits); // top bit of top word set
        let bytes = shifted.to_bytes_le();
        let mut words = vec![0u64; words_needed];
        for (i, b) in bytes.iter().enumerate() {
            words[i / 8] |= (*b as u64) << ((i % 8) * 8);
        }
        let s = if sign == ZSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut x = BigFloat::from_words(&words, s, bits as astro_float::Exponent);
        if x.mantissa_max_bit_len().unwrap_or(0) < p.0 {
            let _ = x.set_precision(p.0, RM);
        }
        Real(x)
    }

    /// `self * 10^digits`, rounded to the nearest integer.
    pub fn scaled_bigint(&self, digits: usize) -> BigInt {
        let pw = self.prec_bits() + 64;
        let ten = BigFloat::from_i32(10, pw);
        let scale = ten.powi(digits, pw, RM);
        Real(self.0.mul(&scale, pw, RM)).to_bigint_round()
    }
}

/// x * 2^k without overflow surprises.
fn ldexp(x: f64, k: i32) -> f64 {
    let mut v = x;
    let mut k = k;
    while k > 1000 {
        v *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        v *= 2f64.powi(-1000);
        k += 1000;
    }
    v * 2f64.powi(k)
}

macro_rules! bin_op {
    ($trait:ident, $m:ident, $raw:ident) => {
        impl std::ops::$trait<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p2(rhs);
                Real(self.0.$raw(&rhs.0, p, RM))
            }
        }
    };
}

bin_op!(Add, add, add);
bin_op!(Sub, sub, sub);
bin_op!(Mul, mul, mul);
bin_op!(Div, div, div);

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_total(other) == Ordering::Equal
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dec_digits(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Prec {
        Prec::digits(60)
    }

    #[test]
    fn sqrt_and_parse_agree() {
        let two = Real::from_i64(2, p());
        let r = two.sqrt();
        let expect = Real::parse_dec(
            "1.4142135623730950488016887242096980785696718753769480731766797379907324784621",
            p(),
        )
        .unwrap();
        let diff = (&r - &expect).abs();
        assert!(diff.log10_abs() < -58.0, "diff {}", diff.log10_abs());
    }

    #[test]
    fn golden_ratio_digits() {
        let five = Real::from_i64(5, p());
        let phi = &(&five.sqrt() + &Real::one(p())) / &Real::from_i64(2, p());
        let expect = Real::parse_dec(
            "1.6180339887498948482045868343656381177203091798057628621354486227052604628189",
            p(),
        )
        .unwrap();
        assert!((&phi - &expect).abs().log10_abs() < -58.0);
    }

    #[test]
    fn cos_pi_frac_matches_phi() {
        // cos(pi/5) = phi/2 = (1 + sqrt 5)/4
        let c = Real::cos_pi_frac(1, 5, p());
        let five = Real::from_i64(5, p());
        let phi_half = &(&five.sqrt() + &Real::one(p())) / &Real::from_i64(4, p());
        let diff = (&c - &phi_half).abs();
        assert!(diff.log10_abs() < -55.0, "diff {}", diff.log10_abs());
    }

    #[test]
    fn bigint_roundtrip() {
        let x = Real::parse_dec("6.5", p()).unwrap();
        assert_eq!(x.to_bigint_round(), BigInt::from(7)); // ties away from zero
        let y = Real::parse_dec("-6.5", p()).unwrap();
        assert_eq!(y.to_bigint_round(), BigInt::from(-7));
        let z = Real::parse_dec("-6.4999", p()).unwrap();
        assert_eq!(z.to_bigint_round(), BigInt::from(-6));

        let big: BigInt = BigInt::from(987654321987654321i64) * BigInt::from(1000000007i64);
        let r = Real::from_bigint(&big, Prec::digits(80));
        assert_eq!(r.to_bigint_round(), big);
    }

    #[test]
    fn scaled_bigint_digits() {
        let x = Real::parse_dec("1.25", p()).unwrap();
        assert_eq!(x.scaled_bigint(4), BigInt::from(12500));
        let s2 = Real::from_i64(2, Prec::digits(40)).sqrt();
        assert_eq!(
            s2.scaled_bigint(20),
            "141421356237309504880".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn f64_conversion() {
        let x = Real::parse_dec("-3.75e10", p()).unwrap();
        assert_eq!(x.f64(), -3.75e10);
        let tiny = Real::parse_dec("1e-200", p()).unwrap();
        assert!((tiny.f64() - 1e-200).abs() < 1e-210);
    }

    #[test]
    fn log10_abs_estimate() {
        let x = Real::parse_dec("1e-123", p()).unwrap();
        assert!((x.log10_abs() + 123.0).abs() < 1e-9);
        let y = Real::parse_dec("5e40", p()).unwrap();
        assert!((y.log10_abs() - 40.69897).abs() < 1e-4);
    }
}
