//! Exact coefficients: complex rationals and polynomials in the formal
//! parameter hbar.
//!
//! hbar is never a number in this module; every coefficient is a polynomial
//! sum_k c_k hbar^k with exact complex-rational c_k. Arithmetic is exact ring
//! arithmetic throughout; there is no floating point on this path.

use num_bigint::BigInt;
use num_complex::Complex;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact complex rational scalar.
pub type CRat = Complex<BigRational>;

pub fn crat_zero() -> CRat {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn crat_one() -> CRat {
    Complex::new(BigRational::one(), BigRational::zero())
}

/// The imaginary unit as an exact scalar.
pub fn crat_i() -> CRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn crat(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> CRat {
    Complex::new(rat(re_num, re_den), rat(im_num, im_den))
}

pub fn crat_is_zero(c: &CRat) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// A polynomial in the formal parameter hbar with exact complex-rational
/// coefficients. Entry `k` of `coeffs` multiplies hbar^k; trailing zeros are
/// trimmed so equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HbarCoefficient {
    coeffs: Vec<CRat>,
}

impl HbarCoefficient {
    pub fn zero() -> Self {
        HbarCoefficient { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HbarCoefficient::scalar(crat_one())
    }

    pub fn i() -> Self {
        HbarCoefficient::scalar(crat_i())
    }

    pub fn scalar(c: CRat) -> Self {
        let mut h = HbarCoefficient { coeffs: vec![c] };
        h.trim();
        h
    }

    pub fn from_rational(r: BigRational) -> Self {
        HbarCoefficient::scalar(Complex::new(r, BigRational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        HbarCoefficient::from_rational(rat(n, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        HbarCoefficient::from_rational(rat(num, den))
    }

    /// c * hbar^k for a single power.
    pub fn monomial(c: CRat, k: usize) -> Self {
        if crat_is_zero(&c) {
            return HbarCoefficient::zero();
        }
        let mut coeffs = vec![crat_zero(); k + 1];
        coeffs[k] = c;
        HbarCoefficient { coeffs }
    }

    /// i * hbar.
    pub fn i_hbar() -> Self {
        HbarCoefficient::monomial(crat_i(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in hbar, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> CRat {
        self.coeffs.get(k).cloned().unwrap_or_else(crat_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CRat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !crat_is_zero(c))
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if crat_is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        let mut h = HbarCoefficient { coeffs };
        h.trim();
        h
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HbarCoefficient {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return HbarCoefficient::zero();
        }
        let mut coeffs = vec![crat_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if crat_is_zero(a) {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                if crat_is_zero(b) {
                    continue;
                }
                coeffs[j + k] = coeffs[j + k].clone() + a.clone() * b.clone();
            }
        }
        let mut h = HbarCoefficient { coeffs };
        h.trim();
        h
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if crat_is_zero(c) {
            return HbarCoefficient::zero();
        }
        let mut h = HbarCoefficient {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        };
        h.trim();
        h
    }

    /// Multiply by hbar^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return HbarCoefficient::zero();
        }
        let mut coeffs = vec![crat_zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HbarCoefficient { coeffs }
    }

    /// Exact division by i*hbar. The constant term must vanish; callers rely
    /// on algebraic identities (commutators carry an overall hbar) to
    /// guarantee divisibility.
    pub fn div_i_hbar(&self) -> Self {
        if self.is_zero() {
            return HbarCoefficient::zero();
        }
        assert!(
            crat_is_zero(&self.coeff(0)),
            "division by i*hbar of a coefficient with nonzero constant term"
        );
        let minus_i = Complex::new(BigRational::zero(), -BigRational::one());
        let coeffs = self.coeffs[1..]
            .iter()
            .map(|c| c.clone() * minus_i.clone())
            .collect();
        let mut h = HbarCoefficient { coeffs };
        h.trim();
        h
    }

    /// Complex conjugate; hbar is treated as real.
    pub fn conj(&self) -> Self {
        HbarCoefficient {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Substitute the formal value hbar = 0.
    pub fn at_hbar_zero(&self) -> Self {
        HbarCoefficient::scalar(self.coeff(0))
    }

    /// Evaluate at a numeric hbar.
    pub fn eval(&self, hbar: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = 1.0;
        for c in &self.coeffs {
            let re = c.re.to_f64().unwrap_or(f64::NAN);
            let im = c.im.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(re, im) * pw;
            pw *= hbar;
        }
        acc
    }
}

impl std::fmt::Debug for HbarCoefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({} + {}i)", c.re, c.im)?;
            if k > 0 {
                write!(f, "*hbar^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn rational_is_negative(r: &BigRational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trim_keeps_canonical_form() {
        let a = HbarCoefficient::monomial(crat_one(), 2);
        let b = a.sub(&a);
        assert!(b.is_zero());
        assert_eq!(b, HbarCoefficient::zero());
    }

    #[test]
    fn mul_tracks_hbar_powers() {
        let ih = HbarCoefficient::i_hbar();
        let sq = ih.mul(&ih);
        // (i hbar)^2 = -hbar^2
        assert_eq!(sq, HbarCoefficient::monomial(crat(-1, 1, 0, 1), 2));
    }

    #[test]
    fn div_i_hbar_inverts_shift() {
        let a = HbarCoefficient::from_ratio(3, 2);
        let lifted = a.mul(&HbarCoefficient::i_hbar());
        assert_eq!(lifted.div_i_hbar(), a);
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(6, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn eval_matches_horner() {
        let h = HbarCoefficient::monomial(crat(1, 2, 0, 1), 2).add(&HbarCoefficient::i());
        let v = h.eval(2.0);
        assert!((v.re - 2.0).abs() < 1e-15);
        assert!((v.im - 1.0).abs() < 1e-15);
    }
}
