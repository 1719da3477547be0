//! Exact polynomial observables on phase space and the Poisson / star /
//! Moyal structure on them.
//!
//! A [`PhasePolynomial`] is a finite sum of monomials q^a p^b with
//! [`HbarCoefficient`] coefficients. The map is kept sparse and canonical:
//! no stored coefficient is zero, and iteration order is lexicographic in
//! (a, b) so printing and hashing are deterministic.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::hbar::{binomial, crat, factorial, CRat, HbarCoefficient};

/// Exact polynomial A(q, p) with hbar-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhasePolynomial {
    terms: BTreeMap<(u32, u32), HbarCoefficient>,
}

impl PhasePolynomial {
    pub fn zero() -> Self {
        PhasePolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        PhasePolynomial::monomial(1, 0, 0, HbarCoefficient::one())
    }

    /// The coordinate q.
    pub fn q() -> Self {
        PhasePolynomial::monomial(1, 1, 0, HbarCoefficient::one())
    }

    /// The momentum p.
    pub fn p() -> Self {
        PhasePolynomial::monomial(1, 0, 1, HbarCoefficient::one())
    }

    /// c * q^a p^b, where the theory-level sign conventions live in `c`.
    pub fn monomial(_count: u32, a: u32, b: u32, c: HbarCoefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        PhasePolynomial { terms }
    }

    pub fn term(a: u32, b: u32, c: HbarCoefficient) -> Self {
        PhasePolynomial::monomial(1, a, b, c)
    }

    pub fn constant(c: HbarCoefficient) -> Self {
        PhasePolynomial::term(0, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &HbarCoefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> HbarCoefficient {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(HbarCoefficient::zero)
    }

    /// Maximum total degree a + b over stored monomials.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn insert_add(&mut self, key: (u32, u32), c: HbarCoefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(HbarCoefficient::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PhasePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PhasePolynomial::zero();
        for ((a1, b1), c1) in self.terms.iter() {
            for ((a2, b2), c2) in other.terms.iter() {
                out.insert_add((a1 + a2, b1 + b2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &HbarCoefficient) -> Self {
        let mut out = PhasePolynomial::zero();
        for (k, v) in self.terms.iter() {
            out.insert_add(*k, v.mul(c));
        }
        out
    }

    /// Partial derivative with respect to q, applied `order` times.
    pub fn diff_q(&self, order: u32) -> Self {
        let mut out = PhasePolynomial::zero();
        for ((a, b), c) in self.terms.iter() {
            if *a < order {
                continue;
            }
            // a (a-1) ... (a-order+1)
            let mut factor = num_bigint::BigInt::from(1u32);
            for j in 0..order {
                factor *= num_bigint::BigInt::from(a - j);
            }
            let scalar = HbarCoefficient::from_rational(num_rational::BigRational::from(factor));
            out.insert_add((a - order, *b), c.mul(&scalar));
        }
        out
    }

    /// Partial derivative with respect to p, applied `order` times.
    pub fn diff_p(&self, order: u32) -> Self {
        let mut out = PhasePolynomial::zero();
        for ((a, b), c) in self.terms.iter() {
            if *b < order {
                continue;
            }
            let mut factor = num_bigint::BigInt::from(1u32);
            for j in 0..order {
                factor *= num_bigint::BigInt::from(b - j);
            }
            let scalar = HbarCoefficient::from_rational(num_rational::BigRational::from(factor));
            out.insert_add((*a, b - order), c.mul(&scalar));
        }
        out
    }

    /// Substitute hbar = 0 in every coefficient.
    pub fn at_hbar_zero(&self) -> Self {
        let mut out = PhasePolynomial::zero();
        for (k, c) in self.terms.iter() {
            out.insert_add(*k, c.at_hbar_zero());
        }
        out
    }

    /// Numeric evaluation at a phase-space point for a numeric hbar.
    pub fn eval(&self, q: f64, p: f64, hbar: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), c) in self.terms.iter() {
            acc += c.eval(hbar) * q.powi(*a as i32) * p.powi(*b as i32);
        }
        acc
    }
}

impl std::fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::symbolic::print::render_phase(self))
    }
}

/// Poisson bracket {A, B} = A_q B_p - A_p B_q, exact.
pub fn poisson_bracket(a: &PhasePolynomial, b: &PhasePolynomial) -> PhasePolynomial {
    a.diff_q(1)
        .mul(&b.diff_p(1))
        .sub(&a.diff_p(1).mul(&b.diff_q(1)))
}

/// n-th power of the bidifferential operator J applied to the pair (A, B):
///
/// A J^n B = sum_k (-1)^k C(n,k) (d_q^{n-k} d_p^k A) (d_p^{n-k} d_q^k B)
pub fn j_power(a: &PhasePolynomial, b: &PhasePolynomial, n: u32) -> PhasePolynomial {
    if n == 0 {
        return a.mul(b);
    }
    let mut out = PhasePolynomial::zero();
    for k in 0..=n {
        let left = a.diff_q(n - k).diff_p(k);
        if left.is_zero() {
            continue;
        }
        let right = b.diff_p(n - k).diff_q(k);
        if right.is_zero() {
            continue;
        }
        let mut c = num_rational::BigRational::from(binomial(n, k));
        if k % 2 == 1 {
            c = -c;
        }
        out = out.add(
            &left
                .mul(&right)
                .scale(&HbarCoefficient::from_rational(c)),
        );
    }
    out
}

/// Star product A exp(i hbar J / 2) B, summed to termination:
///
/// A * B = sum_n (i hbar / 2)^n / n!  A J^n B
///
/// The series terminates on polynomials once n exceeds the smaller total
/// degree of the factors.
pub fn star_product(a: &PhasePolynomial, b: &PhasePolynomial) -> PhasePolynomial {
    let nmax = a.total_degree().min(b.total_degree());
    let mut out = PhasePolynomial::zero();
    for n in 0..=nmax {
        let jn = j_power(a, b, n);
        if jn.is_zero() {
            continue;
        }
        // (i/2)^n / n! * hbar^n
        let i_pow = crat_i_pow(n);
        let denom = num_rational::BigRational::from(factorial(n))
            * num_rational::BigRational::from(num_bigint::BigInt::from(2u32).pow(n));
        let scalar = CRat::new(i_pow.re / denom.clone(), i_pow.im / denom);
        out = out.add(&jn.scale(&HbarCoefficient::monomial(scalar, n as usize)));
    }
    out
}

fn crat_i_pow(n: u32) -> CRat {
    match n % 4 {
        0 => crat(1, 1, 0, 1),
        1 => crat(0, 1, 1, 1),
        2 => crat(-1, 1, 0, 1),
        _ => crat(0, 1, -1, 1),
    }
}

/// Moyal bracket (A * B - B * A) / (i hbar), exact.
///
/// At the formal value hbar = 0 this degenerates to the Poisson bracket.
pub fn moyal_bracket(a: &PhasePolynomial, b: &PhasePolynomial) -> PhasePolynomial {
    let diff = star_product(a, b).sub(&star_product(b, a));
    let mut out = PhasePolynomial::zero();
    for (k, c) in diff.terms.iter() {
        out.insert_add(*k, c.div_i_hbar());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_canonical_pair() {
        assert_eq!(
            poisson_bracket(&PhasePolynomial::q(), &PhasePolynomial::p()),
            PhasePolynomial::one()
        );
    }

    #[test]
    fn poisson_antisymmetry_on_self() {
        let a = PhasePolynomial::q()
            .mul(&PhasePolynomial::p())
            .add(&PhasePolynomial::q());
        assert!(poisson_bracket(&a, &a).is_zero());
    }

    #[test]
    fn poisson_q2_p2() {
        // {q^2, p^2} = 4 q p, by direct differentiation
        let q2 = PhasePolynomial::term(2, 0, HbarCoefficient::one());
        let p2 = PhasePolynomial::term(0, 2, HbarCoefficient::one());
        let expect = PhasePolynomial::term(1, 1, HbarCoefficient::from_int(4));
        assert_eq!(poisson_bracket(&q2, &p2), expect);
    }

    #[test]
    fn star_q_p() {
        // q * p = q p + i hbar / 2
        let got = star_product(&PhasePolynomial::q(), &PhasePolynomial::p());
        let expect = PhasePolynomial::term(1, 1, HbarCoefficient::one()).add(
            &PhasePolynomial::constant(HbarCoefficient::monomial(crat(0, 1, 1, 2), 1)),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn star_unit() {
        let b = PhasePolynomial::term(2, 3, HbarCoefficient::from_int(7));
        assert_eq!(star_product(&PhasePolynomial::one(), &b), b);
        assert_eq!(star_product(&b, &PhasePolynomial::one()), b);
    }

    #[test]
    fn star_q2_p3_oracle() {
        // Term-by-term J-power expansion:
        //   n=0: q^2 p^3
        //   n=1: (i hbar/2) * J(q^2,p^3) = 3 i hbar q p^2
        //   n=2: (i hbar/2)^2/2 * (q^2)_qq (p^3)_pp = -(3/2) hbar^2 p
        //   n>=3: zero
        let q2 = PhasePolynomial::term(2, 0, HbarCoefficient::one());
        let p3 = PhasePolynomial::term(0, 3, HbarCoefficient::one());
        let got = star_product(&q2, &p3);
        let expect = PhasePolynomial::term(2, 3, HbarCoefficient::one())
            .add(&PhasePolynomial::term(
                1,
                2,
                HbarCoefficient::monomial(crat(0, 1, 3, 1), 1),
            ))
            .add(&PhasePolynomial::term(
                0,
                1,
                HbarCoefficient::monomial(crat(-3, 2, 0, 1), 2),
            ));
        assert_eq!(got, expect);
    }

    #[test]
    fn moyal_linear_pair_terminates_at_j() {
        assert_eq!(
            moyal_bracket(&PhasePolynomial::q(), &PhasePolynomial::p()),
            PhasePolynomial::one()
        );
    }

    #[test]
    fn moyal_quadratics_equal_poisson() {
        let q2 = PhasePolynomial::term(2, 0, HbarCoefficient::one());
        let p2 = PhasePolynomial::term(0, 2, HbarCoefficient::one());
        assert_eq!(moyal_bracket(&q2, &p2), poisson_bracket(&q2, &p2));
    }

    #[test]
    fn moyal_q3_p3_has_hbar2_correction() {
        // G-series oracle to order hbar^2:
        //   J(q^3,p^3) = 9 q^2 p^2, J^3(q^3,p^3) = 36,
        //   moyal = J - hbar^2/24 J^3 = 9 q^2 p^2 - (3/2) hbar^2.
        let q3 = PhasePolynomial::term(3, 0, HbarCoefficient::one());
        let p3 = PhasePolynomial::term(0, 3, HbarCoefficient::one());
        let expect = PhasePolynomial::term(2, 2, HbarCoefficient::from_int(9)).add(
            &PhasePolynomial::constant(HbarCoefficient::monomial(crat(-3, 2, 0, 1), 2)),
        );
        assert_eq!(moyal_bracket(&q3, &p3), expect);
    }
}
