//! The Weyl algebra on canonical operators in normal form, the
//! quantize/symbol pair, and the commutative odot structure.
//!
//! An [`OperatorPolynomial`] stores a finite sum of normal-ordered words
//! qh^r ph^s (all qh powers to the left). Products are reduced exactly with
//! the commutation rule ph qh = qh ph - i hbar, which generalizes to
//!
//!   ph^s qh^r = sum_j (-i hbar)^j j! C(s,j) C(r,j) qh^{r-j} ph^{s-j}.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::hbar::{binomial, crat, factorial, CRat, HbarCoefficient};
use super::phase_poly::{poisson_bracket, PhasePolynomial};
use crate::error::{Error, Result};

/// Differentiation axis for subscript derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseAxis {
    Q,
    P,
}

/// Noncommutative polynomial in qh, ph, stored strictly in normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OperatorPolynomial {
    terms: BTreeMap<(u32, u32), HbarCoefficient>,
}

impl OperatorPolynomial {
    pub fn zero() -> Self {
        OperatorPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        OperatorPolynomial::word(0, 0, HbarCoefficient::one())
    }

    pub fn qhat() -> Self {
        OperatorPolynomial::word(1, 0, HbarCoefficient::one())
    }

    pub fn phat() -> Self {
        OperatorPolynomial::word(0, 1, HbarCoefficient::one())
    }

    /// c * qh^r ph^s.
    pub fn word(r: u32, s: u32, c: HbarCoefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((r, s), c);
        }
        OperatorPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &HbarCoefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: u32, s: u32) -> HbarCoefficient {
        self.terms
            .get(&(r, s))
            .cloned()
            .unwrap_or_else(HbarCoefficient::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(r, s)| r + s).max().unwrap_or(0)
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
        OperatorPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &HbarCoefficient) -> Self {
        let mut out = OperatorPolynomial::zero();
        for (k, v) in self.terms.iter() {
            out.insert_add(*k, v.mul(c));
        }
        out
    }

    /// Noncommutative product, reduced to normal form exactly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = OperatorPolynomial::zero();
        for ((r1, s1), c1) in self.terms.iter() {
            for ((r2, s2), c2) in other.terms.iter() {
                // qh^{r1} ph^{s1} qh^{r2} ph^{s2}: reduce ph^{s1} qh^{r2}.
                let jmax = (*s1).min(*r2);
                for j in 0..=jmax {
                    let mut num = BigRational::from(factorial(j));
                    num *= BigRational::from(binomial(*s1, j));
                    num *= BigRational::from(binomial(*r2, j));
                    // (-i)^j
                    let phase = match j % 4 {
                        0 => crat(1, 1, 0, 1),
                        1 => crat(0, 1, -1, 1),
                        2 => crat(-1, 1, 0, 1),
                        _ => crat(0, 1, 1, 1),
                    };
                    let scalar = CRat::new(phase.re * num.clone(), phase.im * num);
                    let factor = HbarCoefficient::monomial(scalar, j as usize);
                    let key = (r1 + r2 - j, s1 + s2 - j);
                    out.insert_add(key, c1.mul(c2).mul(&factor));
                }
            }
        }
        out
    }

    /// Commutator [A, B] = AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Formal adjoint: reverse every word, conjugate every coefficient,
    /// reduce back to normal form. qh and ph are self-adjoint and hbar is
    /// treated as real.
    pub fn adjoint(&self) -> Self {
        let mut out = OperatorPolynomial::zero();
        for ((r, s), c) in self.terms.iter() {
            // (qh^r ph^s)^+ = ph^s qh^r
            let word = OperatorPolynomial::word(0, *s, HbarCoefficient::one())
                .mul(&OperatorPolynomial::word(*r, 0, HbarCoefficient::one()));
            out = out.add(&word.scale(&c.conj()));
        }
        out
    }
}

impl std::fmt::Debug for OperatorPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::symbolic::print::render_operator(self))
    }
}

/// Reduce a product of alternating qh/ph powers to normal form. Each factor
/// `(r, s)` stands for qh^r ph^s; the whole word is their ordered product.
pub fn normal_form(factors: &[(u32, u32)]) -> OperatorPolynomial {
    let mut acc = OperatorPolynomial::identity();
    for (r, s) in factors {
        acc = acc.mul(&OperatorPolynomial::word(*r, *s, HbarCoefficient::one()));
    }
    acc
}

/// Weyl quantization: the symmetrized operator for each monomial,
///
///   q^r p^s  ->  2^{-r} sum_k C(r,k) qh^k ph^s qh^{r-k},
///
/// extended linearly. Real polynomials map to formally self-adjoint results.
pub fn weyl_quantize(a: &PhasePolynomial) -> OperatorPolynomial {
    let mut out = OperatorPolynomial::zero();
    for ((r, s), c) in a.iter() {
        let mut sym = OperatorPolynomial::zero();
        for k in 0..=*r {
            let w = normal_form(&[(k, *s), (r - k, 0)]);
            sym = sym.add(&w.scale(&HbarCoefficient::from_rational(BigRational::from(
                binomial(*r, k),
            ))));
        }
        let half_pow = BigRational::new(
            num_bigint::BigInt::from(1u32),
            num_bigint::BigInt::from(2u32).pow(*r),
        );
        out = out.add(&sym.scale(&c.mul(&HbarCoefficient::from_rational(half_pow))));
    }
    out
}

/// Inverse of [`weyl_quantize`]: the phase-space symbol of an operator.
///
/// Computed by inverting the symmetrization on the normal-form basis: the
/// normal form of the Weyl word for q^r p^s is qh^r ph^s plus words that are
/// lower by equal amounts in both exponents, so the change of basis is
/// unitriangular and inverts by recursion.
pub fn weyl_symbol(a: &OperatorPolynomial) -> PhasePolynomial {
    let mut memo: BTreeMap<(u32, u32), PhasePolynomial> = BTreeMap::new();
    let mut out = PhasePolynomial::zero();
    for ((r, s), c) in a.iter() {
        let sym = symbol_of_word(*r, *s, &mut memo);
        out = out.add(&sym.scale(c));
    }
    out
}

fn symbol_of_word(
    r: u32,
    s: u32,
    memo: &mut BTreeMap<(u32, u32), PhasePolynomial>,
) -> PhasePolynomial {
    if let Some(hit) = memo.get(&(r, s)) {
        return hit.clone();
    }
    let result = if r == 0 || s == 0 {
        // qh^r and ph^s are already Weyl-ordered.
        PhasePolynomial::term(r, s, HbarCoefficient::one())
    } else {
        let weyl_word = weyl_quantize(&PhasePolynomial::term(r, s, HbarCoefficient::one()));
        debug_assert_eq!(weyl_word.coeff(r, s), HbarCoefficient::one());
        let mut sym = PhasePolynomial::term(r, s, HbarCoefficient::one());
        for ((r2, s2), c) in weyl_word.iter() {
            if (*r2, *s2) == (r, s) {
                continue;
            }
            let lower = symbol_of_word(*r2, *s2, memo);
            sym = sym.sub(&lower.scale(c));
        }
        sym
    };
    memo.insert((r, s), result.clone());
    result
}

/// Commutative odot product: quantize the pointwise product of the symbols.
pub fn odot_product(a: &OperatorPolynomial, b: &OperatorPolynomial) -> OperatorPolynomial {
    weyl_quantize(&weyl_symbol(a).mul(&weyl_symbol(b)))
}

/// Subscript derivative: the operator image of a phase-space partial
/// derivative.
///
///   axis Q: (1/i hbar) [A, ph]      axis P: (1/i hbar) [qh, A]
pub fn subscript_derivative(a: &OperatorPolynomial, axis: PhaseAxis) -> OperatorPolynomial {
    let comm = match axis {
        PhaseAxis::Q => a.commutator(&OperatorPolynomial::phat()),
        PhaseAxis::P => OperatorPolynomial::qhat().commutator(a),
    };
    let mut out = OperatorPolynomial::zero();
    for (k, c) in comm.iter() {
        out.insert_add(*k, c.div_i_hbar());
    }
    out
}

/// Mixed subscript derivative with the given orders in q and p. The two
/// single-axis maps commute, so the application order is immaterial.
pub fn subscript_derivative_mixed(
    a: &OperatorPolynomial,
    q_order: u32,
    p_order: u32,
) -> OperatorPolynomial {
    let mut acc = a.clone();
    for _ in 0..q_order {
        acc = subscript_derivative(&acc, PhaseAxis::Q);
    }
    for _ in 0..p_order {
        acc = subscript_derivative(&acc, PhaseAxis::P);
    }
    acc
}

/// The odot bracket, i hbar times the operator image of the Poisson bracket:
///
///   [A, B]_odot = i hbar (A_q odot B_p - A_p odot B_q)
pub fn odot_bracket(a: &OperatorPolynomial, b: &OperatorPolynomial) -> OperatorPolynomial {
    let aq = subscript_derivative(a, PhaseAxis::Q);
    let ap = subscript_derivative(a, PhaseAxis::P);
    let bq = subscript_derivative(b, PhaseAxis::Q);
    let bp = subscript_derivative(b, PhaseAxis::P);
    odot_product(&aq, &bp)
        .sub(&odot_product(&ap, &bq))
        .scale(&HbarCoefficient::i_hbar())
}

/// Same bracket through the symbol route, used as an independent path in
/// identity audits: i hbar W^{-1}({W(A), W(B)}).
pub fn odot_bracket_via_symbols(
    a: &OperatorPolynomial,
    b: &OperatorPolynomial,
) -> OperatorPolynomial {
    weyl_quantize(&poisson_bracket(&weyl_symbol(a), &weyl_symbol(b)))
        .scale(&HbarCoefficient::i_hbar())
}

/// Coefficients of theta/sin(theta) = 1 + theta^2/6 + 7 theta^4/360 + ...
/// indexed by the half-order k. See docs/odot-bracket-series.md for the
/// derivation of the k = 2 commutator combination.
const SIN_INVERSION_COEFFS: [(i64, i64); 3] = [(1, 1), (1, 6), (7, 360)];

/// The order-hbar^{2k} term of the odot bracket expansion
///
///   [A, B]_odot = [A, B]
///     + (1/6)(hbar/2)^2 ([A_qq, B_pp] - 2 [A_qp, B_qp] + [A_pp, B_qq])
///     + (7/360)(hbar/2)^4 sum_j (-1)^j C(4,j) [A_{q^{4-j} p^j}, B_{p^{4-j} q^j}]
///     + ...
///
/// The finite sum over all nonvanishing k reproduces [`odot_bracket`]
/// exactly on polynomials.
pub fn odot_bracket_series_term(
    a: &OperatorPolynomial,
    b: &OperatorPolynomial,
    k: usize,
) -> Result<OperatorPolynomial> {
    let (num, den) = *SIN_INVERSION_COEFFS
        .get(k)
        .ok_or(Error::SeriesOrder(k))?;
    let order = 2 * k as u32;
    let mut sum = OperatorPolynomial::zero();
    for j in 0..=order {
        let da = subscript_derivative_mixed(a, order - j, j);
        if da.is_zero() {
            continue;
        }
        let db = subscript_derivative_mixed(b, j, order - j);
        if db.is_zero() {
            continue;
        }
        let mut c = BigRational::from(binomial(order, j));
        if j % 2 == 1 {
            c = -c;
        }
        sum = sum.add(
            &da.commutator(&db)
                .scale(&HbarCoefficient::from_rational(c)),
        );
    }
    // (num/den) * (hbar/2)^{2k}
    let scale = BigRational::new(
        num_bigint::BigInt::from(num),
        num_bigint::BigInt::from(den) * num_bigint::BigInt::from(2u32).pow(order),
    );
    Ok(sum.scale(&HbarCoefficient::monomial(
        CRat::new(scale, BigRational::from(num_bigint::BigInt::from(0u32))),
        order as usize,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ih() -> HbarCoefficient {
        HbarCoefficient::i_hbar()
    }

    #[test]
    fn normal_form_single_commutation() {
        // ph qh = qh ph - i hbar
        let got = normal_form(&[(0, 1), (1, 0)]);
        let expect = OperatorPolynomial::word(1, 1, HbarCoefficient::one())
            .add(&OperatorPolynomial::word(0, 0, ih().neg()));
        assert_eq!(got, expect);
    }

    #[test]
    fn normal_form_already_normal() {
        let got = normal_form(&[(1, 1)]);
        assert_eq!(got, OperatorPolynomial::word(1, 1, HbarCoefficient::one()));
    }

    #[test]
    fn normal_form_p2_q() {
        // ph^2 qh = qh ph^2 - 2 i hbar ph, applying the commutation rule twice
        let got = normal_form(&[(0, 2), (1, 0)]);
        let expect = OperatorPolynomial::word(1, 2, HbarCoefficient::one()).add(
            &OperatorPolynomial::word(0, 1, ih().scale(&crat(-2, 1, 0, 1))),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn canonical_commutator() {
        let c = OperatorPolynomial::qhat().commutator(&OperatorPolynomial::phat());
        assert_eq!(c, OperatorPolynomial::word(0, 0, ih()));
    }

    #[test]
    fn quantize_qp_is_symmetrized() {
        // qp -> (qh ph + ph qh)/2 = qh ph - i hbar/2
        let qp = PhasePolynomial::term(1, 1, HbarCoefficient::one());
        let expect = OperatorPolynomial::word(1, 1, HbarCoefficient::one()).add(
            &OperatorPolynomial::word(0, 0, HbarCoefficient::monomial(crat(0, 1, -1, 2), 1)),
        );
        assert_eq!(weyl_quantize(&qp), expect);
    }

    #[test]
    fn quantize_q2p() {
        // q^2 p -> (qh^2 ph + 2 qh ph qh + ph qh^2)/4 = qh^2 ph - i hbar qh
        let q2p = PhasePolynomial::term(2, 1, HbarCoefficient::one());
        let expect = OperatorPolynomial::word(2, 1, HbarCoefficient::one())
            .add(&OperatorPolynomial::word(1, 0, ih().neg()));
        assert_eq!(weyl_quantize(&q2p), expect);
    }

    #[test]
    fn symbol_of_qp_word() {
        // qh ph = {qh ph}_sym + i hbar / 2, so its symbol is q p + i hbar/2
        let w = OperatorPolynomial::word(1, 1, HbarCoefficient::one());
        let expect = PhasePolynomial::term(1, 1, HbarCoefficient::one()).add(
            &PhasePolynomial::constant(HbarCoefficient::monomial(crat(0, 1, 1, 2), 1)),
        );
        assert_eq!(weyl_symbol(&w), expect);
    }

    #[test]
    fn symbol_quantize_roundtrip_q3p2() {
        let a = PhasePolynomial::term(3, 2, HbarCoefficient::one());
        assert_eq!(weyl_symbol(&weyl_quantize(&a)), a);
    }

    #[test]
    fn odot_of_canonical_pair() {
        // qh odot ph = (qh ph + ph qh)/2
        let got = odot_product(&OperatorPolynomial::qhat(), &OperatorPolynomial::phat());
        let sym = normal_form(&[(1, 1)])
            .add(&normal_form(&[(0, 1), (1, 0)]))
            .scale(&HbarCoefficient::from_ratio(1, 2));
        assert_eq!(got, sym);
    }

    #[test]
    fn odot_q2_p3_matches_symmetrization() {
        // qh^2 odot ph^3 = (qh^2 ph^3 + 2 qh ph^3 qh + ph^3 qh^2)/4
        let q2 = normal_form(&[(2, 0)]);
        let p3 = normal_form(&[(0, 3)]);
        let got = odot_product(&q2, &p3);
        let sym = normal_form(&[(2, 3)])
            .add(&normal_form(&[(1, 3), (1, 0)]).scale(&HbarCoefficient::from_int(2)))
            .add(&normal_form(&[(0, 3), (2, 0)]))
            .scale(&HbarCoefficient::from_ratio(1, 4));
        assert_eq!(got, sym);
    }

    #[test]
    fn odot_unit() {
        let a = normal_form(&[(2, 1), (0, 2)]);
        assert_eq!(odot_product(&OperatorPolynomial::identity(), &a), a);
    }

    #[test]
    fn subscript_derivatives_of_q2() {
        let q2 = normal_form(&[(2, 0)]);
        let two_q = OperatorPolynomial::word(1, 0, HbarCoefficient::from_int(2));
        assert_eq!(subscript_derivative(&q2, PhaseAxis::Q), two_q);
        assert!(subscript_derivative(&q2, PhaseAxis::P).is_zero());
    }

    #[test]
    fn subscript_derivative_of_symmetrized_qp() {
        let sym_qp = weyl_quantize(&PhasePolynomial::term(1, 1, HbarCoefficient::one()));
        assert_eq!(
            subscript_derivative(&sym_qp, PhaseAxis::P),
            OperatorPolynomial::qhat()
        );
    }

    #[test]
    fn odot_bracket_canonical_pair() {
        let got = odot_bracket(&OperatorPolynomial::qhat(), &OperatorPolynomial::phat());
        assert_eq!(got, OperatorPolynomial::word(0, 0, ih()));
    }

    #[test]
    fn odot_bracket_q2_p2() {
        // [qh^2, ph^2]_odot = i hbar W^{-1}(4 q p) = 2 i hbar (qh ph + ph qh)
        let q2 = normal_form(&[(2, 0)]);
        let p2 = normal_form(&[(0, 2)]);
        let got = odot_bracket(&q2, &p2);
        let expect = normal_form(&[(1, 1)])
            .add(&normal_form(&[(0, 1), (1, 0)]))
            .scale(&ih().scale(&crat(2, 1, 0, 1)));
        assert_eq!(got, expect);
        assert_eq!(got, odot_bracket_via_symbols(&q2, &p2));
    }

    #[test]
    fn series_term_zero_is_commutator() {
        let a = normal_form(&[(1, 0)]);
        let b = normal_form(&[(0, 1)]);
        let got = odot_bracket_series_term(&a, &b, 0).unwrap();
        assert_eq!(got, OperatorPolynomial::word(0, 0, ih()));
    }

    #[test]
    fn series_term_one_vanishes_on_quadratics() {
        let a = normal_form(&[(2, 0)]);
        let b = normal_form(&[(0, 2)]);
        assert!(odot_bracket_series_term(&a, &b, 1).unwrap().is_zero());
    }

    #[test]
    fn series_sum_reconstructs_bracket_q3_p3() {
        let a = normal_form(&[(3, 0)]);
        let b = normal_form(&[(0, 3)]);
        let mut sum = OperatorPolynomial::zero();
        for k in 0..=2 {
            sum = sum.add(&odot_bracket_series_term(&a, &b, k).unwrap());
        }
        assert_eq!(sum, odot_bracket(&a, &b));
    }

    #[test]
    fn series_term_rejects_unimplemented_order() {
        let a = normal_form(&[(1, 0)]);
        assert!(matches!(
            odot_bracket_series_term(&a, &a, 3),
            Err(Error::SeriesOrder(3))
        ));
    }

    #[test]
    fn adjoint_of_real_quantization_is_itself() {
        let a = PhasePolynomial::term(2, 1, HbarCoefficient::from_ratio(3, 5))
            .add(&PhasePolynomial::term(1, 3, HbarCoefficient::from_int(-2)));
        let op = weyl_quantize(&a);
        assert_eq!(op.adjoint(), op);
    }
}
