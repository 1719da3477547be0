//! Plain-text rendering and parsing of polynomials.
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! poly     := [sign] term { sign term }
//! sign     := "+" | "-"
//! term     := factor { "*" factor }
//! factor   := rational | "i" | "hbar" [ "^" uint ] | var [ "^" uint ]
//! rational := uint [ "/" uint ]
//! var      := "q" | "p"        (phase polynomials)
//!           | "qh" | "ph"      (operator polynomials; factors multiply in
//!                               written order and are reduced to normal form)
//! ```
//!
//! The zero polynomial renders as `0`. Rendering emits one term per
//! (monomial, hbar power, real/imaginary part), monomials in descending
//! lexicographic order, so output is deterministic and reparses to the same
//! value.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hbar::{CRat, HbarCoefficient};
use super::operator_poly::OperatorPolynomial;
use super::phase_poly::PhasePolynomial;
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Rendering

struct TermPiece {
    negative: bool,
    body: String,
}

fn push_rational(parts: &mut Vec<String>, r: &BigRational) {
    if r.is_one() {
        return;
    }
    if r.denom().is_one() {
        parts.push(format!("{}", r.numer()));
    } else {
        parts.push(format!("{}/{}", r.numer(), r.denom()));
    }
}

fn render_part(
    magnitude: &BigRational,
    imaginary: bool,
    k: usize,
    var_q: &str,
    var_p: &str,
    a: u32,
    b: u32,
) -> String {
    let mut parts: Vec<String> = Vec::new();
    push_rational(&mut parts, magnitude);
    if imaginary {
        parts.push("i".to_string());
    }
    if k == 1 {
        parts.push("hbar".to_string());
    } else if k > 1 {
        parts.push(format!("hbar^{k}"));
    }
    if a == 1 {
        parts.push(var_q.to_string());
    } else if a > 1 {
        parts.push(format!("{var_q}^{a}"));
    }
    if b == 1 {
        parts.push(var_p.to_string());
    } else if b > 1 {
        parts.push(format!("{var_p}^{b}"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn render_terms<'a>(
    terms: impl Iterator<Item = (&'a (u32, u32), &'a HbarCoefficient)>,
    var_q: &str,
    var_p: &str,
) -> String {
    let mut pieces: Vec<TermPiece> = Vec::new();
    for ((a, b), coeff) in terms {
        for (k, c) in coeff.iter() {
            if !c.re.is_zero() {
                pieces.push(TermPiece {
                    negative: c.re.is_negative(),
                    body: render_part(&c.re.abs(), false, k, var_q, var_p, *a, *b),
                });
            }
            if !c.im.is_zero() {
                pieces.push(TermPiece {
                    negative: c.im.is_negative(),
                    body: render_part(&c.im.abs(), true, k, var_q, var_p, *a, *b),
                });
            }
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, piece) in pieces.iter().enumerate() {
        if idx == 0 {
            if piece.negative {
                out.push('-');
            }
        } else if piece.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&piece.body);
    }
    out
}

pub fn render_phase(p: &PhasePolynomial) -> String {
    let mut terms: Vec<_> = p.iter().collect();
    terms.reverse();
    render_terms(terms.into_iter(), "q", "p")
}

pub fn render_operator(p: &OperatorPolynomial) -> String {
    let mut terms: Vec<_> = p.iter().collect();
    terms.reverse();
    render_terms(terms.into_iter(), "qh", "ph")
}

impl std::fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render_phase(self))
    }
}

impl std::fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render_operator(self))
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarSet {
    Phase,
    Operator,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: VarSet,
}

/// One multiplicative factor group: scalar * hbar^k * q^a p^b (operator
/// factors keep their written order in `word`).
struct ParsedTerm {
    scalar: CRat,
    hbar_power: usize,
    word: Vec<(u32, u32)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: VarSet) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an unsigned integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<u64>()
            .map_err(|e| Error::Parse {
                position: start,
                message: format!("integer out of range: {e}"),
            })
    }

    fn parse_exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_uint()?;
            u32::try_from(e).map_err(|_| Error::Parse {
                position: self.pos,
                message: "exponent out of range".into(),
            })
        } else {
            Ok(1)
        }
    }

    fn parse_word(&mut self, keyword: &str) -> bool {
        self.skip_ws();
        let kb = keyword.as_bytes();
        if self.bytes[self.pos..].starts_with(kb) {
            // Reject when the keyword is a prefix of a longer identifier.
            let after = self.bytes.get(self.pos + kb.len()).copied();
            if matches!(after, Some(c) if c.is_ascii_alphanumeric()) {
                return false;
            }
            self.pos += kb.len();
            true
        } else {
            false
        }
    }

    fn parse_factor(&mut self, term: &mut ParsedTerm) -> Result<()> {
        let c = match self.peek() {
            Some(c) => c,
            None => return self.err("expected a factor"),
        };
        if c.is_ascii_digit() {
            let num = self.parse_uint()?;
            let mut value = BigRational::from(num_bigint::BigInt::from(num));
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.parse_uint()?;
                if den == 0 {
                    return self.err("zero denominator");
                }
                value /= BigRational::from(num_bigint::BigInt::from(den));
            }
            term.scalar = term.scalar.clone()
                * CRat::new(value, BigRational::zero());
            return Ok(());
        }
        if self.parse_word("hbar") {
            let e = self.parse_exponent()?;
            term.hbar_power += e as usize;
            return Ok(());
        }
        if self.parse_word("i") {
            term.scalar = term.scalar.clone() * CRat::new(BigRational::zero(), BigRational::one());
            return Ok(());
        }
        let (q_name, p_name) = match self.vars {
            VarSet::Phase => ("q", "p"),
            VarSet::Operator => ("qh", "ph"),
        };
        if self.parse_word(q_name) {
            let e = self.parse_exponent()?;
            term.word.push((e, 0));
            return Ok(());
        }
        if self.parse_word(p_name) {
            let e = self.parse_exponent()?;
            term.word.push((0, e));
            return Ok(());
        }
        self.err(format!(
            "expected rational, 'i', 'hbar', '{q_name}' or '{p_name}'"
        ))
    }

    fn parse_term(&mut self) -> Result<ParsedTerm> {
        let mut term = ParsedTerm {
            scalar: CRat::new(BigRational::one(), BigRational::zero()),
            hbar_power: 0,
            word: Vec::new(),
        };
        self.parse_factor(&mut term)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.parse_factor(&mut term)?;
        }
        Ok(term)
    }

    fn parse_sum(&mut self) -> Result<Vec<(bool, ParsedTerm)>> {
        let mut out = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            out.push((negative, self.parse_term()?));
            match self.peek() {
                Some(b'+') => {
                    negative = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(other) => {
                    return self.err(format!("unexpected character '{}'", other as char))
                }
                None => break,
            }
        }
        Ok(out)
    }
}

/// Parse a phase polynomial such as `q^2*p^3 + 3*i*hbar*q*p^2`.
pub fn parse_phase(text: &str) -> Result<PhasePolynomial> {
    let mut parser = Parser::new(text, VarSet::Phase);
    let terms = parser.parse_sum()?;
    let mut out = PhasePolynomial::zero();
    for (negative, term) in terms {
        let mut scalar = term.scalar;
        if negative {
            scalar = -scalar;
        }
        if scalar.re.is_zero() && scalar.im.is_zero() {
            continue;
        }
        let mut a = 0u32;
        let mut b = 0u32;
        for (r, s) in term.word {
            a += r;
            b += s;
        }
        out.insert_add(
            (a, b),
            HbarCoefficient::monomial(scalar, term.hbar_power),
        );
    }
    Ok(out)
}

/// Parse an operator polynomial such as `qh^2*ph - i*hbar*qh`. Factors are
/// multiplied in written order and reduced to normal form, so `ph*qh` parses
/// to `qh*ph - i*hbar`.
pub fn parse_operator(text: &str) -> Result<OperatorPolynomial> {
    let mut parser = Parser::new(text, VarSet::Operator);
    let terms = parser.parse_sum()?;
    let mut out = OperatorPolynomial::zero();
    for (negative, term) in terms {
        let mut scalar = term.scalar;
        if negative {
            scalar = -scalar;
        }
        if scalar.re.is_zero() && scalar.im.is_zero() {
            continue;
        }
        let word = super::operator_poly::normal_form(&term.word);
        out = out.add(&word.scale(&HbarCoefficient::monomial(scalar, term.hbar_power)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::hbar::crat;

    #[test]
    fn renders_spec_shaped_example() {
        let p = PhasePolynomial::term(2, 3, HbarCoefficient::one()).add(&PhasePolynomial::term(
            1,
            2,
            HbarCoefficient::monomial(crat(0, 1, 3, 1), 1),
        ));
        assert_eq!(render_phase(&p), "q^2*p^3 + 3*i*hbar*q*p^2");
    }

    #[test]
    fn zero_renders_and_parses() {
        assert_eq!(render_phase(&PhasePolynomial::zero()), "0");
        assert!(parse_phase("0").unwrap().is_zero());
    }

    #[test]
    fn parse_print_roundtrip() {
        let text = "q^2*p^3 + 3*i*hbar*q*p^2 - 3/2*hbar^2*p";
        let parsed = parse_phase(text).unwrap();
        assert_eq!(render_phase(&parsed), text);
    }

    #[test]
    fn parse_operator_reorders_to_normal_form() {
        let parsed = parse_operator("ph*qh").unwrap();
        assert_eq!(render_operator(&parsed), "-i*hbar + qh*ph");
    }

    #[test]
    fn parse_rejects_unknown_symbol() {
        assert!(parse_phase("q + z").is_err());
        assert!(parse_operator("q").is_err());
    }

    #[test]
    fn parse_handles_leading_sign_and_rationals() {
        let parsed = parse_phase("-3/4*q + 1/2").unwrap();
        assert_eq!(render_phase(&parsed), "1/2 - 3/4*q");
    }
}
