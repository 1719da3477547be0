//! Exact algebra of polynomial observables: Poisson, star, Moyal, and odot
//! products and brackets with hbar as a formal parameter.
//!
//! Everything in this module is pure and exact; it serves as the ground
//! truth oracle for the grid-based numerics.

pub mod audit;
pub mod hbar;
pub mod operator_poly;
pub mod phase_poly;
pub mod print;

pub use hbar::{CRat, HbarCoefficient};
pub use operator_poly::{
    normal_form, odot_bracket, odot_bracket_series_term, odot_bracket_via_symbols, odot_product,
    subscript_derivative, subscript_derivative_mixed, weyl_quantize, weyl_symbol,
    OperatorPolynomial, PhaseAxis,
};
pub use phase_poly::{j_power, moyal_bracket, poisson_bracket, star_product, PhasePolynomial};
pub use print::{parse_operator, parse_phase, render_operator, render_phase};
