//! Polynomial rings over prime fields and the rationals, Gröbner bases,
//! toric ideals and Fedder's criterion.

mod field;
mod frobenius;
mod groebner;
mod parse;
mod polynomial;
mod toric;

pub use field::{Field, PrimeField, RationalField};
pub use frobenius::{
    fedder_general, fedder_hypersurface, frobenius_power, in_frobenius_maximal, outside_frobenius_maximal,
    recheck_general, recheck_hypersurface, Certificate, FrobeniusVerdict,
};
pub use groebner::{
    buchberger, colon, colon_element, exact_division, intersection, normal_form, saturate_variable, GroebnerBasis,
    PolyIdeal,
};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use polynomial::{Monomial, MonomialOrder, Poly, PolyRing, Polynomial};
pub use toric::{evaluate_on_map, lattice_binomial, toric_ideal};
