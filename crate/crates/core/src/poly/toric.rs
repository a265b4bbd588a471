use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::Field;
use super::groebner::{buchberger, saturate_variable, GroebnerBasis};
use super::polynomial::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::lattice::{kernel_lattice, IntVec, IntegerMatrix};

/// Binomial `x^{v+} - x^{v-}` of a lattice vector.
pub fn lattice_binomial<F: Field>(ring: &PolyRing<F>, v: &[BigInt]) -> Result<Poly<F>> {
    let part = |positive: bool| -> Result<Monomial> {
        v.iter()
            .map(|x| {
                let e = if positive == x.is_positive() { x.abs() } else { BigInt::zero() };
                e.to_u32()
                    .ok_or_else(|| Error::InvalidInput("exponent too large".into()))
            })
            .collect::<Result<Vec<u32>>>()
            .map(Monomial)
    };
    let field = ring.field();
    Ok(ring.sub(
        &ring.monomial(part(true)?, field.one()),
        &ring.monomial(part(false)?, field.one()),
    ))
}

/// Kernel of the monomial map `x_i -> t^{a_i}` as a reduced Gröbner basis
/// in `ring` (one variable per exponent vector). Starts from the lattice
/// ideal of a kernel basis and saturates by each variable in turn until the
/// ideal no longer grows.
pub fn toric_ideal<F: Field>(ring: &PolyRing<F>, exponents: &[IntVec]) -> Result<GroebnerBasis<F>> {
    if exponents.len() != ring.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            got: exponents.len(),
        });
    }
    let d = exponents.first().map_or(0, Vec::len);
    let m = IntegerMatrix::from_columns(exponents, d)?;
    let kernel = kernel_lattice(&m);
    let mut gens: Vec<Poly<F>> = kernel
        .basis()
        .iter()
        .map(|v| lattice_binomial(ring, v))
        .collect::<Result<_>>()?;
    let mut current = buchberger(ring, &gens);
    loop {
        for v in 0..ring.nvars() {
            gens = saturate_variable(ring, &gens, v);
        }
        let next = buchberger(ring, &gens);
        if next.polynomials() == current.polynomials() {
            return Ok(next);
        }
        current = next;
    }
}

/// Substitutes the monomial map into `f`; zero exactly when `f` vanishes
/// on the parametrization.
pub fn evaluate_on_map<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, exponents: &[IntVec]) -> Result<Poly<F>> {
    let d = exponents.first().map_or(0, Vec::len);
    let target = PolyRing::with_variables(ring.field().clone(), d);
    let images: Vec<Monomial> = exponents
        .iter()
        .map(|e| {
            e.iter()
                .map(|x| {
                    x.to_u32()
                        .ok_or_else(|| Error::InvalidInput("map exponents must be nonnegative".into()))
                })
                .collect::<Result<Vec<u32>>>()
                .map(Monomial)
        })
        .collect::<Result<_>>()?;
    Ok(ring.substitute_monomials(f, &target, &images))
}
