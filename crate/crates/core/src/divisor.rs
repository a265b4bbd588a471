//! Monomial divisors on normal affine semigroup rings: divisorial ideals,
//! symbolic powers, reflexive products and the divisor class group.
//!
//! A divisor is a coefficient vector indexed by the facets of `cone(S)` in
//! the order of [`AffineSemigroup::facet_functionals`]. The divisor `c`
//! names the ideal `{u : v_F(u) >= c_F}`, and its class is the class of that
//! ideal, so the ideal of a monomial `u` has divisor `v(u)` and class zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{lcm_all, vec_sub, AbelianGroupPresentation, IntVec, IntegerMatrix};
use crate::semigroup::{format_vector, AffineSemigroup};

/// Integer coefficients, one per facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialDivisor {
    coefficients: IntVec,
}

impl MonomialDivisor {
    pub fn new(coefficients: IntVec) -> Self {
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(crate::lattice::int_vec(coefficients))
    }

    pub fn zero(facets: usize) -> Self {
        Self::new(vec![BigInt::zero(); facets])
    }

    /// Coefficient 1 on one facet.
    pub fn facet(facets: usize, index: usize) -> Self {
        let mut c = vec![BigInt::zero(); facets];
        c[index] = BigInt::one();
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * n).collect())
    }

    /// Sum of `n_i * D_i`; all divisors must have `facets` entries.
    pub fn combination(facets: usize, divisors: &[Self], exponents: &[BigInt]) -> Result<Self> {
        if divisors.len() != exponents.len() {
            return Err(Error::DimensionMismatch {
                expected: divisors.len(),
                got: exponents.len(),
            });
        }
        let mut total = Self::zero(facets);
        for (d, n) in divisors.iter().zip(exponents) {
            check_length(facets, d)?;
            total = total.add(&d.scale(n));
        }
        Ok(total)
    }
}

impl fmt::Display for MonomialDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.coefficients))
    }
}

impl Serialize for MonomialDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

fn check_length(facets: usize, d: &MonomialDivisor) -> Result<()> {
    if d.len() != facets {
        return Err(Error::DimensionMismatch {
            expected: facets,
            got: d.len(),
        });
    }
    Ok(())
}

/// A divisorial monomial ideal with its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialIdeal {
    pub divisor: MonomialDivisor,
    pub generators: Vec<IntVec>,
}

impl DivisorialIdeal {
    /// Membership decided by the valuation inequalities.
    pub fn contains(&self, a: &AffineSemigroup, u: &[BigInt]) -> bool {
        a.valuations(u).is_some_and(|v| {
            v.iter().all(|x| !x.is_negative())
                && v.iter().zip(self.divisor.coefficients()).all(|(x, c)| x >= c)
        })
    }

    /// Membership decided by divisibility by a generator inside `S`.
    pub fn generated_contains(&self, a: &AffineSemigroup, u: &[BigInt]) -> bool {
        self.generators.iter().any(|g| a.contains(&vec_sub(u, g)))
    }
}

/// An element of `Cl(A)` in the coordinates of its presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coordinates: IntVec,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.coordinates))
    }
}

fn require_normal(a: &AffineSemigroup) -> Result<()> {
    if a.is_normal().normal {
        Ok(())
    } else {
        Err(Error::NotNormal)
    }
}

/// Minimal generators of `{u ∈ S : v_F(u) >= c_F}`.
pub fn divisorial_ideal(a: &AffineSemigroup, d: &MonomialDivisor) -> Result<DivisorialIdeal> {
    check_length(a.num_facets(), d)?;
    require_normal(a)?;
    let generators = a.module_generators(d.coefficients())?;
    Ok(DivisorialIdeal {
        divisor: d.clone(),
        generators,
    })
}

/// `I^(n)`, the divisorial ideal of `n * D`.
pub fn symbolic_power(a: &AffineSemigroup, d: &MonomialDivisor, n: u64) -> Result<DivisorialIdeal> {
    divisorial_ideal(a, &d.scale(&BigInt::from(n)))
}

/// `(I_1^{n_1} ... I_k^{n_k})^**`, the divisorial ideal of `Σ n_i D_i`.
pub fn reflexive_product(
    a: &AffineSemigroup,
    divisors: &[MonomialDivisor],
    exponents: &[u64],
) -> Result<DivisorialIdeal> {
    let n: Vec<BigInt> = exponents.iter().map(|&e| BigInt::from(e)).collect();
    let total = MonomialDivisor::combination(a.num_facets(), divisors, &n)?;
    divisorial_ideal(a, &total)
}

/// `Cl(A)`: the cokernel of the valuation map `group(S) -> Z^facets`.
pub fn class_group(a: &AffineSemigroup) -> Result<AbelianGroupPresentation> {
    require_normal(a)?;
    Ok(class_group_unchecked(a))
}

pub(crate) fn class_group_unchecked(a: &AffineSemigroup) -> AbelianGroupPresentation {
    let valuation = IntegerMatrix::from_rows(a.facet_functionals(), a.rank()).expect("facet shape");
    AbelianGroupPresentation::cokernel(&valuation)
}

pub fn class_of(a: &AffineSemigroup, d: &MonomialDivisor) -> Result<DivisorClass> {
    check_length(a.num_facets(), d)?;
    let cl = class_group(a)?;
    Ok(DivisorClass {
        coordinates: cl.project(d.coefficients()),
    })
}

/// Divisor of the ideal of interior monomials, coefficient 1 everywhere.
pub fn canonical_divisor(a: &AffineSemigroup) -> Result<MonomialDivisor> {
    require_normal(a)?;
    Ok(MonomialDivisor::new(vec![BigInt::one(); a.num_facets()]))
}

/// Divisor of the principal ideal generated by `u`.
pub fn divisor_of_monomial(a: &AffineSemigroup, u: &[BigInt]) -> Result<MonomialDivisor> {
    a.valuations(u)
        .map(MonomialDivisor::new)
        .ok_or_else(|| Error::InvalidInput(format!("{} is not in group(S)", format_vector(u))))
}

/// Divisor of the height-one prime generated by the given monomials. The
/// monomials must generate exactly `{u ∈ S : v_F(u) > 0}` for one facet F.
pub fn prime_divisor(a: &AffineSemigroup, generators: &[IntVec]) -> Result<MonomialDivisor> {
    require_normal(a)?;
    if generators.is_empty() {
        return Err(Error::InvalidInput("a prime needs at least one generator".into()));
    }
    for g in generators {
        if !a.contains(g) {
            return Err(Error::InvalidInput(format!(
                "{} is not a monomial of the ring",
                format_vector(g)
            )));
        }
    }
    let n = a.num_facets();
    for f in 0..n {
        let prime = MonomialDivisor::facet(n, f);
        let ideal = divisorial_ideal(a, &prime)?;
        let inside = generators.iter().all(|g| ideal.contains(a, g));
        let covers = ideal
            .generators
            .iter()
            .all(|p| generators.iter().any(|g| a.contains(&vec_sub(p, g))));
        if inside && covers {
            return Ok(prime);
        }
    }
    let listed: Vec<String> = generators.iter().map(|g| format_vector(g)).collect();
    Err(Error::InvalidInput(format!(
        "monomials {} do not generate a height-one monomial prime",
        listed.join(", ")
    )))
}

/// An effective `D_J` with `[I] + [J] + [ω] = 0`: the lexicographically
/// least coefficient vector in the box `[0, lcm(torsion) + max|c|]^facets`.
pub fn solve_complement(a: &AffineSemigroup, d_i: &MonomialDivisor) -> Result<MonomialDivisor> {
    check_length(a.num_facets(), d_i)?;
    let cl = class_group(a)?;
    let omega = canonical_divisor(a)?;
    let target = cl.neg(&cl.add(&cl.project(d_i.coefficients()), &cl.project(omega.coefficients())));
    let largest = d_i
        .coefficients()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let bound = lcm_all(cl.invariant_factors()) + largest;
    let n = a.num_facets();
    let mut c = vec![BigInt::zero(); n];
    loop {
        if cl.project(&c) == target {
            return Ok(MonomialDivisor::new(c));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Err(Error::InvalidInput(
                    "no complement divisor inside the search box".into(),
                ));
            }
            k -= 1;
            c[k] += 1;
            if c[k] <= bound {
                break;
            }
            c[k] = BigInt::zero();
        }
    }
}
