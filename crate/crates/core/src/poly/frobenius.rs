//! Frobenius bracket powers and Fedder's F-purity criterion.

use super::field::{Field, PrimeField};
use super::groebner::{buchberger, colon_element, intersection};
use super::polynomial::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::semigroup::is_prime;

/// `J^[q]`, generated by the `q`-th powers of the generators of `J`.
pub fn frobenius_power<F: Field>(ring: &PolyRing<F>, generators: &[Poly<F>], q: u64) -> Result<Vec<Poly<F>>> {
    let p = ring.field().characteristic();
    if !is_power_of(q, p) {
        return Err(Error::NotPowerOfCharacteristic { q, p });
    }
    Ok(generators.iter().map(|g| ring.pow(g, q)).collect())
}

fn is_power_of(q: u64, p: u64) -> bool {
    if p < 2 || q == 0 {
        return false;
    }
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Whether the monomial lies outside `m^[p]`, i.e. every exponent is below `p`.
pub fn outside_frobenius_maximal(m: &Monomial, p: u64) -> bool {
    m.exponents().iter().all(|&e| u64::from(e) < p)
}

/// Whether a polynomial lies in the monomial ideal `m^[p]`.
pub fn in_frobenius_maximal(f: &Poly<PrimeField>, p: u64) -> bool {
    f.terms().iter().all(|(m, _)| !outside_frobenius_maximal(m, p))
}

/// Evidence attached to an F-purity verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A term of `f^(p-1)` with every exponent at most `p - 1`.
    Monomial { exponents: Vec<u32>, coefficient: u64 },
    /// `f^(p-1)` has no such term.
    PowerInside,
    /// An element of `(J^[p] : J)` with a term outside `m^[p]`.
    ColonElement {
        element: Poly<PrimeField>,
        exponents: Vec<u32>,
    },
    /// Generators of `(J^[p] : (b_1, ..., b_r))` for the listed generators
    /// `b_i` of `J`, all inside `m^[p]`; the full colon is contained in it.
    ColonTrace {
        used: Vec<usize>,
        generators: Vec<Poly<PrimeField>>,
    },
}

/// Outcome of Fedder's criterion at the homogeneous maximal ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusVerdict {
    pub p: u64,
    pub f_pure: bool,
    pub certificate: Certificate,
}

fn check_prime(ring: &PolyRing<PrimeField>, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if ring.field().characteristic() != p {
        return Err(Error::InvalidInput(format!(
            "ring has characteristic {}, criterion asked at {p}",
            ring.field().characteristic()
        )));
    }
    Ok(())
}

/// Fedder's criterion for `K[x]/(f)`: F-pure iff `f^(p-1) ∉ m^[p]`.
pub fn fedder_hypersurface(ring: &PolyRing<PrimeField>, f: &Poly<PrimeField>, p: u64) -> Result<FrobeniusVerdict> {
    check_prime(ring, p)?;
    if f.terms().iter().any(|(m, _)| m.is_one()) {
        return Err(Error::InvalidInput("polynomial must vanish at the origin".into()));
    }
    let power = ring.pow(f, p - 1);
    let witness = power
        .terms()
        .iter()
        .find(|(m, _)| outside_frobenius_maximal(m, p));
    Ok(match witness {
        Some((m, c)) => FrobeniusVerdict {
            p,
            f_pure: true,
            certificate: Certificate::Monomial {
                exponents: m.exponents().to_vec(),
                coefficient: *c,
            },
        },
        None => FrobeniusVerdict {
            p,
            f_pure: false,
            certificate: Certificate::PowerInside,
        },
    })
}

/// Recomputes `f^(p-1)` by repeated multiplication in lexicographic order
/// and confirms the verdict.
pub fn recheck_hypersurface(ring: &PolyRing<PrimeField>, f: &Poly<PrimeField>, verdict: &FrobeniusVerdict) -> bool {
    let lex = ring.with_order(MonomialOrder::Lex);
    let g = lex.import(f);
    let mut power = lex.one();
    for _ in 1..verdict.p {
        power = lex.mul(&power, &g);
    }
    match &verdict.certificate {
        Certificate::Monomial {
            exponents,
            coefficient,
        } => {
            let m = Monomial(exponents.clone());
            verdict.f_pure
                && outside_frobenius_maximal(&m, verdict.p)
                && power
                    .terms()
                    .iter()
                    .any(|(t, c)| *t == m && c == coefficient && *c != 0)
        }
        Certificate::PowerInside => !verdict.f_pure && in_frobenius_maximal(&power, verdict.p),
        _ => false,
    }
}

/// Fedder's criterion for `K[x]/J`: F-pure iff `(J^[p] : J) ⊄ m^[p]`.
/// The colon is built one generator of `J` at a time, stopping as soon as
/// the partial colon, which contains the full one, lies in `m^[p]`.
pub fn fedder_general(ring: &PolyRing<PrimeField>, j: &[Poly<PrimeField>], p: u64) -> Result<FrobeniusVerdict> {
    check_prime(ring, p)?;
    let gens: Vec<Poly<PrimeField>> = j.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.iter().any(|g| g.terms().iter().any(|(m, _)| m.is_one())) {
        return Err(Error::InvalidInput("ideal must lie in the homogeneous maximal ideal".into()));
    }
    let bracket = frobenius_power(ring, &gens, p)?;
    let bracket_gb = buchberger(ring, &bracket).polynomials().to_vec();
    let mut acc: Option<Vec<Poly<PrimeField>>> = None;
    let mut used = Vec::new();
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| gens[i].len());
    for i in order {
        let part = colon_element(ring, &bracket_gb, &gens[i]);
        let next = match acc {
            None => part,
            Some(prev) => intersection(ring, &prev, &part),
        };
        used.push(i);
        if next.iter().all(|c| in_frobenius_maximal(c, p)) {
            used.sort_unstable();
            return Ok(FrobeniusVerdict {
                p,
                f_pure: false,
                certificate: Certificate::ColonTrace {
                    used,
                    generators: next,
                },
            });
        }
        acc = Some(next);
    }
    let colon = acc.unwrap_or_else(|| vec![ring.one()]);
    let colon = buchberger(ring, &colon).polynomials().to_vec();
    for c in &colon {
        if let Some((m, _)) = c.terms().iter().find(|(m, _)| outside_frobenius_maximal(m, p)) {
            return Ok(FrobeniusVerdict {
                p,
                f_pure: true,
                certificate: Certificate::ColonElement {
                    element: c.clone(),
                    exponents: m.exponents().to_vec(),
                },
            });
        }
    }
    Ok(FrobeniusVerdict {
        p,
        f_pure: false,
        certificate: Certificate::ColonTrace {
            used: (0..gens.len()).collect(),
            generators: colon,
        },
    })
}

/// Re-verifies a general verdict with Gröbner bases in graded lex order:
/// certified colon elements must multiply the relevant generators of `J`
/// into `J^[p]`, and their position relative to `m^[p]` must match.
pub fn recheck_general(ring: &PolyRing<PrimeField>, j: &[Poly<PrimeField>], verdict: &FrobeniusVerdict) -> bool {
    let p = verdict.p;
    let other = ring.with_order(MonomialOrder::GrLex);
    let gens: Vec<Poly<PrimeField>> = j
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| other.import(g))
        .collect();
    let Ok(bracket) = frobenius_power(&other, &gens, p) else {
        return false;
    };
    let gb = buchberger(&other, &bracket);
    let multiplies_into = |c: &Poly<PrimeField>, which: &[usize]| {
        let c = other.import(c);
        which.iter().all(|&i| gb.contains(&other.mul(&c, &gens[i])))
    };
    match &verdict.certificate {
        Certificate::ColonElement { element, exponents } => {
            let all: Vec<usize> = (0..gens.len()).collect();
            verdict.f_pure
                && multiplies_into(element, &all)
                && outside_frobenius_maximal(&Monomial(exponents.clone()), p)
                && element.terms().iter().any(|(m, _)| m.exponents() == exponents.as_slice())
        }
        Certificate::ColonTrace { used, generators } => {
            !verdict.f_pure
                && !generators.is_empty()
                && generators
                    .iter()
                    .all(|c| in_frobenius_maximal(c, p) && multiplies_into(c, used))
        }
        _ => false,
    }
}
