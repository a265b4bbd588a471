//! Buchberger's algorithm with the Gebauer–Möller criteria, and the ideal
//! operations built on it.

use std::sync::OnceLock;

use super::field::Field;
use super::polynomial::{Monomial, MonomialOrder, Poly, PolyRing, Polynomial};

/// Fully reduces `f` modulo `basis` (leading terms of `basis` must be
/// nonzero). The remainder has no term divisible by a leading monomial.
pub fn normal_form<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let field = ring.field();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match basis.iter().find(|g| g.leading_monomial().divides(&m)) {
            Some(g) => {
                let k = field.mul(&c, &field.inv(g.leading_coefficient()));
                let shifted = ring.mul_term(g, &m.div(g.leading_monomial()), &k);
                p = ring.sub(&p, &shifted);
            }
            None => {
                remainder.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    Polynomial { terms: remainder }
}

/// Quotient of `f` by `g` when `g` divides `f` exactly.
pub fn exact_division<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, g: &Poly<F>) -> Option<Poly<F>> {
    if g.is_zero() {
        return None;
    }
    let field = ring.field();
    let mut p = f.clone();
    let mut quotient: Vec<(Monomial, F::Elem)> = Vec::new();
    let inv = field.inv(g.leading_coefficient());
    while let Some((m, c)) = p.leading().cloned() {
        if !g.leading_monomial().divides(&m) {
            return None;
        }
        let q = m.div(g.leading_monomial());
        let k = field.mul(&c, &inv);
        p = ring.sub(&p, &ring.mul_term(g, &q, &k));
        quotient.push((q, k));
    }
    Some(ring.from_terms(quotient))
}

/// A reduced Gröbner basis, monic and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    polys: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn polynomials(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        normal_form(&self.ring, f, &self.polys)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|g| g.leading_monomial().is_one())
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, generators: &[Poly<F>]) -> GroebnerBasis<F> {
    let mut polys: Vec<Poly<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly<F>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.monic(g))
        .collect();
    input.sort_by(|a, b| ring.cmp(a.leading_monomial(), b.leading_monomial()));
    for g in input {
        let basis: Vec<Poly<F>> = active_polys(&polys, &active);
        let h = normal_form(ring, &g, &basis);
        if !h.is_zero() {
            insert(ring, &mut polys, &mut active, &mut pairs, ring.monic(&h));
        }
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .lcm
                    .degree()
                    .cmp(&pairs[b].lcm.degree())
                    .then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(pick);
        let s = s_polynomial(ring, &polys[pair.i], &polys[pair.j], &pair.lcm);
        let basis = active_polys(&polys, &active);
        let h = normal_form(ring, &s, &basis);
        if !h.is_zero() {
            insert(ring, &mut polys, &mut active, &mut pairs, ring.monic(&h));
        }
    }

    let basis = active_polys(&polys, &active);
    GroebnerBasis {
        ring: ring.clone(),
        polys: interreduce(ring, basis),
    }
}

fn active_polys<E: Clone>(polys: &[Polynomial<E>], active: &[bool]) -> Vec<Polynomial<E>> {
    polys
        .iter()
        .zip(active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect()
}

fn s_polynomial<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let field = ring.field();
    let a = ring.mul_term(f, &lcm.div(f.leading_monomial()), &field.inv(f.leading_coefficient()));
    let b = ring.mul_term(g, &lcm.div(g.leading_monomial()), &field.inv(g.leading_coefficient()));
    ring.sub(&a, &b)
}

/// Gebauer–Möller update when adding `h`.
fn insert<F: Field>(
    _ring: &PolyRing<F>,
    polys: &mut Vec<Poly<F>>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly<F>,
) {
    let lh = h.leading_monomial().clone();
    let t = polys.len();

    let candidates: Vec<(usize, Monomial)> = (0..t)
        .filter(|&i| active[i])
        .map(|i| (i, polys[i].leading_monomial().lcm(&lh)))
        .collect();
    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (i, l)) in candidates.iter().enumerate() {
        let coprime = polys[*i].leading_monomial().is_coprime(&lh);
        let later = candidates[idx + 1..].iter().any(|(_, m)| m.divides(l));
        let earlier = kept.iter().any(|(_, m)| m.divides(l));
        if coprime || (!later && !earlier) {
            kept.push((*i, l.clone()));
        }
    }
    // product criterion
    kept.retain(|(i, _)| !polys[*i].leading_monomial().is_coprime(&lh));

    // old pairs made redundant by h
    pairs.retain(|p| {
        !lh.divides(&p.lcm)
            || polys[p.i].leading_monomial().lcm(&lh) == p.lcm
            || polys[p.j].leading_monomial().lcm(&lh) == p.lcm
    });
    pairs.extend(kept.into_iter().map(|(i, lcm)| Pair { i, j: t, lcm }));

    for i in 0..t {
        if active[i] && lh.divides(polys[i].leading_monomial()) {
            active[i] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

fn interreduce<F: Field>(ring: &PolyRing<F>, mut basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial(), b.leading_monomial()));
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for g in basis {
        if !minimal
            .iter()
            .any(|m| m.leading_monomial().divides(g.leading_monomial()))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let head = Polynomial {
            terms: vec![g.terms()[0].clone()],
        };
        let tail = Polynomial {
            terms: g.terms()[1..].to_vec(),
        };
        let reduced = ring.add(&head, &normal_form(ring, &tail, &others));
        out.push(ring.monic(&reduced));
    }
    out
}

/// An ideal with its generators and a lazily computed Gröbner basis.
#[derive(Clone, Debug)]
pub struct PolyIdeal<F: Field> {
    ring: PolyRing<F>,
    generators: Vec<Poly<F>>,
    basis: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> PolyIdeal<F> {
    pub fn new(ring: PolyRing<F>, generators: Vec<Poly<F>>) -> Self {
        Self {
            ring,
            generators,
            basis: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        self.basis
            .get_or_init(|| buchberger(&self.ring, &self.generators))
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.groebner().contains(f)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_ideal(&self, other: &Self) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

/// Ring with one extra variable `t` in front, ordered to eliminate it.
fn elimination_ring<F: Field>(ring: &PolyRing<F>) -> PolyRing<F> {
    let mut names = vec![fresh_name(ring.names())];
    names.extend(ring.names().iter().cloned());
    PolyRing::new(ring.field().clone(), names, MonomialOrder::Block(1)).expect("fresh name")
}

fn fresh_name(names: &[String]) -> String {
    let mut name = "t".to_string();
    while names.contains(&name) {
        name.push('_');
    }
    name
}

fn lift<F: Field>(ring: &PolyRing<F>, big: &PolyRing<F>, f: &Poly<F>) -> Poly<F> {
    let map: Vec<usize> = (1..=ring.nvars()).collect();
    big.substitute_variables(f, &map)
}

fn drop_first<F: Field>(ring: &PolyRing<F>, f: &Poly<F>) -> Poly<F> {
    ring.from_terms(
        f.terms()
            .iter()
            .map(|(m, c)| (Monomial(m.0[1..].to_vec()), c.clone()))
            .collect(),
    )
}

/// `I ∩ J` through `t I + (1 - t) J` and elimination of `t`.
pub fn intersection<F: Field>(ring: &PolyRing<F>, i: &[Poly<F>], j: &[Poly<F>]) -> Vec<Poly<F>> {
    let big = elimination_ring(ring);
    let t = big.variable(0);
    let one_minus_t = big.sub(&big.one(), &t);
    let mut gens = Vec::new();
    for f in i {
        gens.push(big.mul(&t, &lift(ring, &big, f)));
    }
    for g in j {
        gens.push(big.mul(&one_minus_t, &lift(ring, &big, g)));
    }
    let gb = buchberger(&big, &gens);
    let mut out: Vec<Poly<F>> = gb
        .polynomials()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.0[0] == 0))
        .map(|p| drop_first(ring, p))
        .collect();
    out.sort_by(|a, b| ring.cmp(a.leading_monomial(), b.leading_monomial()));
    out
}

/// `(I : b)` for a single polynomial `b`, as `(I ∩ (b)) / b`.
pub fn colon_element<F: Field>(ring: &PolyRing<F>, i: &[Poly<F>], b: &Poly<F>) -> Vec<Poly<F>> {
    if b.is_zero() {
        return vec![ring.one()];
    }
    intersection(ring, i, std::slice::from_ref(b))
        .iter()
        .map(|f| exact_division(ring, f, b).expect("elements of (b) are divisible by b"))
        .collect()
}

/// `(I : J) = ∩_b (I : b)` over the generators `b` of `J`; the result is a
/// reduced Gröbner basis.
pub fn colon<F: Field>(ring: &PolyRing<F>, i: &[Poly<F>], j: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut acc: Option<Vec<Poly<F>>> = None;
    for b in j.iter().filter(|b| !b.is_zero()) {
        let part = colon_element(ring, i, b);
        acc = Some(match acc {
            None => part,
            Some(prev) => intersection(ring, &prev, &part),
        });
    }
    let gens = acc.unwrap_or_else(|| vec![ring.one()]);
    buchberger(ring, &gens).polynomials().to_vec()
}

/// `(I : x_v^∞)`: in graded reverse lex with `x_v` last, dividing a
/// Gröbner basis by the largest power of `x_v` gives generators of the
/// saturation.
pub fn saturate_variable<F: Field>(ring: &PolyRing<F>, i: &[Poly<F>], v: usize) -> Vec<Poly<F>> {
    let n = ring.nvars();
    // move variable v to the end
    let mut to_perm: Vec<usize> = (0..n).collect();
    to_perm.remove(v);
    to_perm.push(v);
    let mut forward = vec![0; n];
    for (pos, &var) in to_perm.iter().enumerate() {
        forward[var] = pos;
    }
    let permuted = ring.with_order(MonomialOrder::GRevLex);
    let gens: Vec<Poly<F>> = i
        .iter()
        .map(|f| permuted.substitute_variables(f, &forward))
        .collect();
    let gb = buchberger(&permuted, &gens);
    gb.polynomials()
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|(m, _)| m.0[n - 1]).min().unwrap_or(0);
            let shifted: Vec<(Monomial, F::Elem)> = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[n - 1] -= k;
                    (Monomial(e), c.clone())
                })
                .collect();
            let back = permuted.from_terms(shifted);
            ring.substitute_variables(&back, &to_perm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, RationalField};

    #[test]
    fn principal_ideal_is_normalized() {
        let r = PolyRing::with_variables(RationalField, 2);
        let f = r.from_integer_terms(&[(vec![2, 0], 3), (vec![0, 1], 6)]);
        let gb = buchberger(&r, &[f]);
        assert_eq!(gb.polynomials().len(), 1);
        assert_eq!(r.format(&gb.polynomials()[0]), "x0^2 + 2*x1");
    }

    #[test]
    fn textbook_basis_contains_cubic() {
        let r = PolyRing::with_variables(RationalField, 2).with_order(MonomialOrder::GrLex);
        let f = r.from_integer_terms(&[(vec![2, 0], 1)]);
        let g = r.from_integer_terms(&[(vec![1, 1], 1), (vec![0, 2], 1)]);
        let gb = buchberger(&r, &[f, g]);
        let y3 = r.from_integer_terms(&[(vec![0, 3], 1)]);
        assert!(gb.polynomials().contains(&y3));
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let r = PolyRing::with_variables(PrimeField::new(5).unwrap(), 2);
        let x = r.variable(0);
        let y = r.variable(1);
        let both = intersection(&r, std::slice::from_ref(&x), std::slice::from_ref(&y));
        assert_eq!(both, vec![r.mul(&x, &y)]);
    }

    #[test]
    fn colon_by_variable() {
        let r = PolyRing::with_variables(RationalField, 2);
        let x = r.variable(0);
        let y = r.variable(1);
        let xy = r.mul(&x, &y);
        let x2 = r.mul(&x, &x);
        let c = colon(&r, &[xy, x2], std::slice::from_ref(&x));
        let gb = buchberger(&r, &c);
        assert!(gb.contains(&x) && gb.contains(&y));
        assert!(!gb.is_unit_ideal());
    }

    #[test]
    fn saturation_removes_variable_factor() {
        let r = PolyRing::with_variables(RationalField, 3);
        // x0 * (x1 - x2) saturated by x0 gives x1 - x2
        let f = r.from_integer_terms(&[(vec![1, 1, 0], 1), (vec![1, 0, 1], -1)]);
        let s = saturate_variable(&r, &[f], 0);
        let g = r.from_integer_terms(&[(vec![0, 1, 0], 1), (vec![0, 0, 1], -1)]);
        assert!(buchberger(&r, &s).contains(&g));
    }
}
