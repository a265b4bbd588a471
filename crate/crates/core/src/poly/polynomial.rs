use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use super::field::Field;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self(self.0.iter().map(|a| a * e).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Term orders. `Block(k)` compares the first `k` variables by graded
/// reverse lexicographic order and breaks ties the same way on the rest;
/// it eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GRevLex,
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            Self::Lex => a.0.cmp(&b.0),
            Self::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            Self::GRevLex => grevlex(&a.0, &b.0),
            Self::Block(k) => grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..])),
        }
    }
}

/// A polynomial as a list of terms sorted decreasingly in its ring's order,
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<E> {
    pub(crate) terms: Vec<(Monomial, E)>,
}

impl<E> Polynomial<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn leading_coefficient(&self) -> &E {
        &self.terms[0].1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }
}

/// `F[x_1, ..., x_n]` with a fixed term order and variable names.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
}

pub type Poly<F> = Polynomial<<F as Field>::Elem>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("variable {n} is repeated")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > names.len() {
                return Err(Error::InvalidInput("block larger than the variable list".into()));
            }
        }
        Ok(Self { field, names, order })
    }

    /// Ring with variables `x0, x1, ...` under graded reverse lex.
    pub fn with_variables(field: F, n: usize) -> Self {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        Self::new(field, names, MonomialOrder::GRevLex).expect("distinct names")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self {
            field: self.field.clone(),
            names: self.names.clone(),
            order,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly<F> {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn variable(&self, i: usize) -> Poly<F> {
        self.monomial(Monomial::variable(self.nvars(), i), self.field.one())
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        assert_eq!(m.0.len(), self.nvars(), "monomial arity");
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.nvars(), "monomial arity");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial coming from a ring with another order.
    pub fn import(&self, f: &Poly<F>) -> Poly<F> {
        self.from_terms(f.terms.clone())
    }

    pub fn from_integer_terms(&self, terms: &[(Vec<u32>, i64)]) -> Poly<F> {
        self.from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial(e.clone()), self.field.from_integer(&BigInt::from(*c))))
                .collect(),
        )
    }

    fn merge(&self, a: &Poly<F>, b: &Poly<F>, negate_b: bool) -> Poly<F> {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_b {
                        self.field.neg(&b.terms[j].1)
                    } else {
                        b.terms[j].1.clone()
                    };
                    out.push((b.terms[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        self.field.sub(&a.terms[i].1, &b.terms[j].1)
                    } else {
                        self.field.add(&a.terms[i].1, &b.terms[j].1)
                    };
                    if !self.field.is_zero(&c) {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for (m, c) in &b.terms[j..] {
            let c = if negate_b { self.field.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Poly<F>, k: &F::Elem) -> Poly<F> {
        if self.field.is_zero(k) {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.mul(c, k)))
                .collect(),
        }
    }

    /// `c * m * a`; term order is preserved by monomial multiplication.
    pub fn mul_term(&self, a: &Poly<F>, m: &Monomial, c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(am, ac)| (am.mul(m), self.field.mul(ac, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                terms.push((am.mul(bm), self.field.mul(ac, bc)));
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, a: &Poly<F>, mut e: u64) -> Poly<F> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        match a.leading() {
            None => a.clone(),
            Some((_, c)) => self.scale(a, &self.field.inv(c)),
        }
    }

    /// Renames variables: variable `i` of `a` becomes variable `map[i]` of
    /// this ring.
    pub fn substitute_variables(&self, a: &Poly<F>, map: &[usize]) -> Poly<F> {
        let n = self.nvars();
        self.from_terms(
            a.terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; n];
                    for (i, &x) in m.0.iter().enumerate() {
                        e[map[i]] += x;
                    }
                    (Monomial(e), c.clone())
                })
                .collect(),
        )
    }

    /// Evaluates variables as monomials `x_i -> t^{images[i]}` in a target
    /// ring.
    pub fn substitute_monomials(&self, a: &Poly<F>, target: &PolyRing<F>, images: &[Monomial]) -> Poly<F> {
        target.from_terms(
            a.terms
                .iter()
                .map(|(m, c)| {
                    let mut e = Monomial::one(target.nvars());
                    for (x, img) in m.0.iter().zip(images) {
                        e = e.mul(&img.pow(*x));
                    }
                    (e, c.clone())
                })
                .collect(),
        )
    }

    /// Whether every term has degree `deg` under integer weights.
    pub fn is_quasi_homogeneous(&self, a: &Poly<F>, weights: &[BigInt], deg: &BigInt) -> bool {
        a.terms.iter().all(|(m, _)| {
            let d: BigInt = m.0.iter().zip(weights).map(|(e, w)| w * BigInt::from(*e)).sum();
            d == *deg
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text form, terms in decreasing order.
    pub fn format(&self, a: &Poly<F>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            let mut coeff = self.field.format(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if m.is_one() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{coeff}*{mono}"));
            }
        }
        out
    }
}
