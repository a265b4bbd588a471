#![allow(dead_code)]

pub mod oracle;

use num_bigint::BigInt;
use torees::divisor::{prime_divisor, MonomialDivisor};
use torees::lattice::{int_vec, IntVec};
use torees::semigroup::{veronese_subsemigroup, AffineSemigroup, GradingVector};

/// K[ax, ay, bx, by] in exponent coordinates (a, b, x, y).
pub fn quadric() -> AffineSemigroup {
    AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap()
}

/// P = (ax, ay) and Q = (ax, bx).
pub fn quadric_primes(a: &AffineSemigroup) -> (MonomialDivisor, MonomialDivisor) {
    let p = prime_divisor(a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])]).unwrap();
    let q = prime_divisor(a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0])]).unwrap();
    (p, q)
}

/// n-th Veronese subring of K[X_1, ..., X_m].
pub fn veronese(m: usize, n: u64) -> AffineSemigroup {
    veronese_subsemigroup(&AffineSemigroup::polynomial(m), &GradingVector::total_degree(m), n).unwrap()
}

/// Divisor of P = X_1 K[X] ∩ A on a Veronese ring: the facet on which the
/// valuation is the exponent of X_1.
pub fn veronese_p(a: &AffineSemigroup) -> MonomialDivisor {
    let n = a.num_facets();
    for f in 0..n {
        let d = MonomialDivisor::facet(n, f);
        let ok = a.generators().iter().all(|g| {
            a.valuations(g).unwrap()[f] == g[0]
        });
        if ok {
            return d;
        }
    }
    panic!("no X_1 facet");
}

/// All exponent vectors in N^m of total degree exactly t.
pub fn monomials_of_degree(m: usize, t: usize) -> Vec<IntVec> {
    if m == 0 {
        return if t == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in monomials_of_degree(m - 1, t - first) {
            rest.insert(0, BigInt::from(first));
            out.push(rest);
        }
    }
    out
}

/// Elements of `S` with ambient total degree at most `bound`, found by adding
/// generators breadth-first. Needs every generator to have positive degree.
pub fn elements_up_to(s: &AffineSemigroup, bound: i64) -> std::collections::HashSet<IntVec> {
    let deg = |v: &IntVec| v.iter().map(|x| i64::try_from(x).unwrap()).sum::<i64>();
    let mut seen = std::collections::HashSet::new();
    let zero: IntVec = vec![BigInt::from(0); s.ambient_rank()];
    let mut frontier = vec![zero.clone()];
    seen.insert(zero);
    while let Some(x) = frontier.pop() {
        for g in s.generators() {
            let y: IntVec = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if deg(&y) <= bound && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn total_degree(v: &[BigInt]) -> i64 {
    v.iter().map(|x| i64::try_from(x).unwrap()).sum()
}

/// Base rings with divisor lists for the Rees tests.
pub fn corpus() -> Vec<(AffineSemigroup, Vec<MonomialDivisor>)> {
    let mut out = Vec::new();
    let a = quadric();
    let (p, q) = quadric_primes(&a);
    for n in 1..=3usize {
        for m in 1..=3usize {
            let mut ds = vec![p.clone(); n];
            ds.extend(vec![q.clone(); m]);
            out.push((a.clone(), ds));
        }
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let v = veronese(m, n);
        let pv = veronese_p(&v);
        out.push((v.clone(), vec![pv.clone()]));
        out.push((v.clone(), vec![pv.scale(&BigInt::from(2))]));
        out.push((v, vec![pv.clone(), pv]));
    }
    out
}
