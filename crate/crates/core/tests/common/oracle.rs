//! Brute-force oracles, independent of the library algorithms they check.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use torees::lattice::{vec_add, vec_sub, IntVec, IntegerMatrix};
use torees::poly::{Monomial, Poly, PolyRing, PrimeField};

use super::total_degree;

pub fn product(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    let mut out = IntegerMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = BigInt::zero();
            for k in 0..a.cols() {
                s += &a[(i, k)] * &b[(k, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// Laplace expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn minor_gcd(m: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// All points of `N^d` with coordinate sum at most `bound`.
pub fn box_points(d: usize, bound: i64) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=bound {
        for mut rest in box_points(d - 1, bound - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn reachable(x: &[i64], basis: &[Vec<i64>], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    if let Some(&r) = memo.get(x) {
        return r;
    }
    let mut ok = false;
    for h in basis {
        if h.iter().zip(x).all(|(a, b)| a <= b) {
            let rest: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            if reachable(&rest, basis, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert(x.to_vec(), ok);
    ok
}

/// `(I^n A_P) ∩ A` for the prime `P` generated by `gens`: monomials `u` with
/// `u + s ∈ P^n` for some element `s ∉ P`, found by enumeration.
pub struct LocalizationOracle {
    pub elements: HashSet<IntVec>,
    pub prime: Vec<IntVec>,
    pub bound: i64,
}

impl LocalizationOracle {
    pub fn in_s(&self, u: &IntVec) -> bool {
        self.elements.contains(u)
    }

    pub fn in_power(&self, u: &IntVec, n: u64) -> bool {
        if n == 0 {
            return self.in_s(u);
        }
        self.prime
            .iter()
            .any(|g| self.in_power(&vec_sub(u, g), n - 1))
    }

    pub fn in_symbolic_power(&self, u: &IntVec, n: u64, s_bound: i64) -> bool {
        self.elements
            .iter()
            .filter(|s| total_degree(s) <= s_bound && total_degree(s) + total_degree(u) <= self.bound)
            .filter(|s| !self.in_power(s, 1))
            .any(|s| self.in_power(&vec_add(u, s), n))
    }
}

pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            exponents_of_degree(n - 1, d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Rank over `F_p` of the given rows, by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let k = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * k % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + p * p - f * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Membership of a homogeneous `f` in an ideal with homogeneous generators:
/// `f` must lie in the span of `m * g` with `deg m = deg f - deg g`.
pub fn in_ideal_by_linear_algebra(r: &PolyRing<PrimeField>, gens: &[Poly<PrimeField>], f: &Poly<PrimeField>) -> bool {
    let p = r.field().modulus();
    let d = f.total_degree() as u32;
    let basis = exponents_of_degree(r.nvars(), d);
    let row = |h: &Poly<PrimeField>| -> Vec<u64> {
        let mut v = vec![0; basis.len()];
        for (m, c) in h.terms() {
            v[basis.iter().position(|e| e.as_slice() == m.exponents()).unwrap()] = *c;
        }
        v
    };
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree() as u32;
        if dg > d {
            continue;
        }
        for e in exponents_of_degree(r.nvars(), d - dg) {
            rows.push(row(&r.mul_term(g, &Monomial(e), &1)));
        }
    }
    let before = rank_mod_p(rows.clone(), p);
    rows.push(row(f));
    rank_mod_p(rows, p) == before
}

/// Smith form identities for one matrix: `U M V = D`, unimodular `U` and
/// `V`, the divisibility chain, and invariant factor products equal to the
/// gcds of minors.
pub fn check_smith(rows: &[Vec<i64>]) -> Result<(), String> {
    use num_traits::Signed;
    use torees::lattice::smith_normal_form;
    let m = IntegerMatrix::from_i64(rows);
    let snf = smith_normal_form(&m);
    if product(&product(&snf.u, &m), &snf.v) != snf.d {
        return Err(format!("U M V != D for {rows:?}"));
    }
    if !(snf.u.determinant().abs().is_one() && snf.v.determinant().abs().is_one()) {
        return Err(format!("transforms not unimodular for {rows:?}"));
    }
    if !snf.d.is_diagonal() {
        return Err(format!("D not diagonal for {rows:?}"));
    }
    let factors = snf.invariant_factors();
    if factors.len() != snf.rank {
        return Err(format!("rank mismatch for {rows:?}"));
    }
    for w in factors.windows(2) {
        if !(w[0].is_positive() && (&w[1] % &w[0]).is_zero()) {
            return Err(format!("divisibility fails for {rows:?}"));
        }
    }
    let mut prefix = BigInt::one();
    for (k, d) in factors.iter().enumerate() {
        prefix *= d;
        if prefix != minor_gcd(&m, k + 1) {
            return Err(format!("minor gcd law fails at k={} for {rows:?}", k + 1));
        }
    }
    if snf.rank < m.rows().min(m.cols()) && !minor_gcd(&m, snf.rank + 1).is_zero() {
        return Err(format!("nonzero minor beyond the rank for {rows:?}"));
    }
    Ok(())
}

/// Hilbert basis of `cone(gens) ∩ L` checked against brute force: every
/// element is an irreducible semigroup point, and every semigroup point of
/// coordinate sum up to `bound` is a sum of basis elements.
pub fn check_hilbert_basis(d: usize, gens: &[IntVec], use_generated: bool, bound: i64) -> Result<(), String> {
    use torees::lattice::{hilbert_basis, int_vec, RationalCone, SublatticeBasis};
    let cone = RationalCone::new(d, gens.to_vec()).map_err(|e| e.to_string())?;
    let lattice = if use_generated {
        SublatticeBasis::generated_by(d, gens).map_err(|e| e.to_string())?
    } else {
        cone.span_lattice().clone()
    };
    let basis = hilbert_basis(&cone, &lattice).map_err(|e| e.to_string())?;
    let small: Vec<Vec<i64>> = basis
        .iter()
        .map(|h| h.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    let in_semigroup = |x: &[i64]| {
        let v = int_vec(x);
        cone.contains(&v) && lattice.contains(&v)
    };
    for h in &small {
        if !in_semigroup(h) {
            return Err(format!("{h:?} is outside the semigroup"));
        }
        let sum: i64 = h.iter().sum();
        for x in box_points(d, sum) {
            if x.iter().zip(h).all(|(a, b)| a <= b) && x.iter().any(|&c| c != 0) && x != *h {
                let y: Vec<i64> = h.iter().zip(&x).map(|(a, b)| a - b).collect();
                if in_semigroup(&x) && in_semigroup(&y) {
                    return Err(format!("{h:?} splits as {x:?} + {y:?}"));
                }
            }
        }
    }
    let mut memo = HashMap::new();
    for x in box_points(d, bound) {
        if in_semigroup(&x) && !reachable(&x, &small, &mut memo) {
            return Err(format!("{x:?} is not generated"));
        }
    }
    Ok(())
}

/// Symbolic powers `P^(n)`, `n <= 3`, compared with the localization oracle
/// on all elements of degree at most `u_bound`.
pub fn check_symbolic_powers(
    a: &torees::semigroup::AffineSemigroup,
    prime_gens: &[IntVec],
    u_bound: i64,
    s_bound: i64,
) -> Result<usize, String> {
    use torees::divisor::{prime_divisor, symbolic_power};
    let d = prime_divisor(a, prime_gens).map_err(|e| e.to_string())?;
    let oracle = LocalizationOracle {
        elements: super::elements_up_to(a, u_bound + s_bound),
        prime: prime_gens.to_vec(),
        bound: u_bound + s_bound,
    };
    let mut compared = 0;
    for n in 0..=3u64 {
        let ideal = symbolic_power(a, &d, n).map_err(|e| e.to_string())?;
        for u in oracle.elements.iter().filter(|u| total_degree(u) <= u_bound) {
            compared += 1;
            let generated = ideal.generated_contains(a, u);
            if generated != oracle.in_symbolic_power(u, n, s_bound) || generated != ideal.contains(a, u) {
                return Err(format!("n={n} u={u:?}"));
            }
        }
    }
    Ok(compared)
}
