//! Multi-symbolic Rees algebras `R_s(I_1, ..., I_k)` of divisorial monomial
//! ideals, realized as affine semigroups in `Z^(d + k)`, and the ordinary
//! Rees ring `A[mT]`.
//!
//! The last `k` coordinates are the exponents of `U_1, ..., U_k`. The slice of
//! `R_s` at multidegree `n` is the divisorial ideal of `Σ n_i D_i`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::divisor::{
    class_group, class_of, divisorial_ideal, reflexive_product, solve_complement, DivisorClass,
    MonomialDivisor,
};
use crate::error::{Error, Result};
use crate::lattice::{
    extreme_rays, facets_of_rays, hilbert_basis_full, rank_of_rows, smith_normal_form, vec_add,
    vec_sub, AbelianGroupPresentation, IntVec, IntegerMatrix,
};
use crate::semigroup::{format_vector, AffineSemigroup, GradingVector};

/// How a Rees semigroup was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum ReesKind {
    /// `R_s(I_1, ..., I_k)` for the listed divisors.
    Symbolic(Vec<MonomialDivisor>),
    /// `A[mT]`.
    Ordinary,
}

/// A Rees algebra over `K[S]` presented as a semigroup in `Z^(d + k)`.
#[derive(Clone, Debug)]
pub struct ReesSemigroup {
    base: AffineSemigroup,
    k: usize,
    kind: ReesKind,
    semigroup: AffineSemigroup,
}

impl ReesSemigroup {
    pub fn base(&self) -> &AffineSemigroup {
        &self.base
    }

    /// Number of Rees directions.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &ReesKind {
        &self.kind
    }

    pub fn divisors(&self) -> &[MonomialDivisor] {
        match &self.kind {
            ReesKind::Symbolic(d) => d,
            ReesKind::Ordinary => &[],
        }
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn generators(&self) -> &[IntVec] {
        self.semigroup.generators()
    }

    /// The U-multidegree of each generator.
    pub fn generator_multidegrees(&self) -> Vec<IntVec> {
        let d = self.base.ambient_rank();
        self.generators().iter().map(|g| g[d..].to_vec()).collect()
    }

    /// Grading of the base extended by weight zero on the Rees coordinates.
    pub fn base_grading(&self, g: &GradingVector) -> GradingVector {
        g.extended(self.k)
    }

    /// Minimal generators, as an `A`-module, of the slice at multidegree `n`,
    /// obtained from the generators of the Rees semigroup alone.
    pub fn slice_generators(&self, n: &[u64]) -> Result<Vec<IntVec>> {
        if n.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: n.len(),
            });
        }
        let d = self.base.ambient_rank();
        let lifted: Vec<(Vec<u64>, IntVec)> = self
            .generators()
            .iter()
            .filter(|g| g[d..].iter().any(|x| !x.is_zero()))
            .map(|g| {
                let level = g[d..]
                    .iter()
                    .map(|x| u64::try_from(x.clone()).expect("levels are nonnegative"))
                    .collect();
                (level, g[..d].to_vec())
            })
            .collect();
        let mut sums = BTreeSet::new();
        collect_sums(&lifted, 0, n.to_vec(), vec![BigInt::zero(); d], &mut sums);
        let candidates: Vec<IntVec> = sums.into_iter().collect();
        let mut out: Vec<IntVec> = candidates
            .iter()
            .filter(|x| {
                !candidates
                    .iter()
                    .any(|y| y != *x && self.base.contains(&vec_sub(x, y)))
            })
            .cloned()
            .collect();
        out.sort();
        Ok(out)
    }
}

fn collect_sums(
    gens: &[(Vec<u64>, IntVec)],
    start: usize,
    remaining: Vec<u64>,
    acc: IntVec,
    out: &mut BTreeSet<IntVec>,
) {
    if remaining.iter().all(|&r| r == 0) {
        out.insert(acc);
        return;
    }
    for i in start..gens.len() {
        let (level, u) = &gens[i];
        if level.iter().zip(&remaining).all(|(l, r)| l <= r) {
            let rest = remaining.iter().zip(level).map(|(r, l)| r - l).collect();
            collect_sums(gens, i, rest, vec_add(&acc, u), out);
        }
    }
}

/// `R_s(I_1, ..., I_k)`: the semigroup of `(u, n)` with `u` in the
/// normalization of `S` and `v_F(u) >= Σ n_i c_{i,F}` for every facet.
pub fn build_multi_symbolic_rees(a: &AffineSemigroup, divisors: &[MonomialDivisor]) -> Result<ReesSemigroup> {
    if !a.is_normal().normal {
        return Err(Error::NotNormal);
    }
    let f = a.num_facets();
    for d in divisors {
        if d.len() != f {
            return Err(Error::DimensionMismatch {
                expected: f,
                got: d.len(),
            });
        }
    }
    let bad: Vec<String> = divisors
        .iter()
        .filter(|d| !d.is_effective())
        .map(|d| d.to_string())
        .collect();
    if !bad.is_empty() {
        return Err(Error::NonEffectiveDivisor(bad));
    }
    let k = divisors.len();
    if k == 0 {
        let gens = a.normalization_hilbert_basis();
        return Ok(ReesSemigroup {
            base: a.clone(),
            k,
            kind: ReesKind::Symbolic(Vec::new()),
            semigroup: AffineSemigroup::new(a.ambient_rank(), gens)?,
        });
    }
    let r = a.rank();
    let dim = r + k;
    let mut rows: Vec<IntVec> = Vec::new();
    for (fi, normal) in a.facet_functionals().iter().enumerate() {
        let mut row = normal.clone();
        row.extend(divisors.iter().map(|d| -&d.coefficients()[fi]));
        rows.push(row);
    }
    for i in 0..k {
        let mut row = vec![BigInt::zero(); dim];
        row[r + i] = BigInt::one();
        rows.push(row);
    }
    let rays = extreme_rays(&rows, dim)?;
    let facets = facets_of_rays(&rays, dim)?;
    let mut gens: Vec<IntVec> = hilbert_basis_full(&rays, &facets, dim)
        .into_iter()
        .map(|h| {
            let mut g = a.from_group_coordinates(&h[..r]);
            g.extend(h[r..].iter().cloned());
            g
        })
        .collect();
    gens.sort();
    Ok(ReesSemigroup {
        base: a.clone(),
        k,
        kind: ReesKind::Symbolic(divisors.to_vec()),
        semigroup: AffineSemigroup::new(a.ambient_rank() + k, gens)?,
    })
}

/// Whether the Rees semigroup is saturated in its group.
pub fn verify_krull_normal(b: &ReesSemigroup) -> bool {
    b.semigroup.is_normal().normal
}

/// `A[mT]`, generated by `(u, 0)` and `(u, 1)` for the generators `u` of `S`.
pub fn ordinary_rees(a: &AffineSemigroup, g: &GradingVector) -> Result<ReesSemigroup> {
    g.generator_degrees(a)?;
    let mut gens = Vec::new();
    for level in [0, 1] {
        for u in a.generators() {
            let mut v = u.clone();
            v.push(BigInt::from(level));
            gens.push(v);
        }
    }
    gens.sort();
    Ok(ReesSemigroup {
        base: a.clone(),
        k: 1,
        kind: ReesKind::Ordinary,
        semigroup: AffineSemigroup::new(a.ambient_rank() + 1, gens)?,
    })
}

/// Result of comparing iterated and direct constructions.
#[derive(Clone, Debug)]
pub struct IteratedCheck {
    pub holds: bool,
    /// Divisor of `(I_k B)^**` on the intermediate ring `B`.
    pub extended_divisor: MonomialDivisor,
    pub slices_compared: usize,
    pub mismatches: Vec<Vec<u64>>,
    pub same_generators: bool,
}

/// Divisor of `(I B)^**` on `b`, for the divisorial ideal of `d` on the base.
pub fn extend_divisor(b: &ReesSemigroup, d: &MonomialDivisor) -> Result<MonomialDivisor> {
    let ideal = divisorial_ideal(b.base(), d)?;
    let bs = b.semigroup();
    let lifted: Vec<IntVec> = ideal
        .generators
        .iter()
        .map(|u| {
            let mut v = u.clone();
            v.extend(std::iter::repeat_n(BigInt::zero(), b.k()));
            v
        })
        .collect();
    let coefficients = (0..bs.num_facets())
        .map(|gi| {
            lifted
                .iter()
                .map(|v| bs.valuations(v).expect("lifted generator in group")[gi].clone())
                .min()
                .expect("ideal has generators")
        })
        .collect();
    Ok(MonomialDivisor::new(coefficients))
}

/// Compares `R_s(I_1, ..., I_k)` with `R_s(Ĩ_k)` over `B = R_s(I_1, ..., I_{k-1})`,
/// slice by slice for every multidegree with entries at most `bound`.
pub fn iterated_isomorphism_check(
    a: &AffineSemigroup,
    divisors: &[MonomialDivisor],
    bound: u64,
) -> Result<IteratedCheck> {
    if divisors.len() < 2 {
        return Err(Error::InvalidInput(
            "the iterated construction needs at least two divisors".into(),
        ));
    }
    let k = divisors.len();
    let direct = build_multi_symbolic_rees(a, divisors)?;
    let inner = build_multi_symbolic_rees(a, &divisors[..k - 1])?;
    let extended = extend_divisor(&inner, &divisors[k - 1])?;
    let iterated_b = build_multi_symbolic_rees(inner.semigroup(), std::slice::from_ref(&extended))?;
    let iterated = ReesSemigroup {
        base: a.clone(),
        k,
        kind: ReesKind::Symbolic(divisors.to_vec()),
        semigroup: iterated_b.semigroup.clone(),
    };
    let mut mismatches = Vec::new();
    let mut compared = 0;
    let mut n = vec![0u64; k];
    loop {
        compared += 1;
        if direct.slice_generators(&n)? != iterated.slice_generators(&n)? {
            mismatches.push(n.clone());
        }
        if !next_multidegree(&mut n, bound) {
            break;
        }
    }
    Ok(IteratedCheck {
        holds: mismatches.is_empty(),
        extended_divisor: extended,
        slices_compared: compared,
        mismatches,
        same_generators: direct.generators() == iterated.generators(),
    })
}

/// Odometer over `[0, bound]^k`; false once exhausted.
pub(crate) fn next_multidegree(n: &mut [u64], bound: u64) -> bool {
    for x in n.iter_mut().rev() {
        if *x < bound {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Checks that every slice within `bound` agrees with the reflexive product
/// computed on the base ring. Returns the offending multidegrees.
pub fn slice_fidelity(b: &ReesSemigroup, bound: u64) -> Result<Vec<Vec<u64>>> {
    let mut bad = Vec::new();
    let mut n = vec![0u64; b.k()];
    loop {
        let expected = reflexive_product(b.base(), b.divisors(), &n)?.generators;
        if b.slice_generators(&n)? != expected {
            bad.push(n.clone());
        }
        if !next_multidegree(&mut n, bound) {
            break;
        }
    }
    Ok(bad)
}

/// Class-group comparison between `A` and a Rees algebra over it.
#[derive(Clone, Debug)]
pub struct ClassTransfer {
    pub class_group_a: AbelianGroupPresentation,
    pub class_group_b: AbelianGroupPresentation,
    /// Columns: images in `Z^(facets of B)` of the facet divisors of `A`.
    pub extension: Vec<MonomialDivisor>,
    pub well_defined: bool,
    pub surjective: bool,
    pub isomorphism: bool,
    pub omega_b: DivisorClass,
    pub omega_formula_image: DivisorClass,
    pub omega_formula: bool,
    /// Heights of the contractions to `A` of the facet primes of `B`.
    pub contraction_heights: Vec<usize>,
    pub pde: bool,
}

/// Builds `i: Cl(A) -> Cl(B)` by extending facet divisors and checks that it
/// is an isomorphism, that `[ω_B] = i([ω_A] + Σ [I_i])`, and that facet
/// primes of `B` contract to primes of height at most one.
pub fn class_group_transfer(b: &ReesSemigroup) -> Result<ClassTransfer> {
    let a = b.base();
    let bs = b.semigroup();
    let cl_a = class_group(a)?;
    let cl_b = class_group(bs)?;
    let fa = a.num_facets();
    let fb = bs.num_facets();
    let extension: Vec<MonomialDivisor> = (0..fa)
        .map(|f| extend_divisor(b, &MonomialDivisor::facet(fa, f)))
        .collect::<Result<_>>()?;
    let apply = |c: &[BigInt]| -> IntVec {
        let mut total = vec![BigInt::zero(); fb];
        for (cf, e) in c.iter().zip(&extension) {
            for (t, x) in total.iter_mut().zip(e.coefficients()) {
                *t += cf * x;
            }
        }
        total
    };

    let well_defined = a.generators().iter().all(|u| {
        let v = a.valuations(u).expect("generator in group");
        cl_b.project(&apply(&v)).iter().all(Zero::is_zero)
    });

    let mut columns: Vec<IntVec> = (0..bs.rank())
        .map(|j| bs.facet_functionals().iter().map(|f| f[j].clone()).collect())
        .collect();
    columns.extend(extension.iter().map(|e| e.coefficients().to_vec()));
    let m = IntegerMatrix::from_columns(&columns, fb)?;
    let snf = smith_normal_form(&m);
    let surjective = snf.rank == fb && snf.invariant_factors().iter().all(One::is_one);
    let isomorphism =
        well_defined && surjective && cl_a.invariant_factors() == cl_b.invariant_factors();

    let omega_b = DivisorClass {
        coordinates: cl_b.project(&vec![BigInt::one(); fb]),
    };
    let mut source = vec![BigInt::one(); fa];
    for d in b.divisors() {
        source = vec_add(&source, d.coefficients());
    }
    let omega_formula_image = DivisorClass {
        coordinates: cl_b.project(&apply(&source)),
    };

    let base_hb = a.normalization_hilbert_basis();
    let contraction_heights: Vec<usize> = (0..fb)
        .map(|gi| {
            let face: Vec<IntVec> = base_hb
                .iter()
                .filter(|u| {
                    let mut v = (*u).clone();
                    v.extend(std::iter::repeat_n(BigInt::zero(), b.k()));
                    bs.valuations(&v).expect("in group")[gi].is_zero()
                })
                .cloned()
                .collect();
            a.rank() - rank_of_rows(&face)
        })
        .collect();
    let pde = contraction_heights.iter().all(|&h| h <= 1);
    Ok(ClassTransfer {
        class_group_a: cl_a,
        class_group_b: cl_b,
        extension,
        well_defined,
        surjective,
        isomorphism,
        omega_formula: omega_b == omega_formula_image,
        omega_b,
        omega_formula_image,
        contraction_heights,
        pde,
    })
}

/// Whether the canonical class of the Rees semigroup ring is trivial.
pub fn is_quasi_gorenstein(b: &ReesSemigroup) -> Result<bool> {
    let bs = b.semigroup();
    let ones = MonomialDivisor::new(vec![BigInt::one(); bs.num_facets()]);
    Ok(class_of(bs, &ones)?.is_zero())
}

/// Outcome of the quasi-Gorenstein construction `R = R_s(I, J)`.
#[derive(Clone, Debug)]
pub struct QuasiGorensteinReport {
    pub complement: MonomialDivisor,
    pub complement_generators: Vec<IntVec>,
    pub rees_generators: usize,
    pub omega_class: DivisorClass,
    pub quasi_gorenstein: bool,
}

/// Chooses `J` with `[I] + [J] + [ω] = 0`, builds `R_s(I, J)` and tests
/// whether its canonical class vanishes.
pub fn quasi_gorenstein_check(a: &AffineSemigroup, d_i: &MonomialDivisor) -> Result<QuasiGorensteinReport> {
    let d_j = solve_complement(a, d_i)?;
    let j = divisorial_ideal(a, &d_j)?;
    let r = build_multi_symbolic_rees(a, &[d_i.clone(), d_j.clone()])?;
    let rs = r.semigroup();
    let omega = class_of(rs, &MonomialDivisor::new(vec![BigInt::one(); rs.num_facets()]))?;
    Ok(QuasiGorensteinReport {
        complement: d_j,
        complement_generators: j.generators,
        rees_generators: r.generators().len(),
        quasi_gorenstein: omega.is_zero(),
        omega_class: omega,
    })
}

/// Degree-by-degree comparison for the quotient of `R_s` by `x_i U_i^{a_i}`.
#[derive(Clone, Debug)]
pub struct CmDecomposition {
    pub orders: Vec<u64>,
    /// Generator `x_i` of the principal ideal `I_i^(a_i)`.
    pub principal_generators: Vec<IntVec>,
    /// Monomials of the quotient per degree.
    pub quotient_counts: Vec<u64>,
    /// Monomials of `⊕_{0 <= n_i < a_i} (Π I_i^{n_i})^**` per degree.
    pub decomposition_counts: Vec<u64>,
    pub holds: bool,
}

/// Verifies `B/(x_1 U^{a_1}, ...) = ⊕_{0 <= n_i < a_i} (I_1^{n_1} ...)^** U^n`
/// by counting monomials of each `g`-degree up to `max_degree`, with the
/// Rees coordinates of weight zero. Fails with [`Error::InfiniteOrder`] when
/// some class has infinite order.
pub fn cm_decomposition_check(
    a: &AffineSemigroup,
    divisors: &[MonomialDivisor],
    g: &GradingVector,
    max_degree: usize,
) -> Result<CmDecomposition> {
    let cl = class_group(a)?;
    let mut orders = Vec::new();
    let mut xs = Vec::new();
    for d in divisors {
        let class = class_of(a, d)?;
        let order = cl.order(&class.coordinates).ok_or(Error::InfiniteOrder)?;
        let order = u64::try_from(order).map_err(|_| Error::InvalidInput("class order too large".into()))?;
        let principal = divisorial_ideal(a, &d.scale(&BigInt::from(order)))?;
        let [x] = principal.generators.as_slice() else {
            return Err(Error::InvalidInput(format!(
                "I^({order}) of {d} is not principal"
            )));
        };
        orders.push(order);
        xs.push(x.clone());
    }
    let b = build_multi_symbolic_rees(a, divisors)?;
    let bs = b.semigroup();
    let layers = a.elements_by_degree(g, max_degree)?;
    let k = divisors.len();
    let in_b = |u: &IntVec, n: &[u64]| -> bool {
        let mut v = u.clone();
        v.extend(n.iter().map(|&x| BigInt::from(x)));
        bs.contains(&v)
    };

    let mut quotient_counts = vec![0u64; max_degree + 1];
    let box_bound = orders.iter().copied().max().unwrap_or(1) * 2;
    let mut n = vec![0u64; k];
    loop {
        if n.iter().zip(&orders).all(|(ni, ai)| *ni <= 2 * ai) {
            for (t, layer) in layers.iter().enumerate() {
                for u in layer {
                    if !in_b(u, &n) {
                        continue;
                    }
                    let divisible = (0..k).any(|i| {
                        n[i] >= orders[i] && {
                            let mut m = n.clone();
                            m[i] -= orders[i];
                            in_b(&vec_sub(u, &xs[i]), &m)
                        }
                    });
                    if !divisible {
                        quotient_counts[t] += 1;
                    }
                }
            }
        }
        if !next_multidegree(&mut n, box_bound) {
            break;
        }
    }

    let mut decomposition_counts = vec![0u64; max_degree + 1];
    let mut n = vec![0u64; k];
    loop {
        if n.iter().zip(&orders).all(|(ni, ai)| ni < ai) {
            let ideal = reflexive_product(a, divisors, &n)?;
            for (t, layer) in layers.iter().enumerate() {
                decomposition_counts[t] +=
                    layer.iter().filter(|u| ideal.generated_contains(a, u)).count() as u64;
            }
        }
        if !next_multidegree(&mut n, box_bound) {
            break;
        }
    }
    Ok(CmDecomposition {
        holds: quotient_counts == decomposition_counts,
        orders,
        principal_generators: xs,
        quotient_counts,
        decomposition_counts,
    })
}

/// Human-readable multidegree list for reports.
pub fn describe_multidegrees(b: &ReesSemigroup) -> Vec<String> {
    b.generator_multidegrees().iter().map(|m| format_vector(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    #[test]
    fn principal_divisor_adds_free_generator() {
        let a = AffineSemigroup::polynomial(2);
        // divisor of x: coefficient 1 on the x-facet
        let d = crate::divisor::divisor_of_monomial(&a, &int_vec(&[1, 0])).unwrap();
        let b = build_multi_symbolic_rees(&a, &[d]).unwrap();
        assert_eq!(
            b.generators(),
            &[int_vec(&[0, 1, 0]), int_vec(&[1, 0, 0]), int_vec(&[1, 0, 1])]
        );
        assert!(verify_krull_normal(&b));
    }

    #[test]
    fn negative_divisor_rejected() {
        let a = AffineSemigroup::polynomial(2);
        let d = MonomialDivisor::from_i64(&[-1, 0]);
        assert!(matches!(
            build_multi_symbolic_rees(&a, &[d]),
            Err(Error::NonEffectiveDivisor(_))
        ));
    }

    #[test]
    fn ordinary_rees_of_line() {
        let a = AffineSemigroup::polynomial(1);
        let r = ordinary_rees(&a, &GradingVector::total_degree(1)).unwrap();
        assert_eq!(r.generators(), &[int_vec(&[1, 0]), int_vec(&[1, 1])]);
        assert!(verify_krull_normal(&r));
    }

    #[test]
    fn odometer_visits_box() {
        let mut n = vec![0u64; 2];
        let mut count = 1;
        while next_multidegree(&mut n, 2) {
            count += 1;
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn trivial_transfer_without_divisors() {
        let a = AffineSemigroup::polynomial(2);
        let b = build_multi_symbolic_rees(&a, &[]).unwrap();
        let t = class_group_transfer(&b).unwrap();
        assert!(t.isomorphism && t.omega_formula && t.pde);
    }
}
