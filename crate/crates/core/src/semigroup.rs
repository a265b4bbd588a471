//! Affine semigroups `S ⊂ Z^d` and their semigroup rings `K[S]`.
//!
//! Internally every semigroup is handled in coordinates of `group(S)`, where
//! its cone is full-dimensional. Facet normals are stored in those
//! coordinates, so they are primitive functionals on `group(S)` and give the
//! valuations of the height-one monomial primes.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    dot, extreme_generators, extreme_rays, facets_of_rays, hilbert_basis_full, is_zero_vec,
    vec_add, vec_sub, IntVec, SublatticeBasis,
};

/// Rational linear functional on `Z^d` used as an N-grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingVector {
    weights: Vec<BigRational>,
}

impl GradingVector {
    pub fn new(weights: Vec<BigRational>) -> Self {
        Self { weights }
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        Self::new(
            weights
                .iter()
                .map(|&w| BigRational::from_integer(w.into()))
                .collect(),
        )
    }

    /// Sum of all exponents.
    pub fn total_degree(d: usize) -> Self {
        Self::new(vec![BigRational::one(); d])
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn degree(&self, u: &[BigInt]) -> BigRational {
        self.weights
            .iter()
            .zip(u)
            .map(|(w, x)| w * BigRational::from_integer(x.clone()))
            .sum()
    }

    /// Appends `k` coordinates of weight zero.
    pub fn extended(&self, k: usize) -> Self {
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat_n(BigRational::zero(), k));
        Self::new(weights)
    }

    /// Integer degrees of the generators of `s`; fails unless all are
    /// positive integers.
    pub fn generator_degrees(&self, s: &AffineSemigroup) -> Result<Vec<u64>> {
        if self.weights.len() != s.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: s.ambient_rank(),
                got: self.weights.len(),
            });
        }
        s.generators()
            .iter()
            .map(|g| {
                let d = self.degree(g);
                if !d.is_integer() || !d.is_positive() {
                    return Err(Error::InvalidInput(format!(
                        "grading gives generator {} degree {d}, expected a positive integer",
                        format_vector(g)
                    )));
                }
                u64::try_from(d.to_integer())
                    .map_err(|_| Error::InvalidInput("generator degree too large".into()))
            })
            .collect()
    }
}

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub(crate) fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Number of semigroup elements in each degree `0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunctionTable {
    pub max_degree: usize,
    pub counts: Vec<u64>,
}

/// Outcome of a normality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub normal: bool,
    /// A point of `cone(S) ∩ group(S)` outside `S` of least degree.
    pub witness: Option<IntVec>,
}

/// Finitely generated pointed semigroup in `Z^d`.
#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    ambient_rank: usize,
    generators: Vec<IntVec>,
    group: SublatticeBasis,
    coords: Vec<IntVec>,
    facets: Vec<IntVec>,
    normality: OnceLock<NormalityVerdict>,
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.generators == other.generators
    }
}

impl AffineSemigroup {
    /// Semigroup generated by `generators`, which must be nonzero, distinct
    /// and span a pointed cone.
    pub fn new(ambient_rank: usize, generators: Vec<IntVec>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("a semigroup needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    got: g.len(),
                });
            }
            if is_zero_vec(g) {
                return Err(Error::InvalidInput("generators must be nonzero".into()));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidInput(format!(
                    "generator {} is repeated",
                    format_vector(g)
                )));
            }
        }
        let group = SublatticeBasis::generated_by(ambient_rank, &generators)?;
        let coords: Vec<IntVec> = generators
            .iter()
            .map(|g| group.coordinates(g).expect("generator lies in its group"))
            .collect();
        let mut facets = facets_of_rays(&coords, group.rank())?;
        let mut keyed: Vec<(IntVec, IntVec)> = facets
            .drain(..)
            .map(|f| (coords.iter().map(|c| dot(&f, c)).collect(), f))
            .collect();
        keyed.sort();
        let facets = keyed.into_iter().map(|(_, f)| f).collect();
        Ok(Self {
            ambient_rank,
            generators,
            group,
            coords,
            facets,
            normality: OnceLock::new(),
        })
    }

    pub fn from_i64(generators: &[&[i64]]) -> Result<Self> {
        let d = generators.first().map_or(0, |g| g.len());
        Self::new(d, generators.iter().map(|g| crate::lattice::int_vec(g)).collect())
    }

    /// `N^d` with the unit vectors as generators.
    pub fn polynomial(d: usize) -> Self {
        let gens = (0..d)
            .map(|i| (0..d).map(|j| BigInt::from(i32::from(i == j))).collect())
            .collect();
        Self::new(d, gens).expect("unit vectors span a pointed cone")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    /// Rank of `group(S)`, the Krull dimension of `K[S]`.
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn group(&self) -> &SublatticeBasis {
        &self.group
    }

    /// Facet normals as functionals on `group(S)` coordinates, ordered by the
    /// lexicographic order of their values on the generator list.
    pub fn facet_functionals(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Coordinates of `u` in the basis of `group(S)`.
    pub fn group_coordinates(&self, u: &[BigInt]) -> Option<IntVec> {
        if u.len() != self.ambient_rank {
            return None;
        }
        self.group.coordinates(u)
    }

    pub fn from_group_coordinates(&self, c: &[BigInt]) -> IntVec {
        self.group.from_coordinates(c)
    }

    /// Facet valuations of a vector of `group(S)`.
    pub fn valuations(&self, u: &[BigInt]) -> Option<IntVec> {
        let c = self.group_coordinates(u)?;
        Some(self.facets.iter().map(|f| dot(f, &c)).collect())
    }

    /// Whether `u` lies in `cone(S) ∩ group(S)`, the normalization.
    pub fn in_saturation(&self, u: &[BigInt]) -> bool {
        self.valuations(u)
            .is_some_and(|v| v.iter().all(|x| !x.is_negative()))
    }

    /// Membership in `S` itself.
    pub fn contains(&self, u: &[BigInt]) -> bool {
        let Some(c) = self.group_coordinates(u) else {
            return false;
        };
        let mut memo = HashMap::new();
        self.member(&c, &mut memo)
    }

    fn member(&self, c: &IntVec, memo: &mut HashMap<IntVec, bool>) -> bool {
        if is_zero_vec(c) {
            return true;
        }
        if let Some(&known) = memo.get(c) {
            return known;
        }
        let ok = self.facets.iter().all(|f| !dot(f, c).is_negative())
            && self.coords.iter().any(|g| {
                let rest = vec_sub(c, g);
                self.facets.iter().all(|f| !dot(f, &rest).is_negative()) && self.member(&rest, memo)
            });
        memo.insert(c.clone(), ok);
        ok
    }

    /// Hilbert basis of the normalization `cone(S) ∩ group(S)`, sorted.
    pub fn normalization_hilbert_basis(&self) -> Vec<IntVec> {
        let rays = extreme_generators(&self.coords, &self.facets, self.rank());
        let mut out: Vec<IntVec> = hilbert_basis_full(&rays, &self.facets, self.rank())
            .iter()
            .map(|c| self.group.from_coordinates(c))
            .collect();
        out.sort();
        out
    }

    /// Total degree when it is positive on every generator; otherwise the sum
    /// of the facet valuations, which is positive on every nonzero element.
    pub fn default_grading(&self) -> GradingVector {
        let total = GradingVector::total_degree(self.ambient_rank);
        if total.generator_degrees(self).is_ok() {
            return total;
        }
        let functional: IntVec = (0..self.rank())
            .map(|j| self.facets.iter().map(|f| f[j].clone()).sum())
            .collect();
        GradingVector::new(self.group.lift_functional(&functional))
    }

    /// Decides `S = cone(S) ∩ group(S)`. A non-member of least degree in the
    /// normalization is irreducible there, so the witness is found among the
    /// Hilbert basis elements (least default degree, then lexicographic).
    pub fn is_normal(&self) -> NormalityVerdict {
        self.normality.get_or_init(|| self.compute_normality()).clone()
    }

    fn compute_normality(&self) -> NormalityVerdict {
        let grading = self.default_grading();
        let witness = self
            .normalization_hilbert_basis()
            .into_iter()
            .filter(|h| !self.contains(h))
            .min_by(|a, b| {
                grading
                    .degree(a)
                    .cmp(&grading.degree(b))
                    .then_with(|| a.cmp(b))
            });
        NormalityVerdict {
            normal: witness.is_none(),
            witness,
        }
    }

    /// Elements of `S` sorted into degrees `0..=max_degree`, each layer sorted.
    pub fn elements_by_degree(&self, g: &GradingVector, max_degree: usize) -> Result<Vec<Vec<IntVec>>> {
        let degrees = g.generator_degrees(self)?;
        let mut layers: Vec<HashSet<IntVec>> = vec![HashSet::new(); max_degree + 1];
        layers[0].insert(vec![BigInt::zero(); self.ambient_rank]);
        for t in 1..=max_degree {
            let mut layer = HashSet::new();
            for (gen, &d) in self.generators.iter().zip(&degrees) {
                let d = d as usize;
                if d > t {
                    continue;
                }
                for x in &layers[t - d] {
                    layer.insert(vec_add(x, gen));
                }
            }
            layers[t] = layer;
        }
        Ok(layers
            .into_iter()
            .map(|l| {
                let mut v: Vec<IntVec> = l.into_iter().collect();
                v.sort();
                v
            })
            .collect())
    }

    /// Minimal generators of the monomial module
    /// `{u ∈ cone(S) ∩ group(S) : v_F(u) >= c_F for all F}` over the
    /// normalization, read off from the Hilbert basis of the homogenized cone
    /// `{(x, t) : v_F(x) >= c_F t, t >= 0}` at level `t = 1`.
    pub fn module_generators(&self, coefficients: &[BigInt]) -> Result<Vec<IntVec>> {
        if coefficients.len() != self.facets.len() {
            return Err(Error::DimensionMismatch {
                expected: self.facets.len(),
                got: coefficients.len(),
            });
        }
        let r = self.rank();
        let mut rows: Vec<IntVec> = self
            .facets
            .iter()
            .zip(coefficients)
            .map(|(f, c)| {
                let mut row = f.clone();
                row.push(-c);
                row
            })
            .collect();
        let mut level = vec![BigInt::zero(); r + 1];
        level[r] = BigInt::one();
        rows.push(level);
        let rays = extreme_rays(&rows, r + 1)?;
        let facets = facets_of_rays(&rays, r + 1)?;
        let mut out: Vec<IntVec> = hilbert_basis_full(&rays, &facets, r + 1)
            .into_iter()
            .filter(|h| h[r].is_one())
            .map(|h| self.group.from_coordinates(&h[..r]))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// `K[S]` together with the characteristic of `K` (0 or a prime).
#[derive(Clone, Debug, PartialEq)]
pub struct SemigroupRing {
    pub semigroup: AffineSemigroup,
    pub characteristic: u64,
}

impl SemigroupRing {
    pub fn new(semigroup: AffineSemigroup, characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::NotPrime(characteristic));
        }
        Ok(Self {
            semigroup,
            characteristic,
        })
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Normality test with an optional witness.
pub fn is_normal(s: &AffineSemigroup) -> NormalityVerdict {
    s.is_normal()
}

/// Counts of semigroup elements per degree.
pub fn hilbert_function(s: &AffineSemigroup, g: &GradingVector, max_degree: usize) -> Result<HilbertFunctionTable> {
    let layers = s.elements_by_degree(g, max_degree)?;
    Ok(HilbertFunctionTable {
        max_degree,
        counts: layers.iter().map(|l| l.len() as u64).collect(),
    })
}

/// `-(least degree of an interior point)`, the a-invariant of a normal `K[S]`.
pub fn a_invariant_normal(s: &AffineSemigroup, g: &GradingVector) -> Result<BigInt> {
    if !s.is_normal().normal {
        return Err(Error::NotNormal);
    }
    g.generator_degrees(s)?;
    let ones = vec![BigInt::one(); s.num_facets()];
    let least = s
        .module_generators(&ones)?
        .iter()
        .map(|u| g.degree(u))
        .min()
        .expect("interior of a nonzero cone is nonempty");
    Ok(-least.to_integer())
}

/// `deg f - sum of weights` for a quasi-homogeneous hypersurface.
pub fn a_invariant_hypersurface(weights: &[BigInt], f_degree: &BigInt) -> Result<BigInt> {
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(Error::InvalidInput(format!("weight {w} is not positive")));
    }
    Ok(f_degree - weights.iter().sum::<BigInt>())
}

/// Irreducible elements of a semigroup given by its elements up to a degree
/// bound containing all irreducibles. `member` decides membership for
/// elements of smaller degree.
fn irreducibles(
    candidates: Vec<(u64, IntVec)>,
    member: impl Fn(&IntVec, u64) -> bool,
) -> Vec<IntVec> {
    let mut accepted: Vec<(u64, IntVec)> = Vec::new();
    for (d, x) in candidates {
        if d == 0 {
            continue;
        }
        let reducible = accepted
            .iter()
            .any(|(dh, h)| *dh < d && member(&vec_sub(&x, h), d - dh));
        if !reducible {
            accepted.push((d, x));
        }
    }
    let mut out: Vec<IntVec> = accepted.into_iter().map(|(_, x)| x).collect();
    out.sort();
    out
}

/// Generators of `{u ∈ S : n divides deg(u)}`.
pub fn veronese_subsemigroup(s: &AffineSemigroup, g: &GradingVector, n: u64) -> Result<AffineSemigroup> {
    if n == 0 {
        return Err(Error::InvalidInput("Veronese level must be positive".into()));
    }
    let degrees = g.generator_degrees(s)?;
    let max_gen = degrees.iter().copied().max().unwrap_or(1);
    // any n generators contain a nonempty block of degree divisible by n
    let bound = (n * max_gen) as usize;
    let layers = s.elements_by_degree(g, bound)?;
    let sets: Vec<HashSet<&IntVec>> = layers.iter().map(|l| l.iter().collect()).collect();
    let mut candidates = Vec::new();
    for (t, layer) in layers.iter().enumerate() {
        if (t as u64).is_multiple_of(n) {
            candidates.extend(layer.iter().map(|x| (t as u64, x.clone())));
        }
    }
    let gens = irreducibles(candidates, |x, d| d % n == 0 && sets[d as usize].contains(x));
    AffineSemigroup::new(s.ambient_rank(), gens)
}

/// Generators of `{(u, v) : g1(u) = g2(v)}` in `Z^(d1 + d2)`.
pub fn segre_product(
    s1: &AffineSemigroup,
    g1: &GradingVector,
    s2: &AffineSemigroup,
    g2: &GradingVector,
) -> Result<AffineSemigroup> {
    let d1 = g1.generator_degrees(s1)?;
    let d2 = g2.generator_degrees(s2)?;
    // equal-sum subsequences exist once the common degree exceeds the
    // product of the largest generator degrees
    let bound = (d1.iter().max().unwrap_or(&1) * d2.iter().max().unwrap_or(&1)) as usize;
    let l1 = s1.elements_by_degree(g1, bound)?;
    let l2 = s2.elements_by_degree(g2, bound)?;
    let n1 = s1.ambient_rank();
    let sets1: Vec<HashSet<&IntVec>> = l1.iter().map(|l| l.iter().collect()).collect();
    let sets2: Vec<HashSet<&IntVec>> = l2.iter().map(|l| l.iter().collect()).collect();
    let mut candidates = Vec::new();
    for t in 1..=bound {
        for u in &l1[t] {
            for v in &l2[t] {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                candidates.push((t as u64, w));
            }
        }
    }
    let gens = irreducibles(candidates, |x, d| {
        let d = d as usize;
        sets1[d].contains(&x[..n1].to_vec()) && sets2[d].contains(&x[n1..].to_vec())
    });
    AffineSemigroup::new(n1 + s2.ambient_rank(), gens)
}

/// Grading on a Segre product that reads off the common degree.
pub fn segre_grading(g1: &GradingVector, d2: usize) -> GradingVector {
    g1.extended(d2)
}
