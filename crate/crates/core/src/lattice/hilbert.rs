//! Hilbert bases of pointed rational cones.
//!
//! The cone is split into simplicial cones by a pulling triangulation. For
//! every simplex the lattice points of its half-open fundamental
//! parallelepiped are listed through the Smith form of the ray matrix. Rays
//! and parallelepiped points together generate the cone's semigroup; the
//! irreducible ones are kept.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::cone::{extreme_generators, facets_of_rays, RationalCone};
use super::matrix::{dot, rank_of_rows, solve_rational, vec_sub, IntVec, IntegerMatrix};
use super::snf::smith_normal_form;
use super::sublattice::SublatticeBasis;
use crate::error::{Error, Result};

struct Triangulator<'a> {
    rays: &'a [IntVec],
    zero_sets: Vec<BTreeSet<usize>>,
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Triangulator<'_> {
    fn rank(&self, face: &[usize]) -> usize {
        let v: Vec<IntVec> = face.iter().map(|&i| self.rays[i].clone()).collect();
        rank_of_rows(&v)
    }

    fn pull(&mut self, face: Vec<usize>, dim: usize) -> Vec<Vec<usize>> {
        if face.len() == dim {
            return vec![face];
        }
        if let Some(done) = self.memo.get(&face) {
            return done.clone();
        }
        let apex = face[0];
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for z in &self.zero_sets {
            if z.contains(&apex) {
                continue;
            }
            let sub: Vec<usize> = face.iter().copied().filter(|i| z.contains(i)).collect();
            if sub.is_empty() || subfaces.contains(&sub) {
                continue;
            }
            if self.rank(&sub) + 1 == dim {
                subfaces.push(sub);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            for mut simplex in self.pull(sub, dim - 1) {
                simplex.push(apex);
                simplex.sort_unstable();
                out.push(simplex);
            }
        }
        self.memo.insert(face, out.clone());
        out
    }
}

/// Pulling triangulation of a full-dimensional pointed cone given by its
/// extreme rays and facets. Each simplex lists indices into `rays`.
pub fn triangulate(rays: &[IntVec], facets: &[IntVec], dim: usize) -> Vec<Vec<usize>> {
    let zero_sets = facets
        .iter()
        .map(|f| {
            (0..rays.len())
                .filter(|&i| dot(f, &rays[i]).is_zero())
                .collect()
        })
        .collect();
    let mut t = Triangulator {
        rays,
        zero_sets,
        memo: HashMap::new(),
    };
    t.pull((0..rays.len()).collect(), dim)
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the
/// columns of a nonsingular square matrix.
fn parallelepiped_points(generators: &[IntVec], dim: usize) -> Vec<IntVec> {
    let m = IntegerMatrix::from_columns(generators, dim).expect("square");
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    if factors.iter().all(|d| d == &BigInt::from(1)) {
        return Vec::new();
    }
    let mut points = Vec::new();
    let mut class = vec![BigInt::zero(); dim];
    loop {
        let x = snf.u_inv.mul_vec(&class);
        let lambda = solve_rational(&m, &x).expect("nonsingular");
        let shift: IntVec = lambda.iter().map(|l| l.floor().to_integer()).collect();
        let p = vec_sub(&x, &m.mul_vec(&shift));
        if p.iter().any(|v| !v.is_zero()) {
            points.push(p);
        }
        // odometer over the group  ⊕ Z/d_i
        let mut k = 0;
        loop {
            if k == dim {
                return points;
            }
            class[k] += 1;
            if class[k] < factors[k] {
                break;
            }
            class[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// Hilbert basis of `C ∩ Z^dim` for a full-dimensional pointed cone given by
/// primitive extreme rays and facet normals. Output is sorted.
pub fn hilbert_basis_full(rays: &[IntVec], facets: &[IntVec], dim: usize) -> Vec<IntVec> {
    let simplices = triangulate(rays, facets, dim);
    let mut candidates: BTreeSet<IntVec> = rays.iter().cloned().collect();
    for s in &simplices {
        let gens: Vec<IntVec> = s.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&gens, dim));
    }
    minimize(candidates.into_iter().collect(), facets)
}

/// Keeps the elements of a generating set of `C ∩ Z^dim` that are not sums
/// of two nonzero cone points.
pub fn minimize(candidates: Vec<IntVec>, facets: &[IntVec]) -> Vec<IntVec> {
    let degree = |x: &IntVec| -> BigInt { facets.iter().map(|f| dot(f, x)).sum() };
    let mut graded: Vec<(BigInt, IntVec)> = candidates.into_iter().map(|x| (degree(&x), x)).collect();
    graded.sort();
    graded.dedup();
    let mut accepted: Vec<(BigInt, IntVec)> = Vec::new();
    for (deg, x) in graded {
        let reducible = accepted.iter().any(|(dh, h)| {
            dh < &deg && {
                let diff = vec_sub(&x, h);
                facets.iter().all(|f| !dot(f, &diff).is_negative())
            }
        });
        if !reducible {
            accepted.push((deg, x));
        }
    }
    let mut out: Vec<IntVec> = accepted.into_iter().map(|(_, x)| x).collect();
    out.sort();
    out
}

/// Hilbert basis of the semigroup `C ∩ L`, where `L` is a lattice of full
/// rank in the span of `C`. Output is sorted lexicographically.
pub fn hilbert_basis(cone: &RationalCone, lattice: &SublatticeBasis) -> Result<Vec<IntVec>> {
    if lattice.ambient_rank() != cone.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: cone.ambient_rank(),
            got: lattice.ambient_rank(),
        });
    }
    let span = cone.span_lattice();
    if lattice.rank() != cone.dimension()
        || lattice
            .basis()
            .iter()
            .any(|b| span.rational_coordinates(b).is_none())
    {
        return Err(Error::InvalidInput(
            "lattice must have full rank in the span of the cone".into(),
        ));
    }
    let dim = lattice.rank();
    let rays: Vec<IntVec> = cone
        .extreme_rays()
        .iter()
        .map(|r| lattice.scaled_coordinates(r).expect("ray lies in span"))
        .collect();
    let facets = facets_of_rays(&rays, dim)?;
    let rays = extreme_generators(&rays, &facets, dim);
    let mut out: Vec<IntVec> = hilbert_basis_full(&rays, &facets, dim)
        .iter()
        .map(|c| lattice.from_coordinates(c))
        .collect();
    out.sort();
    Ok(out)
}
