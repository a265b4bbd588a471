use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{dot, is_zero_vec, primitive, rank_of_rows, solve_rational, IntVec, IntegerMatrix};
use super::sublattice::SublatticeBasis;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersection(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: IntVec,
    zeros: BitSet,
}

/// Extreme rays of the cone `{x : <a, x> >= 0 for every row a}` in `Q^dim`,
/// by incremental double description. Rays are primitive and sorted
/// lexicographically.
pub fn extreme_rays(inequalities: &[IntVec], dim: usize) -> Result<Vec<IntVec>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<IntVec> = Vec::new();
    for a in inequalities {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: a.len(),
            });
        }
        let p = primitive(a);
        if !is_zero_vec(&p) && !rows.contains(&p) {
            rows.push(p);
        }
    }
    if rank_of_rows(&rows) < dim {
        return Err(Error::NotPointed);
    }

    // lexicographically first independent subset
    let mut initial: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<IntVec> = initial.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank_of_rows(&trial) == trial.len() {
            initial.push(i);
            if initial.len() == dim {
                break;
            }
        }
    }
    let a0 = IntegerMatrix::from_rows(
        &initial.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>(),
        dim,
    )?;
    let mut rays: Vec<Ray> = Vec::new();
    for k in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[k] = BigInt::one();
        let x = solve_rational(&a0, &e).expect("independent rows");
        let v = clear_denominators(&x);
        let mut zeros = BitSet::new(rows.len());
        for (idx, &i) in initial.iter().enumerate() {
            if idx != k {
                zeros.insert(i);
            }
        }
        rays.push(Ray { v, zeros });
    }

    for (i, a) in rows.iter().enumerate() {
        if initial.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_negative()).collect();
        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|q| q == p || q == n || !common.is_subset(&rays[q].zeros));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vn = -&values[n];
                let w: IntVec = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| vp * x + &vn * y)
                    .collect();
                let mut zeros = common;
                zeros.insert(i);
                created.push(Ray {
                    v: primitive(&w),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if v.is_positive() {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn clear_denominators(x: &[BigRational]) -> IntVec {
    use num_integer::Integer;
    let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let v: IntVec = x
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    primitive(&v)
}

/// Facet normals (primitive, inward) of the full-dimensional cone spanned by
/// `rays` in `Q^dim`.
pub fn facets_of_rays(rays: &[IntVec], dim: usize) -> Result<Vec<IntVec>> {
    if rank_of_rows(rays) < dim {
        return Err(Error::InvalidInput(
            "rays do not span the ambient space".into(),
        ));
    }
    let normals = extreme_rays(rays, dim)?;
    if rank_of_rows(&normals) < dim {
        return Err(Error::NotPointed);
    }
    Ok(normals)
}

/// Generators that span extreme rays of the cone with the given facets,
/// made primitive and deduplicated.
pub fn extreme_generators(generators: &[IntVec], facets: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = Vec::new();
    for g in generators {
        if is_zero_vec(g) {
            continue;
        }
        let tight: Vec<IntVec> = facets
            .iter()
            .filter(|f| dot(f, g).is_zero())
            .cloned()
            .collect();
        if rank_of_rows(&tight) + 1 == dim {
            let p = primitive(g);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// A pointed rational polyhedral cone in `Q^d`, stored with its facets.
///
/// Facet normals are primitive integer functionals on the saturated lattice
/// `span(C) ∩ Z^d`, lifted to `Z^d`. When the cone is not full-dimensional
/// the lift is one fixed representative.
#[derive(Clone, Debug)]
pub struct RationalCone {
    ambient_rank: usize,
    ray_generators: Vec<IntVec>,
    span: SublatticeBasis,
    extreme_rays: Vec<IntVec>,
    facet_coords: Vec<IntVec>,
    facet_normals: Vec<IntVec>,
}

impl RationalCone {
    /// The cone spanned by `generators`. Non-pointed cones are rejected.
    pub fn new(ambient_rank: usize, generators: Vec<IntVec>) -> Result<Self> {
        let span = SublatticeBasis::generated_by(ambient_rank, &generators)?.saturation();
        let dim = span.rank();
        let coords: Vec<IntVec> = generators
            .iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| span.coordinates(g).expect("generator lies in its span"))
            .collect();
        if dim == 0 {
            return Err(Error::InvalidInput("cone has no nonzero generators".into()));
        }
        let facet_coords = facets_of_rays(&coords, dim)?;
        let extreme_coords = extreme_generators(&coords, &facet_coords, dim);
        let mut extreme_rays: Vec<IntVec> = extreme_coords
            .iter()
            .map(|c| span.from_coordinates(c))
            .collect();
        extreme_rays.sort();
        let mut facet_normals: Vec<IntVec> = facet_coords
            .iter()
            .map(|f| {
                span.lift_functional(f)
                    .into_iter()
                    .map(|q| {
                        assert!(q.is_integer(), "saturated lift is integral");
                        q.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..facet_normals.len()).collect();
        order.sort_by(|&a, &b| facet_normals[a].cmp(&facet_normals[b]));
        let facet_coords: Vec<IntVec> = order.iter().map(|&i| facet_coords[i].clone()).collect();
        facet_normals = order.iter().map(|&i| facet_normals[i].clone()).collect();
        Ok(Self {
            ambient_rank,
            ray_generators: generators,
            span,
            extreme_rays,
            facet_coords,
            facet_normals,
        })
    }

    /// The cone `{x : <a, x> >= 0}` given by inequalities; must be pointed.
    pub fn from_inequalities(ambient_rank: usize, inequalities: &[IntVec]) -> Result<Self> {
        let rays = extreme_rays(inequalities, ambient_rank)?;
        Self::new(ambient_rank, rays)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dimension(&self) -> usize {
        self.span.rank()
    }

    pub fn ray_generators(&self) -> &[IntVec] {
        &self.ray_generators
    }

    pub fn extreme_rays(&self) -> &[IntVec] {
        &self.extreme_rays
    }

    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facet_normals
    }

    /// Saturated lattice `span(C) ∩ Z^d`.
    pub fn span_lattice(&self) -> &SublatticeBasis {
        &self.span
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let Some(c) = self.span.rational_coordinates(x) else {
            return false;
        };
        self.facet_coords.iter().all(|f| {
            let s: BigRational = f
                .iter()
                .zip(&c)
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            !s.is_negative()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    #[test]
    fn quadrant_rays() {
        let rays = extreme_rays(&[int_vec(&[1, 0]), int_vec(&[0, 1])], 2).unwrap();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn redundant_inequalities() {
        let rays = extreme_rays(
            &[int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1]), int_vec(&[2, 1])],
            2,
        )
        .unwrap();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn square_pyramid() {
        // cone over a square: four facets x>=0, y>=0, z-x>=0, z-y>=0
        let ineq = [
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[-1, 0, 1]),
            int_vec(&[0, -1, 1]),
        ];
        let rays = extreme_rays(&ineq, 3).unwrap();
        assert_eq!(
            rays,
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 1, 1]),
                int_vec(&[1, 0, 1]),
                int_vec(&[1, 1, 1])
            ]
        );
        let facets = facets_of_rays(&rays, 3).unwrap();
        let mut expected = ineq.to_vec();
        expected.sort();
        assert_eq!(facets, expected);
    }

    #[test]
    fn half_space_is_not_pointed() {
        assert_eq!(extreme_rays(&[int_vec(&[1, 0])], 2), Err(Error::NotPointed));
    }

    #[test]
    fn line_is_rejected() {
        let c = RationalCone::new(2, vec![int_vec(&[1, 1]), int_vec(&[-1, -1])]);
        assert_eq!(c.unwrap_err(), Error::NotPointed);
    }

    #[test]
    fn lone_ray_has_one_facet() {
        let c = RationalCone::new(3, vec![int_vec(&[0, 2, 4])]).unwrap();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.facet_normals().len(), 1);
        assert!(c.contains(&int_vec(&[0, 1, 2])));
        assert!(!c.contains(&int_vec(&[0, -1, -2])));
    }
}
