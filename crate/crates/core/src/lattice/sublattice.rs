use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{is_zero_vec, rank_of_rows, IntVec, IntegerMatrix};
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by `rows`. Zero rows
/// are dropped; pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hermite_rows(rows: &[IntVec], cols: usize) -> Vec<IntVec> {
    let mut a: Vec<IntVec> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let pivot = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &q * &a[r][j];
                    a[i][j] -= v;
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &q * &a[r][j];
                a[i][j] -= v;
            }
        }
        r += 1;
        a.retain(|row| !is_zero_vec(row));
    }
    a.retain(|row| !is_zero_vec(row));
    a
}

/// A sublattice of `Z^d` given by a basis in Hermite normal form, together
/// with the data needed to convert between ambient vectors and coordinates.
#[derive(Clone, Debug)]
pub struct SublatticeBasis {
    ambient_rank: usize,
    basis: Vec<IntVec>,
    snf: SmithForm,
}

impl PartialEq for SublatticeBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis == other.basis
    }
}

impl Eq for SublatticeBasis {}

impl SublatticeBasis {
    /// Lattice with the given linearly independent basis vectors.
    pub fn new(ambient_rank: usize, basis: Vec<IntVec>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                got: v.len(),
            });
        }
        if rank_of_rows(&basis) != basis.len() {
            return Err(Error::NotIndependent);
        }
        Ok(Self::from_independent(ambient_rank, hermite_rows(&basis, ambient_rank)))
    }

    /// Lattice generated by arbitrary (possibly dependent) vectors.
    pub fn generated_by(ambient_rank: usize, vectors: &[IntVec]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                got: v.len(),
            });
        }
        Ok(Self::from_independent(ambient_rank, hermite_rows(vectors, ambient_rank)))
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::from_independent(
            ambient_rank,
            IntegerMatrix::identity(ambient_rank).row_vecs(),
        )
    }

    fn from_independent(ambient_rank: usize, basis: Vec<IntVec>) -> Self {
        let b = IntegerMatrix::from_columns(&basis, ambient_rank).expect("shape checked");
        let snf = smith_normal_form(&b);
        debug_assert_eq!(snf.rank, basis.len());
        Self {
            ambient_rank,
            basis,
            snf,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// `span(L) ∩ Z^d`.
    pub fn saturation(&self) -> Self {
        let vectors: Vec<IntVec> = (0..self.rank()).map(|i| self.snf.u_inv.column(i)).collect();
        Self::from_independent(self.ambient_rank, hermite_rows(&vectors, self.ambient_rank))
    }

    pub fn is_saturated(&self) -> bool {
        self.snf.invariant_factors().iter().all(One::is_one)
    }

    /// Rational coordinates of `x` with respect to [`Self::basis`], or `None`
    /// when `x` is outside the rational span.
    pub fn rational_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        assert_eq!(x.len(), self.ambient_rank);
        let ux = self.snf.u.mul_vec(x);
        let r = self.rank();
        if ux[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let y: Vec<BigRational> = (0..r)
            .map(|i| BigRational::new(ux[i].clone(), self.snf.d[(i, i)].clone()))
            .collect();
        Some(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| BigRational::from_integer(self.snf.v[(i, j)].clone()) * &y[j])
                        .sum()
                })
                .collect(),
        )
    }

    /// Integer coordinates of `x`, or `None` when `x` is not a lattice vector.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<IntVec> {
        let c = self.rational_coordinates(x)?;
        c.iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Ambient vector with the given coordinates.
    pub fn from_coordinates(&self, c: &[BigInt]) -> IntVec {
        assert_eq!(c.len(), self.rank());
        let mut x = vec![BigInt::zero(); self.ambient_rank];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (xj, bj) in x.iter_mut().zip(b) {
                *xj += ci * bj;
            }
        }
        x
    }

    /// Integer vector in coordinates proportional to a vector of the rational
    /// span (scaled to be primitive).
    pub fn scaled_coordinates(&self, x: &[BigInt]) -> Option<IntVec> {
        let c = self.rational_coordinates(x)?;
        let den = c
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: IntVec = c.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect();
        Some(super::matrix::primitive(&ints))
    }

    /// Lifts a linear functional on lattice coordinates to a functional on
    /// the ambient space. The lift is integral when the lattice is saturated.
    pub fn lift_functional(&self, f: &[BigInt]) -> Vec<BigRational> {
        // coordinate map: c = V * diag(1/d) * U_top * x
        let r = self.rank();
        let mut w = vec![BigRational::zero(); r];
        for (j, wj) in w.iter_mut().enumerate() {
            let s: BigInt = (0..r).map(|i| &f[i] * &self.snf.v[(i, j)]).sum();
            *wj = BigRational::new(s, self.snf.d[(j, j)].clone());
        }
        (0..self.ambient_rank)
            .map(|k| {
                (0..r)
                    .map(|j| &w[j] * BigRational::from_integer(self.snf.u[(j, k)].clone()))
                    .sum()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&[int_vec(&[2, 1]), int_vec(&[0, 2])], 2);
        let b = hermite_rows(&[int_vec(&[2, 3]), int_vec(&[4, 4])], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn coordinates_round_trip() {
        let l = SublatticeBasis::new(3, vec![int_vec(&[2, 0, 1]), int_vec(&[1, 1, 1])]).unwrap();
        let x = int_vec(&[5, 1, 3]); // 2*b0 + 1*b1
        let c = l.coordinates(&x).unwrap();
        assert_eq!(l.from_coordinates(&c), x);
        assert!(!l.contains(&int_vec(&[1, 0, 0])));
        assert!(l.rational_coordinates(&int_vec(&[1, 0, 0])).is_none());
    }

    #[test]
    fn saturation_of_even_lattice() {
        let l = SublatticeBasis::new(2, vec![int_vec(&[2, 0]), int_vec(&[1, 1])]).unwrap();
        assert!(!l.is_saturated());
        assert_eq!(l.saturation(), SublatticeBasis::full(2));
    }

    #[test]
    fn dependent_basis_rejected() {
        let e = SublatticeBasis::new(2, vec![int_vec(&[1, 2]), int_vec(&[2, 4])]);
        assert_eq!(e, Err(Error::NotIndependent));
    }

    #[test]
    fn lifted_functional_agrees_on_lattice() {
        let l = SublatticeBasis::new(3, vec![int_vec(&[1, 0, 1]), int_vec(&[0, 1, 1])]).unwrap();
        let f = int_vec(&[3, -2]);
        let lift = l.lift_functional(&f);
        for x in [int_vec(&[1, 0, 1]), int_vec(&[2, 3, 5]), int_vec(&[-1, 4, 3])] {
            let c = l.coordinates(&x).unwrap();
            let direct: BigInt = c.iter().zip(&f).map(|(a, b)| a * b).sum();
            let lifted: BigRational = lift
                .iter()
                .zip(&x)
                .map(|(w, xi)| w * BigRational::from_integer(xi.clone()))
                .sum();
            assert_eq!(BigRational::from_integer(direct), lifted);
        }
    }
}
