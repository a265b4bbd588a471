use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{IntVec, IntegerMatrix};
use super::snf::smith_normal_form;

/// A finitely generated abelian group `Z^n / L`, presented by invariant
/// factors (0 encodes a free summand) and a projection onto them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    ambient_rank: usize,
    invariant_factors: Vec<BigInt>,
    projection: IntegerMatrix,
}

impl AbelianGroupPresentation {
    /// Quotient of `Z^rows` by the lattice spanned by the columns of `relations`.
    pub fn cokernel(relations: &IntegerMatrix) -> Self {
        let n = relations.rows();
        let snf = smith_normal_form(relations);
        let mut kept_rows = Vec::new();
        let mut invariant_factors = Vec::new();
        for i in 0..n {
            let d = if i < snf.rank {
                snf.d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if !d.is_one() {
                kept_rows.push(snf.u.row(i).to_vec());
                invariant_factors.push(d);
            }
        }
        let projection = IntegerMatrix::from_rows(&kept_rows, n).expect("rows of u");
        Self {
            ambient_rank: n,
            invariant_factors,
            projection,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Canonical coordinates of the class of `x`.
    pub fn project(&self, x: &[BigInt]) -> IntVec {
        let raw = self.projection.mul_vec(x);
        raw.into_iter()
            .zip(&self.invariant_factors)
            .map(|(v, d)| if d.is_zero() { v } else { v.mod_floor(d) })
            .collect()
    }

    pub fn zero(&self) -> IntVec {
        vec![BigInt::zero(); self.invariant_factors.len()]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntVec {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> IntVec {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    fn normalize(&self, v: IntVec) -> IntVec {
        v.into_iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
            .collect()
    }

    /// Order of a class given in canonical coordinates; `None` for infinite order.
    pub fn order(&self, class: &[BigInt]) -> Option<BigInt> {
        let mut order = BigInt::one();
        for (c, d) in class.iter().zip(&self.invariant_factors) {
            if d.is_zero() {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            let o = d / c.gcd(d);
            order = order.lcm(&o);
        }
        Some(order)
    }

    /// Exponent of the torsion part (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianGroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("structure", &self.to_string())?;
        let factors: Vec<String> = self.invariant_factors.iter().map(|d| d.to_string()).collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.end()
    }
}
