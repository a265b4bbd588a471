//! Exact integer linear algebra and rational polyhedral cones.

mod abelian;
mod cone;
mod hilbert;
mod matrix;
mod snf;
mod sublattice;

pub use abelian::AbelianGroupPresentation;
pub use cone::{extreme_generators, extreme_rays, facets_of_rays, RationalCone};
pub use hilbert::{hilbert_basis, hilbert_basis_full, minimize, triangulate};
pub use matrix::{
    dot, hyperplane_normal, int_vec, is_zero_vec, lcm_all, primitive, rank_of_rows, solve_rational,
    vec_add, vec_gcd, vec_scale, vec_sub, IntVec, IntegerMatrix,
};
pub use snf::{smith_normal_form, SmithForm};
pub use sublattice::{hermite_rows, SublatticeBasis};


/// Saturated lattice `{v in Z^cols : m v = 0}`, basis in Hermite normal form.
pub fn kernel_lattice(m: &IntegerMatrix) -> SublatticeBasis {
    let snf = smith_normal_form(m);
    let vectors: Vec<IntVec> = (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect();
    SublatticeBasis::new(m.cols(), vectors).expect("columns of a unimodular matrix")
}

/// Facet normals of a cone, in the order stored on the cone.
pub fn facets(cone: &RationalCone) -> Vec<IntVec> {
    cone.facet_normals().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(kernel_lattice(&IntegerMatrix::identity(3)).rank(), 0);
    }

    #[test]
    fn kernel_of_row() {
        let k = kernel_lattice(&IntegerMatrix::from_i64(&[vec![1, 1]]));
        assert_eq!(k.basis(), &[int_vec(&[1, -1])]);
    }

    #[test]
    fn kernel_of_rees_relation_map() {
        // columns: W^3X, X^3Y, Y^3Z, Z^3W, W^2X^2Y^2Z^2
        let m = IntegerMatrix::from_i64(&[
            vec![3, 0, 0, 1, 2],
            vec![1, 3, 0, 0, 2],
            vec![0, 1, 3, 0, 2],
            vec![0, 0, 1, 3, 2],
        ]);
        let k = kernel_lattice(&m);
        assert_eq!(k.basis(), &[int_vec(&[1, 1, 1, 1, -2])]);
        assert!(k.is_saturated());
    }

    #[test]
    fn quadrant_facets() {
        let c = RationalCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        assert_eq!(facets(&c), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn quadric_cone_has_four_facets() {
        let c = RationalCone::new(
            4,
            vec![
                int_vec(&[1, 0, 1, 0]),
                int_vec(&[1, 0, 0, 1]),
                int_vec(&[0, 1, 1, 0]),
                int_vec(&[0, 1, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(c.dimension(), 3);
        let f = facets(&c);
        assert_eq!(f.len(), 4);
        for n in &f {
            assert!(vec_gcd(n) == BigInt::from(1));
            for r in c.ray_generators() {
                assert!(dot(n, r) >= BigInt::from(0));
            }
        }
    }

    #[test]
    fn quadrant_hilbert_bases() {
        let c = RationalCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        let hb = hilbert_basis(&c, &SublatticeBasis::full(2)).unwrap();
        assert_eq!(hb, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        let even = SublatticeBasis::new(2, vec![int_vec(&[2, 0]), int_vec(&[1, 1])]).unwrap();
        let hb = hilbert_basis(&c, &even).unwrap();
        assert_eq!(hb, vec![int_vec(&[0, 2]), int_vec(&[1, 1]), int_vec(&[2, 0])]);
    }

    #[test]
    fn quadric_cone_hilbert_basis() {
        let gens = vec![
            int_vec(&[1, 0, 1, 0]),
            int_vec(&[1, 0, 0, 1]),
            int_vec(&[0, 1, 1, 0]),
            int_vec(&[0, 1, 0, 1]),
        ];
        let c = RationalCone::new(4, gens.clone()).unwrap();
        let l = SublatticeBasis::generated_by(4, &gens).unwrap();
        let mut expected = gens;
        expected.sort();
        assert_eq!(hilbert_basis(&c, &l).unwrap(), expected);
    }
}
