mod common;

use std::collections::HashSet;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use torees::lattice::{int_vec, vec_add, IntVec};
use torees::semigroup::*;
use torees::Error;

fn half_grading(d: usize) -> GradingVector {
    GradingVector::new(vec![BigRational::new(1.into(), 2.into()); d])
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn polynomial_and_quadric_are_normal() {
    assert!(is_normal(&AffineSemigroup::polynomial(3)).normal);
    let v = is_normal(&quadric());
    assert!(v.normal);
    assert_eq!(v.witness, None);
}

#[test]
fn numerical_semigroup_witness() {
    // <2, 3> misses 1, the least point of the normalization N
    let v = is_normal(&AffineSemigroup::from_i64(&[&[2], &[3]]).unwrap());
    assert!(!v.normal);
    assert_eq!(v.witness, Some(int_vec(&[1])));
}

#[test]
fn rees_ring_of_monomial_ring_is_not_normal() {
    let mut gens: Vec<IntVec> = Vec::new();
    for level in [0, 1] {
        for g in [[3, 1, 0, 0], [0, 3, 1, 0], [0, 0, 3, 1], [1, 0, 0, 3], [2, 2, 2, 2]] {
            let mut v = int_vec(&g);
            v.push(BigInt::from(level));
            gens.push(v);
        }
    }
    let r = AffineSemigroup::new(5, gens).unwrap();
    let v = is_normal(&r);
    assert!(!v.normal);
    let w = v.witness.unwrap();
    assert_eq!(w, int_vec(&[2, 2, 2, 2, 2]));
    // its square is the product of the four level-one generators
    let four = [[3, 1, 0, 0, 1], [0, 3, 1, 0, 1], [0, 0, 3, 1, 1], [1, 0, 0, 3, 1]]
        .iter()
        .fold(int_vec(&[0, 0, 0, 0, 0]), |acc, g| vec_add(&acc, &int_vec(g)));
    assert_eq!(vec_add(&w, &w), four);
    assert!(r.contains(&four));
}

#[test]
fn normality_agrees_with_hilbert_basis_membership() {
    for s in [
        quadric(),
        veronese(2, 3),
        AffineSemigroup::from_i64(&[&[2, 0], &[1, 1], &[0, 2], &[3, 1]]).unwrap(),
        AffineSemigroup::from_i64(&[&[1, 0], &[1, 2]]).unwrap(),
        AffineSemigroup::from_i64(&[&[4], &[6], &[9]]).unwrap(),
    ] {
        let all_in = s.normalization_hilbert_basis().iter().all(|h| s.contains(h));
        assert_eq!(is_normal(&s).normal, all_in);
    }
}

#[test]
fn veronese_of_normal_is_normal() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        assert!(is_normal(&veronese(m, n)).normal);
    }
    let q = quadric();
    assert!(is_normal(&veronese_subsemigroup(&q, &GradingVector::total_degree(4), 4).unwrap()).normal);
}

#[test]
fn a_invariants_of_normal_rings() {
    assert_eq!(a_invariant_normal(&AffineSemigroup::polynomial(1), &GradingVector::total_degree(1)).unwrap(), BigInt::from(-1));
    assert_eq!(a_invariant_normal(&AffineSemigroup::polynomial(4), &GradingVector::total_degree(4)).unwrap(), BigInt::from(-4));
    assert_eq!(a_invariant_normal(&quadric(), &half_grading(4)).unwrap(), BigInt::from(-2));
}

#[test]
fn quadric_a_invariant_matches_its_hypersurface_presentation() {
    // K[U1..U4]/(U1U4 - U2U3), all weights 1
    let hyp = a_invariant_hypersurface(&ints(&[1, 1, 1, 1]), &BigInt::from(2)).unwrap();
    assert_eq!(hyp, a_invariant_normal(&quadric(), &half_grading(4)).unwrap());
}

#[test]
fn a_invariant_of_non_normal_rejected() {
    let s = AffineSemigroup::from_i64(&[&[2], &[3]]).unwrap();
    assert_eq!(a_invariant_normal(&s, &GradingVector::total_degree(1)), Err(Error::NotNormal));
}

#[test]
fn a_invariants_of_hypersurfaces() {
    assert_eq!(a_invariant_hypersurface(&ints(&[1, 1, 1, 1]), &BigInt::from(2)).unwrap(), BigInt::from(-2));
    assert_eq!(a_invariant_hypersurface(&ints(&[15, 8, 1, 6]), &BigInt::from(30)).unwrap(), BigInt::from(0));
    assert_eq!(a_invariant_hypersurface(&ints(&[1]), &BigInt::from(1)).unwrap(), BigInt::from(0));
    assert!(a_invariant_hypersurface(&ints(&[1, 0]), &BigInt::from(1)).is_err());
}

#[test]
fn veronese_generators() {
    let n2 = AffineSemigroup::polynomial(2);
    let g = GradingVector::total_degree(2);
    let gens = |n| {
        let mut v = veronese_subsemigroup(&n2, &g, n).unwrap().generators().to_vec();
        v.sort();
        v
    };
    assert_eq!(gens(1), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    assert_eq!(gens(2), vec![int_vec(&[0, 2]), int_vec(&[1, 1]), int_vec(&[2, 0])]);
    assert_eq!(gens(3).len(), 4);
    assert!(veronese_subsemigroup(&n2, &g, 0).is_err());
}

#[test]
fn segre_products() {
    let p = |d| AffineSemigroup::polynomial(d);
    let t = |d| GradingVector::total_degree(d);
    let q = segre_product(&p(2), &t(2), &p(2), &t(2)).unwrap();
    let got: HashSet<IntVec> = q.generators().iter().cloned().collect();
    let want: HashSet<IntVec> = quadric().generators().iter().cloned().collect();
    assert_eq!(got, want);
    let line = segre_product(&p(1), &t(1), &p(1), &t(1)).unwrap();
    assert_eq!(line.generators(), &[int_vec(&[1, 1])]);
    assert_eq!(segre_product(&p(3), &t(3), &p(3), &t(3)).unwrap().generators().len(), 9);
}

#[test]
fn segre_hilbert_function_is_product() {
    let (a, b) = (AffineSemigroup::polynomial(2), AffineSemigroup::polynomial(3));
    let (ga, gb) = (GradingVector::total_degree(2), GradingVector::total_degree(3));
    let s = segre_product(&a, &ga, &b, &gb).unwrap();
    let hs = hilbert_function(&s, &segre_grading(&ga, 3), 7).unwrap();
    let ha = hilbert_function(&a, &ga, 7).unwrap();
    let hb = hilbert_function(&b, &gb, 7).unwrap();
    for t in 0..=7 {
        assert_eq!(hs.counts[t], ha.counts[t] * hb.counts[t]);
    }
}

#[test]
fn hilbert_functions() {
    let h = hilbert_function(&AffineSemigroup::polynomial(2), &GradingVector::total_degree(2), 2).unwrap();
    assert_eq!(h.counts, vec![1, 2, 3]);
    let h = hilbert_function(&quadric(), &half_grading(4), 2).unwrap();
    assert_eq!(h.counts, vec![1, 4, 9]);
    let h = hilbert_function(&veronese(2, 2), &half_grading(2), 2).unwrap();
    assert_eq!(h.counts, vec![1, 3, 5]);
}

#[test]
fn hilbert_function_matches_enumeration() {
    // monomials of degree t in N^m whose degree is a multiple of n
    for (m, n) in [(2usize, 3u64), (3, 2)] {
        let h = hilbert_function(&veronese(m, n), &GradingVector::total_degree(m), 9).unwrap();
        for t in 0..=9 {
            let expected = if (t as u64).is_multiple_of(n) { monomials_of_degree(m, t).len() as u64 } else { 0 };
            assert_eq!(h.counts[t], expected);
        }
    }
}

#[test]
fn invalid_generators_rejected() {
    assert!(AffineSemigroup::from_i64(&[]).is_err());
    assert!(AffineSemigroup::from_i64(&[&[0, 0]]).is_err());
    assert!(AffineSemigroup::from_i64(&[&[1, 0], &[1, 0]]).is_err());
    assert!(SemigroupRing::new(quadric(), 4).is_err());
    assert!(SemigroupRing::new(quadric(), 0).is_ok());
}

#[test]
fn grading_must_be_positive() {
    let g = GradingVector::from_integers(&[1, -1]);
    assert!(g.generator_degrees(&AffineSemigroup::polynomial(2)).is_err());
}
