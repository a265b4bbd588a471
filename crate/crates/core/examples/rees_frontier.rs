use torees::divisor::prime_divisor;
use torees::lattice::int_vec;
use torees::rees::{build_multi_symbolic_rees, class_group_transfer, is_quasi_gorenstein};
use torees::semigroup::AffineSemigroup;

fn main() {
    let a = AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap();
    let p = prime_divisor(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])]).unwrap();
    let q = prime_divisor(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0])]).unwrap();
    for n in 1..=3 {
        for m in 1..=3 {
            let mut ds = vec![p.clone(); n];
            ds.extend(vec![q.clone(); m]);
            let b = build_multi_symbolic_rees(&a, &ds).unwrap();
            let cl = class_group_transfer(&b).unwrap().class_group_b;
            println!(
                "n={n} m={m}: {} generators, Cl = {cl}, quasi-Gorenstein {}",
                b.generators().len(),
                is_quasi_gorenstein(&b).unwrap()
            );
        }
    }
}
