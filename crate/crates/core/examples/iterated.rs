use torees::divisor::prime_divisor;
use torees::lattice::int_vec;
use torees::rees::iterated_isomorphism_check;
use torees::semigroup::AffineSemigroup;

fn main() {
    let a = AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap();
    let p = prime_divisor(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])]).unwrap();
    let q = prime_divisor(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0])]).unwrap();
    let check = iterated_isomorphism_check(&a, &[p, q], 3).unwrap();
    println!(
        "R_s(P, Q) vs R_s(Q~) over R_s(P): {} slices, agree {}",
        check.slices_compared, check.holds
    );
    println!("extended divisor {}", check.extended_divisor);
}
