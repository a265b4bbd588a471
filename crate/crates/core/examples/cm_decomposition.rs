use torees::divisor::prime_divisor;
use torees::lattice::int_vec;
use torees::rees::cm_decomposition_check;
use torees::semigroup::{veronese_subsemigroup, AffineSemigroup, GradingVector};

fn main() {
    let g = GradingVector::total_degree(2);
    let v = veronese_subsemigroup(&AffineSemigroup::polynomial(2), &g, 2).unwrap();
    let p = prime_divisor(&v, &[int_vec(&[2, 0]), int_vec(&[1, 1])]).unwrap();
    let cm = cm_decomposition_check(&v, &[p], &g, 8).unwrap();
    println!("order of [P]: {:?}", cm.orders);
    println!("quotient:      {:?}", cm.quotient_counts);
    println!("decomposition: {:?}", cm.decomposition_counts);
}
