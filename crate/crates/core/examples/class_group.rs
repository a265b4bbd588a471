use torees::divisor::{canonical_divisor, class_group, class_of};
use torees::semigroup::{veronese_subsemigroup, AffineSemigroup, GradingVector};

fn main() {
    let quadric =
        AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap();
    println!("Cl(K[ax,ay,bx,by]) = {}", class_group(&quadric).unwrap());
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let v = veronese_subsemigroup(&AffineSemigroup::polynomial(m), &GradingVector::total_degree(m), n).unwrap();
        let omega = class_of(&v, &canonical_divisor(&v).unwrap()).unwrap();
        println!("Cl(V({m},{n})) = {}, [omega] = {omega}", class_group(&v).unwrap());
    }
}
