use torees::lattice::{smith_normal_form, AbelianGroupPresentation, IntegerMatrix};

fn main() {
    let m = IntegerMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors().iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));
    println!("rank {}", snf.rank);
    println!("cokernel: {}", AbelianGroupPresentation::cokernel(&m));
}
