use torees::divisor::{prime_divisor, symbolic_power};
use torees::lattice::int_vec;
use torees::semigroup::AffineSemigroup;

fn main() {
    let a = AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap();
    let p = prime_divisor(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])]).unwrap();
    for n in 0..=3 {
        let ideal = symbolic_power(&a, &p, n).unwrap();
        let gens: Vec<String> = ideal
            .generators
            .iter()
            .map(|g| format!("{:?}", g.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .collect();
        println!("P^({n}): {}", gens.join(" "));
    }
}
