use torees::rees::ordinary_rees;
use torees::semigroup::AffineSemigroup;

fn main() {
    // W^3X, X^3Y, Y^3Z, Z^3W and W^2X^2Y^2Z^2
    let a = AffineSemigroup::from_i64(&[&[3, 1, 0, 0], &[0, 3, 1, 0], &[0, 0, 3, 1], &[1, 0, 0, 3], &[2, 2, 2, 2]])
        .unwrap();
    println!("A normal: {}", a.is_normal().normal);
    let r = ordinary_rees(&a, &a.default_grading()).unwrap();
    let verdict = r.semigroup().is_normal();
    println!("A[mT] normal: {}", verdict.normal);
    if let Some(w) = verdict.witness {
        println!("missing lattice point: {:?}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
}
