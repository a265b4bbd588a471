use torees::lattice::{hilbert_basis, int_vec, RationalCone};

// cone spanned by (1,0) and (1,3) in Z^2
fn main() {
    let cone = RationalCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[1, 3])]).unwrap();
    let basis = hilbert_basis(&cone, cone.span_lattice()).unwrap();
    for h in &basis {
        println!("{:?}", h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    println!("facets: {:?}", cone.facet_normals());
}
