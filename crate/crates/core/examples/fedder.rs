use torees::poly::{
    fedder_general, fedder_hypersurface, parse_polynomial, toric_ideal, MonomialOrder, PolyRing, PrimeField,
};
use torees::rees::ordinary_rees;
use torees::semigroup::AffineSemigroup;

fn main() {
    let f7 = PrimeField::new(7).unwrap();
    let r = PolyRing::new(f7, ["W", "X", "Y", "Z"].map(String::from).to_vec(), MonomialOrder::GRevLex).unwrap();
    let f = parse_polynomial(&r, "W^2 + X^3 + Y^6 + Z^7").unwrap();
    println!("{}: {:?}", r.format(&f), fedder_hypersurface(&r, &f, 7).unwrap().certificate);

    let a = AffineSemigroup::from_i64(&[&[2, 2, 2, 2], &[3, 1, 0, 0], &[0, 3, 1, 0], &[0, 0, 3, 1], &[1, 0, 0, 3]])
        .unwrap();
    let rees = ordinary_rees(&a, &a.default_grading()).unwrap();
    let f2 = PrimeField::new(2).unwrap();
    let names = (0..rees.generators().len()).map(|i| format!("U{i}")).collect();
    let ring = PolyRing::new(f2, names, MonomialOrder::GRevLex).unwrap();
    let j = toric_ideal(&ring, rees.generators()).unwrap();
    println!("A[mT]: {} relations", j.polynomials().len());
    let verdict = fedder_general(&ring, j.polynomials(), 2).unwrap();
    println!("F-pure at p = 2: {}", verdict.f_pure);
}
