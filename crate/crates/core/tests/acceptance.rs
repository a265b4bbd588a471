//! One line per acceptance criterion, with pinned time limits. Exits
//! nonzero when any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::oracle::*;
use common::*;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use torees::divisor::*;
use torees::lattice::{int_vec, IntVec};
use torees::poly::*;
use torees::rees::*;
use torees::semigroup::*;
use torees::Error;

type Outcome = Result<String, String>;

/// Number, check and time limit in seconds.
type Criterion = (u32, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Minimal elements of `{v_F >= 1 for all F}` among the elements of `B` of
/// coordinate sum at most `bound`.
fn minimal_interior_elements(b: &AffineSemigroup, bound: i64) -> Vec<IntVec> {
    let elements = elements_up_to(b, bound);
    let interior: Vec<&IntVec> = elements
        .iter()
        .filter(|u| b.valuations(u).unwrap().iter().all(|v| *v >= BigInt::from(1)))
        .collect();
    interior
        .iter()
        .filter(|u| {
            !interior.iter().any(|w| {
                w != *u && elements.contains(&u.iter().zip(w.iter()).map(|(x, y)| x - y).collect::<IntVec>())
            })
        })
        .map(|u| (*u).clone())
        .collect()
}

fn criterion_1() -> Outcome {
    let a = quadric();
    let (p, q) = quadric_primes(&a);
    for n in 1..=3usize {
        for m in 1..=3usize {
            let mut ds = vec![p.clone(); n];
            ds.extend(vec![q.clone(); m]);
            let b = build_multi_symbolic_rees(&a, &ds).map_err(err)?;
            let cl = class_group_transfer(&b).map_err(err)?.class_group_b;
            ensure(cl.to_string() == "Z", || format!("(n,m)=({n},{m}): Cl(B)={cl}"))?;
            let qg = is_quasi_gorenstein(&b).map_err(err)?;
            ensure(qg == (n == m), || format!("(n,m)=({n},{m}): quasi-Gorenstein={qg}"))?;
            // the canonical ideal is principal exactly when one minimal interior element exists
            let principal = minimal_interior_elements(b.semigroup(), 8 + 2 * (n + m) as i64).len() == 1;
            ensure(principal == (n == m), || format!("(n,m)=({n},{m}): interior ideal principal={principal}"))?;
        }
    }
    Ok("9 cases; Gorenstein exactly on the diagonal".into())
}

fn criterion_2() -> Outcome {
    let mut tested = 0;
    for (m, n) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
        let v = veronese(m, n);
        let cl = class_group(&v).map_err(err)?;
        ensure(cl.to_string() == format!("Z/{n}"), || format!("Cl(V({m},{n})) = {cl}"))?;
        let pv = veronese_p(&v);
        // [P] has order n: P^(k) is principal first at k = n
        for k in 1..=n {
            let principal = symbolic_power(&v, &pv, k).map_err(err)?.generators.len() == 1;
            ensure(principal == (k == n), || format!("V({m},{n}): P^({k}) principal={principal}"))?;
        }
        for t in 1..=3u64 {
            let ideal = symbolic_power(&v, &pv, t).map_err(err)?;
            for d in 0..=12usize {
                for u in monomials_of_degree(m, d) {
                    tested += 1;
                    let rule = u[0] >= BigInt::from(t) && (d as u64).is_multiple_of(n);
                    ensure(ideal.generated_contains(&v, &u) == rule, || format!("V({m},{n}) t={t} u={u:?}"))?;
                }
            }
        }
    }
    Ok(format!("4 class groups; {tested} memberships to degree 12"))
}

fn criterion_3() -> Outcome {
    for (m, n) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
        let v = veronese(m, n);
        let pv = veronese_p(&v);
        for alpha in 1..=2u64 {
            let b = build_multi_symbolic_rees(&v, &[pv.scale(&BigInt::from(alpha))]).map_err(err)?;
            let max = 8 * n as usize;
            let hf = hilbert_function(b.semigroup(), &GradingVector::total_degree(m).extended(1), max).map_err(err)?;
            for d in 0..=max {
                // X_1^alpha U has weight alpha in the extended ring, and U alone weight zero
                let extended: u64 = (0..=d / alpha as usize)
                    .map(|k| monomials_of_degree(m, d - alpha as usize * k).len() as u64)
                    .sum();
                let by_rule: u64 = monomials_of_degree(m, d)
                    .iter()
                    .map(|u| u64::try_from(&u[0]).unwrap() / alpha + 1)
                    .sum();
                let want = if (d as u64).is_multiple_of(n) { extended } else { 0 };
                let rule = if (d as u64).is_multiple_of(n) { by_rule } else { 0 };
                ensure(hf.counts[d] == want && want == rule, || {
                    format!("V({m},{n}) alpha={alpha} degree {d}: {} vs {want} vs {rule}", hf.counts[d])
                })?;
            }
        }
    }
    Ok("8 Rees algebras, Hilbert functions to Veronese degree 8".into())
}

fn criterion_4() -> Outcome {
    let a = quadric();
    let (p, q) = quadric_primes(&a);
    let v = veronese(2, 2);
    let pv = veronese_p(&v);
    let mut slices = 0;
    for (ring, ds) in [(&a, vec![p, q]), (&v, vec![pv.clone(), pv])] {
        let check = iterated_isomorphism_check(ring, &ds, 2).map_err(err)?;
        ensure(check.holds, || format!("mismatched slices {:?}", check.mismatches))?;
        let direct = build_multi_symbolic_rees(ring, &ds).map_err(err)?;
        ensure(slice_fidelity(&direct, 2).map_err(err)?.is_empty(), || "direct slices differ".into())?;
        slices += check.slices_compared;
    }
    Ok(format!("{slices} slices up to (2,2)"))
}

fn criterion_5() -> Outcome {
    let cases = corpus();
    for (a, ds) in &cases {
        let b = build_multi_symbolic_rees(a, ds).map_err(err)?;
        let t = class_group_transfer(&b).map_err(err)?;
        ensure(t.class_group_a.invariant_factors() == t.class_group_b.invariant_factors(), || {
            format!("Cl(A)={} Cl(B)={}", t.class_group_a, t.class_group_b)
        })?;
        ensure(t.isomorphism && t.omega_formula && t.pde, || {
            format!("iso={} omega={} pde={}", t.isomorphism, t.omega_formula, t.pde)
        })?;
    }
    Ok(format!("{} Rees algebras", cases.len()))
}

fn criterion_6() -> Outcome {
    let v = veronese(2, 2);
    let cm = cm_decomposition_check(&v, &[veronese_p(&v)], &GradingVector::total_degree(2), 6).map_err(err)?;
    // A and P in even degree t contribute t + 1 and t monomials
    let want: Vec<u64> = (0..=6u64).map(|t| if t % 2 == 0 { 2 * t + 1 } else { 0 }).collect();
    ensure(cm.holds && cm.quotient_counts == want, || format!("{:?} vs {want:?}", cm.quotient_counts))?;
    let a = quadric();
    let (p, _) = quadric_primes(&a);
    let inf = cm_decomposition_check(&a, &[p], &GradingVector::total_degree(4), 6);
    ensure(matches!(inf, Err(Error::InfiniteOrder)), || format!("quadric: {inf:?}"))?;
    Ok("Veronese(2,2) to degree 6; quadric reports infinite order".into())
}

fn monomial_ring() -> AffineSemigroup {
    AffineSemigroup::from_i64(&[&[2, 2, 2, 2], &[3, 1, 0, 0], &[0, 3, 1, 0], &[0, 0, 3, 1], &[1, 0, 0, 3]]).unwrap()
}

fn u_ring<F: Field>(field: F, n: usize) -> PolyRing<F> {
    PolyRing::new(field, (0..n).map(|i| format!("U{i}")).collect(), MonomialOrder::GRevLex).unwrap()
}

fn criterion_7() -> Outcome {
    let a = monomial_ring();
    let rq = u_ring(RationalField, 5);
    let j = toric_ideal(&rq, a.generators()).map_err(err)?;
    let relation = parse_polynomial(&rq, "U0^2 - U1*U2*U3*U4").map_err(err)?;
    ensure(j.polynomials() == [rq.monic(&relation)], || "toric ideal is not (U0^2 - U1U2U3U4)".into())?;
    ensure(evaluate_on_map(&rq, &relation, a.generators()).map_err(err)?.is_zero(), || "relation fails".into())?;
    ensure(a.is_normal().normal, || "A not normal".into())?;

    let r = ordinary_rees(&a, &a.default_grading()).map_err(err)?;
    let verdict = r.semigroup().is_normal();
    let w = int_vec(&[2, 2, 2, 2, 2]);
    ensure(!verdict.normal && verdict.witness.as_ref() == Some(&w), || format!("witness {:?}", verdict.witness))?;
    // w is not a sum of generators, yet 2w is and w lies in the group
    ensure(!elements_up_to(r.semigroup(), 10).contains(&w), || "witness lies in R".into())?;
    ensure(elements_up_to(r.semigroup(), 20).contains(&int_vec(&[4, 4, 4, 4, 4])), || "2w not in R".into())?;
    ensure(r.semigroup().group_coordinates(&w).is_some(), || "witness outside the group".into())?;

    let f2 = PrimeField::new(2).map_err(err)?;
    let ra = u_ring(f2, 5);
    let ja = toric_ideal(&ra, a.generators()).map_err(err)?.polynomials().to_vec();
    let va = fedder_hypersurface(&ra, &ja[0], 2).map_err(err)?;
    ensure(va.f_pure && recheck_hypersurface(&ra, &ja[0], &va), || "A not certified F-pure".into())?;
    let rr = u_ring(f2, r.generators().len());
    let jr = toric_ideal(&rr, r.generators()).map_err(err)?.polynomials().to_vec();
    let vr = fedder_general(&rr, &jr, 2).map_err(err)?;
    ensure(!vr.f_pure && recheck_general(&rr, &jr, &vr), || "R not certified non-F-pure".into())?;
    Ok(format!("R presented by {} relations in {} variables", jr.len(), r.generators().len()))
}

fn criterion_8() -> Outcome {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // a = deg f - sum of weights for a quasi-homogeneous hypersurface
    let formula = |w: &[i64], d: i64| BigInt::from(d - w.iter().sum::<i64>());
    let gr = a_invariant_hypersurface(&ints(&[1, 1, 1, 1]), &BigInt::from(2)).map_err(err)?;
    let s = a_invariant_hypersurface(&ints(&[15, 8, 1, 6]), &BigInt::from(30)).map_err(err)?;
    ensure(gr == formula(&[1, 1, 1, 1], 2) && gr == BigInt::from(-2), || format!("a(gr)={gr}"))?;
    ensure(s == formula(&[15, 8, 1, 6], 30) && s == BigInt::from(0), || format!("a(S)={s}"))?;
    let names = ["U1", "U2", "U3", "Z"].map(String::from).to_vec();
    let rq = PolyRing::new(RationalField, names, MonomialOrder::GRevLex).unwrap();
    let sf = parse_polynomial(&rq, "U1^2 + U2^3*Z + U3^6*Z^4 + Z^5").map_err(err)?;
    ensure(rq.is_quasi_homogeneous(&sf, &ints(&[15, 8, 1, 6]), &BigInt::from(30)), || "S not homogeneous".into())?;

    let names = ["W", "X", "Y", "Z"].map(String::from).to_vec();
    let r = PolyRing::new(PrimeField::new(7).map_err(err)?, names, MonomialOrder::GRevLex).unwrap();
    let f = parse_polynomial(&r, "W^2 + X^3 + Y^6 + Z^7").map_err(err)?;
    let v = fedder_hypersurface(&r, &f, 7).map_err(err)?;
    // terms of f^6 below m^[7]: W^(2a) X^(3b) Y^(6c) Z^(7d), a+b+c+d = 6
    let fact = |n: u64| (1..=n).product::<u64>();
    let mut outside = Vec::new();
    for a in 0..=6u64 {
        for b in 0..=6 - a {
            for c in 0..=6 - a - b {
                let d = 6 - a - b - c;
                if 2 * a < 7 && 3 * b < 7 && 6 * c < 7 && 7 * d < 7 {
                    outside.push((a, b, c, fact(6) / (fact(a) * fact(b) * fact(c) * fact(d))));
                }
            }
        }
    }
    ensure(outside == [(3, 2, 1, 60)], || format!("oracle terms {outside:?}"))?;
    let want = Certificate::Monomial {
        exponents: vec![6, 6, 6, 0],
        coefficient: 60 % 7,
    };
    ensure(v.f_pure && v.certificate == want && recheck_hypersurface(&r, &f, &v), || format!("{:?}", v.certificate))?;
    Ok("a(gr) = -2, a(S) = 0, certificate W^6X^6Y^6 with coefficient 4".into())
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

fn criterion_9() -> Outcome {
    for d in [2usize, 3] {
        let a = AffineSemigroup::polynomial(d);
        let g = GradingVector::total_degree(d);
        let r = ordinary_rees(&a, &g).map_err(err)?;
        let lhs = hilbert_function(r.semigroup(), &g.extended(1), 8).map_err(err)?;
        let seg = segre_product(&a, &g, &AffineSemigroup::polynomial(2), &GradingVector::total_degree(2)).map_err(err)?;
        let rhs = hilbert_function(&seg, &segre_grading(&g, 2), 8).map_err(err)?;
        let closed: Vec<u64> = (0..=8u64).map(|t| binomial(t + d as u64 - 1, d as u64 - 1) * (t + 1)).collect();
        ensure(lhs.counts == rhs.counts && rhs.counts == closed, || {
            format!("d={d}: {:?} vs {:?} vs {closed:?}", lhs.counts, rhs.counts)
        })?;
    }
    Ok("K[x,y] and K[x,y,z] to degree 8".into())
}

fn random_fedder_ideal(rng: &mut StdRng, r: &PolyRing<PrimeField>) -> Vec<Poly<PrimeField>> {
    let n = r.nvars();
    (0..rng.gen_range(1..=2))
        .map(|_| {
            let terms: Vec<(Vec<u32>, i64)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    if e.iter().all(|&x| x == 0) {
                        e[0] = 1;
                    }
                    (e, rng.gen_range(1..=4))
                })
                .collect();
            r.from_integer_terms(&terms)
        })
        .filter(|g| !g.is_zero())
        .collect()
}

fn shuffled(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        check_smith(&m)?;
    }
    let mut cones = 0;
    while cones < 50 {
        let d = rng.gen_range(2..=4);
        let gens: Vec<IntVec> = (0..rng.gen_range(d..=d + 2))
            .map(|_| (0..d).map(|_| rng.gen_range(0..=3)).collect::<Vec<i64>>())
            .filter(|g| g.iter().any(|&x| x != 0))
            .map(|g| int_vec(&g))
            .collect();
        if gens.is_empty() {
            continue;
        }
        check_hilbert_basis(d, &gens, rng.gen(), if d == 4 { 8 } else { 12 })?;
        cones += 1;
    }
    let a = quadric();
    let mut compared = check_symbolic_powers(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])], 8, 4)?;
    compared += check_symbolic_powers(&a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0])], 8, 4)?;
    let v = veronese(2, 2);
    compared += check_symbolic_powers(&v, &[int_vec(&[2, 0]), int_vec(&[1, 1])], 12, 6)?;

    let mut fedder = 0;
    for p in [2u64, 3, 5] {
        let r = PolyRing::with_variables(PrimeField::new(p).map_err(err)?, 3);
        for _ in 0..20 {
            let j = random_fedder_ideal(&mut rng, &r);
            if j.is_empty() {
                continue;
            }
            let perm = shuffled(&mut rng, 3);
            let permuted: Vec<_> = j.iter().map(|g| r.substitute_variables(g, &perm)).collect();
            let x = fedder_general(&r, &j, p).map_err(err)?.f_pure;
            let y = fedder_general(&r, &permuted, p).map_err(err)?.f_pure;
            ensure(x == y, || format!("p={p} {j:?} under {perm:?}"))?;
            fedder += 1;
        }
    }
    // the ten-variable presentation of R under random relabelings
    let m = monomial_ring();
    let rees = ordinary_rees(&m, &m.default_grading()).map_err(err)?;
    let rr = u_ring(PrimeField::new(2).map_err(err)?, 10);
    let jr = toric_ideal(&rr, rees.generators()).map_err(err)?.polynomials().to_vec();
    for _ in 0..3 {
        let perm = shuffled(&mut rng, 10);
        let permuted: Vec<_> = jr.iter().map(|g| rr.substitute_variables(g, &perm)).collect();
        ensure(!fedder_general(&rr, &permuted, 2).map_err(err)?.f_pure, || format!("R F-pure under {perm:?}"))?;
        fedder += 1;
    }
    Ok(format!(
        "200 matrices, 50 cones, {compared} symbolic-power memberships, {fedder} Fedder permutations"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(60)),
        (2, criterion_2, Some(10)),
        (3, criterion_3, Some(30)),
        (4, criterion_4, Some(30)),
        (5, criterion_5, None),
        (6, criterion_6, None),
        (7, criterion_7, Some(120)),
        (8, criterion_8, Some(5)),
        (9, criterion_9, None),
        (10, criterion_10, Some(120)),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let late = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let limit_text = limit.map_or("no limit".to_string(), |s| format!("limit {s}s"));
        let (status, detail) = match (&outcome, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n}: {status} ({:.2}s, {limit_text}) {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
