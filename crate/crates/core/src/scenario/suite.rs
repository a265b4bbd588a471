use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::divisor::{class_group, prime_divisor, symbolic_power, MonomialDivisor};
use crate::error::{Error, Result};
use crate::lattice::{int_vec, IntVec};
use crate::poly::{
    fedder_general, fedder_hypersurface, parse_polynomial, recheck_general, recheck_hypersurface, toric_ideal,
    Certificate, MonomialOrder, PolyRing, PrimeField, RationalField,
};
use crate::rees::{
    build_multi_symbolic_rees, class_group_transfer, cm_decomposition_check, is_quasi_gorenstein,
    iterated_isomorphism_check, ordinary_rees,
};
use crate::semigroup::{
    a_invariant_hypersurface, format_vector, hilbert_function, segre_grading, segre_product, veronese_subsemigroup, AffineSemigroup,
    GradingVector,
};

/// Filters accepted by [`paper_examples`].
pub const SUITE_TAGS: [&str; 3] = ["s3", "s4", "s6"];

/// One verified claim of the built-in suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub tag: &'static str,
    /// Where the claim is stated, e.g. `s4 example 1`.
    pub location: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub filter: Option<String>,
    pub passed_count: usize,
    pub failed_count: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed_count == 0
    }
}

type Outcome = Result<(bool, String)>;

struct Entry {
    id: &'static str,
    tag: &'static str,
    location: &'static str,
    claim: &'static str,
    run: fn() -> Outcome,
}

const ENTRIES: &[Entry] = &[
    Entry {
        id: "quadric-frontier",
        tag: "s4",
        location: "s4 example 1",
        claim: "Cl(B) = Z and B is Gorenstein iff n = m, for 1 <= n, m <= 3",
        run: quadric_frontier,
    },
    Entry {
        id: "veronese-class-group",
        tag: "s4",
        location: "s4 example 2",
        claim: "Cl(K[X_1..X_m]^(n)) = Z/n",
        run: veronese_class_group,
    },
    Entry {
        id: "veronese-membership",
        tag: "s4",
        location: "s4 example 2",
        claim: "a monomial lies in P^(t) iff X_1^t divides it and n divides its degree",
        run: veronese_membership,
    },
    Entry {
        id: "veronese-rees-structure",
        tag: "s4",
        location: "s4 example 2",
        claim: "R_s(P^(a)) is the n-th Veronese of K[X_1..X_m, X_1^a U] with U of weight zero",
        run: veronese_rees_structure,
    },
    Entry {
        id: "iterated-construction",
        tag: "s3",
        location: "s3 proposition (natural isomorphism) and iteration corollary",
        claim: "iterated and direct multi-symbolic Rees algebras agree",
        run: iterated_construction,
    },
    Entry {
        id: "class-group-transfer",
        tag: "s3",
        location: "s3 class group theorem",
        claim: "Cl(B) = Cl(A), [omega_B] = i([omega_A] + sum [I_i]), PDE holds",
        run: class_transfer,
    },
    Entry {
        id: "finite-order-decomposition",
        tag: "s3",
        location: "s3 finite-order theorem",
        claim: "B/(x_i U_i^a_i) decomposes into reflexive products; inapplicable for infinite order",
        run: finite_order,
    },
    Entry {
        id: "monomial-ring-hypersurface",
        tag: "s6",
        location: "s6 example 1",
        claim: "A is the hypersurface U_0^2 - U_1 U_2 U_3 U_4",
        run: monomial_ring_hypersurface,
    },
    Entry {
        id: "rees-not-normal",
        tag: "s6",
        location: "s6 example 1",
        claim: "A is normal, A[mT] is not, witness W^2X^2Y^2Z^2T^2",
        run: rees_not_normal,
    },
    Entry {
        id: "rees-not-f-pure",
        tag: "s6",
        location: "s6 example 1",
        claim: "in characteristic 2, A is F-pure and A[mT] is not",
        run: rees_not_f_pure,
    },
    Entry {
        id: "a-invariants",
        tag: "s6",
        location: "s6 example 2",
        claim: "a(K[W,X,Y,Z]/(W^2)) = -2 and a(S) = 0 for weights 15, 8, 1, 6",
        run: a_invariants,
    },
    Entry {
        id: "hypersurface-f-pure",
        tag: "s6",
        location: "s6 example 2",
        claim: "W^2+X^3+Y^6+Z^7 is F-pure at p = 7, certificate W^6X^6Y^6",
        run: hypersurface_f_pure,
    },
    Entry {
        id: "rees-segre",
        tag: "s6",
        location: "s6 proposition",
        claim: "A[mT] is the Segre product A # K[S,T]",
        run: rees_segre,
    },
];

/// Runs the built-in suite, optionally restricted to one tag.
pub fn paper_examples(only: Option<&str>) -> Result<SuiteReport> {
    if let Some(tag) = only {
        if !SUITE_TAGS.contains(&tag) {
            return Err(Error::InvalidInput(format!(
                "unknown filter '{tag}'; valid filters: {}",
                SUITE_TAGS.join(", ")
            )));
        }
    }
    let mut checks = Vec::new();
    for e in ENTRIES.iter().filter(|e| only.is_none_or(|t| t == e.tag)) {
        let start = Instant::now();
        let (passed, detail) = match (e.run)() {
            Ok(x) => x,
            Err(err) => (false, format!("error: {err}")),
        };
        checks.push(Check {
            id: e.id,
            tag: e.tag,
            location: e.location,
            claim: e.claim,
            passed,
            detail,
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    let passed_count = checks.iter().filter(|c| c.passed).count();
    Ok(SuiteReport {
        filter: only.map(str::to_string),
        passed_count,
        failed_count: checks.len() - passed_count,
        checks,
    })
}

fn quadric() -> AffineSemigroup {
    AffineSemigroup::from_i64(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).expect("quadric")
}

/// `P = (ax, ay)` and `Q = (ax, bx)` in coordinates `(a, b, x, y)`.
fn quadric_primes(a: &AffineSemigroup) -> Result<(MonomialDivisor, MonomialDivisor)> {
    let p = prime_divisor(a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[1, 0, 0, 1])])?;
    let q = prime_divisor(a, &[int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0])])?;
    Ok((p, q))
}

fn veronese(m: usize, n: u64) -> Result<AffineSemigroup> {
    veronese_subsemigroup(&AffineSemigroup::polynomial(m), &GradingVector::total_degree(m), n)
}

/// The prime `X_1 K[X] ∩ A`: generated by the generators divisible by `X_1`.
fn veronese_prime(a: &AffineSemigroup) -> Result<MonomialDivisor> {
    let gens: Vec<IntVec> = a
        .generators()
        .iter()
        .filter(|g| g[0] > BigInt::from(0))
        .cloned()
        .collect();
    prime_divisor(a, &gens)
}

const VERONESE_CASES: [(usize, u64); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

fn quadric_frontier() -> Outcome {
    let a = quadric();
    let (p, q) = quadric_primes(&a)?;
    let mut bad = Vec::new();
    for n in 1..=3usize {
        for m in 1..=3usize {
            let mut ds = vec![p.clone(); n];
            ds.extend(vec![q.clone(); m]);
            let b = build_multi_symbolic_rees(&a, &ds)?;
            let cl = class_group_transfer(&b)?.class_group_b;
            let qg = is_quasi_gorenstein(&b)?;
            if cl.to_string() != "Z" || qg != (n == m) {
                bad.push(format!("(n,m)=({n},{m}): Cl(B)={cl}, quasi-Gorenstein={qg}"));
            }
        }
    }
    Ok(summary(bad, "9 cases"))
}

fn summary(bad: Vec<String>, what: &str) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{what} agree"))
    } else {
        (false, bad.join("; "))
    }
}

fn veronese_class_group() -> Outcome {
    let mut bad = Vec::new();
    for (m, n) in VERONESE_CASES {
        let cl = class_group(&veronese(m, n)?)?;
        if cl.to_string() != format!("Z/{n}") {
            bad.push(format!("(m,n)=({m},{n}): Cl={cl}"));
        }
    }
    Ok(summary(bad, "4 Veronese rings"))
}

/// Exponent vectors in `N^m` of total degree `t`.
fn monomials_of_degree(m: usize, t: usize) -> Vec<IntVec> {
    if m == 0 {
        return if t == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in monomials_of_degree(m - 1, t - first) {
            rest.insert(0, BigInt::from(first));
            out.push(rest);
        }
    }
    out
}

fn veronese_membership() -> Outcome {
    let mut bad = Vec::new();
    let mut tested = 0usize;
    for (m, n) in VERONESE_CASES {
        let a = veronese(m, n)?;
        let p = veronese_prime(&a)?;
        for t in 1..=3u64 {
            let ideal = symbolic_power(&a, &p, t)?;
            for d in 0..=12usize {
                for u in monomials_of_degree(m, d) {
                    tested += 1;
                    let rule = u[0] >= BigInt::from(t) && (d as u64).is_multiple_of(n);
                    if ideal.generated_contains(&a, &u) != rule {
                        bad.push(format!("(m,n)=({m},{n}) t={t} u={u:?}"));
                    }
                }
            }
        }
    }
    Ok(summary(bad, &format!("{tested} monomial memberships")))
}

/// Number of `(e, k)` with `e ∈ N^m`, `|e| + a*k = d`.
fn extended_polynomial_count(m: usize, a: u64, d: u64) -> u64 {
    (0..=d / a)
        .map(|k| monomials_of_degree(m, (d - a * k) as usize).len() as u64)
        .sum()
}

fn veronese_rees_structure() -> Outcome {
    let mut bad = Vec::new();
    for (m, n) in VERONESE_CASES {
        let a = veronese(m, n)?;
        let p = veronese_prime(&a)?;
        for alpha in 1..=2u64 {
            let b = build_multi_symbolic_rees(&a, &[p.scale(&BigInt::from(alpha))])?;
            let g = GradingVector::total_degree(m).extended(1);
            let max = 8 * n as usize;
            let hf = hilbert_function(b.semigroup(), &g, max)?;
            for d in 0..=max as u64 {
                let expected = if d % n == 0 { extended_polynomial_count(m, alpha, d) } else { 0 };
                if hf.counts[d as usize] != expected {
                    bad.push(format!(
                        "(m,n)=({m},{n}) a={alpha} degree {d}: {} vs {expected}",
                        hf.counts[d as usize]
                    ));
                }
            }
        }
    }
    Ok(summary(bad, "Hilbert functions of 8 Rees algebras to 8 Veronese degrees"))
}

fn iterated_construction() -> Outcome {
    let a = quadric();
    let (p, q) = quadric_primes(&a)?;
    let v = veronese(2, 2)?;
    let pv = veronese_prime(&v)?;
    let mut bad = Vec::new();
    for (name, ring, ds) in [("quadric (P,Q)", &a, vec![p, q]), ("Veronese (P,P)", &v, vec![pv.clone(), pv])] {
        let check = iterated_isomorphism_check(ring, &ds, 2)?;
        if !check.holds {
            bad.push(format!("{name}: mismatched slices {:?}", check.mismatches));
        }
    }
    Ok(summary(bad, "slices up to (2,2) on 2 corpora"))
}

/// Every multi-symbolic Rees algebra the suite builds.
fn corpus() -> Result<Vec<(String, AffineSemigroup, Vec<MonomialDivisor>)>> {
    let mut out = Vec::new();
    let a = quadric();
    let (p, q) = quadric_primes(&a)?;
    for n in 1..=3usize {
        for m in 1..=3usize {
            let mut ds = vec![p.clone(); n];
            ds.extend(vec![q.clone(); m]);
            out.push((format!("quadric n={n} m={m}"), a.clone(), ds));
        }
    }
    for (m, n) in VERONESE_CASES {
        let v = veronese(m, n)?;
        let pv = veronese_prime(&v)?;
        let two = pv.scale(&BigInt::from(2));
        out.push((format!("Veronese({m},{n}) (P)"), v.clone(), vec![pv.clone()]));
        out.push((format!("Veronese({m},{n}) (P^(2))"), v.clone(), vec![two]));
        out.push((format!("Veronese({m},{n}) (P,P)"), v, vec![pv.clone(), pv]));
    }
    Ok(out)
}

fn class_transfer() -> Outcome {
    let mut bad = Vec::new();
    let cases = corpus()?;
    for (name, a, ds) in &cases {
        let t = class_group_transfer(&build_multi_symbolic_rees(a, ds)?)?;
        if !(t.isomorphism && t.omega_formula && t.pde) {
            bad.push(format!(
                "{name}: iso={} omega={} pde={}",
                t.isomorphism, t.omega_formula, t.pde
            ));
        }
    }
    Ok(summary(bad, &format!("{} Rees algebras", cases.len())))
}

fn finite_order() -> Outcome {
    let v = veronese(2, 2)?;
    let pv = veronese_prime(&v)?;
    let cm = cm_decomposition_check(&v, &[pv], &GradingVector::total_degree(2), 6)?;
    let a = quadric();
    let (p, _) = quadric_primes(&a)?;
    let inf = cm_decomposition_check(&a, &[p], &GradingVector::total_degree(4), 6);
    let infinite = matches!(inf, Err(Error::InfiniteOrder));
    Ok((
        cm.holds && infinite,
        format!(
            "Veronese(2,2) counts {:?} vs {:?}; quadric reports infinite order: {infinite}",
            cm.quotient_counts, cm.decomposition_counts
        ),
    ))
}

/// Generators of the monomial ring, with `W^2X^2Y^2Z^2` first.
fn monomial_ring() -> AffineSemigroup {
    AffineSemigroup::from_i64(&[&[2, 2, 2, 2], &[3, 1, 0, 0], &[0, 3, 1, 0], &[0, 0, 3, 1], &[1, 0, 0, 3]])
        .expect("monomial ring")
}

fn u_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("U{i}")).collect()
}

fn monomial_ring_hypersurface() -> Outcome {
    let a = monomial_ring();
    let r = PolyRing::new(RationalField, u_names(5), MonomialOrder::GRevLex)?;
    let j = toric_ideal(&r, a.generators())?;
    let expected = parse_polynomial(&r, "U0^2 - U1*U2*U3*U4")?;
    let found: Vec<String> = j.polynomials().iter().map(|f| r.format(f)).collect();
    let ok = j.polynomials().len() == 1 && r.monic(&expected) == j.polynomials()[0];
    Ok((ok, format!("toric ideal generators: {}", found.join(", "))))
}

fn rees_not_normal() -> Outcome {
    let a = monomial_ring();
    let normal_a = a.is_normal().normal;
    let r = ordinary_rees(&a, &a.default_grading())?;
    let verdict = r.semigroup().is_normal();
    let ok = normal_a && !verdict.normal && verdict.witness == Some(int_vec(&[2, 2, 2, 2, 2]));
    let witness = verdict.witness.as_deref().map_or("none".to_string(), format_vector);
    Ok((ok, format!("A normal: {normal_a}; A[mT] witness {witness}")))
}

fn rees_not_f_pure() -> Outcome {
    let field = PrimeField::new(2)?;
    let a = monomial_ring();
    let ra = PolyRing::new(field, u_names(5), MonomialOrder::GRevLex)?;
    let ja = toric_ideal(&ra, a.generators())?.polynomials().to_vec();
    let va = fedder_hypersurface(&ra, &ja[0], 2)?;
    let a_ok = ja.len() == 1 && va.f_pure && recheck_hypersurface(&ra, &ja[0], &va);
    let r = ordinary_rees(&a, &a.default_grading())?;
    let rr = PolyRing::new(field, u_names(r.generators().len()), MonomialOrder::GRevLex)?;
    let jr = toric_ideal(&rr, r.generators())?.polynomials().to_vec();
    let vr = fedder_general(&rr, &jr, 2)?;
    let r_ok = !vr.f_pure && recheck_general(&rr, &jr, &vr);
    Ok((
        a_ok && r_ok,
        format!(
            "A F-pure: {}; A[mT] ({} variables, {} relations) F-pure: {}",
            va.f_pure,
            r.generators().len(),
            jr.len(),
            vr.f_pure
        ),
    ))
}

fn a_invariants() -> Outcome {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let gr = a_invariant_hypersurface(&ints(&[1, 1, 1, 1]), &BigInt::from(2))?;
    let names = ["U1", "U2", "U3", "Z"].map(String::from).to_vec();
    let r = PolyRing::new(RationalField, names, MonomialOrder::GRevLex)?;
    let f = parse_polynomial(&r, "U1^2 + U2^3*Z + U3^6*Z^4 + Z^5")?;
    let weights = ints(&[15, 8, 1, 6]);
    let deg = BigInt::from(30);
    let homogeneous = r.is_quasi_homogeneous(&f, &weights, &deg);
    let s = a_invariant_hypersurface(&weights, &deg)?;
    let ok = homogeneous && gr == BigInt::from(-2) && s == BigInt::from(0);
    Ok((ok, format!("a(gr) = {gr}, a(S) = {s}, S quasi-homogeneous of degree 30: {homogeneous}")))
}

fn hypersurface_f_pure() -> Outcome {
    let names = ["W", "X", "Y", "Z"].map(String::from).to_vec();
    let r = PolyRing::new(PrimeField::new(7)?, names, MonomialOrder::GRevLex)?;
    let f = parse_polynomial(&r, "W^2 + X^3 + Y^6 + Z^7")?;
    let v = fedder_hypersurface(&r, &f, 7)?;
    let ok = v.f_pure
        && recheck_hypersurface(&r, &f, &v)
        && v.certificate
            == Certificate::Monomial {
                exponents: vec![6, 6, 6, 0],
                coefficient: 60 % 7,
            };
    Ok((ok, format!("{:?}", v.certificate)))
}

fn rees_segre() -> Outcome {
    let mut bad = Vec::new();
    for d in [2usize, 3] {
        let a = AffineSemigroup::polynomial(d);
        let g = GradingVector::total_degree(d);
        let r = ordinary_rees(&a, &g)?;
        let lhs = hilbert_function(r.semigroup(), &g.extended(1), 8)?;
        let st = AffineSemigroup::polynomial(2);
        let seg = segre_product(&a, &g, &st, &GradingVector::total_degree(2))?;
        let rhs = hilbert_function(&seg, &segre_grading(&g, 2), 8)?;
        if lhs.counts != rhs.counts {
            bad.push(format!("d={d}: {:?} vs {:?}", lhs.counts, rhs.counts));
        }
    }
    Ok(summary(bad, "Hilbert functions to degree 8 for 2 and 3 variables"))
}
