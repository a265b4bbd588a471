use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use super::suite::paper_examples;
use super::{RingDef, RingKind, Scenario, Task, TaskKind};
use crate::divisor::{canonical_divisor, class_group, class_of, symbolic_power, MonomialDivisor};
use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::poly::{
    fedder_general, fedder_hypersurface, parse_polynomial, recheck_general, recheck_hypersurface, toric_ideal,
    Certificate, FrobeniusVerdict, Monomial, MonomialOrder, Poly, PolyRing, PrimeField,
};
use crate::rees::{
    build_multi_symbolic_rees, class_group_transfer, cm_decomposition_check, is_quasi_gorenstein,
    iterated_isomorphism_check, ordinary_rees, verify_krull_normal,
};
use crate::semigroup::{a_invariant_hypersurface, a_invariant_normal, AffineSemigroup, GradingVector};

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: &str = "torees-report/1";

/// Overrides applied on top of a scenario.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replaces the scenario's `char` line.
    pub characteristic: Option<u64>,
    /// Default degree bound for tasks that enumerate by degree.
    pub max_degree: Option<usize>,
}

const DEFAULT_MAX_DEGREE: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub line: usize,
    pub task: String,
    pub kind: &'static str,
    /// `ok`, `failed` (a check inside the task failed) or `error`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub scenario: Option<String>,
    pub characteristic: Option<u64>,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    /// True when every task finished with status `ok`.
    pub fn passed(&self) -> bool {
        self.tasks.iter().all(|t| t.status == "ok")
    }

    /// Pretty JSON; with `timing` off, every `elapsed_ms` is written as 0.
    pub fn to_json(&self, timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if !timing {
            strip_timing(&mut value);
        }
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "elapsed_ms" {
                    *x = json!(0);
                } else {
                    strip_timing(x);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Runs every task, concurrently, and assembles the report in task order.
/// Task errors are recorded in the report rather than returned.
pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Report {
    let characteristic = options.characteristic.or(scenario.characteristic);
    let tasks = std::thread::scope(|scope| {
        let handles: Vec<_> = scenario
            .tasks
            .iter()
            .enumerate()
            .map(|(i, task)| scope.spawn(move || run_task(scenario, options, characteristic, i, task)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("task thread panicked"))
            .collect()
    });
    Report {
        schema: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        scenario: scenario.name.clone(),
        characteristic,
        tasks,
    }
}

fn run_task(scenario: &Scenario, options: &RunOptions, p: Option<u64>, index: usize, task: &Task) -> TaskReport {
    let start = Instant::now();
    let ctx = Context { scenario, options, p };
    let outcome = ctx.dispatch(&task.kind);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (status, result, error) = match outcome {
        Ok((value, true)) => ("ok", Some(value), None),
        Ok((value, false)) => ("failed", Some(value), None),
        Err(e) => ("error", None, Some(e.to_string())),
    };
    TaskReport {
        index,
        line: task.line,
        task: task.source.clone(),
        kind: task.kind.label(),
        status,
        result,
        error,
        elapsed_ms,
    }
}

struct Context<'a> {
    scenario: &'a Scenario,
    options: &'a RunOptions,
    p: Option<u64>,
}

/// `a^2*x`, with `1` for the zero vector.
pub(crate) fn format_monomial(names: &[String], v: &[BigInt]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(v)
        .filter(|(_, e)| **e != BigInt::from(0))
        .map(|(n, e)| if *e == BigInt::from(1) { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Names for `Z^(d + k)`: the ring's variables, then `T1..Tk`.
fn rees_names(def: &RingDef, k: usize) -> Vec<String> {
    let mut names = def.variables.clone();
    names.extend((1..=k).map(|i| if k == 1 { "T".to_string() } else { format!("T{i}") }));
    names
}

impl Context<'_> {
    fn ring(&self, name: &str) -> Result<(&RingDef, &AffineSemigroup)> {
        let def = self
            .scenario
            .ring(name)
            .ok_or_else(|| Error::InvalidInput(format!("undefined ring '{name}'")))?;
        match &def.kind {
            RingKind::Monomial(s) => Ok((def, s)),
            RingKind::Hypersurface { .. } => Err(Error::InvalidInput(format!("'{name}' is not a monomial ring"))),
        }
    }

    fn divisor(&self, name: &str) -> Result<&MonomialDivisor> {
        self.scenario
            .divisor(name)
            .map(|d| &d.divisor)
            .ok_or_else(|| Error::InvalidInput(format!("undefined divisor '{name}'")))
    }

    fn monomials(&self, names: &[String], vs: &[IntVec]) -> Vec<String> {
        vs.iter().map(|v| format_monomial(names, v)).collect()
    }

    fn dispatch(&self, kind: &TaskKind) -> Result<(Value, bool)> {
        match kind {
            TaskKind::ClassGroup { ring } => self.class_group(ring).map(|v| (v, true)),
            TaskKind::Normality { ring } => {
                let (def, s) = self.ring(ring)?;
                let verdict = s.is_normal();
                Ok((
                    json!({
                        "ring": ring,
                        "generators": self.monomials(&def.variables, s.generators()),
                        "normal": verdict.normal,
                        "witness": verdict.witness.as_ref().map(|w| format_monomial(&def.variables, w)),
                        "witness_exponent": verdict.witness.as_ref().map(|w| strings(w)),
                    }),
                    true,
                ))
            }
            TaskKind::SymbolicPower { ring, divisor, n } => {
                let (def, s) = self.ring(ring)?;
                let ideal = symbolic_power(s, self.divisor(divisor)?, *n)?;
                Ok((
                    json!({
                        "ring": ring,
                        "divisor": divisor,
                        "exponent": n,
                        "coefficients": ideal.divisor,
                        "generators": self.monomials(&def.variables, &ideal.generators),
                    }),
                    true,
                ))
            }
            TaskKind::Rees { ring, divisors } => self.rees(ring, divisors).map(|v| (v, true)),
            TaskKind::OrdinaryRees { ring } => {
                let (def, s) = self.ring(ring)?;
                let r = ordinary_rees(s, &s.default_grading())?;
                let names = rees_names(def, 1);
                let verdict = r.semigroup().is_normal();
                Ok((
                    json!({
                        "ring": ring,
                        "construction": "A[mT]",
                        "generators": self.monomials(&names, r.generators()),
                        "normal": verdict.normal,
                        "witness": verdict.witness.as_ref().map(|w| format_monomial(&names, w)),
                        "witness_exponent": verdict.witness.as_ref().map(|w| strings(w)),
                    }),
                    true,
                ))
            }
            TaskKind::Iterated { ring, divisors, bound } => {
                let (_, s) = self.ring(ring)?;
                let ds = divisors.iter().map(|d| self.divisor(d).cloned()).collect::<Result<Vec<_>>>()?;
                let check = iterated_isomorphism_check(s, &ds, *bound)?;
                let mismatches: Vec<String> = check
                    .mismatches
                    .iter()
                    .map(|m| m.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                Ok((
                    json!({
                        "ring": ring,
                        "divisors": divisors,
                        "bound": bound,
                        "holds": check.holds,
                        "same_generators": check.same_generators,
                        "slices_compared": check.slices_compared,
                        "extended_divisor": check.extended_divisor,
                        "mismatches": mismatches,
                    }),
                    check.holds,
                ))
            }
            TaskKind::CmCheck { ring, divisors, degree } => {
                let (def, s) = self.ring(ring)?;
                let ds = divisors.iter().map(|d| self.divisor(d).cloned()).collect::<Result<Vec<_>>>()?;
                let degree = degree.or(self.options.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
                match cm_decomposition_check(s, &ds, &s.default_grading(), degree) {
                    Ok(cm) => Ok((
                        json!({
                            "ring": ring,
                            "divisors": divisors,
                            "applicable": true,
                            "max_degree": degree,
                            "orders": cm.orders,
                            "principal_generators": self.monomials(&def.variables, &cm.principal_generators),
                            "quotient_counts": cm.quotient_counts,
                            "decomposition_counts": cm.decomposition_counts,
                            "holds": cm.holds,
                        }),
                        cm.holds,
                    )),
                    Err(Error::InfiniteOrder) => Ok((
                        json!({
                            "ring": ring,
                            "divisors": divisors,
                            "applicable": false,
                            "reason": Error::InfiniteOrder.to_string(),
                        }),
                        true,
                    )),
                    Err(e) => Err(e),
                }
            }
            TaskKind::Fedder { ring, rees } => self.fedder(ring, *rees).map(|v| (v, true)),
            TaskKind::AInvariant { ring, weights } => self.a_invariant(ring, weights.as_deref()).map(|v| (v, true)),
            TaskKind::PaperExamples { only } => {
                let suite = paper_examples(only.as_deref())?;
                let passed = suite.passed();
                Ok((serde_json::to_value(&suite).expect("suite serializes"), passed))
            }
        }
    }

    fn class_group(&self, ring: &str) -> Result<Value> {
        let (def, s) = self.ring(ring)?;
        let cl = class_group(s)?;
        let omega = class_of(s, &canonical_divisor(s)?)?;
        let mut classes = serde_json::Map::new();
        for d in self.scenario.divisors.iter().filter(|d| d.ring == ring) {
            classes.insert(d.name.clone(), json!(class_of(s, &d.divisor)?.to_string()));
        }
        let facets: Vec<Vec<String>> = s.facet_functionals().iter().map(|f| strings(f)).collect();
        Ok(json!({
            "ring": ring,
            "generators": self.monomials(&def.variables, s.generators()),
            "group": cl.to_string(),
            "invariant_factors": strings(cl.invariant_factors()),
            "free_rank": cl.free_rank(),
            "facet_functionals": facets,
            "canonical_class": omega.to_string(),
            "divisor_classes": classes,
        }))
    }

    fn rees(&self, ring: &str, ranges: &[super::DivisorRange]) -> Result<Value> {
        let (def, s) = self.ring(ring)?;
        let mut counts: Vec<u64> = ranges.iter().map(|r| r.low).collect();
        let mut cases = Vec::new();
        loop {
            let mut divisors = Vec::new();
            let mut multiplicities = serde_json::Map::new();
            for (r, &c) in ranges.iter().zip(&counts) {
                let d = self.divisor(&r.name)?;
                divisors.extend(std::iter::repeat_n(d.clone(), c as usize));
                multiplicities.insert(r.name.clone(), json!(c));
            }
            let b = build_multi_symbolic_rees(s, &divisors)?;
            let transfer = class_group_transfer(&b)?;
            let names = rees_names(def, b.k());
            let mut case = json!({
                "multiplicities": multiplicities,
                "generator_count": b.generators().len(),
                "normal": verify_krull_normal(&b),
                "class_group": transfer.class_group_b.to_string(),
                "class_group_base": transfer.class_group_a.to_string(),
                "class_map_well_defined": transfer.well_defined,
                "class_map_surjective": transfer.surjective,
                "class_map_isomorphism": transfer.isomorphism,
                "canonical_class": transfer.omega_b.to_string(),
                "canonical_formula_image": transfer.omega_formula_image.to_string(),
                "canonical_formula": transfer.omega_formula,
                "contraction_heights": transfer.contraction_heights,
                "pde": transfer.pde,
                "quasi_gorenstein": is_quasi_gorenstein(&b)?,
            });
            if b.generators().len() <= 64 {
                case["generators"] = json!(self.monomials(&names, b.generators()));
            }
            cases.push(case);
            let mut k = ranges.len();
            loop {
                if k == 0 {
                    return Ok(json!({ "ring": ring, "cases": cases }));
                }
                k -= 1;
                counts[k] += 1;
                if counts[k] <= ranges[k].high {
                    break;
                }
                counts[k] = ranges[k].low;
            }
        }
    }

    fn fedder(&self, ring: &str, rees: bool) -> Result<Value> {
        let p = self
            .p
            .ok_or_else(|| Error::InvalidInput("fedder needs a characteristic ('char' line or --char)".into()))?;
        if p == 0 {
            return Err(Error::InvalidInput("fedder needs a positive characteristic".into()));
        }
        let field = PrimeField::new(p)?;
        let def = self
            .scenario
            .ring(ring)
            .ok_or_else(|| Error::InvalidInput(format!("undefined ring '{ring}'")))?;
        match &def.kind {
            RingKind::Hypersurface { text, .. } => {
                let r = PolyRing::new(field, def.variables.clone(), MonomialOrder::GRevLex)?;
                let f = parse_polynomial(&r, text)?;
                let verdict = fedder_hypersurface(&r, &f, p)?;
                let recheck = recheck_hypersurface(&r, &f, &verdict);
                Ok(json!({
                    "ring": ring,
                    "p": p,
                    "relations": [r.format(&f)],
                    "f_pure": verdict.f_pure,
                    "certificate": certificate_json(&r, &[f], &verdict),
                    "recheck": recheck,
                }))
            }
            RingKind::Monomial(s) => {
                let (gens, names) = if rees {
                    let r = ordinary_rees(s, &s.default_grading())?;
                    (r.generators().to_vec(), rees_names(def, 1))
                } else {
                    (s.generators().to_vec(), def.variables.clone())
                };
                let vars: Vec<String> = (0..gens.len()).map(|i| format!("U{i}")).collect();
                let r = PolyRing::new(field, vars.clone(), MonomialOrder::GRevLex)?;
                let j = toric_ideal(&r, &gens)?.polynomials().to_vec();
                let (verdict, recheck) = if j.len() == 1 {
                    let v = fedder_hypersurface(&r, &j[0], p)?;
                    let ok = recheck_hypersurface(&r, &j[0], &v);
                    (v, ok)
                } else {
                    let v = fedder_general(&r, &j, p)?;
                    let ok = recheck_general(&r, &j, &v);
                    (v, ok)
                };
                let mut presentation = serde_json::Map::new();
                for (v, g) in vars.iter().zip(&gens) {
                    presentation.insert(v.clone(), json!(format_monomial(&names, g)));
                }
                Ok(json!({
                    "ring": ring,
                    "construction": if rees { "A[mT]" } else { "A" },
                    "p": p,
                    "presentation": presentation,
                    "relations": j.iter().map(|f| r.format(f)).collect::<Vec<_>>(),
                    "f_pure": verdict.f_pure,
                    "certificate": certificate_json(&r, &j, &verdict),
                    "recheck": recheck,
                }))
            }
        }
    }

    fn a_invariant(&self, ring: &str, weights: Option<&[i64]>) -> Result<Value> {
        let def = self
            .scenario
            .ring(ring)
            .ok_or_else(|| Error::InvalidInput(format!("undefined ring '{ring}'")))?;
        match &def.kind {
            RingKind::Hypersurface { weights, degree, .. } => {
                let w: Vec<BigInt> = weights.iter().map(|&x| BigInt::from(x)).collect();
                let a = a_invariant_hypersurface(&w, &BigInt::from(*degree))?;
                Ok(json!({
                    "ring": ring,
                    "weights": weights,
                    "degree": degree,
                    "a_invariant": a.to_string(),
                }))
            }
            RingKind::Monomial(s) => {
                let g = match weights {
                    Some(w) => GradingVector::from_integers(w),
                    None => s.default_grading(),
                };
                let a = a_invariant_normal(s, &g)?;
                Ok(json!({
                    "ring": ring,
                    "grading": g.to_string(),
                    "a_invariant": a.to_string(),
                }))
            }
        }
    }
}

fn certificate_json(r: &PolyRing<PrimeField>, j: &[Poly<PrimeField>], v: &FrobeniusVerdict) -> Value {
    match &v.certificate {
        Certificate::Monomial { exponents, coefficient } => json!({
            "kind": "monomial",
            "monomial": r.format_monomial(&Monomial(exponents.clone())),
            "coefficient": coefficient,
        }),
        Certificate::PowerInside => json!({ "kind": "power-inside-frobenius-maximal" }),
        Certificate::ColonElement { element, exponents } => json!({
            "kind": "colon-element",
            "element": r.format(element),
            "monomial": r.format_monomial(&Monomial(exponents.clone())),
        }),
        Certificate::ColonTrace { used, generators } => json!({
            "kind": "colon-trace",
            "colon_by": used.iter().map(|&i| r.format(&j[i])).collect::<Vec<_>>(),
            "generators": generators.iter().map(|g| r.format(g)).collect::<Vec<_>>(),
        }),
    }
}
