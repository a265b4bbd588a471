use num_bigint::BigInt;
use num_traits::One;

use super::{DivisorDef, DivisorRange, RingDef, RingKind, Scenario, Task, TaskKind};
use crate::divisor::{canonical_divisor, prime_divisor, MonomialDivisor};
use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::poly::{parse_polynomial_at, MonomialOrder, PolyRing, RationalField};
use crate::semigroup::{is_prime, veronese_subsemigroup, AffineSemigroup, GradingVector};

/// Parses scenario text. Diagnostics carry 1-based line and column.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut state = State {
        scenario: Scenario {
            name: None,
            characteristic: None,
            rings: Vec::new(),
            divisors: Vec::new(),
            tasks: Vec::new(),
        },
        variables: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut line = Line {
            text: content,
            number: i + 1,
            pos: 0,
        };
        if line.at_end() {
            continue;
        }
        state.statement(&mut line)?;
    }
    Ok(state.scenario)
}

struct State {
    scenario: Scenario,
    variables: Vec<String>,
}

struct Line<'a> {
    text: &'a str,
    number: usize,
    pos: usize,
}

impl<'a> Line<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: self.text[..pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_space(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.pos >= self.text.len()
    }

    /// Next whitespace-delimited word with its byte offset.
    fn word(&mut self) -> Option<(&'a str, usize)> {
        self.skip_space();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((&rest[..len], start))
    }

    fn expect_word(&mut self, what: &str) -> Result<(&'a str, usize)> {
        self.word().ok_or_else(|| self.error(format!("expected {what}")))
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<()> {
        let (w, at) = self.expect_word(&format!("'{keyword}'"))?;
        if w != keyword {
            return Err(self.error_at(at, format!("expected '{keyword}', found '{w}'")));
        }
        Ok(())
    }

    fn identifier(&mut self, what: &str) -> Result<(&'a str, usize)> {
        let (w, at) = self.expect_word(what)?;
        if !is_identifier(w) {
            return Err(self.error_at(at, format!("'{w}' is not a valid {what}")));
        }
        Ok((w, at))
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        let (w, at) = self.expect_word(what)?;
        w.parse()
            .map_err(|_| self.error_at(at, format!("expected {what}, found '{w}'")))
    }

    fn signed_integer(&mut self, what: &str) -> Result<i64> {
        let (w, at) = self.expect_word(what)?;
        w.parse()
            .map_err(|_| self.error_at(at, format!("expected {what}, found '{w}'")))
    }

    /// Remainder of the line with its byte offset.
    fn rest(&mut self) -> (&'a str, usize) {
        self.skip_space();
        let start = self.pos;
        self.pos = self.text.len();
        (self.text[start..].trim_end(), start)
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Attaches the position to errors that do not carry one.
fn located(line: &Line<'_>, e: Error, at: usize) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => line.error_at(at, other.to_string()),
    }
}

fn is_identifier(w: &str) -> bool {
    let mut chars = w.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl State {
    fn statement(&mut self, line: &mut Line<'_>) -> Result<()> {
        let (keyword, at) = line.expect_word("a statement")?;
        match keyword {
            "name" => {
                let (name, _) = line.expect_word("a scenario name")?;
                self.scenario.name = Some(name.to_string());
                line.finish()
            }
            "char" => {
                let at = {
                    line.skip_space();
                    line.pos
                };
                let p = line.integer("a characteristic")?;
                if p != 0 && !is_prime(p) {
                    return Err(line.error_at(at, format!("characteristic {p} is not prime")));
                }
                self.scenario.characteristic = Some(p);
                line.finish()
            }
            "vars" => {
                let mut names: Vec<String> = Vec::new();
                while !line.at_end() {
                    let (v, at) = line.identifier("variable name")?;
                    if names.iter().any(|n| n == v) {
                        return Err(line.error_at(at, format!("variable '{v}' declared twice")));
                    }
                    names.push(v.to_string());
                }
                if names.is_empty() {
                    return Err(line.error("expected at least one variable"));
                }
                self.variables = names;
                Ok(())
            }
            "ring" => self.ring(line),
            "divisor" => self.divisor(line),
            "task" => self.task(line),
            other => Err(line.error_at(at, format!("unknown statement '{other}'"))),
        }
    }

    fn fresh_name(&self, line: &Line<'_>, name: &str, at: usize) -> Result<()> {
        if self.scenario.ring(name).is_some() || self.scenario.divisor(name).is_some() {
            return Err(line.error_at(at, format!("'{name}' is already defined")));
        }
        Ok(())
    }

    fn rational_ring(&self, names: &[String], line: &Line<'_>, at: usize) -> Result<PolyRing<RationalField>> {
        if names.is_empty() {
            return Err(line.error_at(at, "no variables declared; add a 'vars' line first"));
        }
        PolyRing::new(RationalField, names.to_vec(), MonomialOrder::GRevLex)
    }

    /// Comma-separated monomials with coefficient 1, as exponent vectors.
    fn monomials(&self, names: &[String], line: &Line<'_>, text: &str, at: usize) -> Result<Vec<IntVec>> {
        let ring = self.rational_ring(names, line, at)?;
        let mut out = Vec::new();
        let mut offset = at;
        for piece in text.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let start = offset + lead;
            let column = line.text[..start].chars().count() + 1;
            let f = parse_polynomial_at(&ring, piece.trim(), line.number, column)?;
            match f.terms() {
                [(m, c)] if c.is_one() => {
                    out.push(m.exponents().iter().map(|&e| BigInt::from(e)).collect());
                }
                _ => return Err(line.error_at(start, format!("'{}' is not a monomial", piece.trim()))),
            }
            offset += piece.len() + 1;
        }
        Ok(out)
    }

    fn ring(&mut self, line: &mut Line<'_>) -> Result<()> {
        let (name, name_at) = line.identifier("ring name")?;
        self.fresh_name(line, name, name_at)?;
        line.expect_keyword("=")?;
        let (kind, kind_at) = line.expect_word("a ring kind")?;
        let (variables, ring) = match kind {
            "monomials" => {
                let (text, at) = line.rest();
                if text.is_empty() {
                    return Err(line.error_at(at, "expected monomials"));
                }
                let gens = self.monomials(&self.variables, line, text, at)?;
                let s = AffineSemigroup::new(self.variables.len(), gens).map_err(|e| line.error_at(at, e.to_string()))?;
                (self.variables.clone(), RingKind::Monomial(s))
            }
            "polynomial" => {
                let d = line.integer("a variable count")? as usize;
                line.finish()?;
                if d == 0 {
                    return Err(line.error_at(kind_at, "a polynomial ring needs a variable"));
                }
                let names = (1..=d).map(|i| format!("X{i}")).collect();
                (names, RingKind::Monomial(AffineSemigroup::polynomial(d)))
            }
            "veronese" => {
                let m = line.integer("a variable count")? as usize;
                let n = line.integer("a Veronese level")?;
                line.finish()?;
                if m == 0 || n == 0 {
                    return Err(line.error_at(kind_at, "Veronese parameters must be positive"));
                }
                let s = veronese_subsemigroup(&AffineSemigroup::polynomial(m), &GradingVector::total_degree(m), n)?;
                let names = (1..=m).map(|i| format!("X{i}")).collect();
                (names, RingKind::Monomial(s))
            }
            "hypersurface" => {
                let (text, at) = line.rest();
                let split = text
                    .rfind("weights")
                    .ok_or_else(|| line.error_at(at + text.len(), "expected 'weights'"))?;
                let poly_text = text[..split].trim_end();
                let ring = self.rational_ring(&self.variables, line, at)?;
                let column = line.text[..at].chars().count() + 1;
                let f = parse_polynomial_at(&ring, poly_text, line.number, column)?;
                let mut weights_line = Line {
                    text: line.text,
                    number: line.number,
                    pos: at + split + "weights".len(),
                };
                let mut weights = Vec::new();
                while !weights_line.at_end() {
                    let w = weights_line.integer("a positive weight")?;
                    if w == 0 {
                        return Err(weights_line.error("weights must be positive"));
                    }
                    weights.push(w);
                }
                if weights.len() != self.variables.len() {
                    return Err(line.error_at(
                        at + split,
                        format!("expected {} weights, found {}", self.variables.len(), weights.len()),
                    ));
                }
                let mut degrees = f.terms().iter().map(|(m, _)| {
                    m.exponents().iter().zip(&weights).map(|(&e, &w)| u64::from(e) * w).sum::<u64>()
                });
                let degree = degrees
                    .next()
                    .ok_or_else(|| line.error_at(at, "the zero polynomial does not define a hypersurface"))?;
                if degree == 0 || degrees.any(|d| d != degree) {
                    return Err(line.error_at(at, "polynomial is not quasi-homogeneous of positive degree for these weights"));
                }
                (
                    self.variables.clone(),
                    RingKind::Hypersurface {
                        text: poly_text.to_string(),
                        weights,
                        degree,
                    },
                )
            }
            other => {
                return Err(line.error_at(
                    kind_at,
                    format!("unknown ring kind '{other}'; expected monomials, polynomial, veronese or hypersurface"),
                ))
            }
        };
        self.scenario.rings.push(RingDef {
            name: name.to_string(),
            variables,
            kind: ring,
        });
        Ok(())
    }

    fn monomial_ring(&self, line: &Line<'_>, name: &str, at: usize) -> Result<&RingDef> {
        let def = self
            .scenario
            .ring(name)
            .ok_or_else(|| line.error_at(at, format!("undefined ring '{name}'")))?;
        match def.kind {
            RingKind::Monomial(_) => Ok(def),
            RingKind::Hypersurface { .. } => Err(line.error_at(at, format!("'{name}' is not a monomial ring"))),
        }
    }

    fn any_ring(&self, line: &Line<'_>, name: &str, at: usize) -> Result<&RingDef> {
        self.scenario
            .ring(name)
            .ok_or_else(|| line.error_at(at, format!("undefined ring '{name}'")))
    }

    fn divisor(&mut self, line: &mut Line<'_>) -> Result<()> {
        let (name, name_at) = line.identifier("divisor name")?;
        self.fresh_name(line, name, name_at)?;
        line.expect_keyword("=")?;
        let (kind, kind_at) = line.expect_word("a divisor kind")?;
        let (ring_name, ring_at) = line.identifier("ring name")?;
        let def = self.monomial_ring(line, ring_name, ring_at)?;
        let RingKind::Monomial(s) = &def.kind else { unreachable!() };
        let divisor = match kind {
            "prime" => {
                line.expect_keyword(":")?;
                let (text, at) = line.rest();
                let gens = self.monomials(&def.variables, line, text, at)?;
                prime_divisor(s, &gens).map_err(|e| located(line, e, at))?
            }
            "facets" => {
                line.expect_keyword(":")?;
                let at = {
                    line.skip_space();
                    line.pos
                };
                let mut c = Vec::new();
                while !line.at_end() {
                    c.push(line.signed_integer("an integer coefficient")?);
                }
                if c.len() != s.num_facets() {
                    return Err(line.error_at(
                        at,
                        format!("ring '{ring_name}' has {} facets, found {} coefficients", s.num_facets(), c.len()),
                    ));
                }
                MonomialDivisor::from_i64(&c)
            }
            "canonical" => {
                line.finish()?;
                canonical_divisor(s).map_err(|e| located(line, e, ring_at))?
            }
            other => {
                return Err(line.error_at(
                    kind_at,
                    format!("unknown divisor kind '{other}'; expected prime, facets or canonical"),
                ))
            }
        };
        self.scenario.divisors.push(DivisorDef {
            name: name.to_string(),
            ring: ring_name.to_string(),
            divisor,
        });
        Ok(())
    }

    fn divisor_on(&self, line: &Line<'_>, ring: &str, name: &str, at: usize) -> Result<()> {
        let d = self
            .scenario
            .divisor(name)
            .ok_or_else(|| line.error_at(at, format!("undefined divisor '{name}'")))?;
        if d.ring != ring {
            return Err(line.error_at(at, format!("divisor '{name}' lives on '{}', not '{ring}'", d.ring)));
        }
        Ok(())
    }

    fn divisor_list(&self, line: &mut Line<'_>, ring: &str, stop: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        loop {
            let save = line.pos;
            match line.word() {
                None => break,
                Some((w, _)) if w == stop => {
                    line.pos = save;
                    break;
                }
                Some((w, at)) => {
                    self.divisor_on(line, ring, w, at)?;
                    out.push(w.to_string());
                }
            }
        }
        if out.is_empty() {
            return Err(line.error("expected at least one divisor"));
        }
        Ok(out)
    }

    fn optional_number(&self, line: &mut Line<'_>, keyword: &str) -> Result<Option<u64>> {
        if line.at_end() {
            return Ok(None);
        }
        line.expect_keyword(keyword)?;
        let n = line.integer("a number")?;
        line.finish()?;
        Ok(Some(n))
    }

    fn range(&self, line: &Line<'_>, word: &str, at: usize, ring: &str) -> Result<DivisorRange> {
        let (name, spec) = match word.split_once('^') {
            None => (word, None),
            Some((n, s)) => (n, Some(s)),
        };
        self.divisor_on(line, ring, name, at)?;
        let exp_at = at + name.len() + 1;
        let number = |s: &str, at: usize| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| line.error_at(at, format!("malformed multiplicity '{s}'")))
        };
        let (low, high) = match spec {
            None => (1, 1),
            Some(s) => match s.split_once("..") {
                None => {
                    let n = number(s, exp_at)?;
                    (n, n)
                }
                Some((a, b)) => (number(a, exp_at)?, number(b, exp_at + a.len() + 2)?),
            },
        };
        if low == 0 || low > high {
            return Err(line.error_at(exp_at, format!("multiplicity range {low}..{high} is empty or starts at zero")));
        }
        Ok(DivisorRange {
            name: name.to_string(),
            low,
            high,
        })
    }

    fn task(&mut self, line: &mut Line<'_>) -> Result<()> {
        let number = line.number;
        let source = line.text.trim().to_string();
        let (kind, kind_at) = line.expect_word("a task kind")?;
        let kind = match kind {
            "paper-examples" => {
                let only = line.word().map(|(w, _)| w.to_string());
                line.finish()?;
                TaskKind::PaperExamples { only }
            }
            "class-group" | "normality" | "symbolic-power" | "rees" | "iterated" | "cm-check" => {
                let (ring, ring_at) = line.identifier("ring name")?;
                self.monomial_ring(line, ring, ring_at)?;
                let ring_s = ring.to_string();
                match kind {
                    "class-group" => {
                        line.finish()?;
                        TaskKind::ClassGroup { ring: ring_s }
                    }
                    "normality" => {
                        line.finish()?;
                        TaskKind::Normality { ring: ring_s }
                    }
                    "symbolic-power" => {
                        let (d, at) = line.identifier("divisor name")?;
                        self.divisor_on(line, ring, d, at)?;
                        let n = line.integer("an exponent")?;
                        line.finish()?;
                        TaskKind::SymbolicPower {
                            ring: ring_s,
                            divisor: d.to_string(),
                            n,
                        }
                    }
                    "rees" => {
                        let mut divisors = Vec::new();
                        let mut ordinary = false;
                        while let Some((w, at)) = line.word() {
                            if w == "mT" {
                                ordinary = true;
                            } else {
                                divisors.push(self.range(line, w, at, ring)?);
                            }
                        }
                        match (ordinary, divisors.is_empty()) {
                            (true, true) => TaskKind::OrdinaryRees { ring: ring_s },
                            (false, false) => TaskKind::Rees { ring: ring_s, divisors },
                            (true, false) => return Err(line.error_at(kind_at, "'mT' cannot be combined with divisors")),
                            (false, true) => return Err(line.error("expected divisors or 'mT'")),
                        }
                    }
                    "iterated" => {
                        let divisors = self.divisor_list(line, ring, "bound")?;
                        if divisors.len() < 2 {
                            return Err(line.error_at(kind_at, "an iterated check needs at least two divisors"));
                        }
                        let bound = self.optional_number(line, "bound")?.unwrap_or(2);
                        TaskKind::Iterated {
                            ring: ring_s,
                            divisors,
                            bound,
                        }
                    }
                    _ => {
                        let divisors = self.divisor_list(line, ring, "degree")?;
                        let degree = self.optional_number(line, "degree")?.map(|d| d as usize);
                        TaskKind::CmCheck {
                            ring: ring_s,
                            divisors,
                            degree,
                        }
                    }
                }
            }
            "fedder" => {
                let (ring, ring_at) = line.identifier("ring name")?;
                let def = self.any_ring(line, ring, ring_at)?;
                let rees = match line.word() {
                    None => false,
                    Some(("mT", at)) => {
                        if matches!(def.kind, RingKind::Hypersurface { .. }) {
                            return Err(line.error_at(at, "'mT' needs a monomial ring"));
                        }
                        true
                    }
                    Some((w, at)) => return Err(line.error_at(at, format!("expected 'mT', found '{w}'"))),
                };
                line.finish()?;
                TaskKind::Fedder {
                    ring: ring.to_string(),
                    rees,
                }
            }
            "a-invariant" => {
                let (ring, ring_at) = line.identifier("ring name")?;
                let def = self.any_ring(line, ring, ring_at)?;
                let weights = if line.at_end() {
                    None
                } else {
                    line.expect_keyword("weights")?;
                    if matches!(def.kind, RingKind::Hypersurface { .. }) {
                        return Err(line.error("hypersurface weights are fixed by the ring definition"));
                    }
                    let mut w = Vec::new();
                    while !line.at_end() {
                        w.push(line.signed_integer("an integer weight")?);
                    }
                    if w.len() != def.variables.len() {
                        return Err(line.error(format!("expected {} weights, found {}", def.variables.len(), w.len())));
                    }
                    Some(w)
                };
                TaskKind::AInvariant {
                    ring: ring.to_string(),
                    weights,
                }
            }
            other => {
                return Err(line.error_at(
                    kind_at,
                    format!(
                        "unknown task '{other}'; expected class-group, normality, symbolic-power, rees, iterated, cm-check, fedder, a-invariant or paper-examples"
                    ),
                ))
            }
        };
        self.scenario.tasks.push(Task {
            line: number,
            source,
            kind,
        });
        Ok(())
    }
}
