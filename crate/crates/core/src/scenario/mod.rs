//! Line-oriented scenario files, their execution, and the built-in example
//! suite. The grammar is documented in `docs/scenario.md`.

mod parse;
mod run;
mod suite;

pub use parse::parse_scenario;
pub use run::{run_scenario, Report, RunOptions, TaskReport, REPORT_SCHEMA};
pub use suite::{paper_examples, Check, SuiteReport, SUITE_TAGS};

use crate::divisor::MonomialDivisor;
use crate::semigroup::AffineSemigroup;

/// A parsed scenario: named rings and divisors plus an ordered task list.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: Option<String>,
    pub characteristic: Option<u64>,
    pub rings: Vec<RingDef>,
    pub divisors: Vec<DivisorDef>,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn ring(&self, name: &str) -> Option<&RingDef> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn divisor(&self, name: &str) -> Option<&DivisorDef> {
        self.divisors.iter().find(|d| d.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct RingDef {
    pub name: String,
    pub variables: Vec<String>,
    pub kind: RingKind,
}

#[derive(Clone, Debug)]
pub enum RingKind {
    /// `K[S]` for the semigroup generated by the listed monomials.
    Monomial(AffineSemigroup),
    /// `K[x]/(f)` with positive integer weights making `f` quasi-homogeneous.
    Hypersurface {
        text: String,
        weights: Vec<u64>,
        degree: u64,
    },
}

#[derive(Clone, Debug)]
pub struct DivisorDef {
    pub name: String,
    pub ring: String,
    pub divisor: MonomialDivisor,
}

/// A divisor name with a multiplicity range, as in `P^1..3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRange {
    pub name: String,
    pub low: u64,
    pub high: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskKind {
    ClassGroup { ring: String },
    Normality { ring: String },
    SymbolicPower { ring: String, divisor: String, n: u64 },
    Rees { ring: String, divisors: Vec<DivisorRange> },
    OrdinaryRees { ring: String },
    Iterated { ring: String, divisors: Vec<String>, bound: u64 },
    CmCheck { ring: String, divisors: Vec<String>, degree: Option<usize> },
    Fedder { ring: String, rees: bool },
    AInvariant { ring: String, weights: Option<Vec<i64>> },
    PaperExamples { only: Option<String> },
}

impl TaskKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::ClassGroup { .. } => "class-group",
            Self::Normality { .. } => "normality",
            Self::SymbolicPower { .. } => "symbolic-power",
            Self::Rees { .. } | Self::OrdinaryRees { .. } => "rees",
            Self::Iterated { .. } => "iterated",
            Self::CmCheck { .. } => "cm-check",
            Self::Fedder { .. } => "fedder",
            Self::AInvariant { .. } => "a-invariant",
            Self::PaperExamples { .. } => "paper-examples",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub line: usize,
    pub source: String,
    pub kind: TaskKind,
}
