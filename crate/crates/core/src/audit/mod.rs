//! Randomized and exhaustive audits of the structure theorems on concrete
//! algebras, with replayable witnesses.

mod checks;
mod corpus;
mod facts;
mod sampler;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use checks::Theorem;
pub use corpus::{all_subspaces, default_corpus, CorpusEntry};
pub use facts::{AlgebraFacts, PrimeQuotient};
pub use sampler::{SampleKind, SamplerConfig, SubspaceSampler};

use crate::budget::Budgets;
use crate::error::Error;
use crate::field::FVector;
use crate::subspace::Subspace;

pub const SCHEMA_VERSION: u32 = 1;

/// Subspace counts up to which a failing hypothesis triggers an exhaustive
/// counterexample search.
pub const DEFAULT_SEARCH_CAP: usize = 4096;

/// Counterexamples stored per verdict and source; the full count is always
/// reported.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", content = "reason", rename_all = "kebab-case"))]
pub enum HypothesisStatus {
    Holds,
    Fails(String),
    Skipped(String),
}

impl HypothesisStatus {
    pub fn holds(&self) -> bool {
        matches!(self, HypothesisStatus::Holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ConclusionStatus {
    Verified,
    Counterexample,
    NotEvaluated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum WitnessKind {
    Subspace,
    Element,
}

/// A labelled subspace (as a generator list) or element.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub label: String,
    pub kind: WitnessKind,
    pub data: Vec<Vec<u32>>,
}

impl Witness {
    pub fn subspace(label: &str, s: &Subspace) -> Self {
        Witness {
            label: label.to_string(),
            kind: WitnessKind::Subspace,
            data: s.to_rows(),
        }
    }

    pub fn element(label: &str, x: &FVector) -> Self {
        Witness {
            label: label.to_string(),
            kind: WitnessKind::Element,
            data: alloc::vec![x.coords().to_vec()],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CounterexampleSource {
    Sample,
    Search,
    Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counterexample {
    pub source: CounterexampleSource,
    /// Sample index for sampled counterexamples.
    pub sample: Option<usize>,
    pub condition: String,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Finding {
    pub algebra: String,
    pub theorem: String,
    pub kind: String,
    pub detail: String,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TheoremVerdict {
    pub theorem: String,
    pub algebra: String,
    pub hypothesis: HypothesisStatus,
    pub conclusion: ConclusionStatus,
    /// Samples drawn and evaluated.
    pub samples: usize,
    /// Evaluations (samples, searched subspaces or the algebra itself)
    /// meeting the per-input preconditions.
    pub qualified: usize,
    /// Evaluations outside a per-input quantitative hypothesis.
    pub skipped: usize,
    /// Subspaces examined by the exhaustive search, if one ran.
    pub searched: Option<usize>,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock time, filled in by drivers that have a clock.
    pub elapsed_us: Option<u64>,
}

impl TheoremVerdict {
    /// A counterexample found while the hypotheses hold.
    pub fn is_violation(&self) -> bool {
        self.hypothesis.holds() && self.counterexample_count > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorpusManifestEntry {
    pub id: String,
    pub p: u32,
    pub dim: usize,
    pub unital: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditSummary {
    pub verdicts: usize,
    pub hypothesis_holds: usize,
    pub hypothesis_fails: usize,
    pub hypothesis_skipped: usize,
    pub violations: usize,
    pub counterexamples_outside_hypothesis: usize,
    pub findings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: usize,
    pub retry_cap: usize,
    pub kinds: Vec<SampleKind>,
    pub budgets: Budgets,
    pub corpus: Vec<CorpusManifestEntry>,
    pub theorems: Vec<String>,
    pub verdicts: Vec<TheoremVerdict>,
    pub findings: Vec<Finding>,
    pub summary: AuditSummary,
}

impl AuditReport {
    /// Sorts cells by (algebra, theorem) and fills in the summary.
    pub fn assemble(
        corpus: Vec<CorpusManifestEntry>,
        theorems: &[Theorem],
        config: &SamplerConfig,
        budgets: Budgets,
        cells: Vec<(TheoremVerdict, Vec<Finding>)>,
    ) -> Self {
        let mut verdicts = Vec::with_capacity(cells.len());
        let mut findings = Vec::new();
        for (v, f) in cells {
            verdicts.push(v);
            findings.extend(f);
        }
        verdicts.sort_by(|a, b| (&a.algebra, &a.theorem).cmp(&(&b.algebra, &b.theorem)));
        findings.sort_by(|a, b| (&a.algebra, &a.theorem, &a.kind).cmp(&(&b.algebra, &b.theorem, &b.kind)));
        let mut summary = AuditSummary {
            verdicts: verdicts.len(),
            findings: findings.len(),
            ..AuditSummary::default()
        };
        for v in &verdicts {
            match v.hypothesis {
                HypothesisStatus::Holds => summary.hypothesis_holds += 1,
                HypothesisStatus::Fails(_) => summary.hypothesis_fails += 1,
                HypothesisStatus::Skipped(_) => summary.hypothesis_skipped += 1,
            }
            if v.is_violation() {
                summary.violations += 1;
            } else if v.counterexample_count > 0 {
                summary.counterexamples_outside_hypothesis += 1;
            }
        }
        AuditReport {
            schema_version: SCHEMA_VERSION,
            seed: config.seed,
            samples: config.count,
            retry_cap: config.retry_cap,
            kinds: config.kinds.clone(),
            budgets,
            corpus,
            theorems: theorems.iter().map(|t| t.id().to_string()).collect(),
            verdicts,
            findings,
            summary,
        }
    }

    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }

    pub fn verdict(&self, algebra: &str, theorem: &str) -> Option<&TheoremVerdict> {
        self.verdicts.iter().find(|v| v.algebra == algebra && v.theorem == theorem)
    }

    /// The same report with every timing field cleared.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for v in &mut r.verdicts {
            v.elapsed_us = None;
        }
        r
    }
}

pub fn manifest_entry(entry: &CorpusEntry) -> CorpusManifestEntry {
    CorpusManifestEntry {
        id: entry.id.clone(),
        p: entry.algebra.p(),
        dim: entry.algebra.dim(),
        unital: entry.algebra.is_unital(),
    }
}

/// Runs one theorem on one algebra.
pub fn audit_theorem(
    theorem: Theorem,
    facts: &AlgebraFacts,
    config: &SamplerConfig,
    search_cap: usize,
) -> (TheoremVerdict, Vec<Finding>) {
    checks::run(theorem, facts, config, search_cap)
}

/// Sequential audit of `corpus × theorems`.
pub fn run_audit(
    corpus: &[CorpusEntry],
    theorems: &[Theorem],
    config: &SamplerConfig,
    budgets: Budgets,
) -> AuditReport {
    let mut cells = Vec::new();
    for entry in corpus {
        let facts = AlgebraFacts::compute(&entry.id, entry.algebra.clone(), &budgets);
        for &t in theorems {
            cells.push(audit_theorem(t, &facts, config, DEFAULT_SEARCH_CAP));
        }
    }
    AuditReport::assemble(
        corpus.iter().map(manifest_entry).collect(),
        theorems,
        config,
        budgets,
        cells,
    )
}

/// Re-evaluates a recorded counterexample; `Ok(true)` when the violation
/// is reproduced.
pub fn replay(theorem: Theorem, facts: &AlgebraFacts, cex: &Counterexample) -> Result<bool, Error> {
    checks::replay(theorem, facts, cex)
}

/// Parses a theorem id.
pub fn theorem_by_id(id: &str) -> Result<Theorem, Error> {
    Theorem::ALL
        .iter()
        .copied()
        .find(|t| t.id() == id)
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::PrimeField;

    fn facts(id: &str) -> AlgebraFacts {
        let e = default_corpus().into_iter().find(|e| e.id == id).unwrap();
        AlgebraFacts::compute(&e.id, e.algebra, &Budgets::default())
    }

    fn config(count: usize) -> SamplerConfig {
        SamplerConfig {
            count,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(theorem_by_id(t.id()).unwrap(), t);
        }
        assert!(matches!(theorem_by_id("nope"), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn known_negative_on_m2_f2() {
        let f = facts("m2-f2");
        let (v, _) = audit_theorem(Theorem::SubmoduleCollapse, &f, &config(50), DEFAULT_SEARCH_CAP);
        assert_eq!(v.hypothesis, HypothesisStatus::Fails("nonexceptional-cofinal".into()));
        assert_eq!(v.conclusion, ConclusionStatus::Counterexample);
        assert!(!v.is_violation());
        let l = f
            .algebra
            .span(&[
                f.algebra.element(alloc::vec![1, 0, 0, 1]).unwrap(),
                f.algebra.element(alloc::vec![0, 1, 1, 0]).unwrap(),
            ])
            .unwrap();
        let found = v.counterexamples.iter().any(|c| {
            c.source == CounterexampleSource::Search
                && c.witnesses.iter().any(|w| {
                    let gens: Vec<FVector> = w.data.iter().map(|r| f.algebra.element(r.clone()).unwrap()).collect();
                    w.label == "V" && f.algebra.span(&gens).unwrap() == l
                })
        });
        assert!(found);
        for c in &v.counterexamples {
            assert!(!c.witnesses.is_empty());
            assert!(replay(Theorem::SubmoduleCollapse, &f, c).unwrap());
        }
    }

    #[test]
    fn m2_f3_has_no_counterexamples() {
        let f = facts("m2-f3");
        for t in Theorem::ALL {
            let (v, _) = audit_theorem(t, &f, &config(30), DEFAULT_SEARCH_CAP);
            assert_eq!(v.counterexample_count, 0, "{}", t.id());
        }
    }

    #[test]
    fn zero_samples_checks_hypotheses_only() {
        let f = facts("m2-f3");
        for t in Theorem::ALL {
            let (v, _) = audit_theorem(t, &f, &config(0), DEFAULT_SEARCH_CAP);
            assert_eq!(v.conclusion, ConclusionStatus::NotEvaluated);
            assert_eq!(v.samples, 0);
        }
    }

    #[test]
    fn commutative_algebra_is_vacuous() {
        let e = CorpusEntry::new("f3-t3", Algebra::truncated_poly(3, PrimeField::new(3).unwrap()));
        let f = AlgebraFacts::compute(&e.id, e.algebra, &Budgets::default());
        for t in [
            Theorem::FullyNoncentralSubgroups,
            Theorem::UnitalOddSubmodules,
            Theorem::SquareZeroTfae,
            Theorem::NilpotentTfae,
        ] {
            let (v, _) = audit_theorem(t, &f, &config(20), DEFAULT_SEARCH_CAP);
            assert_eq!(v.qualified, 0, "{}", t.id());
            assert_eq!(v.counterexample_count, 0);
        }
    }

    #[test]
    fn report_is_deterministic() {
        let corpus: Vec<CorpusEntry> = default_corpus().into_iter().filter(|e| e.algebra.dim() <= 3).collect();
        let theorems = [Theorem::LieIdealSquares, Theorem::SquareZeroInvariance, Theorem::NilSpans];
        let a = run_audit(&corpus, &theorems, &config(20), Budgets::default());
        let b = run_audit(&corpus, &theorems, &config(20), Budgets::default());
        assert_eq!(a, b);
        assert_eq!(a.verdicts.len(), corpus.len() * theorems.len());
        assert!(!a.has_violations());
        let empty = run_audit(&[], &theorems, &config(20), Budgets::default());
        assert!(empty.verdicts.is_empty());
        assert_eq!(empty.summary, AuditSummary::default());
    }
}
