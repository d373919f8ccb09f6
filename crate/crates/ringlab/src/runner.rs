//! Corpus loading and the parallel audit driver.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use ringlab_core::audit::{
    audit_theorem, manifest_entry, AlgebraFacts, AuditReport, CorpusEntry, SamplerConfig, Theorem,
    DEFAULT_SEARCH_CAP,
};
use ringlab_core::Budgets;

use crate::formats::{read_algebra, write_json, AlgebraFile, FormatError};

pub const THREADS_ENV: &str = "RINGLAB_THREADS";

/// Every `*.alg.json` file in `dir`, ordered by file name.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>, FormatError> {
    let io = |source| FormatError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .collect::<Result<Vec<_>, _>>()
        .map_err(io)?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.to_str().is_some_and(|s| s.ends_with(".alg.json")))
        .collect();
    paths.sort();
    let mut entries = Vec::with_capacity(paths.len());
    for p in paths {
        let (id, alg) = read_algebra(&p)?;
        if entries.iter().any(|e: &CorpusEntry| e.id == id) {
            return Err(FormatError::Invalid(format!("duplicate algebra id {id}")));
        }
        entries.push(CorpusEntry::new(&id, alg));
    }
    Ok(entries)
}

/// Writes one `<id>.alg.json` per entry.
pub fn write_corpus_dir(dir: &Path, corpus: &[CorpusEntry]) -> Result<(), FormatError> {
    std::fs::create_dir_all(dir).map_err(|source| FormatError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    for e in corpus {
        write_json(&dir.join(format!("{}.alg.json", e.id)), &AlgebraFile::from_algebra(&e.id, &e.algebra))?;
    }
    Ok(())
}

/// Worker count from the environment; `0` or unset means automatic.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

/// Audits `corpus × theorems` on a pool of `threads` workers (`0` = automatic).
/// The report does not depend on the worker count apart from timing fields.
pub fn run_corpus_audit(
    corpus: &[CorpusEntry],
    theorems: &[Theorem],
    config: &SamplerConfig,
    budgets: Budgets,
    threads: usize,
) -> AuditReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let cells = pool.install(|| {
        let facts: Vec<AlgebraFacts> = corpus
            .par_iter()
            .map(|e| AlgebraFacts::compute(&e.id, e.algebra.clone(), &budgets))
            .collect();
        let grid: Vec<(&AlgebraFacts, Theorem)> = facts
            .iter()
            .flat_map(|f| theorems.iter().map(move |&t| (f, t)))
            .collect();
        grid.into_par_iter()
            .map(|(f, t)| {
                let start = Instant::now();
                let (mut verdict, findings) = audit_theorem(t, f, config, DEFAULT_SEARCH_CAP);
                verdict.elapsed_us = Some(start.elapsed().as_micros() as u64);
                (verdict, findings)
            })
            .collect()
    });
    AuditReport::assemble(
        corpus.iter().map(manifest_entry).collect(),
        theorems,
        config,
        budgets,
        cells,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringlab_core::audit::default_corpus;

    #[test]
    fn corpus_directory_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = default_corpus();
        write_corpus_dir(dir.path(), &corpus).unwrap();
        let back = load_corpus_dir(dir.path()).unwrap();
        assert_eq!(back.len(), corpus.len());
        for e in &corpus {
            let b = back.iter().find(|b| b.id == e.id).unwrap();
            assert_eq!(b.algebra, e.algebra);
        }
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let corpus: Vec<CorpusEntry> = default_corpus().into_iter().filter(|e| e.algebra.dim() <= 3).collect();
        let config = SamplerConfig {
            count: 20,
            ..SamplerConfig::default()
        };
        let thms = [Theorem::TSubring, Theorem::LieIdealSquares, Theorem::NilSpans];
        let a = run_corpus_audit(&corpus, &thms, &config, Budgets::default(), 1);
        let b = run_corpus_audit(&corpus, &thms, &config, Budgets::default(), 4);
        assert_eq!(a.without_timing(), b.without_timing());
        assert!(a.verdicts.iter().all(|v| v.elapsed_us.is_some()));
    }
}
