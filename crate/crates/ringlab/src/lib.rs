//! File formats, corpus audits and the command-line driver for `ringlab-core`.

pub mod cli;
pub mod formats;
pub mod runner;

pub use formats::{AlgebraFile, FormatError, SubspaceFile};
pub use runner::{load_corpus_dir, run_corpus_audit, write_corpus_dir};
