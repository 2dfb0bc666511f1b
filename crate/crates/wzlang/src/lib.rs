//! The `.wz` pair-definition language, the bundled fixtures and the
//! command-line driver.

pub mod cli;
pub mod doc;
pub mod fixtures;
pub mod parse;
pub mod print;
pub mod report;

pub use doc::{DocKind, Factor, WzDocument, WzObject};
pub use parse::parse_wz;
pub use print::print_wz;
pub use report::Record;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WzError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("semantic error at {line}:{col}: {message}")]
    Semantic { line: usize, col: usize, message: String },
    #[error("{kind} document needs `{key}`")]
    Missing { kind: DocKind, key: String },
    #[error(transparent)]
    Engine(#[from] wz_core::Error),
}
