//! Three-way merge engines for Java-like source files.
//!
//! The crate provides three engines that share one line-based merge core:
//!
//! * [`merge`] is a classic diff3-style line merge (unstructured merge).
//! * [`structured`] superimposes partial declaration trees built by
//!   [`parser`] and falls back to a textual merge for member bodies
//!   (semistructured merge).
//! * [`separator`] refines that textual merge by isolating language
//!   separators such as `{`, `}`, `(`, `)` and `;` on placeholder-marked
//!   lines before merging, and removing the scaffolding afterwards.
//!
//! [`engine`] ties these together behind a single entry point. Everything here
//! is pure and allocation-only; file IO lives in the companion `sesame` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod diff;
pub mod engine;
pub mod lexer;
pub mod lines;
pub mod merge;
pub mod parser;
pub mod separator;
pub mod structured;

pub use diff::{diff2, Alignment};
pub use engine::{merge_source, EngineError, EngineMode, FileMerge, MergeOptions};
pub use lines::Lines;
pub use merge::{count_conflicts, merge3, render, Labels, MergeOutcome, Region, RenderOptions};
pub use parser::{parse_units, print_units, DeclKind, DeclNode, DeclTree, ParseError};
pub use separator::{mark, merge_body, unmark, MarkedText, SeparatorSet};
pub use structured::{match_trees, merge_matched, merge_trees, BodyMergePolicy, MatchedNode};
