//! File-level entry point choosing between the three merge engines.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::lines::Lines;
use crate::merge::{merge3, render, Labels, RenderOptions};
use crate::parser::{parse_units, print_units, ParseError};
use crate::separator::{SeparatorSet, UnmarkError};
use crate::structured::{merge_trees, BodyMergePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EngineMode {
    /// Line-based merge of the whole file.
    Unstructured,
    /// Declaration-tree merge with line-based merging of member text.
    Semistructured,
    /// Declaration-tree merge with separator-enhanced merging of member text.
    Sesame,
}

impl EngineMode {
    pub const ALL: [EngineMode; 3] = [EngineMode::Unstructured, EngineMode::Semistructured, EngineMode::Sesame];

    pub fn name(self) -> &'static str {
        match self {
            EngineMode::Unstructured => "unstructured",
            EngineMode::Semistructured => "semistructured",
            EngineMode::Sesame => "sesame",
        }
    }
}

impl fmt::Display for EngineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMode(pub alloc::string::String);

impl fmt::Display for UnknownMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown merge mode `{}` (expected unstructured, semistructured or sesame)", self.0)
    }
}

impl core::error::Error for UnknownMode {}

impl FromStr for EngineMode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMode(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOptions {
    pub mode: EngineMode,
    /// Only consulted in [`EngineMode::Sesame`].
    pub separators: SeparatorSet,
    pub labels: Labels,
    pub render: RenderOptions,
    /// Run the unstructured engine when a version cannot be parsed.
    pub fallback_on_parse_error: bool,
}

impl Default for MergeOptions {
    fn default() -> Self {
        MergeOptions {
            mode: EngineMode::Sesame,
            separators: SeparatorSet::java(),
            labels: Labels::default(),
            render: RenderOptions::default(),
            fallback_on_parse_error: true,
        }
    }
}

impl MergeOptions {
    pub fn with_mode(mode: EngineMode) -> Self {
        MergeOptions {
            mode,
            ..MergeOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileMerge {
    pub text: Vec<u8>,
    pub conflicts: usize,
    /// Set when parsing failed and the unstructured engine was used instead.
    pub fallback: Option<ParseError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineError {
    Parse(ParseError),
    Marking(UnmarkError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Parse(e) => write!(f, "cannot parse input: {e}"),
            EngineError::Marking(e) => write!(f, "separator scaffolding corrupted: {e}"),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<UnmarkError> for EngineError {
    fn from(e: UnmarkError) -> Self {
        EngineError::Marking(e)
    }
}

fn unstructured(base: &[u8], left: &[u8], right: &[u8], options: &MergeOptions) -> FileMerge {
    let outcome = merge3(
        &Lines::split(base),
        &Lines::split(left),
        &Lines::split(right),
        options.labels.clone(),
    );
    FileMerge {
        text: render(&outcome, &options.render),
        conflicts: outcome.conflict_count(),
        fallback: None,
    }
}

/// Merges three versions of one source file.
pub fn merge_source(base: &[u8], left: &[u8], right: &[u8], options: &MergeOptions) -> Result<FileMerge, EngineError> {
    let policy = match options.mode {
        EngineMode::Unstructured => return Ok(unstructured(base, left, right, options)),
        EngineMode::Semistructured => BodyMergePolicy::PlainTextual,
        EngineMode::Sesame => BodyMergePolicy::SeparatorEnhanced(options.separators.clone()),
    };
    let parsed = parse_units(base).and_then(|b| Ok((b, parse_units(left)?, parse_units(right)?)));
    let (bt, lt, rt) = match parsed {
        Ok(trees) => trees,
        Err(e) if options.fallback_on_parse_error => {
            let mut merged = unstructured(base, left, right, options);
            merged.fallback = Some(e);
            return Ok(merged);
        }
        Err(e) => return Err(EngineError::Parse(e)),
    };
    let merged = merge_trees(&bt, &lt, &rt, &policy, &options.labels)?;
    Ok(FileMerge {
        text: print_units(&merged, &options.render),
        conflicts: merged.conflict_count(),
        fallback: None,
    })
}
