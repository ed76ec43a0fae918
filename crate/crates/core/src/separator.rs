//! Separator-enhanced textual merge.
//!
//! Before a body is merged line by line, every separator character found in
//! code context is moved onto a line of its own. Line breaks added this way
//! are recognizable because the line they open starts with a placeholder, a
//! run of `$` characters longer than any `$` run in the inputs. After the
//! merge, every placeholder-prefixed line is glued back onto the line before
//! it, which restores the original layout, conflict blocks included.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lexer::for_each_code_byte;
use crate::lines::{join_segments, Lines};
use crate::merge::{marker_of, merge3, Labels, MergeOutcome, Region};

pub const DEFAULT_SEPARATORS: [char; 5] = ['{', '}', '(', ')', ';'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorError {
    Empty,
    Duplicate(char),
    /// Line terminators, the placeholder character and non-ASCII characters
    /// cannot act as separators.
    Forbidden(char),
    /// A list item that is not exactly one character.
    NotSingleChar,
}

impl fmt::Display for SeparatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatorError::Empty => f.write_str("separator list is empty"),
            SeparatorError::Duplicate(c) => write!(f, "separator {c:?} listed twice"),
            SeparatorError::Forbidden(c) => write!(f, "{c:?} cannot be used as a separator"),
            SeparatorError::NotSingleChar => f.write_str("separators must be single characters"),
        }
    }
}

impl core::error::Error for SeparatorError {}

/// An ordered set of single-character separators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorSet {
    separators: Vec<u8>,
}

impl SeparatorSet {
    pub fn new(chars: impl IntoIterator<Item = char>) -> Result<Self, SeparatorError> {
        let mut separators = Vec::new();
        for c in chars {
            if !c.is_ascii() || matches!(c, '\n' | '\r' | '$') {
                return Err(SeparatorError::Forbidden(c));
            }
            let b = c as u8;
            if separators.contains(&b) {
                return Err(SeparatorError::Duplicate(c));
            }
            separators.push(b);
        }
        if separators.is_empty() {
            return Err(SeparatorError::Empty);
        }
        Ok(SeparatorSet { separators })
    }

    /// Parses a comma-separated list such as `{,},(,),;`.
    pub fn parse_list(list: &str) -> Result<Self, SeparatorError> {
        let mut chars = Vec::new();
        for item in list.split(',') {
            let item = item.trim();
            let mut it = item.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => chars.push(c),
                (None, _) => {}
                _ => return Err(SeparatorError::NotSingleChar),
            }
        }
        SeparatorSet::new(chars)
    }

    pub fn java() -> Self {
        SeparatorSet::new(DEFAULT_SEPARATORS).expect("default separators are valid")
    }

    pub fn contains(&self, b: u8) -> bool {
        self.separators.contains(&b)
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.separators.iter().map(|&b| b as char)
    }
}

impl Default for SeparatorSet {
    fn default() -> Self {
        SeparatorSet::java()
    }
}

impl fmt::Display for SeparatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chars().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The run of `$` characters that prefixes inserted lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placeholder {
    len: usize,
}

impl Placeholder {
    pub const MIN_LEN: usize = 8;

    /// The shortest placeholder (8, 16, 32, ...) longer than every `$` run in
    /// `texts`.
    pub fn for_texts(texts: &[&[u8]]) -> Self {
        let longest = texts.iter().map(|t| longest_dollar_run(t)).max().unwrap_or(0);
        let mut len = Self::MIN_LEN;
        while len <= longest {
            len *= 2;
        }
        Placeholder { len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn bytes(&self) -> Vec<u8> {
        vec![b'$'; self.len]
    }

    pub fn prefixes(&self, line: &[u8]) -> bool {
        line.len() >= self.len && line[..self.len].iter().all(|&b| b == b'$')
    }
}

fn longest_dollar_run(text: &[u8]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for &b in text {
        if b == b'$' {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnmarkError {
    /// A placeholder run appears after the start of the given 0-based line.
    PlaceholderMidLine { line: usize },
    /// A line flagged as inserted does not start with the placeholder.
    MissingPlaceholder { line: usize },
}

impl fmt::Display for UnmarkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnmarkError::PlaceholderMidLine { line } => {
                write!(f, "placeholder found inside line {line}")
            }
            UnmarkError::MissingPlaceholder { line } => {
                write!(f, "inserted line {line} lacks the placeholder")
            }
        }
    }
}

impl core::error::Error for UnmarkError {}

/// Body text with separators moved onto placeholder-prefixed lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedText {
    pub lines: Vec<Vec<u8>>,
    /// `true` for lines opened by an inserted line break.
    pub inserted: Vec<bool>,
    pub placeholder: Placeholder,
    pub trailing_terminator: bool,
}

impl MarkedText {
    pub fn as_lines(&self) -> Lines<'_> {
        Lines::from_segments(
            self.lines.iter().map(|l| l.as_slice()).collect(),
            self.trailing_terminator,
        )
    }

    pub fn inserted_count(&self) -> usize {
        self.inserted.iter().filter(|&&f| f).count()
    }

    /// The marked text as bytes, scaffolding included.
    pub fn to_bytes(&self) -> Vec<u8> {
        join_segments(&self.lines, self.trailing_terminator)
    }
}

/// Marks `text` with a placeholder chosen for `text` alone.
pub fn mark(text: &[u8], seps: &SeparatorSet) -> MarkedText {
    mark_with(text, seps, Placeholder::for_texts(&[text]))
}

/// Marks `text` with a given placeholder. The placeholder must be longer than
/// any `$` run in `text` for [`unmark`] to succeed.
pub fn mark_with(text: &[u8], seps: &SeparatorSet, placeholder: Placeholder) -> MarkedText {
    let len = text.len();
    let at_line_start = |i: usize| i == 0 || text[i - 1] == b'\n';
    let at_line_end = |i: usize| {
        i == len
            || text[i] == b'\n'
            || (text[i] == b'\r' && (i + 1 == len || text[i + 1] == b'\n'))
    };

    // A break at `p` means "start a placeholder line before byte p".
    let mut breaks = vec![false; len + 1];
    for_each_code_byte(text, |i, b| {
        if !seps.contains(b) {
            return;
        }
        if !at_line_start(i) {
            breaks[i] = true;
        }
        if !at_line_end(i + 1) {
            breaks[i + 1] = true;
        }
    });

    let prefix = placeholder.bytes();
    let mut lines = Vec::new();
    let mut inserted = Vec::new();
    let mut cur = Vec::new();
    let mut cur_inserted = false;
    for (i, &b) in text.iter().enumerate() {
        if breaks[i] {
            lines.push(core::mem::replace(&mut cur, prefix.clone()));
            inserted.push(cur_inserted);
            cur_inserted = true;
        }
        if b == b'\n' {
            lines.push(core::mem::take(&mut cur));
            inserted.push(cur_inserted);
            cur_inserted = false;
        } else {
            cur.push(b);
        }
    }
    let trailing_terminator = text.last() == Some(&b'\n');
    if !text.is_empty() && !trailing_terminator {
        lines.push(cur);
        inserted.push(cur_inserted);
    }
    MarkedText {
        lines,
        inserted,
        placeholder,
        trailing_terminator,
    }
}

/// Strips the placeholder from an inserted line, checking that no other
/// placeholder run follows.
fn strip<'l>(line: &'l [u8], placeholder: Placeholder, index: usize) -> Result<(&'l [u8], bool), UnmarkError> {
    let (rest, flagged) = if placeholder.prefixes(line) {
        (&line[placeholder.len()..], true)
    } else {
        (line, false)
    };
    if longest_dollar_run(rest) >= placeholder.len() {
        return Err(UnmarkError::PlaceholderMidLine { line: index });
    }
    Ok((rest, flagged))
}

/// Appends `line` to `out`, gluing it to the previous line when it carries the
/// placeholder and a previous line exists.
fn glue(out: &mut Vec<Vec<u8>>, line: &[u8], placeholder: Placeholder, index: usize) -> Result<(), UnmarkError> {
    let (rest, flagged) = strip(line, placeholder, index)?;
    match out.last_mut() {
        Some(prev) if flagged => prev.extend_from_slice(rest),
        _ => out.push(rest.to_vec()),
    }
    Ok(())
}

/// Removes inserted line breaks and placeholders.
pub fn unmark(marked: &MarkedText) -> Result<Vec<u8>, UnmarkError> {
    let mut out: Vec<Vec<u8>> = Vec::new();
    for (i, line) in marked.lines.iter().enumerate() {
        if marked.inserted.get(i) == Some(&true) && !marked.placeholder.prefixes(line) {
            return Err(UnmarkError::MissingPlaceholder { line: i });
        }
        glue(&mut out, line, marked.placeholder, i)?;
    }
    Ok(join_segments(&out, marked.trailing_terminator))
}

/// Removes scaffolding from rendered merge output. Conflict marker lines are
/// kept; placeholder lines are glued only within one conflict side or one
/// resolved stretch, never across a marker.
pub fn unmark_rendered(text: &[u8], placeholder: Placeholder) -> Result<Vec<u8>, UnmarkError> {
    let lines = Lines::split(text);
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut section: Vec<Vec<u8>> = Vec::new();
    for (i, line) in lines.segments.iter().enumerate() {
        if marker_of(line).is_some() {
            out.append(&mut section);
            out.push(line.to_vec());
        } else {
            glue(&mut section, line, placeholder, i)?;
        }
    }
    out.append(&mut section);
    Ok(join_segments(&out, lines.trailing_terminator))
}

fn unmark_side(lines: &[Vec<u8>], placeholder: Placeholder) -> Result<Vec<Vec<u8>>, UnmarkError> {
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        glue(&mut out, line, placeholder, i)?;
    }
    Ok(out)
}

/// Maps a merge over marked lines back to plain text lines.
pub fn unmark_outcome(outcome: &MergeOutcome, placeholder: Placeholder) -> Result<MergeOutcome, UnmarkError> {
    let mut result = MergeOutcome {
        regions: Vec::new(),
        labels: outcome.labels.clone(),
        trailing_terminator: outcome.trailing_terminator,
    };
    let mut pending: Vec<Vec<u8>> = Vec::new();
    let mut index = 0;
    for region in &outcome.regions {
        match region {
            Region::Resolved(lines) => {
                for line in lines {
                    glue(&mut pending, line, placeholder, index)?;
                    index += 1;
                }
            }
            Region::Conflict { left, base, right } => {
                result.push_resolved(pending.drain(..));
                result.regions.push(Region::Conflict {
                    left: unmark_side(left, placeholder)?,
                    base: unmark_side(base, placeholder)?,
                    right: unmark_side(right, placeholder)?,
                });
            }
        }
    }
    result.push_resolved(pending);
    Ok(result)
}

/// Separator-enhanced three-way merge of body text.
pub fn merge_body(
    base: &[u8],
    left: &[u8],
    right: &[u8],
    seps: &SeparatorSet,
    labels: Labels,
) -> Result<MergeOutcome, UnmarkError> {
    let placeholder = Placeholder::for_texts(&[base, left, right]);
    let marked_base = mark_with(base, seps, placeholder);
    let marked_left = mark_with(left, seps, placeholder);
    let marked_right = mark_with(right, seps, placeholder);
    let merged = merge3(
        &marked_base.as_lines(),
        &marked_left.as_lines(),
        &marked_right.as_lines(),
        labels,
    );
    unmark_outcome(&merged, placeholder)
}
