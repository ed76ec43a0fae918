//! diff3-style three-way merge of segment sequences, conflict rendering and
//! conflict counting.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::diff::diff2;
use crate::lines::Lines;

pub const MARKER_LEN: usize = 7;

/// Labels written after the conflict markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    pub left: String,
    pub base: String,
    pub right: String,
}

impl Labels {
    pub fn new(left: impl Into<String>, base: impl Into<String>, right: impl Into<String>) -> Self {
        Labels {
            left: left.into(),
            base: base.into(),
            right: right.into(),
        }
    }

    pub fn swapped(&self) -> Self {
        Labels {
            left: self.right.clone(),
            base: self.base.clone(),
            right: self.left.clone(),
        }
    }
}

impl Default for Labels {
    fn default() -> Self {
        Labels::new("left", "base", "right")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Emit the `|||||||` base section inside conflict blocks (diff3 style).
    pub base_section: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Resolved(Vec<Vec<u8>>),
    Conflict {
        left: Vec<Vec<u8>>,
        base: Vec<Vec<u8>>,
        right: Vec<Vec<u8>>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeOutcome {
    pub regions: Vec<Region>,
    pub labels: Labels,
    /// Whether the last resolved line is followed by a terminator.
    pub trailing_terminator: bool,
}

impl MergeOutcome {
    /// An outcome holding `text` verbatim.
    pub fn resolved(text: &[u8], labels: Labels) -> Self {
        let lines = Lines::split(text);
        let mut outcome = MergeOutcome {
            regions: Vec::new(),
            labels,
            trailing_terminator: lines.trailing_terminator,
        };
        outcome.push_resolved(lines.segments.iter().map(|s| s.to_vec()));
        outcome
    }

    /// An outcome made of a single conflict block.
    pub fn single_conflict(left: &[u8], base: &[u8], right: &[u8], labels: Labels) -> Self {
        let owned = |t: &[u8]| Lines::split(t).segments.iter().map(|s| s.to_vec()).collect();
        MergeOutcome {
            regions: alloc::vec![Region::Conflict {
                left: owned(left),
                base: owned(base),
                right: owned(right),
            }],
            labels,
            trailing_terminator: true,
        }
    }

    pub fn conflict_count(&self) -> usize {
        self.regions
            .iter()
            .filter(|r| matches!(r, Region::Conflict { .. }))
            .count()
    }

    pub fn is_clean(&self) -> bool {
        self.conflict_count() == 0
    }

    /// Appends resolved lines, extending a trailing resolved region if any.
    pub fn push_resolved(&mut self, lines: impl IntoIterator<Item = Vec<u8>>) {
        let mut lines = lines.into_iter().peekable();
        if lines.peek().is_none() {
            return;
        }
        match self.regions.last_mut() {
            Some(Region::Resolved(existing)) => existing.extend(lines),
            _ => self.regions.push(Region::Resolved(lines.collect())),
        }
    }

    /// The same outcome seen from the other side: left and right swapped.
    pub fn mirrored(&self) -> Self {
        MergeOutcome {
            regions: self
                .regions
                .iter()
                .map(|r| match r {
                    Region::Resolved(l) => Region::Resolved(l.clone()),
                    Region::Conflict { left, base, right } => Region::Conflict {
                        left: right.clone(),
                        base: base.clone(),
                        right: left.clone(),
                    },
                })
                .collect(),
            labels: self.labels.swapped(),
            trailing_terminator: self.trailing_terminator,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChunkKind {
    Stable,
    Changed,
}

/// A slice of the three versions. Chunks partition all three sequences in
/// order; stable chunks hold identical content in every version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chunk {
    pub kind: ChunkKind,
    pub base: Range<usize>,
    pub left: Range<usize>,
    pub right: Range<usize>,
}

/// Splits three sequences into alternating stable and changed chunks.
///
/// A base segment is stable when both variants match it and the three
/// cursors advance in lockstep. Everything between two stable runs is one
/// changed chunk, so edits on the same or directly adjacent segments end up
/// in the same chunk.
pub fn chunks<T: PartialEq>(base: &[T], left: &[T], right: &[T]) -> Vec<Chunk> {
    let to_left = diff2(base, left).left_to_right(base.len());
    let to_right = diff2(base, right).left_to_right(base.len());
    let (nb, nl, nr) = (base.len(), left.len(), right.len());

    let mut out = Vec::new();
    let (mut ib, mut il, mut ir) = (0, 0, 0);
    loop {
        let start = (ib, il, ir);
        while ib < nb && to_left[ib] == Some(il) && to_right[ib] == Some(ir) {
            ib += 1;
            il += 1;
            ir += 1;
        }
        if ib > start.0 {
            out.push(Chunk {
                kind: ChunkKind::Stable,
                base: start.0..ib,
                left: start.1..il,
                right: start.2..ir,
            });
        }
        if ib == nb && il == nl && ir == nr {
            break;
        }
        let next = (ib..nb).find_map(|j| Some((j, to_left[j]?, to_right[j]?)));
        let (jb, jl, jr) = next.unwrap_or((nb, nl, nr));
        out.push(Chunk {
            kind: ChunkKind::Changed,
            base: ib..jb,
            left: il..jl,
            right: ir..jr,
        });
        ib = jb;
        il = jl;
        ir = jr;
    }
    out
}

/// Three-way merge of line sequences.
pub fn merge3(base: &Lines<'_>, left: &Lines<'_>, right: &Lines<'_>, labels: Labels) -> MergeOutcome {
    let (b, l, r) = (&base.segments, &left.segments, &right.segments);
    let owned = |s: &[&[u8]]| -> Vec<Vec<u8>> { s.iter().map(|x| x.to_vec()).collect() };

    let trailing_terminator = if left.trailing_terminator == base.trailing_terminator {
        right.trailing_terminator
    } else {
        left.trailing_terminator
    };
    let mut outcome = MergeOutcome {
        regions: Vec::new(),
        labels,
        trailing_terminator,
    };
    for chunk in chunks(b, l, r) {
        let (bs, ls, rs) = (&b[chunk.base], &l[chunk.left], &r[chunk.right]);
        if chunk.kind == ChunkKind::Stable || ls == bs {
            outcome.push_resolved(owned(rs));
        } else if rs == bs || ls == rs {
            outcome.push_resolved(owned(ls));
        } else {
            outcome.regions.push(Region::Conflict {
                left: owned(ls),
                base: owned(bs),
                right: owned(rs),
            });
        }
    }
    outcome
}

fn push_marker(out: &mut Vec<u8>, ch: u8, label: &str) {
    out.extend(core::iter::repeat(ch).take(MARKER_LEN));
    if !label.is_empty() {
        out.push(b' ');
        out.extend_from_slice(label.as_bytes());
    }
    out.push(b'\n');
}

fn push_lines(out: &mut Vec<u8>, lines: &[Vec<u8>]) {
    for line in lines {
        out.extend_from_slice(line);
        out.push(b'\n');
    }
}

/// Renders an outcome as text with conflict markers.
pub fn render(outcome: &MergeOutcome, options: &RenderOptions) -> Vec<u8> {
    let mut out = Vec::new();
    for region in &outcome.regions {
        match region {
            Region::Resolved(lines) => push_lines(&mut out, lines),
            Region::Conflict { left, base, right } => {
                push_marker(&mut out, b'<', &outcome.labels.left);
                push_lines(&mut out, left);
                if options.base_section {
                    push_marker(&mut out, b'|', &outcome.labels.base);
                    push_lines(&mut out, base);
                }
                push_marker(&mut out, b'=', "");
                push_lines(&mut out, right);
                push_marker(&mut out, b'>', &outcome.labels.right);
            }
        }
    }
    let ends_resolved = matches!(outcome.regions.last(), Some(Region::Resolved(l)) if !l.is_empty());
    if ends_resolved && !outcome.trailing_terminator {
        out.pop();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    Open,
    Base,
    Separator,
    Close,
}

/// Classifies a line as a conflict marker: exactly seven marker characters
/// followed by the end of the line, a space, or a carriage return.
pub fn marker_of(line: &[u8]) -> Option<Marker> {
    let first = *line.first()?;
    let kind = match first {
        b'<' => Marker::Open,
        b'|' => Marker::Base,
        b'=' => Marker::Separator,
        b'>' => Marker::Close,
        _ => return None,
    };
    if line.len() < MARKER_LEN || !line[..MARKER_LEN].iter().all(|&c| c == first) {
        return None;
    }
    match line.get(MARKER_LEN) {
        None | Some(b' ') | Some(b'\r') => {}
        Some(_) => return None,
    }
    if kind == Marker::Separator && line.len() > MARKER_LEN && line[MARKER_LEN..].iter().any(|&c| c != b'\r') {
        return None;
    }
    Some(kind)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerError {
    /// `<<<<<<<` while a block is already open, at the given 1-based line.
    NestedOpen { line: usize },
    /// `>>>>>>>` without an open block.
    UnmatchedClose { line: usize },
    /// End of text inside a block opened at the given line.
    Unterminated { line: usize },
}

impl fmt::Display for MarkerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkerError::NestedOpen { line } => write!(f, "conflict opened again at line {line}"),
            MarkerError::UnmatchedClose { line } => write!(f, "conflict closed at line {line} without being opened"),
            MarkerError::Unterminated { line } => write!(f, "conflict opened at line {line} is never closed"),
        }
    }
}

impl core::error::Error for MarkerError {}

/// Counts `<<<<<<<` ... `>>>>>>>` blocks.
pub fn count_conflicts(text: &[u8]) -> Result<usize, MarkerError> {
    let mut open: Option<usize> = None;
    let mut count = 0;
    for (idx, line) in Lines::split(text).segments.iter().enumerate() {
        let line_no = idx + 1;
        match marker_of(line) {
            Some(Marker::Open) => {
                if open.is_some() {
                    return Err(MarkerError::NestedOpen { line: line_no });
                }
                open = Some(line_no);
            }
            Some(Marker::Close) => {
                if open.take().is_none() {
                    return Err(MarkerError::UnmatchedClose { line: line_no });
                }
                count += 1;
            }
            _ => {}
        }
    }
    match open {
        Some(line) => Err(MarkerError::Unterminated { line }),
        None => Ok(count),
    }
}
