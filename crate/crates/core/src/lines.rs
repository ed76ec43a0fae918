//! Splitting text into newline-terminated segments and joining it back.

use alloc::vec::Vec;

/// A text split on `\n`.
///
/// Segments never contain the `\n` terminator. A `\r` before the terminator
/// stays attached to the segment, so CRLF input round-trips unchanged. The
/// final segment may lack a terminator; `trailing_terminator` records whether
/// it had one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lines<'a> {
    pub segments: Vec<&'a [u8]>,
    pub trailing_terminator: bool,
}

impl<'a> Lines<'a> {
    pub fn split(text: &'a [u8]) -> Self {
        if text.is_empty() {
            return Lines::default();
        }
        let mut segments: Vec<&[u8]> = text.split(|&b| b == b'\n').collect();
        let trailing_terminator = text.last() == Some(&b'\n');
        if trailing_terminator {
            // `split` yields an empty tail after the final terminator.
            segments.pop();
        }
        Lines {
            segments,
            trailing_terminator,
        }
    }

    pub fn from_segments(segments: Vec<&'a [u8]>, trailing_terminator: bool) -> Self {
        Lines {
            segments,
            trailing_terminator,
        }
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn join(&self) -> Vec<u8> {
        join_segments(&self.segments, self.trailing_terminator)
    }
}

/// Joins segments with `\n`, appending a final terminator when requested.
pub fn join_segments<S: AsRef<[u8]>>(segments: &[S], trailing_terminator: bool) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        out.extend_from_slice(seg.as_ref());
    }
    if trailing_terminator && !segments.is_empty() {
        out.push(b'\n');
    }
    out
}
