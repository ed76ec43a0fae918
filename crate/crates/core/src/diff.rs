//! Two-way sequence diff.
//!
//! [`diff2`] computes a maximum-length common subsequence between two
//! sequences and then normalizes the boundaries of each change group the way
//! GNU diff and git's xdiff do: a group of inserted or deleted segments is slid
//! as far down as equal neighbours allow, unless sliding it lets it line up
//! with a change on the other side. Sliding never changes the number of
//! matches, it only picks a canonical matching among equally long ones.
//!
//! Small problems are solved with a full dynamic-programming table; large ones
//! are split with Hirschberg's linear-space recursion.

use alloc::vec;
use alloc::vec::Vec;

/// Largest DP table (in cells) built before switching to divide and conquer.
const DP_CELL_LIMIT: usize = 4 << 20;

/// Correspondence between two sequences.
///
/// `(Some(i), Some(j))` is a match of equal elements, `(Some(i), None)` a
/// deletion from the left sequence, `(None, Some(j))` an insertion from the
/// right one. Every index of both sequences occurs exactly once, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    pub pairs: Vec<(Option<usize>, Option<usize>)>,
}

impl Alignment {
    pub fn matches(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().filter_map(|&p| match p {
            (Some(i), Some(j)) => Some((i, j)),
            _ => None,
        })
    }

    pub fn match_count(&self) -> usize {
        self.matches().count()
    }

    /// For every index of the left sequence, the right index it matches.
    pub fn left_to_right(&self, left_len: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; left_len];
        for (i, j) in self.matches() {
            map[i] = Some(j);
        }
        map
    }
}

/// Diffs `a` against `b`.
pub fn diff2<T: PartialEq>(a: &[T], b: &[T]) -> Alignment {
    diff2_with_limit(a, b, DP_CELL_LIMIT)
}

pub(crate) fn diff2_with_limit<T: PartialEq>(a: &[T], b: &[T], cell_limit: usize) -> Alignment {
    let mut a_changed = vec![true; a.len()];
    let mut b_changed = vec![true; b.len()];
    lcs_into(a, b, 0, 0, &mut a_changed, &mut b_changed, cell_limit);

    let mut a_side = Side {
        recs: a,
        changed: a_changed,
    };
    let mut b_side = Side {
        recs: b,
        changed: b_changed,
    };
    compact(&mut a_side, &b_side);
    compact(&mut b_side, &a_side);

    let (a_changed, b_changed) = (a_side.changed, b_side.changed);
    let mut pairs = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if i < a.len() && a_changed[i] {
            pairs.push((Some(i), None));
            i += 1;
        } else if j < b.len() && b_changed[j] {
            pairs.push((None, Some(j)));
            j += 1;
        } else {
            debug_assert!(i < a.len() && j < b.len() && a[i] == b[j]);
            pairs.push((Some(i), Some(j)));
            i += 1;
            j += 1;
        }
    }
    Alignment { pairs }
}

/// Clears the `changed` flag of every element that takes part in a longest
/// common subsequence of `a` and `b`.
fn lcs_into<T: PartialEq>(
    a: &[T],
    b: &[T],
    a_off: usize,
    b_off: usize,
    a_changed: &mut [bool],
    b_changed: &mut [bool],
    cell_limit: usize,
) {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    for k in 0..prefix {
        a_changed[a_off + k] = false;
        b_changed[b_off + k] = false;
    }
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let (a_off, b_off) = (a_off + prefix, b_off + prefix);
    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    for k in 0..suffix {
        a_changed[a_off + a.len() - 1 - k] = false;
        b_changed[b_off + b.len() - 1 - k] = false;
    }
    let (a, b) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);
    if a.is_empty() || b.is_empty() {
        return;
    }

    if (a.len() + 1).saturating_mul(b.len() + 1) <= cell_limit || a.len() == 1 {
        lcs_table(a, b, a_off, b_off, a_changed, b_changed);
        return;
    }

    // Hirschberg split: find the column where an optimal path crosses the
    // middle row of `a`.
    let mid = a.len() / 2;
    let forward = lcs_row(a[..mid].iter(), b.iter());
    let backward = lcs_row(a[mid..].iter().rev(), b.iter().rev());
    let m = b.len();
    let mut best = 0;
    let mut best_score = 0;
    for k in 0..=m {
        let score = forward[k] + backward[m - k];
        if score > best_score {
            best = k;
            best_score = score;
        }
    }
    lcs_into(&a[..mid], &b[..best], a_off, b_off, a_changed, b_changed, cell_limit);
    lcs_into(
        &a[mid..],
        &b[best..],
        a_off + mid,
        b_off + best,
        a_changed,
        b_changed,
        cell_limit,
    );
}

/// Last row of the LCS-length table of `a` against every prefix of `b`.
fn lcs_row<'t, T: PartialEq + 't>(
    a: impl Iterator<Item = &'t T>,
    b: impl Iterator<Item = &'t T> + Clone,
) -> Vec<u32> {
    let m = b.clone().count();
    let mut prev = vec![0u32; m + 1];
    let mut cur = vec![0u32; m + 1];
    for x in a {
        for (j, y) in b.clone().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev
}

fn lcs_table<T: PartialEq>(
    a: &[T],
    b: &[T],
    a_off: usize,
    b_off: usize,
    a_changed: &mut [bool],
    b_changed: &mut [bool],
) {
    let (n, m) = (a.len(), b.len());
    let width = m + 1;
    // suffix[i * width + j] = LCS length of a[i..] and b[j..]
    let mut suffix = vec![0u32; (n + 1) * width];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            suffix[i * width + j] = if a[i] == b[j] {
                suffix[(i + 1) * width + j + 1] + 1
            } else {
                suffix[(i + 1) * width + j].max(suffix[i * width + j + 1])
            };
        }
    }
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if a[i] == b[j] {
            a_changed[a_off + i] = false;
            b_changed[b_off + j] = false;
            i += 1;
            j += 1;
        } else if suffix[(i + 1) * width + j] >= suffix[i * width + j + 1] {
            i += 1;
        } else {
            j += 1;
        }
    }
}

struct Side<'x, T> {
    recs: &'x [T],
    changed: Vec<bool>,
}

/// A maximal run `[start, end)` of changed elements, possibly empty.
#[derive(Clone, Copy)]
struct Group {
    start: usize,
    end: usize,
}

impl<T: PartialEq> Side<'_, T> {
    fn len(&self) -> usize {
        self.recs.len()
    }

    fn first_group(&self) -> Group {
        let mut g = Group { start: 0, end: 0 };
        while g.end < self.len() && self.changed[g.end] {
            g.end += 1;
        }
        g
    }

    fn next_group(&self, g: &mut Group) -> bool {
        if g.end == self.len() {
            return false;
        }
        g.start = g.end + 1;
        g.end = g.start;
        while g.end < self.len() && self.changed[g.end] {
            g.end += 1;
        }
        true
    }

    fn previous_group(&self, g: &mut Group) -> bool {
        if g.start == 0 {
            return false;
        }
        g.end = g.start - 1;
        g.start = g.end;
        while g.start > 0 && self.changed[g.start - 1] {
            g.start -= 1;
        }
        true
    }

    fn slide_down(&mut self, g: &mut Group) -> bool {
        if g.end < self.len() && self.recs[g.start] == self.recs[g.end] {
            self.changed[g.start] = false;
            self.changed[g.end] = true;
            g.start += 1;
            g.end += 1;
            while g.end < self.len() && self.changed[g.end] {
                g.end += 1;
            }
            true
        } else {
            false
        }
    }

    fn slide_up(&mut self, g: &mut Group) -> bool {
        if g.start > 0 && self.recs[g.start - 1] == self.recs[g.end - 1] {
            g.start -= 1;
            g.end -= 1;
            self.changed[g.start] = true;
            self.changed[g.end] = false;
            while g.start > 0 && self.changed[g.start - 1] {
                g.start -= 1;
            }
            true
        } else {
            false
        }
    }
}

/// Moves change groups of `side` to canonical positions, keeping group
/// synchronization with `other` (whose flags are read, not written).
fn compact<T: PartialEq>(side: &mut Side<'_, T>, other: &Side<'_, T>) {
    let mut g = side.first_group();
    let mut go = other.first_group();
    loop {
        if g.end != g.start {
            let mut earliest_end;
            let mut end_matching_other;
            loop {
                let size = g.end - g.start;
                end_matching_other = None;

                while side.slide_up(&mut g) {
                    let synced = other.previous_group(&mut go);
                    debug_assert!(synced);
                }
                earliest_end = g.end;
                if go.end > go.start {
                    end_matching_other = Some(g.end);
                }

                while side.slide_down(&mut g) {
                    let synced = other.next_group(&mut go);
                    debug_assert!(synced);
                    if go.end > go.start {
                        end_matching_other = Some(g.end);
                    }
                }
                if size == g.end - g.start {
                    break;
                }
            }

            if g.end != earliest_end && end_matching_other.is_some() {
                while go.end == go.start {
                    let slid = side.slide_up(&mut g);
                    let synced = other.previous_group(&mut go);
                    debug_assert!(slid && synced);
                }
            }
        }
        if !side.next_group(&mut g) {
            break;
        }
        let synced = other.next_group(&mut go);
        debug_assert!(synced);
    }
}
