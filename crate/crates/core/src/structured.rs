//! Superimposition of three declaration trees.
//!
//! Members are matched by kind and identifier. Unchanged or one-sided edits
//! are taken without looking at their text; members edited on both sides are
//! merged textually according to a [`BodyMergePolicy`]. Members added by one
//! side are placed after their nearest preceding sibling that also exists in
//! the base version, left additions before right ones.
//!
//! Ordered declarations (package, imports, enum constants) always form the
//! leading run of their parent's children; that run is merged as one text
//! block with the line-based merge.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::lines::Lines;
use crate::merge::{merge3, Labels, MergeOutcome};
use crate::parser::{DeclKind, DeclNode, DeclTree, NodeText};
use crate::separator::{merge_body, SeparatorSet, UnmarkError};

/// How member text edited on both sides is merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyMergePolicy {
    /// Plain line-based merge.
    PlainTextual,
    /// Line-based merge after isolating the given separators.
    SeparatorEnhanced(SeparatorSet),
}

/// One declaration as it appears (or not) in each of the three versions.
#[derive(Clone, Debug)]
pub struct MatchedNode<'t> {
    pub base: Option<&'t DeclNode>,
    pub left: Option<&'t DeclNode>,
    pub right: Option<&'t DeclNode>,
    /// Leading ordered children of each version: base, left, right.
    pub ordered: [&'t [DeclNode]; 3],
    /// Matched unordered children in output order.
    pub children: Vec<MatchedNode<'t>>,
}

impl<'t> MatchedNode<'t> {
    pub fn kind(&self) -> DeclKind {
        self.any().kind
    }

    pub fn identifier(&self) -> &'t str {
        &self.any().identifier
    }

    fn any(&self) -> &'t DeclNode {
        self.base
            .or(self.left)
            .or(self.right)
            .expect("matched node has at least one version")
    }
}

fn is_container(kind: DeclKind) -> bool {
    matches!(kind, DeclKind::CompilationUnit | DeclKind::TypeDecl)
}

fn split_ordered(node: Option<&DeclNode>) -> (&[DeclNode], &[DeclNode]) {
    match node {
        Some(n) => {
            let k = n.children.iter().take_while(|c| c.kind.is_ordered()).count();
            n.children.split_at(k)
        }
        None => (&[], &[]),
    }
}

type Key<'t> = (DeclKind, &'t str);

fn key(n: &DeclNode) -> Key<'_> {
    (n.kind, n.identifier.as_str())
}

fn index(nodes: &[DeclNode]) -> BTreeMap<Key<'_>, &DeclNode> {
    nodes.iter().map(|n| (key(n), n)).collect()
}

/// Matches the declarations of three parsed versions of one file.
pub fn match_trees<'t>(base: &'t DeclTree, left: &'t DeclTree, right: &'t DeclTree) -> MatchedNode<'t> {
    match_nodes(Some(&base.root), Some(&left.root), Some(&right.root))
}

fn match_nodes<'t>(base: Option<&'t DeclNode>, left: Option<&'t DeclNode>, right: Option<&'t DeclNode>) -> MatchedNode<'t> {
    let (ob, ub) = split_ordered(base);
    let (ol, ul) = split_ordered(left);
    let (or, ur) = split_ordered(right);
    let mut matched = MatchedNode {
        base,
        left,
        right,
        ordered: [ob, ol, or],
        children: Vec::new(),
    };
    let kind = base.or(left).or(right).map(|n| n.kind);
    if !kind.is_some_and(is_container) {
        return matched;
    }

    let (in_left, in_right) = (index(ul), index(ur));

    // Slot 0 holds additions placed before every base member, slot k + 1
    // additions placed after base member k.
    let mut left_adds: Vec<Vec<&DeclNode>> = vec![Vec::new(); ub.len() + 1];
    let mut right_adds: Vec<Vec<&DeclNode>> = vec![Vec::new(); ub.len() + 1];
    let base_pos: BTreeMap<Key<'_>, usize> = ub.iter().enumerate().map(|(i, n)| (key(n), i)).collect();

    let mut anchor = 0;
    for n in ul {
        match base_pos.get(&key(n)) {
            Some(&i) => anchor = i + 1,
            None => left_adds[anchor].push(n),
        }
    }
    anchor = 0;
    for n in ur {
        match base_pos.get(&key(n)) {
            Some(&i) => anchor = i + 1,
            None if in_left.contains_key(&key(n)) => {}
            None => right_adds[anchor].push(n),
        }
    }

    let push_additions = |slot: usize, children: &mut Vec<MatchedNode<'t>>| {
        for &n in &left_adds[slot] {
            children.push(match_nodes(None, Some(n), in_right.get(&key(n)).copied()));
        }
        for &n in &right_adds[slot] {
            children.push(match_nodes(None, None, Some(n)));
        }
    };
    push_additions(0, &mut matched.children);
    for (i, n) in ub.iter().enumerate() {
        let k = key(n);
        matched.children.push(match_nodes(
            Some(n),
            in_left.get(&k).copied(),
            in_right.get(&k).copied(),
        ));
        push_additions(i + 1, &mut matched.children);
    }
    matched
}

fn owned_lines(text: &[u8]) -> Lines<'_> {
    Lines::split(text)
}

fn plain_merge(base: &[u8], left: &[u8], right: &[u8], labels: &Labels) -> NodeText {
    if left == base || left == right {
        return NodeText::Plain(right.to_vec());
    }
    if right == base {
        return NodeText::Plain(left.to_vec());
    }
    let outcome = merge3(&owned_lines(base), &owned_lines(left), &owned_lines(right), labels.clone());
    NodeText::Merged(outcome)
}

fn policy_merge(
    base: &[u8],
    left: &[u8],
    right: &[u8],
    policy: &BodyMergePolicy,
    labels: &Labels,
) -> Result<NodeText, UnmarkError> {
    match policy {
        BodyMergePolicy::PlainTextual => Ok(plain_merge(base, left, right, labels)),
        BodyMergePolicy::SeparatorEnhanced(seps) => {
            if left == base || left == right {
                return Ok(NodeText::Plain(right.to_vec()));
            }
            if right == base {
                return Ok(NodeText::Plain(left.to_vec()));
            }
            Ok(NodeText::Merged(merge_body(base, left, right, seps, labels.clone())?))
        }
    }
}

fn plain_text(node: Option<&DeclNode>) -> Vec<u8> {
    node.map(DeclNode::text).unwrap_or_default()
}

fn concat(nodes: &[DeclNode]) -> Vec<u8> {
    nodes.iter().flat_map(DeclNode::text).collect()
}

fn text_node(kind: DeclKind, identifier: &str, text: NodeText) -> DeclNode {
    DeclNode {
        kind,
        identifier: identifier.into(),
        header: text,
        children: Vec::new(),
        body: NodeText::empty(),
    }
}

/// Merges one matched declaration. `None` means the declaration is deleted.
pub fn merge_matched(
    node: &MatchedNode<'_>,
    policy: &BodyMergePolicy,
    labels: &Labels,
) -> Result<Option<DeclNode>, UnmarkError> {
    let kind = node.kind();
    let id = node.identifier();
    let (b, l, r) = (node.base, node.left, node.right);
    let (bt, lt, rt) = (plain_text(b), plain_text(l), plain_text(r));

    match (b, l, r) {
        (Some(_), None, None) => Ok(None),
        (None, Some(n), None) | (None, None, Some(n)) => Ok(Some(n.clone())),
        // deleted on one side: silent when the other side kept it as is
        (Some(_), None, Some(_)) | (Some(_), Some(_), None) => {
            if lt == bt || rt == bt {
                Ok(None)
            } else {
                let outcome = MergeOutcome::single_conflict(&lt, &bt, &rt, labels.clone());
                Ok(Some(text_node(kind, id, NodeText::Merged(outcome))))
            }
        }
        _ if lt == rt => Ok(l.cloned()),
        (Some(_), Some(ln), Some(rn)) if !is_container(kind) => {
            if lt == bt {
                Ok(Some(rn.clone()))
            } else if rt == bt {
                Ok(Some(ln.clone()))
            } else {
                let text = policy_merge(&bt, &lt, &rt, policy, labels)?;
                Ok(Some(text_node(kind, id, text)))
            }
        }
        (None, Some(_), Some(_)) if !is_container(kind) => {
            let outcome = MergeOutcome::single_conflict(&lt, &[], &rt, labels.clone());
            Ok(Some(text_node(kind, id, NodeText::Merged(outcome))))
        }
        _ => merge_container(node, policy, labels).map(Some),
    }
}

fn part(node: Option<&DeclNode>, body: bool) -> &[u8] {
    node.and_then(|n| if body { n.body.plain() } else { n.header.plain() })
        .unwrap_or_default()
}

fn merge_container(node: &MatchedNode<'_>, policy: &BodyMergePolicy, labels: &Labels) -> Result<DeclNode, UnmarkError> {
    let (b, l, r) = (node.base, node.left, node.right);
    let header = plain_merge(part(b, false), part(l, false), part(r, false), labels);
    let body = plain_merge(part(b, true), part(l, true), part(r, true), labels);

    let mut children = Vec::new();
    let [ob, ol, or] = node.ordered;
    let ordered = plain_merge(&concat(ob), &concat(ol), &concat(or), labels);
    let ordered_is_empty = matches!(&ordered, NodeText::Plain(t) if t.is_empty());
    if !ordered_is_empty {
        let first = ob.first().or(ol.first()).or(or.first());
        let kind = first.map_or(DeclKind::Import, |n| n.kind);
        children.push(text_node(kind, "", ordered));
    }
    for child in &node.children {
        if let Some(merged) = merge_matched(child, policy, labels)? {
            children.push(merged);
        }
    }
    Ok(DeclNode {
        kind: node.kind(),
        identifier: node.identifier().into(),
        header,
        children,
        body,
    })
}

/// Merges three parsed versions of a file.
pub fn merge_trees(
    base: &DeclTree,
    left: &DeclTree,
    right: &DeclTree,
    policy: &BodyMergePolicy,
    labels: &Labels,
) -> Result<DeclTree, UnmarkError> {
    let matched = match_trees(base, left, right);
    let root = merge_matched(&matched, policy, labels)?
        .unwrap_or_else(|| DeclNode::new(DeclKind::CompilationUnit, "", Vec::new(), Vec::new()));
    Ok(DeclTree { root })
}
