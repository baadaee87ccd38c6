//! Weakly increasing trees.
//!
//! A weakly increasing tree is a rooted plane tree of fixed arity `k` whose
//! labels strictly increase along every root-to-leaf path and form the
//! interval `{1, ..., m}`. The same label may appear in different branches.
//!
//! Two representations live here:
//!
//! * [`LabeledTree`]: labeled nodes only, child slots either empty or
//!   occupied.
//! * [`CompletedTree`]: every empty slot filled with an unlabeled leaf
//!   ([`Slot::Leaf`]). Its size is the number of such leaves, which is
//!   `(k - 1) * nodes + 1`.
//!
//! Trees grow by [`CompletedTree::evolution_step`], which replaces a
//! nonempty set of leaves by fresh nodes that all carry the next label.

mod encoding;
mod render;

use std::fmt;

use thiserror::Error;

pub use encoding::{decode, DecodeError};

/// Root-to-node address, one slot index per level. The empty path is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotPath(pub Vec<usize>);

impl SlotPath {
    pub fn root() -> Self {
        SlotPath(Vec::new())
    }

    pub fn child(&self, slot: usize) -> Self {
        let mut v = self.0.clone();
        v.push(slot);
        SlotPath(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SlotPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for s in &self.0 {
            write!(f, "/{s}")?;
        }
        Ok(())
    }
}

impl From<Vec<usize>> for SlotPath {
    fn from(v: Vec<usize>) -> Self {
        SlotPath(v)
    }
}

/// A node of a [`LabeledTree`]. Missing trailing slots count as empty, and
/// equality ignores trailing empty slots.
#[derive(Clone, Debug)]
pub struct LabeledNode {
    pub label: u32,
    pub children: Vec<Option<LabeledNode>>,
}

impl LabeledNode {
    pub fn leaf(label: u32) -> Self {
        LabeledNode {
            label,
            children: Vec::new(),
        }
    }

    pub fn new(label: u32, children: Vec<Option<LabeledNode>>) -> Self {
        LabeledNode { label, children }
    }

    fn count(&self) -> usize {
        1 + self
            .children
            .iter()
            .flatten()
            .map(|c| c.count())
            .sum::<usize>()
    }

    fn occupied(&self) -> &[Option<LabeledNode>] {
        let end = self
            .children
            .iter()
            .rposition(Option::is_some)
            .map_or(0, |i| i + 1);
        &self.children[..end]
    }
}

impl PartialEq for LabeledNode {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.occupied() == other.occupied()
    }
}

impl Eq for LabeledNode {}

impl std::hash::Hash for LabeledNode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.label.hash(state);
        self.occupied().hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    pub root: LabeledNode,
}

impl LabeledTree {
    pub fn new(root: LabeledNode) -> Self {
        LabeledTree { root }
    }

    pub fn node_count(&self) -> usize {
        self.root.count()
    }
}

/// Why a tree failed [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("arity {0} is not supported (need k >= 2)")]
    InvalidArity(usize),
    #[error("malformed node at {path}: {slots} child slots exceed arity {arity}")]
    SlotOutOfRange {
        path: SlotPath,
        slots: usize,
        arity: usize,
    },
    #[error("node at {path} carries label 0 (labels start at 1)")]
    ZeroLabel { path: SlotPath },
    #[error("labels not strictly increasing at {path}: parent {parent} -> child {label}")]
    NotIncreasing {
        path: SlotPath,
        parent: u32,
        label: u32,
    },
    #[error(
        "label set is not an interval: {missing} absent below maximal label {max} (at {path})"
    )]
    LabelGap {
        path: SlotPath,
        missing: u32,
        max: u32,
    },
}

impl ValidationError {
    /// Structural problems, as opposed to violations of the labeling rules.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            ValidationError::InvalidArity(_) | ValidationError::SlotOutOfRange { .. }
        )
    }
}

/// Check both labeling constraints: strictly increasing along branches and
/// labels forming `{1, ..., max}`.
pub fn validate(tree: &LabeledTree, arity: usize) -> Result<(), ValidationError> {
    if arity < 2 {
        return Err(ValidationError::InvalidArity(arity));
    }
    // structure first, so a malformed tree is never reported as a label problem
    check_structure(&tree.root, arity, &SlotPath::root())?;

    let mut seen = Vec::new();
    let mut max_at = (0u32, SlotPath::root());
    check_labels(&tree.root, None, &SlotPath::root(), &mut seen, &mut max_at)?;
    let max = max_at.0;
    if let Some(missing) = (1..=max).find(|&l| !seen.get(l as usize).copied().unwrap_or(false)) {
        return Err(ValidationError::LabelGap {
            path: max_at.1,
            missing,
            max,
        });
    }
    Ok(())
}

fn check_structure(
    node: &LabeledNode,
    arity: usize,
    path: &SlotPath,
) -> Result<(), ValidationError> {
    if node.children.len() > arity {
        return Err(ValidationError::SlotOutOfRange {
            path: path.clone(),
            slots: node.children.len(),
            arity,
        });
    }
    for (i, c) in node.children.iter().enumerate() {
        if let Some(c) = c {
            check_structure(c, arity, &path.child(i))?;
        }
    }
    Ok(())
}

fn check_labels(
    node: &LabeledNode,
    parent: Option<u32>,
    path: &SlotPath,
    seen: &mut Vec<bool>,
    max_at: &mut (u32, SlotPath),
) -> Result<(), ValidationError> {
    if node.label == 0 {
        return Err(ValidationError::ZeroLabel { path: path.clone() });
    }
    if let Some(p) = parent {
        if node.label <= p {
            return Err(ValidationError::NotIncreasing {
                path: path.clone(),
                parent: p,
                label: node.label,
            });
        }
    }
    let l = node.label as usize;
    if seen.len() <= l {
        seen.resize(l + 1, false);
    }
    seen[l] = true;
    if node.label > max_at.0 {
        *max_at = (node.label, path.clone());
    }
    for (i, c) in node.children.iter().enumerate() {
        if let Some(c) = c {
            check_labels(c, Some(node.label), &path.child(i), seen, max_at)?;
        }
    }
    Ok(())
}

/// Content of a child slot in a completed tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Unlabeled leaf.
    Leaf,
    Node(Box<Node>),
}

/// Labeled node of a completed tree; always exactly `arity` slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: u32,
    pub slots: Vec<Slot>,
}

impl Node {
    fn fresh(label: u32, arity: usize) -> Node {
        Node {
            label,
            slots: vec![Slot::Leaf; arity],
        }
    }
}

/// A weakly increasing tree with every missing child replaced by a leaf.
///
/// Values are immutable; growth returns a new tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompletedTree {
    arity: usize,
    root: Node,
    size: usize,
    nodes: usize,
    max_label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("leaf subset is empty")]
    EmptySubset,
    #[error("position {0} does not address a leaf")]
    NotALeaf(SlotPath),
    #[error("position {0} selected twice")]
    Duplicate(SlotPath),
    #[error("leaf index {index} out of range (tree has {leaves} leaves)")]
    LeafIndexOutOfRange { index: usize, leaves: usize },
    #[error("next label must be {expected}, got {got}")]
    WrongLabel { expected: u32, got: u32 },
}

impl CompletedTree {
    /// The smallest tree: a root labeled 1 with `arity` leaves.
    pub fn root_tree(arity: usize) -> Self {
        assert!(arity >= 2, "arity must be at least 2");
        CompletedTree {
            arity,
            root: Node::fresh(1, arity),
            size: arity,
            nodes: 1,
            max_label: 1,
        }
    }

    /// Build from a raw node structure, recomputing the bookkeeping fields.
    /// The caller is responsible for the labeling constraints.
    pub(crate) fn from_root(arity: usize, root: Node) -> Self {
        let (mut nodes, mut leaves, mut max) = (0, 0, 0);
        tally(&root, &mut nodes, &mut leaves, &mut max);
        CompletedTree {
            arity,
            root,
            size: leaves,
            nodes,
            max_label: max,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of labeled nodes.
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    /// Paths of all leaves in canonical (preorder, left-to-right) order.
    pub fn leaf_paths(&self) -> Vec<SlotPath> {
        let mut out = Vec::with_capacity(self.size);
        fn walk(n: &Node, path: &mut Vec<usize>, out: &mut Vec<SlotPath>) {
            for (i, s) in n.slots.iter().enumerate() {
                path.push(i);
                match s {
                    Slot::Leaf => out.push(SlotPath(path.clone())),
                    Slot::Node(c) => walk(c, path, out),
                }
                path.pop();
            }
        }
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }

    /// Replace each selected leaf by a node labeled `next_label` carrying
    /// `arity` fresh leaves.
    pub fn evolution_step(
        &self,
        leaf_subset: &[SlotPath],
        next_label: u32,
    ) -> Result<CompletedTree, StepError> {
        if leaf_subset.is_empty() {
            return Err(StepError::EmptySubset);
        }
        self.check_label(next_label)?;
        let mut sorted: Vec<&SlotPath> = leaf_subset.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(StepError::Duplicate(w[0].clone()));
        }
        let mut root = self.root.clone();
        for path in leaf_subset {
            let slot =
                slot_mut(&mut root, &path.0).ok_or_else(|| StepError::NotALeaf(path.clone()))?;
            if !matches!(slot, Slot::Leaf) {
                return Err(StepError::NotALeaf(path.clone()));
            }
            *slot = Slot::Node(Box::new(Node::fresh(next_label, self.arity)));
        }
        Ok(self.grown(root, leaf_subset.len(), next_label))
    }

    /// Same as [`evolution_step`](Self::evolution_step) with leaves addressed
    /// by their index in canonical order. `indices` must be strictly
    /// increasing.
    pub fn evolve_indexed(
        &self,
        indices: &[usize],
        next_label: u32,
    ) -> Result<CompletedTree, StepError> {
        if indices.is_empty() {
            return Err(StepError::EmptySubset);
        }
        self.check_label(next_label)?;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                let leaves = self.leaf_paths();
                return Err(match leaves.get(w[1]) {
                    Some(p) if w[0] == w[1] => StepError::Duplicate(p.clone()),
                    _ => StepError::LeafIndexOutOfRange {
                        index: w[1],
                        leaves: self.size,
                    },
                });
            }
        }
        let last = *indices.last().unwrap();
        if last >= self.size {
            return Err(StepError::LeafIndexOutOfRange {
                index: last,
                leaves: self.size,
            });
        }
        let mut root = self.root.clone();
        let mut counter = 0usize;
        let mut next = 0usize;
        expand_walk(
            &mut root,
            indices,
            &mut counter,
            &mut next,
            next_label,
            self.arity,
        );
        Ok(self.grown(root, indices.len(), next_label))
    }

    fn check_label(&self, next_label: u32) -> Result<(), StepError> {
        let expected = self.max_label + 1;
        if next_label != expected {
            return Err(StepError::WrongLabel {
                expected,
                got: next_label,
            });
        }
        Ok(())
    }

    fn grown(&self, root: Node, expanded: usize, label: u32) -> CompletedTree {
        CompletedTree {
            arity: self.arity,
            root,
            size: self.size + expanded * (self.arity - 1),
            nodes: self.nodes + expanded,
            max_label: label,
        }
    }

    /// Drop the leaves.
    pub fn to_labeled(&self) -> LabeledTree {
        fn strip(n: &Node) -> LabeledNode {
            LabeledNode {
                label: n.label,
                children: n
                    .slots
                    .iter()
                    .map(|s| match s {
                        Slot::Leaf => None,
                        Slot::Node(c) => Some(strip(c)),
                    })
                    .collect(),
            }
        }
        LabeledTree::new(strip(&self.root))
    }

    /// Longest root-to-leaf chain of labeled nodes (the root tree has depth 1).
    pub fn depth(&self) -> usize {
        fn d(n: &Node) -> usize {
            1 + n
                .slots
                .iter()
                .map(|s| match s {
                    Slot::Leaf => 0,
                    Slot::Node(c) => d(c),
                })
                .max()
                .unwrap_or(0)
        }
        d(&self.root)
    }

    /// See [`encoding`](self) for the byte layout.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        encoding::encode(self)
    }

    pub fn render_text(&self) -> String {
        render::text(self)
    }

    pub fn render_graph(&self) -> String {
        render::graph(self)
    }
}

fn tally(n: &Node, nodes: &mut usize, leaves: &mut usize, max: &mut u32) {
    *nodes += 1;
    *max = (*max).max(n.label);
    for s in &n.slots {
        match s {
            Slot::Leaf => *leaves += 1,
            Slot::Node(c) => tally(c, nodes, leaves, max),
        }
    }
}

fn slot_mut<'a>(root: &'a mut Node, path: &[usize]) -> Option<&'a mut Slot> {
    let (&last, prefix) = path.split_last()?;
    let mut node = root;
    for &i in prefix {
        match node.slots.get_mut(i)? {
            Slot::Node(c) => node = c,
            Slot::Leaf => return None,
        }
    }
    node.slots.get_mut(last)
}

fn expand_walk(
    node: &mut Node,
    indices: &[usize],
    counter: &mut usize,
    next: &mut usize,
    label: u32,
    arity: usize,
) {
    for slot in node.slots.iter_mut() {
        if *next == indices.len() {
            return;
        }
        match slot {
            Slot::Leaf => {
                if indices[*next] == *counter {
                    *slot = Slot::Node(Box::new(Node::fresh(label, arity)));
                    *next += 1;
                }
                *counter += 1;
            }
            Slot::Node(c) => expand_walk(c, indices, counter, next, label, arity),
        }
    }
}

/// Fill every empty slot of a valid labeled tree with a leaf.
pub fn complete(tree: &LabeledTree, arity: usize) -> Result<CompletedTree, ValidationError> {
    validate(tree, arity)?;
    fn fill(n: &LabeledNode, arity: usize) -> Node {
        let slots = (0..arity)
            .map(|i| match n.children.get(i) {
                Some(Some(c)) => Slot::Node(Box::new(fill(c, arity))),
                _ => Slot::Leaf,
            })
            .collect();
        Node {
            label: n.label,
            slots,
        }
    }
    Ok(CompletedTree::from_root(arity, fill(&tree.root, arity)))
}
