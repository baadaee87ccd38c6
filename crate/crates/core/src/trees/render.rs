//! Plain-text renderings.
//!
//! Indented listing: the root label on the first line, then one line per
//! slot in preorder, indented two spaces per level, `slot: label` for
//! labeled nodes and `slot: *` for leaves.
//!
//! Graph description: one labeled node per line, `parent_path slot label`.
//! Paths are written `/i/j/...`, the root path as `/`; the root line is
//! `- - label`.

use std::fmt::Write;

use super::{CompletedTree, Node, Slot, SlotPath};

pub(super) fn text(tree: &CompletedTree) -> String {
    let mut out = String::new();
    writeln!(out, "{}", tree.root().label).unwrap();
    text_node(tree.root(), 1, &mut out);
    out
}

fn text_node(n: &Node, depth: usize, out: &mut String) {
    for (i, s) in n.slots.iter().enumerate() {
        let pad = "  ".repeat(depth);
        match s {
            Slot::Leaf => writeln!(out, "{pad}{i}: *").unwrap(),
            Slot::Node(c) => {
                writeln!(out, "{pad}{i}: {}", c.label).unwrap();
                text_node(c, depth + 1, out);
            }
        }
    }
}

pub(super) fn graph(tree: &CompletedTree) -> String {
    let mut out = String::new();
    writeln!(out, "- - {}", tree.root().label).unwrap();
    graph_node(tree.root(), &SlotPath::root(), &mut out);
    out
}

fn graph_node(n: &Node, path: &SlotPath, out: &mut String) {
    for (i, s) in n.slots.iter().enumerate() {
        if let Slot::Node(c) = s {
            writeln!(out, "{path} {i} {}", c.label).unwrap();
            graph_node(c, &path.child(i), out);
        }
    }
}
