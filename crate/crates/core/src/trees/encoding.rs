//! Canonical byte encoding of completed trees.
//!
//! Layout (all integers unsigned LEB128):
//!
//! ```text
//! arity
//! for each labeled node in preorder (slots visited left to right):
//!     label
//!     occupancy mask, ceil(arity / 8) bytes; bit (i % 8) of byte (i / 8)
//!     is set iff slot i holds a labeled node
//! ```
//!
//! Leaves are implicit: every clear bit is a leaf. The encoding is a
//! function of the plane structure and the labels only, so two trees
//! encode equal iff they are equal.

use thiserror::Error;

use super::{CompletedTree, Node, Slot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("input ended in the middle of a record")]
    Truncated,
    #[error("varint does not fit in 64 bits")]
    Overflow,
    #[error("arity {0} is not supported")]
    BadArity(u64),
    #[error("label {0} out of range")]
    BadLabel(u64),
    #[error("{0} trailing bytes after the tree")]
    Trailing(usize),
}

pub(super) fn encode(tree: &CompletedTree) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 + tree.node_count() * (1 + tree.arity().div_ceil(8)));
    put_varint(&mut out, tree.arity() as u64);
    encode_node(tree.root(), tree.arity(), &mut out);
    out
}

fn encode_node(n: &Node, arity: usize, out: &mut Vec<u8>) {
    put_varint(out, n.label as u64);
    let start = out.len();
    out.resize(start + arity.div_ceil(8), 0);
    for (i, s) in n.slots.iter().enumerate() {
        if matches!(s, Slot::Node(_)) {
            out[start + i / 8] |= 1 << (i % 8);
        }
    }
    for s in &n.slots {
        if let Slot::Node(c) = s {
            encode_node(c, arity, out);
        }
    }
}

/// Inverse of [`CompletedTree::canonical_encoding`].
///
/// Only the byte layout is checked; the labeling constraints are not.
pub fn decode(bytes: &[u8]) -> Result<CompletedTree, DecodeError> {
    let mut pos = 0;
    let arity = get_varint(bytes, &mut pos)?;
    if !(2..=1 << 16).contains(&arity) {
        return Err(DecodeError::BadArity(arity));
    }
    let arity = arity as usize;
    let root = decode_node(bytes, &mut pos, arity)?;
    if pos != bytes.len() {
        return Err(DecodeError::Trailing(bytes.len() - pos));
    }
    Ok(CompletedTree::from_root(arity, root))
}

fn decode_node(bytes: &[u8], pos: &mut usize, arity: usize) -> Result<Node, DecodeError> {
    let label = get_varint(bytes, pos)?;
    if label == 0 || label > u32::MAX as u64 {
        return Err(DecodeError::BadLabel(label));
    }
    let mask_len = arity.div_ceil(8);
    let mask = bytes
        .get(*pos..*pos + mask_len)
        .ok_or(DecodeError::Truncated)?
        .to_vec();
    *pos += mask_len;
    let mut slots = Vec::with_capacity(arity);
    for i in 0..arity {
        if mask[i / 8] & (1 << (i % 8)) != 0 {
            slots.push(Slot::Node(Box::new(decode_node(bytes, pos, arity)?)));
        } else {
            slots.push(Slot::Leaf);
        }
    }
    Ok(Node {
        label: label as u32,
        slots,
    })
}

fn put_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn get_varint(bytes: &[u8], pos: &mut usize) -> Result<u64, DecodeError> {
    let mut v = 0u64;
    let mut shift = 0;
    loop {
        let b = *bytes.get(*pos).ok_or(DecodeError::Truncated)?;
        *pos += 1;
        if shift == 63 && b > 1 {
            return Err(DecodeError::Overflow);
        }
        v |= ((b & 0x7f) as u64) << shift;
        if b & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
        if shift > 63 {
            return Err(DecodeError::Overflow);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::SlotPath;

    #[test]
    fn root_tree_bytes() {
        assert_eq!(
            CompletedTree::root_tree(2).canonical_encoding(),
            vec![2, 1, 0]
        );
        assert_eq!(
            CompletedTree::root_tree(9).canonical_encoding(),
            vec![9, 1, 0, 0]
        );
    }

    #[test]
    fn left_and_right_children_differ() {
        let t = CompletedTree::root_tree(2);
        let l = t.evolution_step(&[SlotPath(vec![0])], 2).unwrap();
        let r = t.evolution_step(&[SlotPath(vec![1])], 2).unwrap();
        assert_eq!(l.canonical_encoding(), vec![2, 1, 0b01, 2, 0]);
        assert_eq!(r.canonical_encoding(), vec![2, 1, 0b10, 2, 0]);
        assert_eq!(decode(&l.canonical_encoding()).unwrap(), l);
        assert_eq!(decode(&r.canonical_encoding()).unwrap(), r);
    }

    #[test]
    fn large_labels_use_multibyte_varints() {
        let mut t = CompletedTree::root_tree(2);
        for label in 2..=200 {
            t = t.evolve_indexed(&[0], label).unwrap();
        }
        let bytes = t.canonical_encoding();
        assert_eq!(decode(&bytes).unwrap(), t);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode(&[]), Err(DecodeError::Truncated));
        assert_eq!(decode(&[1, 1, 0]), Err(DecodeError::BadArity(1)));
        assert_eq!(decode(&[2, 0, 0]), Err(DecodeError::BadLabel(0)));
        assert_eq!(decode(&[2, 1]), Err(DecodeError::Truncated));
        assert_eq!(decode(&[2, 1, 1, 2]), Err(DecodeError::Truncated));
        assert_eq!(decode(&[2, 1, 0, 7]), Err(DecodeError::Trailing(1)));
        assert_eq!(decode(&[0xff; 11]), Err(DecodeError::Overflow));
    }
}
