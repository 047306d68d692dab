//! Labelled balanced binary NAND trees with the two-vertex tail, plus
//! classical brute-force evaluators used as ground truth.
//!
//! Labelling: the un-tailed tree uses breadth-first labels 1..2^L - 1 with
//! children 2v and 2v + 1. Attaching the tail renames the chain to
//! r'' = 0, r' = 1, subtree root = 2, which prepends a 1 bit to every
//! original label; leaf i then sits at label 2^L + i. Every real leaf has
//! bit L set and bit L - 1 clear.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap keeping label arithmetic and enumeration in range.
pub const MAX_LEVELS: usize = 20;
/// Enumeration cap on leaf count.
pub const MAX_ENUM_LEAVES: usize = 20;

/// Shape of a tailed balanced binary tree with L levels below the tail
/// (root level 1, leaves level L).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeShape {
    levels: usize,
}

impl TreeShape {
    pub fn new(levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(Error::TooFewLevels(levels));
        }
        if levels > MAX_LEVELS {
            return Err(Error::TooManyLevels(levels, MAX_LEVELS));
        }
        Ok(TreeShape { levels })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Leaf count of the un-tailed tree.
    pub fn n_leaves(&self) -> usize {
        1 << (self.levels - 1)
    }

    /// Tailed walker register size (one qubit more than the un-tailed tree
    /// needs, so the MSB can flag leaves).
    pub fn walker_qubits(&self) -> usize {
        self.levels + 1
    }

    /// Label of leaf 0.
    pub fn leaf_base(&self) -> usize {
        1 << self.levels
    }

    /// Number of tailed labels (0 .. label_count - 1).
    pub fn label_count(&self) -> usize {
        1 << (self.levels + 1)
    }

    pub fn child_left(&self, v: usize) -> Result<usize> {
        self.check_label(v)?;
        let c = 2 * v;
        if c >= self.label_count() {
            return Err(Error::ChildOutOfRange { parent: v, child: c });
        }
        Ok(c)
    }

    pub fn child_right(&self, v: usize) -> Result<usize> {
        self.check_label(v)?;
        let c = 2 * v + 1;
        if c >= self.label_count() {
            return Err(Error::ChildOutOfRange { parent: v, child: c });
        }
        Ok(c)
    }

    pub fn parent(&self, v: usize) -> Result<usize> {
        self.check_label(v)?;
        if v == 0 {
            return Err(Error::ParentOfTailRoot);
        }
        Ok(v / 2)
    }

    pub fn classify(&self, v: usize) -> Result<VertexClass> {
        self.check_label(v)?;
        Ok(match v {
            0 => VertexClass::TailRoot,
            1 => VertexClass::Tail,
            _ if v >= self.leaf_base() => VertexClass::Leaf,
            _ => VertexClass::Internal,
        })
    }

    fn check_label(&self, v: usize) -> Result<()> {
        if v >= self.label_count() {
            return Err(Error::LabelOutOfRange {
                label: v,
                count: self.label_count(),
            });
        }
        Ok(())
    }
}

/// Vertex classification over the full tailed label range. Labels at or
/// above 2^L all carry the leaf flag bit; only the first N of them are
/// reachable leaves of the balanced tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    TailRoot,
    Tail,
    Internal,
    Leaf,
}

/// A tailed tree together with its leaf values.
#[derive(Clone, Debug, PartialEq)]
pub struct TailedTree {
    pub shape: TreeShape,
    pub leaves: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    levels: usize,
    leaves: String,
}

impl TailedTree {
    pub fn new(shape: TreeShape, leaves: Vec<bool>) -> Result<Self> {
        if leaves.len() != shape.n_leaves() {
            return Err(Error::LeafCountMismatch {
                expected: shape.n_leaves(),
                got: leaves.len(),
            });
        }
        Ok(TailedTree { shape, leaves })
    }

    pub fn from_bitstring(shape: TreeShape, s: &str) -> Result<Self> {
        Self::new(shape, parse_leaf_string(s)?)
    }

    pub fn leaf_bitstring(&self) -> String {
        self.leaves.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&TreeJson {
            levels: self.shape.levels(),
            leaves: self.leaf_bitstring(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: TreeJson = serde_json::from_str(s)?;
        Self::from_bitstring(TreeShape::new(t.levels)?, &t.leaves)
    }

    fn leaf_value(&self, v: usize) -> Option<bool> {
        let base = self.shape.leaf_base();
        if v >= base && v < base + self.leaves.len() {
            Some(self.leaves[v - base])
        } else {
            None
        }
    }
}

pub fn parse_leaf_string(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::BadLeafString),
        })
        .collect()
}

/// Bottom-up NAND fold; the formula value lives at the subtree root
/// (label 2).
pub fn eval_nand_classical(tree: &TailedTree) -> bool {
    fn go(tree: &TailedTree, v: usize) -> bool {
        if let Some(b) = tree.leaf_value(v) {
            return b;
        }
        !(go(tree, 2 * v) & go(tree, 2 * v + 1))
    }
    go(tree, 2)
}

/// Alternating OR/AND (max/min) fold from label 2 with the given root role.
pub fn eval_minmax_classical(tree: &TailedTree, root_is_max: bool) -> bool {
    fn go(tree: &TailedTree, v: usize, is_max: bool) -> bool {
        if let Some(b) = tree.leaf_value(v) {
            return b;
        }
        let l = go(tree, 2 * v, !is_max);
        let r = go(tree, 2 * v + 1, !is_max);
        if is_max {
            l | r
        } else {
            l & r
        }
    }
    go(tree, 2, root_is_max)
}

/// All 2^N leaf bitstrings in lexicographic order of their string form
/// (leaf 0 is the leftmost character).
pub fn enumerate_assignments(shape: TreeShape) -> Result<impl Iterator<Item = Vec<bool>>> {
    let n = shape.n_leaves();
    if n > MAX_ENUM_LEAVES {
        return Err(Error::TooManyLeaves {
            got: n,
            max: MAX_ENUM_LEAVES,
        });
    }
    Ok((0u64..(1u64 << n)).map(move |u| {
        (0..n).map(|i| (u >> (n - 1 - i)) & 1 == 1).collect()
    }))
}
