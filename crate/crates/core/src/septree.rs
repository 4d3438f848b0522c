//! Binary separating trees of separable permutations: construction, the
//! decomposition/tree bijection, sign queries at meets, and the sign
//! properties specific to snakes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SepTreeError {
    #[error("permutation is not separable: no binary separating tree exists")]
    NotSeparable,
    #[error("tree is malformed: {0}")]
    MalformedTree(String),
    #[error("leaf index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("tree has no internal vertex")]
    LeafOnly,
}

/// Sign decorating an internal vertex: `Plus` when every leaf label on the
/// left is smaller than every leaf label on the right, `Minus` when bigger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Complete plane binary tree with signed internal vertices and labelled
/// leaves; the frontier read left to right spells the permutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignedTree {
    Leaf {
        /// `sigma(i)`; 0 is accepted on input as "label omitted".
        leaf: usize,
    },
    Node {
        sign: Sign,
        left: Box<SignedTree>,
        right: Box<SignedTree>,
    },
}

impl SignedTree {
    pub fn leaf(label: usize) -> Self {
        SignedTree::Leaf { leaf: label }
    }

    pub fn node(sign: Sign, left: SignedTree, right: SignedTree) -> Self {
        SignedTree::Node {
            sign,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SignedTree::Leaf { .. } => 1,
            SignedTree::Node { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Builds the canonical binary separating tree of a separable
    /// permutation. A permutation usually has several separating trees;
    /// this splits each block at the shortest left prefix that forms a
    /// valid sum block, which yields a deterministic right-leaning tree.
    pub fn build(p: &Permutation) -> Result<Self, SepTreeError> {
        fn rec(block: &[usize]) -> Result<SignedTree, SepTreeError> {
            if block.len() == 1 {
                return Ok(SignedTree::leaf(block[0]));
            }
            let total_min = *block.iter().min().unwrap();
            let total_max = *block.iter().max().unwrap();
            let mut prefix_min = usize::MAX;
            let mut prefix_max = 0usize;
            for split in 1..block.len() {
                prefix_min = prefix_min.min(block[split - 1]);
                prefix_max = prefix_max.max(block[split - 1]);
                // prefix values form an interval exactly when the span
                // matches the length; the suffix is then an interval too
                if prefix_max - prefix_min + 1 != split {
                    continue;
                }
                let sign = if prefix_min == total_min && prefix_max == total_min + split - 1 {
                    Sign::Plus
                } else if prefix_max == total_max && prefix_min == total_max + 1 - split {
                    Sign::Minus
                } else {
                    continue;
                };
                let left = rec(&block[..split])?;
                let right = rec(&block[split..])?;
                return Ok(SignedTree::node(sign, left, right));
            }
            Err(SepTreeError::NotSeparable)
        }
        rec(p.images())
    }

    /// The permutation spelled by shape and signs alone, via the bijection
    /// with binary decompositions: each node applies a direct or skew sum.
    fn frontier_permutation(&self) -> Permutation {
        match self {
            SignedTree::Leaf { .. } => Permutation::identity(1),
            SignedTree::Node { sign, left, right } => {
                let l = left.frontier_permutation();
                let r = right.frontier_permutation();
                match sign {
                    Sign::Plus => l.direct_sum(&r),
                    Sign::Minus => l.skew_sum(&r),
                }
            }
        }
    }

    /// The unique permutation whose decomposition is this tree. Leaf labels
    /// are redundant given shape and signs; any nonzero label that
    /// disagrees with the computed frontier is rejected (label 0 means
    /// "omitted").
    pub fn permutation(&self) -> Result<Permutation, SepTreeError> {
        let p = self.frontier_permutation();
        let mut labels = Vec::new();
        self.collect_labels(&mut labels);
        for (i, &label) in labels.iter().enumerate() {
            if label != 0 && label != p.apply(i + 1) {
                return Err(SepTreeError::MalformedTree(format!(
                    "leaf {} is labelled {} but the signs spell {}",
                    i + 1,
                    label,
                    p.apply(i + 1)
                )));
            }
        }
        Ok(p)
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            SignedTree::Leaf { leaf } => out.push(*leaf),
            SignedTree::Node { left, right, .. } => {
                left.collect_labels(out);
                right.collect_labels(out);
            }
        }
    }

    /// Rewrites leaf labels to match the frontier permutation.
    pub fn with_frontier_labels(&self) -> SignedTree {
        fn rec(t: &SignedTree, labels: &[usize], next: &mut usize) -> SignedTree {
            match t {
                SignedTree::Leaf { .. } => {
                    let l = labels[*next];
                    *next += 1;
                    SignedTree::leaf(l)
                }
                SignedTree::Node { sign, left, right } => {
                    SignedTree::node(*sign, rec(left, labels, next), rec(right, labels, next))
                }
            }
        }
        let p = self.frontier_permutation();
        rec(self, p.images(), &mut 0)
    }

    /// Sign of the deepest common ancestor of the `i`-th and `j`-th leaves
    /// (1-based positions, `i != j`).
    pub fn meet_sign(&self, i: usize, j: usize) -> Result<Sign, SepTreeError> {
        let count = self.leaf_count();
        for idx in [i, j] {
            if idx == 0 || idx > count {
                return Err(SepTreeError::IndexOutOfRange { index: idx, count });
            }
        }
        if i == j {
            return Err(SepTreeError::IndexOutOfRange { index: j, count });
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let mut node = self;
        let mut offset = 0usize;
        loop {
            match node {
                SignedTree::Leaf { .. } => {
                    unreachable!("distinct leaves always separate at a node")
                }
                SignedTree::Node { sign, left, right } => {
                    let nl = left.leaf_count();
                    if hi <= offset + nl {
                        node = left;
                    } else if lo > offset + nl {
                        node = right;
                        offset += nl;
                    } else {
                        return Ok(*sign);
                    }
                }
            }
        }
    }

    /// Signs of the internal vertices in order: the `i`-th entry decorates
    /// the meet of the `i`-th and `(i+1)`-th leaves, so it records whether
    /// the frontier rises or falls at step `i`.
    pub fn inorder_signs(&self) -> Vec<Sign> {
        fn rec(t: &SignedTree, out: &mut Vec<Sign>) {
            if let SignedTree::Node { sign, left, right } = t {
                rec(left, out);
                out.push(*sign);
                rec(right, out);
            }
        }
        let mut out = Vec::new();
        rec(self, &mut out);
        out
    }

    /// Whether the signs of the decomposition strictly alternate when read
    /// in order, i.e. whether consecutive rises and falls of the frontier
    /// alternate — which holds exactly when the frontier is a snake.
    pub fn signs_alternate(&self) -> bool {
        self.inorder_signs().windows(2).all(|w| w[0] != w[1])
    }

    /// Sign of the deepest common ancestor of the last two leaves, i.e. the
    /// sign governing the final rise or fall of the permutation.
    pub fn rightmost_sign(&self) -> Result<Sign, SepTreeError> {
        match self {
            SignedTree::Leaf { .. } => Err(SepTreeError::LeafOnly),
            SignedTree::Node { sign, right, .. } => match right.as_ref() {
                SignedTree::Leaf { .. } => Ok(*sign),
                node => node.rightmost_sign(),
            },
        }
    }

    /// Validates the separating-tree invariants: interval blocks, sign
    /// consistency, and frontier labels.
    pub fn validate(&self) -> Result<(), SepTreeError> {
        fn rec(t: &SignedTree) -> Result<(usize, usize), SepTreeError> {
            match t {
                SignedTree::Leaf { leaf } => {
                    if *leaf == 0 {
                        return Err(SepTreeError::MalformedTree("unlabelled leaf".into()));
                    }
                    Ok((*leaf, *leaf))
                }
                SignedTree::Node { sign, left, right } => {
                    let (lmin, lmax) = rec(left)?;
                    let (rmin, rmax) = rec(right)?;
                    let ok = match sign {
                        Sign::Plus => lmax < rmin,
                        Sign::Minus => rmax < lmin,
                    };
                    if !ok {
                        return Err(SepTreeError::MalformedTree(format!(
                            "sign {sign} contradicts the leaf intervals"
                        )));
                    }
                    let (min, max) = (lmin.min(rmin), lmax.max(rmax));
                    // the union must stay contiguous
                    if max - min + 1 != t.leaf_count() {
                        return Err(SepTreeError::MalformedTree(
                            "leaf labels of a subtree do not form an interval".into(),
                        ));
                    }
                    Ok((min, max))
                }
            }
        }
        rec(self).map(|_| ())?;
        self.permutation().map(|_| ())
    }

    /// DOT rendering: internal vertices show their sign, leaves the label,
    /// children kept in plane order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph separating_tree {\n");
        out.push_str("  ordering=out;\n  node [fontname=\"monospace\"];\n");
        let mut next = 0usize;
        fn rec(t: &SignedTree, out: &mut String, next: &mut usize) -> usize {
            let id = *next;
            *next += 1;
            match t {
                SignedTree::Leaf { leaf } => {
                    out.push_str(&format!("  n{id} [shape=plaintext label=\"{leaf}\"];\n"));
                }
                SignedTree::Node { sign, left, right } => {
                    let symbol = match sign {
                        Sign::Plus => "⊕",
                        Sign::Minus => "⊖",
                    };
                    out.push_str(&format!("  n{id} [shape=circle label=\"{symbol}\"];\n"));
                    let l = rec(left, out, next);
                    let r = rec(right, out, next);
                    out.push_str(&format!("  n{id} -> n{l};\n  n{id} -> n{r};\n"));
                }
            }
            id
        }
        rec(self, &mut out, &mut next);
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, SepTreeError> {
        serde_json::from_str(s).map_err(|e| SepTreeError::MalformedTree(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn leaf(l: usize) -> SignedTree {
        SignedTree::leaf(l)
    }

    /// The tree of 4 5 1 3 2 used throughout: (4+5) - (1 + (3 - 2)).
    fn example_tree() -> SignedTree {
        SignedTree::node(
            Sign::Minus,
            SignedTree::node(Sign::Plus, leaf(4), leaf(5)),
            SignedTree::node(
                Sign::Plus,
                leaf(1),
                SignedTree::node(Sign::Minus, leaf(3), leaf(2)),
            ),
        )
    }

    #[test]
    fn canonical_build_matches_known_shape() {
        let t = SignedTree::build(&perm(&[4, 5, 1, 3, 2])).unwrap();
        assert_eq!(t, example_tree());
        assert_eq!(SignedTree::build(&perm(&[1])).unwrap(), SignedTree::leaf(1));
        assert_eq!(
            SignedTree::build(&perm(&[3, 1, 4, 2])),
            Err(SepTreeError::NotSeparable)
        );
        assert_eq!(
            SignedTree::build(&perm(&[2, 4, 1, 3])),
            Err(SepTreeError::NotSeparable)
        );
    }

    #[test]
    fn frontier_permutation_inverts_build() {
        let t = example_tree();
        assert_eq!(t.permutation().unwrap(), perm(&[4, 5, 1, 3, 2]));
        assert_eq!(leaf(1).permutation().unwrap(), perm(&[1]));

        // the decomposition of 6 7 4 5 1 3 2 as (..)-((..)-(..))
        let t7 = SignedTree::node(
            Sign::Minus,
            SignedTree::node(Sign::Plus, leaf(0), leaf(0)),
            SignedTree::node(
                Sign::Minus,
                SignedTree::node(Sign::Plus, leaf(0), leaf(0)),
                SignedTree::node(
                    Sign::Plus,
                    leaf(0),
                    SignedTree::node(Sign::Minus, leaf(0), leaf(0)),
                ),
            ),
        );
        assert_eq!(t7.permutation().unwrap(), perm(&[6, 7, 4, 5, 1, 3, 2]));
        // and the canonical builder agrees with that shape
        assert_eq!(
            SignedTree::build(&perm(&[6, 7, 4, 5, 1, 3, 2])).unwrap(),
            t7.with_frontier_labels()
        );
    }

    #[test]
    fn wrong_labels_are_rejected() {
        let bad = SignedTree::node(Sign::Plus, leaf(2), leaf(1));
        assert!(matches!(
            bad.permutation(),
            Err(SepTreeError::MalformedTree(_))
        ));
        assert!(bad.validate().is_err());
        assert!(example_tree().validate().is_ok());
    }

    #[test]
    fn meet_signs() {
        let t7 = SignedTree::build(&perm(&[6, 7, 4, 5, 1, 3, 2])).unwrap();
        // sigma(1)=6 > sigma(4)=5
        assert_eq!(t7.meet_sign(1, 4), Ok(Sign::Minus));
        // sigma(1)=6 < sigma(2)=7
        assert_eq!(t7.meet_sign(1, 2), Ok(Sign::Plus));

        let t = example_tree();
        assert_eq!(t.meet_sign(1, 2), Ok(Sign::Plus));
        assert!(matches!(
            t.meet_sign(0, 2),
            Err(SepTreeError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            t.meet_sign(2, 9),
            Err(SepTreeError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn alternation_and_rightmost_sign() {
        assert!(example_tree().signs_alternate());
        let id3 = SignedTree::build(&Permutation::identity(3)).unwrap();
        assert!(!id3.signs_alternate());
        let pair = SignedTree::node(Sign::Plus, leaf(1), leaf(2));
        assert!(pair.signs_alternate());

        // 1 3 2 4 is a snake: its tree nests a plus under a plus, but the
        // signs in frontier order go plus, minus, plus
        let nested = SignedTree::build(&perm(&[1, 3, 2, 4])).unwrap();
        assert_eq!(
            nested.inorder_signs(),
            vec![Sign::Plus, Sign::Minus, Sign::Plus]
        );
        assert!(nested.signs_alternate());

        assert_eq!(example_tree().rightmost_sign(), Ok(Sign::Minus));
        assert_eq!(pair.rightmost_sign(), Ok(Sign::Plus));
        assert_eq!(
            SignedTree::build(&perm(&[2, 1])).unwrap().rightmost_sign(),
            Ok(Sign::Minus)
        );
        assert_eq!(leaf(1).rightmost_sign(), Err(SepTreeError::LeafOnly));
    }

    #[test]
    fn json_round_trip() {
        let t = example_tree();
        let json = t.to_json();
        assert_eq!(SignedTree::from_json(&json).unwrap(), t);
        // schema spot check
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["sign"], "-");
        assert_eq!(v["left"]["sign"], "+");
        assert_eq!(v["left"]["left"]["leaf"], 4);
    }

    #[test]
    fn dot_lists_every_leaf() {
        let dot = example_tree().to_dot();
        for label in ["\"4\"", "\"5\"", "\"1\"", "\"3\"", "\"2\"", "⊕", "⊖"] {
            assert!(dot.contains(label), "missing {label} in {dot}");
        }
    }
}
