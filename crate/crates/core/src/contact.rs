//! Contact trees of finite polynomial families: construction from the
//! pairwise contact orders, meets and their valuations, and the reverse
//! realisation of an abstract binary shape by explicit polynomials.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Valuation;
use crate::septree::SignedTree;
use crate::{rat_int, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContactError {
    #[error("the root family is empty")]
    EmptyFamily,
    #[error("roots are not sorted at position {index}: a_{index} does not precede a_{}", index + 1)]
    UnsortedRoots { index: usize },
    #[error("roots {index} and {} coincide", index + 1)]
    DuplicateRoot { index: usize },
    #[error("root {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },
    #[error("leaf index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("tree is not complete binary")]
    NotBinary,
    #[error("tree is not end-rooted: the root must have exactly one neighbour")]
    NotEndRooted,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("internal contract violated: {0}")]
    InternalMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CtKind {
    Root,
    Branch { valuation: usize },
    Leaf { index: usize },
}

#[derive(Clone, Debug)]
struct CtNode {
    parent: Option<usize>,
    children: Vec<usize>,
    kind: CtKind,
    /// 1-based positions of the first and last leaf below this node.
    span: (usize, usize),
}

/// Handle to an internal vertex of a contact tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeetVertex {
    pub node: usize,
    pub valuation: usize,
}

/// Rooted plane tree recording the pairwise contact orders of a family of
/// polynomials sorted by their germs at `0+`. The root is the extra vertex
/// at valuation 0; bifurcation vertices carry the valuation at which the
/// polynomials below them separate, strictly increasing towards the leaves.
#[derive(Clone, Debug)]
pub struct ContactTree {
    nodes: Vec<CtNode>,
    leaves: Vec<usize>,
    polys: Vec<Poly>,
    gap_valuations: Vec<usize>,
}

/// Builds the contact tree of a family sorted strictly by `precedes_right`,
/// with every member vanishing at the origin. Bifurcations may have more
/// than two children when several gaps share a contact order.
pub fn contact_tree_of(roots: &[Poly]) -> Result<ContactTree, ContactError> {
    if roots.is_empty() {
        return Err(ContactError::EmptyFamily);
    }
    for (i, a) in roots.iter().enumerate() {
        if a.valuation() == Valuation::Finite(0) {
            return Err(ContactError::NonzeroConstantTerm { index: i + 1 });
        }
    }
    let mut gaps = Vec::with_capacity(roots.len().saturating_sub(1));
    for i in 0..roots.len() - 1 {
        let diff = &roots[i + 1] - &roots[i];
        match diff.valuation() {
            Valuation::Infinity => return Err(ContactError::DuplicateRoot { index: i + 1 }),
            Valuation::Finite(e) => {
                if diff
                    .lowest_coeff()
                    .is_some_and(num_traits::Signed::is_negative)
                {
                    return Err(ContactError::UnsortedRoots { index: i + 1 });
                }
                gaps.push(e);
            }
        }
    }

    let mut tree = ContactTree {
        nodes: vec![CtNode {
            parent: None,
            children: Vec::new(),
            kind: CtKind::Root,
            span: (1, roots.len()),
        }],
        leaves: Vec::new(),
        polys: roots.to_vec(),
        gap_valuations: gaps.clone(),
    };
    let top = build_range(&mut tree, &gaps, 0, roots.len() - 1);
    tree.nodes[top].parent = Some(0);
    tree.nodes[0].children.push(top);
    Ok(tree)
}

/// Builds the subtree over 0-based leaf positions `lo..=hi`; the split
/// points are the gaps of minimal valuation, which may be several.
fn build_range(tree: &mut ContactTree, gaps: &[usize], lo: usize, hi: usize) -> usize {
    if lo == hi {
        let id = tree.nodes.len();
        tree.nodes.push(CtNode {
            parent: None,
            children: Vec::new(),
            kind: CtKind::Leaf { index: lo + 1 },
            span: (lo + 1, lo + 1),
        });
        tree.leaves.push(id);
        return id;
    }
    let v = (lo..hi).map(|k| gaps[k]).min().unwrap();
    let id = tree.nodes.len();
    tree.nodes.push(CtNode {
        parent: None,
        children: Vec::new(),
        kind: CtKind::Branch { valuation: v },
        span: (lo + 1, hi + 1),
    });
    let mut start = lo;
    for k in lo..hi {
        if gaps[k] == v {
            let child = build_range(tree, gaps, start, k);
            tree.nodes[child].parent = Some(id);
            tree.nodes[id].children.push(child);
            start = k + 1;
        }
    }
    let child = build_range(tree, gaps, start, hi);
    tree.nodes[child].parent = Some(id);
    tree.nodes[id].children.push(child);
    id
}

impl ContactTree {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// The underlying family, in leaf order.
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// The adjacent contact orders `e_i = v(a_{i+1} - a_i)`, `i = 1..=m`.
    pub fn gap_valuations(&self) -> &[usize] {
        &self.gap_valuations
    }

    /// Valuation of a vertex: 0 at the root, the decoration at a
    /// bifurcation, and the convention "infinite" never arises because
    /// leaves are not queried this way.
    fn node_valuation(&self, node: usize) -> usize {
        match self.nodes[node].kind {
            CtKind::Root => 0,
            CtKind::Branch { valuation } => valuation,
            CtKind::Leaf { .. } => usize::MAX,
        }
    }

    /// Whether every bifurcation has exactly two children (and the root
    /// keeps its single neighbour).
    pub fn is_binary(&self) -> bool {
        self.nodes.iter().all(|n| match n.kind {
            CtKind::Root => n.children.len() == 1,
            CtKind::Branch { .. } => n.children.len() == 2,
            CtKind::Leaf { .. } => n.children.is_empty(),
        })
    }

    fn check_leaf_index(&self, index: usize) -> Result<(), ContactError> {
        if index == 0 || index > self.leaf_count() {
            return Err(ContactError::IndexOutOfRange {
                index,
                count: self.leaf_count(),
            });
        }
        Ok(())
    }

    /// Node ids from the root down to the given node, inclusive.
    pub(crate) fn path_from_root(&self, node: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = Some(node);
        while let Some(id) = cur {
            path.push(id);
            cur = self.nodes[id].parent;
        }
        path.reverse();
        path
    }

    pub(crate) fn leaf_node(&self, index: usize) -> usize {
        self.leaves[index - 1]
    }

    pub(crate) fn parent_of(&self, node: usize) -> Option<usize> {
        self.nodes[node].parent
    }

    /// The deepest common ancestor of the `i`-th and `j`-th leaves
    /// (1-based, `i != j`), with its valuation.
    pub fn meet(&self, i: usize, j: usize) -> Result<MeetVertex, ContactError> {
        self.check_leaf_index(i)?;
        self.check_leaf_index(j)?;
        if i == j {
            return Err(ContactError::IndexOutOfRange {
                index: j,
                count: self.leaf_count(),
            });
        }
        let path_i = self.path_from_root(self.leaf_node(i));
        let path_j = self.path_from_root(self.leaf_node(j));
        let mut meet = path_i[0];
        for (a, b) in path_i.iter().zip(path_j.iter()) {
            if a != b {
                break;
            }
            meet = *a;
        }
        Ok(MeetVertex {
            node: meet,
            valuation: self.node_valuation(meet),
        })
    }

    /// Whether `a` lies on the geodesic from the root to `b` (that is,
    /// `a <= b` in the tree order). Strict when the nodes differ.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(id) = cur {
            if id == a {
                return true;
            }
            cur = self.nodes[id].parent;
        }
        false
    }

    /// Valuation of the meet of the whole leaf range `i..=j`, computed both
    /// as the minimum of the adjacent contact orders and by walking to the
    /// actual meet vertex; the two must agree.
    pub fn range_meet_valuation(&self, i: usize, j: usize) -> Result<usize, ContactError> {
        self.check_leaf_index(i)?;
        self.check_leaf_index(j)?;
        if i >= j {
            return Err(ContactError::IndexOutOfRange {
                index: j,
                count: self.leaf_count(),
            });
        }
        let by_gaps = (i..j).map(|k| self.gap_valuations[k - 1]).min().unwrap();
        let by_meet = self.meet(i, j)?.valuation;
        if by_gaps != by_meet {
            return Err(ContactError::InternalMismatch(format!(
                "range meet over {i}..{j}: min of adjacent valuations is {by_gaps}, \
                 meet vertex carries {by_meet}"
            )));
        }
        Ok(by_meet)
    }

    /// The adjacent pair index `k` whose meet is this vertex, when the
    /// vertex is a bifurcation: the boundary between its first and second
    /// child subtrees. Unique on binary trees.
    pub(crate) fn pair_index_of(&self, node: usize) -> Option<usize> {
        let n = &self.nodes[node];
        if !matches!(n.kind, CtKind::Branch { .. }) {
            return None;
        }
        Some(self.nodes[n.children[0]].span.1)
    }

    /// Extracts the plane binary shape, dropping valuations and leaves.
    pub fn shape(&self) -> Result<BinShape, ContactError> {
        if self.nodes[0].children.len() != 1 {
            return Err(ContactError::NotEndRooted);
        }
        fn rec(tree: &ContactTree, node: usize) -> Result<BinShape, ContactError> {
            let n = &tree.nodes[node];
            match n.kind {
                CtKind::Leaf { .. } => Ok(BinShape::Leaf),
                _ => {
                    if n.children.len() != 2 {
                        return Err(ContactError::NotBinary);
                    }
                    Ok(BinShape::node(
                        rec(tree, n.children[0])?,
                        rec(tree, n.children[1])?,
                    ))
                }
            }
        }
        rec(self, self.nodes[0].children[0])
    }

    /// JSON export: bifurcations as `{"valuation": v, "children": [...]}`
    /// (the root appears with valuation 0), leaves as
    /// `{"leaf": i, "poly": "<text>"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_node(0)).expect("tree serialises")
    }

    fn to_json_node(&self, node: usize) -> CtJson {
        let n = &self.nodes[node];
        match n.kind {
            CtKind::Leaf { index } => CtJson::Leaf {
                leaf: index,
                poly: self.polys[index - 1].to_string(),
            },
            _ => CtJson::Branch {
                valuation: self.node_valuation(node),
                children: n.children.iter().map(|&c| self.to_json_node(c)).collect(),
            },
        }
    }

    pub fn from_json(s: &str) -> Result<Self, ContactError> {
        let json: CtJson =
            serde_json::from_str(s).map_err(|e| ContactError::MalformedTree(e.to_string()))?;
        let CtJson::Branch {
            valuation: 0,
            ref children,
        } = json
        else {
            return Err(ContactError::MalformedTree(
                "top-level vertex must be the root with valuation 0".into(),
            ));
        };
        if children.is_empty() {
            return Err(ContactError::MalformedTree("root has no child".into()));
        }
        let mut tree = ContactTree {
            nodes: vec![CtNode {
                parent: None,
                children: Vec::new(),
                kind: CtKind::Root,
                span: (0, 0),
            }],
            leaves: Vec::new(),
            polys: Vec::new(),
            gap_valuations: Vec::new(),
        };
        for child in children {
            let id = tree.import_node(child, 0, 0)?;
            tree.nodes[0].children.push(id);
        }
        let count = tree.leaves.len();
        tree.nodes[0].span = (1, count);
        for k in 1..count {
            let v = tree.meet(k, k + 1)?.valuation;
            tree.gap_valuations.push(v);
        }
        Ok(tree)
    }

    fn import_node(
        &mut self,
        json: &CtJson,
        parent: usize,
        parent_valuation: usize,
    ) -> Result<usize, ContactError> {
        match json {
            CtJson::Leaf { leaf, poly } => {
                let expected = self.leaves.len() + 1;
                if *leaf != expected {
                    return Err(ContactError::MalformedTree(format!(
                        "leaf {leaf} out of plane order, expected {expected}"
                    )));
                }
                let parsed = crate::poly::parse_unipoly(poly)
                    .map_err(|e| ContactError::MalformedTree(e.to_string()))?;
                let id = self.nodes.len();
                self.nodes.push(CtNode {
                    parent: Some(parent),
                    children: Vec::new(),
                    kind: CtKind::Leaf { index: *leaf },
                    span: (*leaf, *leaf),
                });
                self.leaves.push(id);
                self.polys.push(parsed);
                Ok(id)
            }
            CtJson::Branch {
                valuation,
                children,
            } => {
                if *valuation <= parent_valuation {
                    return Err(ContactError::MalformedTree(format!(
                        "valuation {valuation} does not increase past {parent_valuation}"
                    )));
                }
                if children.len() < 2 {
                    return Err(ContactError::MalformedTree(
                        "bifurcation with fewer than two children".into(),
                    ));
                }
                let id = self.nodes.len();
                self.nodes.push(CtNode {
                    parent: Some(parent),
                    children: Vec::new(),
                    kind: CtKind::Branch {
                        valuation: *valuation,
                    },
                    span: (0, 0),
                });
                let first = self.leaves.len() + 1;
                for child in children {
                    let c = self.import_node(child, id, *valuation)?;
                    self.nodes[id].children.push(c);
                }
                self.nodes[id].span = (first, self.leaves.len());
                Ok(id)
            }
        }
    }

    /// DOT rendering mirroring the usual left-root drawings: root on the
    /// left, leaves on the right, vertical order matching the germ order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph contact_tree {\n");
        out.push_str("  rankdir=LR;\n  ordering=out;\n  node [fontname=\"monospace\"];\n");
        for (id, n) in self.nodes.iter().enumerate() {
            match n.kind {
                CtKind::Root => {
                    let _ = writeln!(out, "  n{id} [shape=point label=\"\"];");
                }
                CtKind::Branch { valuation } => {
                    let _ = writeln!(out, "  n{id} [shape=circle label=\"{valuation}\"];");
                }
                CtKind::Leaf { index } => {
                    let _ = writeln!(
                        out,
                        "  n{id} [shape=plaintext label=\"a{index}: {}\"];",
                        self.polys[index - 1]
                    );
                }
            }
        }
        for (id, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                let _ = writeln!(out, "  n{id} -> n{c};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CtJson {
    Leaf {
        leaf: usize,
        poly: String,
    },
    Branch {
        valuation: usize,
        children: Vec<CtJson>,
    },
}

/// Whether two contact trees have the same plane shape: same child orders
/// all the way down from root to leaves, ignoring valuations and the
/// polynomials decorating the leaves.
pub fn tree_isomorphic(a: &ContactTree, b: &ContactTree) -> bool {
    fn rec(a: &ContactTree, na: usize, b: &ContactTree, nb: usize) -> bool {
        let ca = &a.nodes[na].children;
        let cb = &b.nodes[nb].children;
        ca.len() == cb.len() && ca.iter().zip(cb.iter()).all(|(&x, &y)| rec(a, x, b, y))
    }
    rec(a, 0, b, 0)
}

/// Abstract complete plane binary shape; the type itself enforces that
/// every internal vertex has exactly two ordered children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinShape {
    Leaf,
    Node(Box<BinShape>, Box<BinShape>),
}

impl BinShape {
    pub fn node(left: BinShape, right: BinShape) -> Self {
        BinShape::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinShape::Leaf => 1,
            BinShape::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }
}

impl From<&SignedTree> for BinShape {
    fn from(t: &SignedTree) -> Self {
        match t {
            SignedTree::Leaf { .. } => BinShape::Leaf,
            SignedTree::Node { left, right, .. } => BinShape::node(
                BinShape::from(left.as_ref()),
                BinShape::from(right.as_ref()),
            ),
        }
    }
}

/// Realises a binary shape as the contact tree of explicit polynomials.
///
/// An extra root is grafted above the shape, every vertex takes its depth
/// as valuation (the shape's top vertex sits at depth 1), and the edge to a
/// first child carries coefficient 0 while the edge to a second child
/// carries coefficient 1. Summing the monomials along each root-to-leaf
/// geodesic yields polynomials that vanish at the origin, are pairwise
/// distinct, sorted by `precedes_right`, and whose contact tree has the
/// given plane shape.
pub fn realize_shape(shape: &BinShape) -> Vec<Poly> {
    fn rec(shape: &BinShape, depth: usize, prefix: Poly, out: &mut Vec<Poly>) {
        match shape {
            BinShape::Leaf => out.push(prefix),
            BinShape::Node(l, r) => {
                rec(l, depth + 1, prefix.clone(), out);
                let bumped = &prefix + &Poly::monomial(rat_int(1), depth);
                rec(r, depth + 1, bumped, out);
            }
        }
    }
    let mut out = Vec::with_capacity(shape.leaf_count());
    rec(shape, 1, Poly::zero(), &mut out);
    out
}

/// Realises a contact tree given as a general rooted tree, rejecting
/// shapes that are not end-rooted complete binary.
pub fn realize_tree(tree: &ContactTree) -> Result<Vec<Poly>, ContactError> {
    Ok(realize_shape(&tree.shape()?))
}
