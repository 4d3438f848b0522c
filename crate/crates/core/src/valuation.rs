//! Valuations of the areas cut out by consecutive roots: the contact-tree
//! formula, the exact integration oracle it is checked against, area sides,
//! comparability, and the valuation of signed sums of areas.

use serde::Serialize;
use thiserror::Error;

use crate::contact::{contact_tree_of, ContactError, ContactTree};
use crate::scalar::Valuation;
use crate::{Poly, Poly2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("the contact tree is not complete binary")]
    NonBinaryTree,
    #[error("area index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("area indices must differ")]
    EqualAreaIndices,
    #[error("bad sign pattern: {0}")]
    InvalidSigns(String),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error("internal contract violated: {0}")]
    InternalMismatch(String),
}

/// Which side of the horizontal axis an area lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

impl Side {
    /// The sign of the corresponding integral: `+1` above, `-1` below.
    pub fn signum(self) -> i8 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
        }
    }
}

/// One vertex contribution to the valuation formula: the bifurcation
/// vertex is named by the adjacent pair `k` whose meet it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CTerm {
    pub pair_index: usize,
    pub valuation: usize,
    pub leaf_count: usize,
}

/// Everything the formula knows about one area: its valuation, which side
/// it lies on, and the per-vertex leaf counts so a disagreement with the
/// oracle can be localised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaProfile {
    pub index: usize,
    pub gap_valuation: usize,
    pub valuation: usize,
    pub side: Side,
    pub c_coefficients: Vec<CTerm>,
}

fn check_area_index(tree: &ContactTree, i: usize) -> Result<usize, ValuationError> {
    let m = tree.leaf_count() - 1;
    if i == 0 || i > m {
        return Err(ValuationError::IndexOutOfRange { index: i, count: m });
    }
    Ok(m)
}

/// Valuation of the `i`-th area read off the contact tree: the gap
/// valuation `e_i` plus, for every vertex `G` on the geodesic from the
/// root to the meet of leaves `i` and `i+1`, the number of leaves whose
/// deepest ancestor on that geodesic is `G`, times the valuation of `G`.
pub fn area_valuation(tree: &ContactTree, i: usize) -> Result<AreaProfile, ValuationError> {
    if !tree.is_binary() {
        return Err(ValuationError::NonBinaryTree);
    }
    let m = check_area_index(tree, i)?;
    let meet = tree.meet(i, i + 1)?;
    let geodesic = tree.path_from_root(meet.node);
    let on_geodesic: Vec<bool> = {
        let mut mark = vec![false; tree_node_count(tree)];
        for &n in &geodesic {
            mark[n] = true;
        }
        mark
    };

    let mut counts = vec![0usize; geodesic.len()];
    for leaf in 1..=m + 1 {
        let mut node = tree.leaf_node(leaf);
        loop {
            if on_geodesic[node] {
                let pos = geodesic.iter().position(|&g| g == node).unwrap();
                counts[pos] += 1;
                break;
            }
            node = tree.parent_of(node).expect("walk reaches the root");
        }
    }
    // the root is on every geodesic but collects no leaves: the end-rooted
    // tree funnels everything through its single child
    debug_assert_eq!(counts[0], 0);

    let e_i = tree.gap_valuations()[i - 1];
    let mut valuation = e_i;
    let mut c_coefficients = Vec::new();
    for (pos, &node) in geodesic.iter().enumerate().skip(1) {
        let pair_index = tree
            .pair_index_of(node)
            .expect("geodesic vertices below the root are bifurcations");
        let v = tree.meet(pair_index, pair_index + 1)?.valuation;
        valuation += counts[pos] * v;
        c_coefficients.push(CTerm {
            pair_index,
            valuation: v,
            leaf_count: counts[pos],
        });
    }

    Ok(AreaProfile {
        index: i,
        gap_valuation: e_i,
        valuation,
        side: area_side(i, m)?,
        c_coefficients,
    })
}

fn tree_node_count(tree: &ContactTree) -> usize {
    // leaves plus internal vertices; the arena never shrinks, so walking
    // up from any leaf stays in bounds as long as the vector covers all ids
    let mut max = 0;
    for leaf in 1..=tree.leaf_count() {
        let mut node = tree.leaf_node(leaf);
        max = max.max(node);
        while let Some(p) = tree.parent_of(node) {
            max = max.max(p);
            node = p;
        }
    }
    max + 1
}

/// Exact integration oracle for a fixed root family: the product of
/// linear factors is expanded and antidifferentiated once, then every area
/// costs two substitutions.
struct AreaOracle<'a> {
    roots: &'a [Poly],
    anti: Poly2,
}

impl<'a> AreaOracle<'a> {
    fn new(roots: &'a [Poly]) -> Self {
        let p = Poly2::product_of_linear_factors(roots);
        AreaOracle {
            roots,
            anti: p.antiderivative_y(),
        }
    }

    /// The signed integral of the full product between roots `i` and
    /// `i+1`, as a polynomial in `x`.
    fn integral(&self, i: usize) -> Poly {
        &self.anti.compose_y(&self.roots[i]) - &self.anti.compose_y(&self.roots[i - 1])
    }

    /// `|integral|` in the germ order: negated when the integral is
    /// negative for small `x > 0`.
    fn magnitude(&self, i: usize) -> Poly {
        let integral = self.integral(i);
        if integral
            .lowest_coeff()
            .is_some_and(num_traits::Signed::is_negative)
        {
            -&integral
        } else {
            integral
        }
    }

    fn side(&self, i: usize) -> Option<Side> {
        self.integral(i).lowest_coeff().map(|c| {
            if num_traits::Signed::is_negative(c) {
                Side::Below
            } else {
                Side::Above
            }
        })
    }
}

/// Independent oracle for [`area_valuation`]: expand the product of linear
/// factors, integrate exactly between the two roots, and take the x-adic
/// valuation of the result.
pub fn area_valuation_oracle(roots: &[Poly], i: usize) -> Result<usize, ValuationError> {
    let tree = contact_tree_of(roots)?;
    check_area_index(&tree, i)?;
    match AreaOracle::new(roots).integral(i).valuation() {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinity => Err(ValuationError::InternalMismatch(format!(
            "area {i} of a valid family integrated to the zero polynomial"
        ))),
    }
}

/// Side of the `i`-th area among `m` areas: above the axis exactly when
/// `m + 1 - i` is even; the rightmost area of a monic product is below.
pub fn area_side(i: usize, m: usize) -> Result<Side, ValuationError> {
    if i == 0 || i > m {
        return Err(ValuationError::IndexOutOfRange { index: i, count: m });
    }
    if (m + 1 - i).is_multiple_of(2) {
        Ok(Side::Above)
    } else {
        Ok(Side::Below)
    }
}

/// Outcome of comparing two areas through their meet vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaOrder {
    /// `S_k` dominates `S_l` in the germ order at `0+`.
    FirstLarger,
    SecondLarger,
    Incomparable,
}

/// Compares areas `S_k` and `S_l` by the tree order of their vertices: an
/// ancestor vertex wins. Non-comparable vertices decide nothing.
pub fn compare_areas(tree: &ContactTree, k: usize, l: usize) -> Result<AreaOrder, ValuationError> {
    if !tree.is_binary() {
        return Err(ValuationError::NonBinaryTree);
    }
    check_area_index(tree, k)?;
    check_area_index(tree, l)?;
    if k == l {
        return Err(ValuationError::EqualAreaIndices);
    }
    let vk = tree.meet(k, k + 1)?;
    let vl = tree.meet(l, l + 1)?;
    if tree.is_ancestor(vk.node, vl.node) {
        Ok(AreaOrder::FirstLarger)
    } else if tree.is_ancestor(vl.node, vk.node) {
        Ok(AreaOrder::SecondLarger)
    } else {
        Ok(AreaOrder::Incomparable)
    }
}

/// Valuation of `sum_t signs[t] * S_{i+t}` for `t = 0..j-i`: equals the
/// valuation of the single area whose vertex is the meet of leaves `i` and
/// `j`, whatever the signs. The exact signed integral is computed alongside
/// and any disagreement is surfaced as an internal error.
pub fn sum_valuation(
    tree: &ContactTree,
    i: usize,
    j: usize,
    signs: &[i8],
) -> Result<usize, ValuationError> {
    if !tree.is_binary() {
        return Err(ValuationError::NonBinaryTree);
    }
    let count = tree.leaf_count();
    for idx in [i, j] {
        if idx == 0 || idx > count {
            return Err(ValuationError::IndexOutOfRange { index: idx, count });
        }
    }
    if i >= j {
        return Err(ValuationError::IndexOutOfRange { index: j, count });
    }
    if signs.len() != j - i {
        return Err(ValuationError::InvalidSigns(format!(
            "expected {} signs, got {}",
            j - i,
            signs.len()
        )));
    }
    if signs.iter().any(|s| *s != 1 && *s != -1) {
        return Err(ValuationError::InvalidSigns(
            "signs must be +1 or -1".into(),
        ));
    }

    let meet = tree.meet(i, j)?;
    let k = tree
        .pair_index_of(meet.node)
        .expect("meet of distinct leaves is a bifurcation");
    let formula = area_valuation(tree, k)?.valuation;

    // oracle: the same valuation from the exact signed sum of integrals
    let oracle = AreaOracle::new(tree.polys());
    let mut signed_sum = Poly::zero();
    for (t, sign) in (i..j).zip(signs) {
        let magnitude = oracle.magnitude(t);
        signed_sum = if *sign == 1 {
            &signed_sum + &magnitude
        } else {
            &signed_sum - &magnitude
        };
    }
    match signed_sum.valuation() {
        Valuation::Finite(v) if v == formula => Ok(formula),
        other => Err(ValuationError::InternalMismatch(format!(
            "signed sum over areas {i}..{} has valuation {other:?}, formula says {formula}",
            j - 1
        ))),
    }
}

/// One row of the per-area report: the formula and the oracle side by side.
#[derive(Clone, Debug, Serialize)]
pub struct AreaRow {
    pub index: usize,
    pub gap_valuation: usize,
    pub formula_valuation: usize,
    pub oracle_valuation: usize,
    pub side: Side,
    pub c_coefficients: Vec<CTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AreaReport {
    pub rows: Vec<AreaRow>,
}

/// Builds the full report for a root family, failing with an internal
/// error if the formula and the oracle ever disagree — on valuations or on
/// the side of the axis.
pub fn area_report(roots: &[Poly]) -> Result<AreaReport, ValuationError> {
    let tree = contact_tree_of(roots)?;
    if !tree.is_binary() {
        return Err(ValuationError::NonBinaryTree);
    }
    let m = tree.leaf_count() - 1;
    let exact = AreaOracle::new(roots);
    let mut rows = Vec::with_capacity(m);
    for i in 1..=m {
        let profile = area_valuation(&tree, i)?;
        let oracle = match exact.integral(i).valuation() {
            Valuation::Finite(v) => v,
            Valuation::Infinity => {
                return Err(ValuationError::InternalMismatch(format!(
                    "area {i} of a valid family integrated to the zero polynomial"
                )))
            }
        };
        if oracle != profile.valuation {
            return Err(ValuationError::InternalMismatch(format!(
                "area {i}: formula gives {}, oracle gives {oracle}",
                profile.valuation
            )));
        }
        let integral_side = exact
            .side(i)
            .expect("area integral of a valid family is nonzero");
        if integral_side != profile.side {
            return Err(ValuationError::InternalMismatch(format!(
                "area {i}: parity predicts {:?}, the integral lies {integral_side:?}",
                profile.side
            )));
        }
        rows.push(AreaRow {
            index: i,
            gap_valuation: profile.gap_valuation,
            formula_valuation: profile.valuation,
            oracle_valuation: oracle,
            side: profile.side,
            c_coefficients: profile.c_coefficients,
        });
    }
    Ok(AreaReport { rows })
}
