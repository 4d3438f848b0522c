//! The end-to-end construction: a separable snake with a descending last
//! step becomes a separating tree, the tree is realised by explicit root
//! polynomials, and the scaled antiderivative of their product is a Morse
//! polynomial whose snake at a small rational witness is the input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contact::{realize_shape, BinShape};
use crate::perm::{rank_permutation, Permutation};
use crate::poly::cmp_right;
use crate::septree::{SepTreeError, SignedTree};
use crate::valuation::{area_side, Side};
use crate::{rat_int, Poly, Poly2, Rat};

/// Default cap on the witness search schedule `1/2, 1/4, 1/8, ...`; the
/// construction guarantees success for small enough `x`, so the cap only
/// turns a would-be infinite loop into a diagnosable error.
pub const DEFAULT_MAX_HALVINGS: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("permutation is not a snake")]
    NotASnake,
    #[error("permutation is not separable")]
    NotSeparable,
    #[error(
        "wrong orientation: the permutation ends on a rise, but a monic \
         construction always ends on a local minimum"
    )]
    WrongOrientation,
    #[error("no witness found after {halvings} halvings")]
    WitnessSearchExhausted { halvings: u32 },
    #[error("index pair ({i}, {j}) out of range for {m} areas")]
    IndexOutOfRange { i: usize, j: usize, m: usize },
    #[error("internal contract violated: {0}")]
    InternalMismatch(String),
}

impl From<SepTreeError> for RealizeError {
    fn from(e: SepTreeError) -> Self {
        match e {
            SepTreeError::NotSeparable => RealizeError::NotSeparable,
            other => RealizeError::InternalMismatch(other.to_string()),
        }
    }
}

/// A fully verified realisation: every intermediate object of the
/// construction, the witness, and the snake read back at the witness.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationResult {
    pub sigma: Permutation,
    pub tree: SignedTree,
    pub roots: Vec<Poly>,
    pub p: Poly2,
    pub q: Poly2,
    pub witness_x: Rat,
    pub critical_values: Vec<Rat>,
    pub verified_snake: Permutation,
}

/// The critical-value polynomials `c_i(x) = Q_x(a_i(x))`.
fn critical_polys(q: &Poly2, roots: &[Poly]) -> Vec<Poly> {
    roots.iter().map(|a| q.compose_y(a)).collect()
}

/// Exact critical values at `x = x0`, one per root.
pub fn critical_values_at(q: &Poly2, roots: &[Poly], x0: &Rat) -> Vec<Rat> {
    let values: Vec<Rat> = critical_polys(q, roots)
        .iter()
        .map(|c| c.eval(x0))
        .collect();
    // the two-stage evaluation must agree with the composed one
    debug_assert_eq!(
        values,
        roots
            .iter()
            .map(|a| q.specialize_x(x0).eval(&a.eval(x0)))
            .collect::<Vec<_>>()
    );
    values
}

fn all_distinct(values: &[Rat]) -> bool {
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            if a == b {
                return false;
            }
        }
    }
    true
}

fn witness_conditions_hold(
    c_polys: &[Poly],
    roots: &[Poly],
    sigma: &Permutation,
    x0: &Rat,
) -> bool {
    let points: Vec<Rat> = roots.iter().map(|a| a.eval(x0)).collect();
    if !all_distinct(&points) {
        return false;
    }
    let values: Vec<Rat> = c_polys.iter().map(|c| c.eval(x0)).collect();
    match rank_permutation(&values) {
        Ok(ranks) => &ranks == sigma,
        Err(_) => false,
    }
}

/// Searches the schedule `1/2, 1/4, ...` for the largest `x0` at which the
/// critical points and values are pairwise distinct, the value ranks equal
/// `sigma`, and the same holds one halving further down (stability probe).
pub fn find_witness(q: &Poly2, roots: &[Poly], sigma: &Permutation) -> Result<Rat, RealizeError> {
    find_witness_with_cap(q, roots, sigma, DEFAULT_MAX_HALVINGS)
}

pub fn find_witness_with_cap(
    q: &Poly2,
    roots: &[Poly],
    sigma: &Permutation,
    max_halvings: u32,
) -> Result<Rat, RealizeError> {
    let c_polys = critical_polys(q, roots);
    let half = Rat::new(1.into(), 2.into());
    let mut x0 = half.clone();
    for _ in 0..max_halvings {
        let probe = &x0 * &half;
        if witness_conditions_hold(&c_polys, roots, sigma, &x0)
            && witness_conditions_hold(&c_polys, roots, sigma, &probe)
        {
            return Ok(x0);
        }
        x0 = probe;
    }
    Err(RealizeError::WitnessSearchExhausted {
        halvings: max_halvings,
    })
}

/// Runs the whole construction for a separable snake ending on a descent.
pub fn realize_snake(sigma: &Permutation) -> Result<RealizationResult, RealizeError> {
    realize_snake_with_cap(sigma, DEFAULT_MAX_HALVINGS)
}

pub fn realize_snake_with_cap(
    sigma: &Permutation,
    max_halvings: u32,
) -> Result<RealizationResult, RealizeError> {
    if !sigma.is_snake() {
        return Err(RealizeError::NotASnake);
    }
    let n = sigma.len();
    let tree = SignedTree::build(sigma)?;
    if n >= 2 && sigma.apply(n - 1) < sigma.apply(n) {
        return Err(RealizeError::WrongOrientation);
    }

    let roots = realize_shape(&BinShape::from(&tree));
    let p = Poly2::product_of_linear_factors(&roots);
    let q = p.antiderivative_y().scaled(&rat_int(n as i64 + 1));
    debug_assert!(q.is_monic_y() && q.degree_y() == Some(n + 1));

    // symbolic verification: the critical-value polynomials are ordered at
    // 0+ exactly as sigma orders its images, for every pair
    let c_polys = critical_polys(&q, &roots);
    for i in 1..=n {
        for j in i + 1..=n {
            let expected = sigma.apply(i).cmp(&sigma.apply(j));
            let got = cmp_right(&c_polys[i - 1], &c_polys[j - 1]);
            if got != expected {
                return Err(RealizeError::InternalMismatch(format!(
                    "critical values c_{i} and c_{j} compare {got:?} near 0+, \
                     but sigma orders them {expected:?}"
                )));
            }
        }
    }

    let witness_x = find_witness_with_cap(&q, &roots, sigma, max_halvings)?;
    let critical_values = critical_values_at(&q, &roots, &witness_x);
    let verified_snake = rank_permutation(&critical_values)
        .map_err(|e| RealizeError::InternalMismatch(e.to_string()))?;
    if &verified_snake != sigma {
        return Err(RealizeError::InternalMismatch(
            "witness accepted but ranks disagree".into(),
        ));
    }

    Ok(RealizationResult {
        sigma: sigma.clone(),
        tree,
        roots,
        p,
        q,
        witness_x,
        critical_values,
        verified_snake,
    })
}

/// The signed areas making up `c_j - c_i`: pairs `(t, side)` for
/// `t = i..j`, where an area above the axis enters with `+`.
pub fn difference_decomposition(
    i: usize,
    j: usize,
    m: usize,
) -> Result<Vec<(usize, Side)>, RealizeError> {
    if i == 0 || i >= j || j > m + 1 {
        return Err(RealizeError::IndexOutOfRange { i, j, m });
    }
    (i..j)
        .map(|t| {
            area_side(t, m)
                .map(|side| (t, side))
                .map_err(|_| RealizeError::IndexOutOfRange { i, j, m })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    sigma: String,
    tree: SignedTree,
    roots: Vec<String>,
    p: String,
    q: String,
    witness_x: String,
    critical_values: Vec<String>,
    verified_snake: String,
}

impl RealizationResult {
    pub fn to_json(&self) -> String {
        let bundle = BundleJson {
            sigma: self.sigma.to_string(),
            tree: self.tree.clone(),
            roots: self.roots.iter().map(|r| r.to_string()).collect(),
            p: self.p.to_string(),
            q: self.q.to_string(),
            witness_x: self.witness_x.to_string(),
            critical_values: self.critical_values.iter().map(|v| v.to_string()).collect(),
            verified_snake: self.verified_snake.to_string(),
        };
        serde_json::to_string_pretty(&bundle).expect("bundle serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let bundle: BundleJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let parse_rat = |t: &str| t.parse::<Rat>().map_err(|e| format!("bad rational: {e}"));
        Ok(RealizationResult {
            sigma: bundle.sigma.parse().map_err(|e| format!("{e}"))?,
            tree: bundle.tree,
            roots: bundle
                .roots
                .iter()
                .map(|r| crate::poly::parse_unipoly(r).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?,
            p: crate::poly::parse_bipoly(&bundle.p).map_err(|e| e.to_string())?,
            q: crate::poly::parse_bipoly(&bundle.q).map_err(|e| e.to_string())?,
            witness_x: parse_rat(&bundle.witness_x)?,
            critical_values: bundle
                .critical_values
                .iter()
                .map(|v| parse_rat(v))
                .collect::<Result<_, _>>()?,
            verified_snake: bundle.verified_snake.parse().map_err(|e| format!("{e}"))?,
        })
    }
}
