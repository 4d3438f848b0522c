//! Shared helpers for the integration suites: exhaustive and random shape
//! generation, permutation enumeration, and independent counting oracles.

// each test target compiles this module separately and uses its own subset
#![allow(dead_code)]

use rand::Rng;
use snakeforge_core::contact::BinShape;
use snakeforge_core::perm::Permutation;

/// Calls `f` on every permutation of `{1..n}` in lexicographic order.
pub fn for_each_permutation(n: usize, f: &mut impl FnMut(&Permutation)) {
    fn rec(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        f: &mut impl FnMut(&Permutation),
    ) {
        if current.len() == n {
            f(&Permutation::new(current.clone()).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                current.push(v);
                rec(n, current, used, f);
                current.pop();
                used[v - 1] = false;
            }
        }
    }
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], f);
}

/// All separable snakes of size `n` that end on a descent (the orientation
/// the monic construction can realise); size 1 counts as descending.
pub fn descending_separable_snakes(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_permutation(n, &mut |p| {
        let descending = n < 2 || p.apply(n - 1) > p.apply(n);
        if descending && p.is_snake() && p.is_separable() {
            out.push(p.clone());
        }
    });
    out
}

/// Zigzag number `Z_n` (alternating permutations of one fixed orientation)
/// by the boustrophedon recurrence for Entringer numbers — an independent
/// oracle for the snake census: snakes(n) = 2 * Z_n for n >= 2, and 1 for
/// n = 1.
pub fn zigzag(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..=n {
        let prev = row;
        let mut next = vec![0u64];
        for k in 1..=prev.len() {
            let v = next[k - 1] + prev[prev.len() - k];
            next.push(v);
        }
        row = next;
    }
    *row.last().unwrap()
}

pub fn snake_count_oracle(n: usize) -> u64 {
    if n <= 1 {
        1
    } else {
        2 * zigzag(n)
    }
}

/// All complete plane binary shapes with the given number of leaves
/// (Catalan many).
pub fn all_shapes(leaves: usize) -> Vec<BinShape> {
    if leaves == 1 {
        return vec![BinShape::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in all_shapes(k) {
            for r in all_shapes(leaves - k) {
                out.push(BinShape::node(l.clone(), r));
            }
        }
    }
    out
}

/// Uniformly random split shape with exactly `leaves` leaves.
pub fn random_shape(rng: &mut impl Rng, leaves: usize) -> BinShape {
    if leaves == 1 {
        return BinShape::Leaf;
    }
    let split = rng.random_range(1..leaves);
    BinShape::node(random_shape(rng, split), random_shape(rng, leaves - split))
}
