//! Permutations, alternating sequences and the rank map, snake recognition,
//! direct and skew sums, pattern containment and separability.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images are not a permutation of 1..={0}")]
    NotABijection(usize),
    #[error("sequence values are not pairwise distinct")]
    DuplicateValues,
    #[error("consecutive differences do not strictly alternate in sign")]
    NotAlternating,
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A permutation of `{1, ..., n}` in one-line notation. All interfaces are
/// 1-indexed, matching the usual two-row notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotABijection(n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `sigma(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Images in one-line order.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Whether the one-line form strictly alternates rise/fall, with either
    /// starting direction. Singletons count as snakes.
    pub fn is_snake(&self) -> bool {
        values_alternate(&self.images)
    }

    /// Direct sum: first block unchanged, second block shifted up.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.len();
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&v| v + m))
            .collect();
        Permutation { images }
    }

    /// Skew sum: first block shifted up, second block unchanged.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let n = other.len();
        let images = self
            .images
            .iter()
            .map(|&v| v + n)
            .chain(other.images.iter().copied())
            .collect();
        Permutation { images }
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    /// Exhaustive over index subsets; patterns here have length 4, so this
    /// is cheap at the sizes the construction handles.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return false;
        }
        (0..self.len()).combinations(k).any(|idx| {
            (0..k).all(|a| {
                (a + 1..k).all(|b| {
                    (self.images[idx[a]] < self.images[idx[b]])
                        == (pattern.images[a] < pattern.images[b])
                })
            })
        })
    }

    /// Separability via pattern avoidance of 3142 and 2413. The separating
    /// tree builder gives an independent check; the two must agree.
    pub fn is_separable(&self) -> bool {
        let p3142 = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let p2413 = Permutation::new(vec![2, 4, 1, 3]).unwrap();
        !self.contains_pattern(&p3142) && !self.contains_pattern(&p2413)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Whitespace- or comma-separated one-line notation, e.g. `4 5 1 3 2`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let mut images = Vec::new();
        for part in s.split(|c: char| c.is_whitespace() || c == ',') {
            if part.is_empty() {
                continue;
            }
            let v = part
                .parse::<usize>()
                .map_err(|_| PermError::Parse(format!("bad entry {part:?}")))?;
            images.push(v);
        }
        if images.is_empty() {
            return Err(PermError::Parse("empty permutation".into()));
        }
        Permutation::new(images).map_err(|e| PermError::Parse(e.to_string()))
    }
}

fn values_alternate<T: PartialOrd>(values: &[T]) -> bool {
    if values.len() < 3 {
        return true;
    }
    values
        .windows(3)
        .all(|w| (w[0] < w[1] && w[1] > w[2]) || (w[0] > w[1] && w[1] < w[2]))
}

/// A finite sequence of pairwise distinct rationals whose consecutive
/// differences strictly alternate in sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltSequence {
    values: Vec<Rat>,
}

impl AltSequence {
    pub fn new(values: Vec<Rat>) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::Parse("empty sequence".into()));
        }
        for (a, b) in values.iter().tuple_combinations() {
            if a == b {
                return Err(PermError::DuplicateValues);
            }
        }
        if !values_alternate(&values) {
            return Err(PermError::NotAlternating);
        }
        Ok(AltSequence { values })
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// The snake of the sequence: position `i` maps to the rank of the
    /// `i`-th value in the ascending reordering.
    pub fn snake(&self) -> Permutation {
        rank_permutation(&self.values).expect("values validated distinct")
    }
}

/// Ranks arbitrary distinct values: entry `i` of the result is the position
/// of `values[i]` in the sorted ascending copy. Fails on duplicates.
pub fn rank_permutation(values: &[Rat]) -> Result<Permutation, PermError> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut images = vec![0usize; values.len()];
    for (rank, &idx) in order.iter().enumerate() {
        if rank > 0 && values[order[rank - 1]] == values[idx] {
            return Err(PermError::DuplicateValues);
        }
        images[idx] = rank + 1;
    }
    Ok(Permutation { images })
}

/// Snake of an alternating sequence, validating the input first.
pub fn snake_of_values(values: &[Rat]) -> Result<Permutation, PermError> {
    Ok(AltSequence::new(values.to_vec())?.snake())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn snake_recognition() {
        assert!(perm(&[3, 2, 4, 1, 5]).is_snake());
        assert!(!perm(&[1, 2, 3]).is_snake());
        assert!(perm(&[1]).is_snake());
        assert!(perm(&[1, 2]).is_snake());
        assert!(perm(&[2, 1]).is_snake());
        assert!(perm(&[2, 3, 1]).is_snake());
        assert!(!perm(&[2, 3, 4, 1]).is_snake());
    }

    #[test]
    fn ranks_of_alternating_sequences() {
        let s = AltSequence::new(vec![
            rat_int(3),
            rat_int(1),
            rat_int(4),
            rat_int(-1),
            rat_int(6),
        ])
        .unwrap();
        assert_eq!(s.snake(), perm(&[3, 2, 4, 1, 5]));

        let critical = AltSequence::new(vec![
            rat(207, 10),
            rat(184, 10),
            rat(288, 10),
            rat(-441, 10),
        ])
        .unwrap();
        assert_eq!(critical.snake(), perm(&[3, 2, 4, 1]));

        let single = AltSequence::new(vec![rat_int(7)]).unwrap();
        assert_eq!(single.snake(), perm(&[1]));
    }

    #[test]
    fn alternation_is_validated() {
        assert_eq!(
            AltSequence::new(vec![rat_int(1), rat_int(2), rat_int(3)]),
            Err(PermError::NotAlternating)
        );
        assert_eq!(
            AltSequence::new(vec![rat_int(1), rat_int(1)]),
            Err(PermError::DuplicateValues)
        );
    }

    #[test]
    fn sums_match_worked_example() {
        let a = perm(&[4, 6, 5, 3, 1, 2]);
        let b = perm(&[1, 3, 2]);
        assert_eq!(a.direct_sum(&b), perm(&[4, 6, 5, 3, 1, 2, 7, 9, 8]));
        assert_eq!(a.skew_sum(&b), perm(&[7, 9, 8, 6, 4, 5, 1, 3, 2]));

        assert_eq!(perm(&[1]).direct_sum(&perm(&[1])), perm(&[1, 2]));
        assert_eq!(perm(&[1]).skew_sum(&perm(&[1])), perm(&[2, 1]));

        // p (+) identity_k appends fixed points at the top
        let p = perm(&[2, 1]);
        assert_eq!(
            p.direct_sum(&Permutation::identity(3)),
            perm(&[2, 1, 3, 4, 5])
        );

        // left-associated skew sums of singletons give the decreasing permutation
        let mut d = perm(&[1]);
        for _ in 0..4 {
            d = d.skew_sum(&perm(&[1]));
        }
        assert_eq!(d, perm(&[5, 4, 3, 2, 1]));
    }

    #[test]
    fn pattern_containment() {
        let p3142 = perm(&[3, 1, 4, 2]);
        assert!(p3142.contains_pattern(&p3142));
        assert!(!perm(&[6, 7, 4, 5, 1, 3, 2]).contains_pattern(&p3142));
        assert!(!perm(&[2, 4, 1, 3]).contains_pattern(&p3142));
        assert!(perm(&[5, 3, 1, 6, 2, 4]).contains_pattern(&p3142));
        assert!(!perm(&[1, 2]).contains_pattern(&p3142));
    }

    #[test]
    fn separability() {
        assert!(perm(&[6, 7, 4, 5, 1, 3, 2]).is_separable());
        assert!(!perm(&[3, 1, 4, 2]).is_separable());
        assert!(!perm(&[2, 4, 1, 3]).is_separable());
        assert!(Permutation::identity(6).is_separable());
    }

    #[test]
    fn parse_and_display() {
        let p: Permutation = "4 5 1 3 2".parse().unwrap();
        assert_eq!(p, perm(&[4, 5, 1, 3, 2]));
        assert_eq!(p.to_string(), "4 5 1 3 2");
        let q: Permutation = "4,5,1,3,2".parse().unwrap();
        assert_eq!(q, p);
        assert!("4 5 5".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
    }
}
