//! Permutations of `[n] = {1, …, n}` and the adjacency statistics built on them.
//!
//! A permutation is stored in one-line notation. The statistics exposed here
//! are all index sets:
//!
//! * unseparated pairs: `{k in [n-1] : pi(k+1) = pi(k) + 1}` — originally
//!   adjacent labels still adjacent and in order;
//! * fixed points: `{k : pi(k) = k}`;
//! * shifted successions: `{k in [n-h] : pi(k+h) = pi(k) + 1}`;
//! * circular successions: `{k in [n] : pi(k+1 mod n) = pi(k) + 1 mod n}`,
//!   where index and value `n+1` both wrap to `1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation.
///
/// Entry `k` of the notation is the image of `k`; all public indices and
/// values are 1-based, so `"5,6,7,4,1,2,3"` maps 1 to 5.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (1-based values).
    pub fn from_one_line(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { image })
    }

    /// The identity permutation of `[n]`.
    pub fn identity(n: usize) -> Self {
        Self {
            image: (1..=n).collect(),
        }
    }

    /// The rotation `i -> i + h mod n`, with representatives in `[n]`.
    pub fn rotation(n: usize, h: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("rotation of empty set".into()));
        }
        let image = (1..=n).map(|i| (i - 1 + h) % n + 1).collect();
        Ok(Self { image })
    }

    /// Builds a permutation of `[n]` from disjoint cycles; labels absent from
    /// every cycle are fixed points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (idx, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {v} out of range 1..={n}"
                    )));
                }
                if used[v - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {v} repeated"
                    )));
                }
                used[v - 1] = true;
                image[v - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Self { image })
    }

    /// Size of the underlying set.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.image[k - 1]
    }

    /// The one-line notation as a slice.
    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let image = other.image.iter().map(|&v| self.image[v - 1]).collect();
        Ok(Self { image })
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v - 1] = i + 1;
        }
        Self { image }
    }

    /// The commutator `[self, pi] = self⁻¹ pi⁻¹ self pi`.
    pub fn commutator(&self, pi: &Self) -> Result<Self> {
        if self.n() != pi.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: pi.n(),
            });
        }
        let self_inv = self.inverse();
        let pi_inv = pi.inverse();
        // self_inv(pi_inv(self(pi(k)))) evaluated pointwise.
        let image = (1..=self.n())
            .map(|k| self_inv.apply(pi_inv.apply(self.apply(pi.apply(k)))))
            .collect();
        Ok(Self { image })
    }

    /// Conjugation `g⁻¹ ∘ self ∘ g`; preserves cycle structure.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        if self.n() != g.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: g.n(),
            });
        }
        let g_inv = g.inverse();
        let image = (1..=self.n())
            .map(|k| g_inv.apply(self.apply(g.apply(k))))
            .collect();
        Ok(Self { image })
    }

    /// `{k : pi(k) = k}`.
    pub fn fixed_points(&self) -> BTreeSet<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `{k in [n-1] : pi(k+1) = pi(k) + 1}`; empty for `n = 1`.
    pub fn unseparated_pairs(&self) -> BTreeSet<usize> {
        (1..self.n())
            .filter(|&k| self.image[k] == self.image[k - 1] + 1)
            .collect()
    }

    /// `{k in [n-h] : pi(k+h) = pi(k) + 1}` for `1 <= h < n`.
    pub fn shifted_successions(&self, h: usize) -> Result<BTreeSet<usize>> {
        let n = self.n();
        if h == 0 || h >= n {
            return Err(Error::ShiftOutOfRange { h, n });
        }
        Ok((1..=n - h)
            .filter(|&k| self.image[k + h - 1] == self.image[k - 1] + 1)
            .collect())
    }

    /// `{k in [n] : pi(k+1 mod n) = pi(k) + 1 mod n}`, both wraps sending
    /// `n+1` to `1`.
    pub fn circular_successions(&self) -> BTreeSet<usize> {
        let n = self.n();
        (1..=n)
            .filter(|&k| {
                let next = k % n + 1;
                let target = self.image[k - 1] % n + 1;
                self.image[next - 1] == target
            })
            .collect()
    }

    /// Disjoint cycles, each listed from its least element, ordered by
    /// ascending least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if visited[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur - 1] {
                visited[cur - 1] = true;
                cycle.push(cur);
                cur = self.image[cur - 1];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Multiset of cycle lengths together with the derived fixed-point and
    /// 2-cycle counts.
    pub fn cycle_partition(&self) -> CyclePartition {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        CyclePartition { lengths }
    }

    /// Whether the permutation is a single cycle through all of `[n]`.
    pub fn is_single_cycle(&self) -> bool {
        let mut len = 1;
        let mut cur = self.image[0];
        while cur != 1 {
            cur = self.image[cur - 1];
            len += 1;
        }
        len == self.n()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.image.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(image)
    }
}

/// Cycle type of a permutation: the multiset of cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePartition {
    lengths: Vec<usize>,
}

impl CyclePartition {
    /// Builds the partition directly from a multiset of lengths.
    pub fn from_lengths(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::Domain("cycle lengths must be positive".into()));
        }
        lengths.sort_unstable();
        Ok(Self { lengths })
    }

    /// Cycle lengths in ascending order.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Number of 1-cycles (fixed points), `f`.
    pub fn fixed_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 1).count()
    }

    /// Number of 2-cycles, `t`.
    pub fn two_cycle_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 2).count()
    }
}

impl fmt::Display for CyclePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lengths.iter().rev().join("+"))
    }
}

/// A circular permutation: an ordered listing of `[n]` considered up to
/// cyclic rotation of its entries, stored in the canonical rotation that
/// puts `1` first.
///
/// The empty listing (`n = 0`) is admitted as the vacuous class so that the
/// circular insertion recursion can start from nothing when every label is
/// targeted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularPermutation {
    word: Vec<usize>,
}

impl CircularPermutation {
    /// Builds the class of `word` (any rotation); the stored representative
    /// is rotated so `1` leads.
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidCircular(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidCircular(format!("value {v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(Self {
            word: canonical_rotation(&word),
        })
    }

    /// The vacuous class on zero labels.
    pub fn empty() -> Self {
        Self { word: Vec::new() }
    }

    /// Canonical representative (starts with `1` when nonempty).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// The single `n`-cycle sending each entry to the entry on its right
    /// (cyclically).
    pub fn avatar(&self) -> Permutation {
        let n = self.n();
        let mut image = vec![0; n];
        for (i, &v) in self.word.iter().enumerate() {
            image[v - 1] = self.word[(i + 1) % n];
        }
        Permutation { image }
    }

    /// Recovers the class from a single `n`-cycle.
    pub fn from_n_cycle(p: &Permutation) -> Result<Self> {
        if !p.is_single_cycle() {
            return Err(Error::NotSingleCycle);
        }
        let mut word = Vec::with_capacity(p.n());
        let mut cur = 1;
        for _ in 0..p.n() {
            word.push(cur);
            cur = p.apply(cur);
        }
        Ok(Self { word })
    }

    /// `{j in [n] : avatar(j) = j + 1 mod n}`, the circular-succession set of
    /// the class.
    pub fn theta(&self) -> BTreeSet<usize> {
        let n = self.n();
        if n == 0 {
            return BTreeSet::new();
        }
        let avatar = self.avatar();
        (1..=n).filter(|&j| avatar.apply(j) == j % n + 1).collect()
    }
}

fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    if word.is_empty() {
        return Vec::new();
    }
    let lead = word.iter().position(|&v| v == 1).expect("1 must appear");
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[lead..]);
    out.extend_from_slice(&word[..lead]);
    out
}

impl fmt::Display for CircularPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c:{}", self.word.iter().join(","))
    }
}

impl FromStr for CircularPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("c:").unwrap_or(s);
        let word = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidCircular(format!("bad entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_word(word)
    }
}

/// All `n!` permutations of `[n]` in lexicographic order of one-line
/// notation.
pub fn all_permutations(n: usize) -> Box<dyn Iterator<Item = Permutation>> {
    if n == 0 {
        return Box::new(std::iter::empty());
    }
    Box::new((1..=n).permutations(n).map(|image| Permutation { image }))
}

/// All `(n-1)!` single `n`-cycles of `[n]`.
pub fn all_n_cycles(n: usize) -> Box<dyn Iterator<Item = Permutation>> {
    if n == 0 {
        return Box::new(std::iter::empty());
    }
    if n == 1 {
        return Box::new(std::iter::once(Permutation::identity(1)));
    }
    Box::new((2..=n).permutations(n - 1).map(move |tail| {
        let mut cycle = Vec::with_capacity(n);
        cycle.push(1);
        cycle.extend(tail);
        Permutation::from_cycles(n, &[cycle]).expect("constructed cycle is valid")
    }))
}

/// All `(n-1)!` circular permutations of `[n]` (canonical representatives).
pub fn all_circular(n: usize) -> Box<dyn Iterator<Item = CircularPermutation>> {
    if n == 0 {
        return Box::new(std::iter::once(CircularPermutation::empty()));
    }
    if n == 1 {
        return Box::new(std::iter::once(CircularPermutation { word: vec![1] }));
    }
    Box::new((2..=n).permutations(n - 1).map(|tail| {
        let mut word = Vec::with_capacity(tail.len() + 1);
        word.push(1);
        word.extend(tail);
        CircularPermutation { word }
    }))
}
