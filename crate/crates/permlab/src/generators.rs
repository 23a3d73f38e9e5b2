//! Sequential generators of random permutations and their exact path laws.
//!
//! Three growth chains are implemented, each taking a uniform object of size
//! `n` to a uniform object of size `n+1`:
//!
//! * insertion: splice the new largest label into one of the `n+1` slots of
//!   the one-line word;
//! * restaurant seating: the new patron sits immediately left of an existing
//!   patron or alone at a new table; occupied tables are the cycles of the
//!   induced permutation, singleton tables its fixed points;
//! * cycle growth: splice the new largest label into a single `n`-cycle just
//!   after a uniformly chosen label.
//!
//! Every chain exposes its deterministic children, so small sizes admit an
//! exact rational enumeration of the terminal law ([`exact_chain_law`]),
//! with no sampling noise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::dist::Rational;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Deterministic stream of uniform 64-bit words with unbiased range draws.
///
/// A source is identified by `(seed, stream)`; identical pairs replay
/// identical draw sequences. Parallel consumers take disjoint streams of the
/// same seed via [`RandomSource::substream`].
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A fresh source on stream `stream` of the same seed, independent of
    /// how much this source has consumed.
    pub fn substream(&self, stream: u64) -> Self {
        Self::with_stream(self.seed, stream)
    }

    pub fn next_word(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `1..=k`, rejecting words from the top of the 64-bit
    /// range so every residue is equally likely.
    pub fn uniform(&mut self, k: usize) -> usize {
        debug_assert!(k >= 1);
        let k64 = k as u64;
        let overhang = (u64::MAX % k64 + 1) % k64; // 2^64 mod k
        loop {
            let w = self.rng.next_u64();
            if overhang == 0 || w <= u64::MAX - overhang {
                return (w % k64) as usize + 1;
            }
        }
    }
}

/// Fisher-Yates shuffle: every permutation of `[n]` has probability `1/n!`.
pub fn uniform_permutation(n: usize, rng: &mut RandomSource) -> Permutation {
    let mut image: Vec<usize> = (1..=n).collect();
    for i in (2..=n).rev() {
        let j = rng.uniform(i);
        image.swap(i - 1, j - 1);
    }
    Permutation::from_one_line(image).expect("shuffle preserves the domain")
}

/// The `n+1` insertion children of a word: the new largest label placed in
/// slot `j` (after position `j`), `j = 0..=n`.
pub fn insertion_children(p: &Permutation) -> Vec<Permutation> {
    let n = p.n();
    (0..=n)
        .map(|slot| {
            let mut word = Vec::with_capacity(n + 1);
            word.extend_from_slice(&p.one_line()[..slot]);
            word.push(n + 1);
            word.extend_from_slice(&p.one_line()[slot..]);
            Permutation::from_one_line(word).expect("insertion preserves the domain")
        })
        .collect()
}

/// One uniform insertion step: each of the `n+1` slots with probability
/// `1/(n+1)`.
pub fn insertion_step(p: &Permutation, rng: &mut RandomSource) -> Permutation {
    let slot = rng.uniform(p.n() + 1) - 1;
    let n = p.n();
    let mut word = Vec::with_capacity(n + 1);
    word.extend_from_slice(&p.one_line()[..slot]);
    word.push(n + 1);
    word.extend_from_slice(&p.one_line()[slot..]);
    Permutation::from_one_line(word).expect("insertion preserves the domain")
}

/// Seating choice for the next patron.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeatChoice {
    /// Sit immediately to the left of this patron.
    LeftOf(usize),
    /// Sit alone at a new table.
    NewTable,
}

/// Restaurant configuration: tables of patrons seated in circles.
///
/// Each table lists its patrons so that the induced permutation sends an
/// entry to the entry after it (cyclically); the induced permutation maps
/// every patron to their left neighbor and singletons to themselves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RestaurantState {
    tables: Vec<Vec<usize>>,
    patrons: usize,
}

impl RestaurantState {
    /// Patron 1 alone at the first table.
    pub fn new() -> Self {
        Self {
            tables: vec![vec![1]],
            patrons: 1,
        }
    }

    pub fn patron_count(&self) -> usize {
        self.patrons
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// All `n+1` seating choices for the next patron.
    pub fn choices(&self) -> Vec<SeatChoice> {
        let mut out: Vec<SeatChoice> = (1..=self.patrons).map(SeatChoice::LeftOf).collect();
        out.push(SeatChoice::NewTable);
        out
    }

    /// Applies a seating choice for patron `n+1`.
    pub fn seat(&self, choice: SeatChoice) -> Self {
        let newcomer = self.patrons + 1;
        let mut tables = self.tables.clone();
        match choice {
            SeatChoice::NewTable => tables.push(vec![newcomer]),
            SeatChoice::LeftOf(c) => {
                let (t, idx) = self
                    .locate(c)
                    .expect("seating choice must name a present patron");
                tables[t].insert(idx + 1, newcomer);
            }
        }
        Self {
            tables,
            patrons: newcomer,
        }
    }

    fn locate(&self, patron: usize) -> Option<(usize, usize)> {
        for (t, table) in self.tables.iter().enumerate() {
            if let Some(idx) = table.iter().position(|&v| v == patron) {
                return Some((t, idx));
            }
        }
        None
    }

    /// The induced permutation: each patron maps to their left neighbor,
    /// singletons to themselves.
    pub fn permutation(&self) -> Permutation {
        let mut image = vec![0; self.patrons];
        for table in &self.tables {
            for (idx, &patron) in table.iter().enumerate() {
                image[patron - 1] = table[(idx + 1) % table.len()];
            }
        }
        Permutation::from_one_line(image).expect("tables partition the patrons")
    }

    /// Number of singleton tables whose patron is at least 2 — the fixed
    /// points of the induced permutation counted away from label 1.
    pub fn counted_singletons(&self) -> usize {
        self.tables
            .iter()
            .filter(|t| t.len() == 1 && t[0] >= 2)
            .count()
    }
}

impl Default for RestaurantState {
    fn default() -> Self {
        Self::new()
    }
}

/// One uniform seating step: each of the `n+1` choices with probability
/// `1/(n+1)`.
pub fn crp_step(state: &RestaurantState, rng: &mut RandomSource) -> RestaurantState {
    let n = state.patron_count();
    let draw = rng.uniform(n + 1);
    let choice = if draw <= n {
        SeatChoice::LeftOf(draw)
    } else {
        SeatChoice::NewTable
    };
    state.seat(choice)
}

/// The `n` growth children of a single `n`-cycle: the new largest label
/// spliced immediately after each possible label.
pub fn cycle_growth_children(gamma: &Permutation) -> Result<Vec<Permutation>> {
    if !gamma.is_single_cycle() {
        return Err(Error::NotSingleCycle);
    }
    let n = gamma.n();
    Ok((1..=n)
        .map(|k| splice_after(gamma, k))
        .collect())
}

/// One uniform cycle-growth step on a single `n`-cycle.
pub fn cycle_growth_step(gamma: &Permutation, rng: &mut RandomSource) -> Result<Permutation> {
    if !gamma.is_single_cycle() {
        return Err(Error::NotSingleCycle);
    }
    let k = rng.uniform(gamma.n());
    Ok(splice_after(gamma, k))
}

fn splice_after(gamma: &Permutation, k: usize) -> Permutation {
    let n = gamma.n();
    let mut image = Vec::with_capacity(n + 1);
    image.extend_from_slice(gamma.one_line());
    image.push(image[k - 1]); // new label inherits k's successor
    image[k - 1] = n + 1;
    Permutation::from_one_line(image).expect("splicing preserves the cycle")
}

/// Returns `g^{-1} eta g` for a uniform `g`: a uniform element of the
/// conjugacy class of `eta`.
pub fn conjugacy_sampler(eta: &Permutation, rng: &mut RandomSource) -> Permutation {
    let g = uniform_permutation(eta.n(), rng);
    eta.conjugate_by(&g).expect("sizes match")
}

/// Which growth chain to enumerate or sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Insertion,
    Crp,
    CycleGrowth,
}

/// Largest size for which the path tree is enumerated exactly.
pub const EXACT_CHAIN_CAP: usize = 7;

/// Exact terminal law of a growth chain at size `n`: every path probability
/// is accumulated in rational arithmetic.
///
/// Insertion and seating laws live on all of `S_n`; cycle growth lives on
/// the single `n`-cycles.
pub fn exact_chain_law(kind: ChainKind, n: usize) -> Result<BTreeMap<Permutation, Rational>> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    if n > EXACT_CHAIN_CAP {
        return Err(Error::ExceedsCap {
            n,
            cap: EXACT_CHAIN_CAP,
        });
    }
    match kind {
        ChainKind::Insertion => {
            let start = Permutation::identity(1);
            Ok(grow_law(start, n, |p| Ok(insertion_children(p)))?)
        }
        ChainKind::CycleGrowth => {
            let start = Permutation::identity(1);
            Ok(grow_law(start, n, cycle_growth_children)?)
        }
        ChainKind::Crp => {
            let mut level: BTreeMap<RestaurantState, Rational> = BTreeMap::new();
            level.insert(RestaurantState::new(), Rational::one());
            for size in 1..n {
                let share = Rational::new(BigInt::one(), BigInt::from(size + 1));
                let mut next = BTreeMap::new();
                for (state, prob) in level {
                    let p = prob * &share;
                    for choice in state.choices() {
                        *next
                            .entry(state.seat(choice))
                            .or_insert_with(num_traits::Zero::zero) += &p;
                    }
                }
                level = next;
            }
            let mut law = BTreeMap::new();
            for (state, prob) in level {
                *law.entry(state.permutation())
                    .or_insert_with(num_traits::Zero::zero) += prob;
            }
            Ok(law)
        }
    }
}

fn grow_law(
    start: Permutation,
    n: usize,
    children: impl Fn(&Permutation) -> Result<Vec<Permutation>>,
) -> Result<BTreeMap<Permutation, Rational>> {
    let mut level: BTreeMap<Permutation, Rational> = BTreeMap::new();
    level.insert(start, Rational::one());
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for (state, prob) in level {
            let kids = children(&state)?;
            let share = prob / Rational::from_integer(BigInt::from(kids.len()));
            for kid in kids {
                *next
                    .entry(kid)
                    .or_insert_with(num_traits::Zero::zero) += &share;
            }
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_n_cycles, all_permutations};
    use num_traits::Zero;
    use std::collections::BTreeMap;

    #[test]
    fn source_is_reproducible() {
        let mut a = RandomSource::new(42);
        let mut b = RandomSource::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_word(), b.next_word());
        }
        let mut c = RandomSource::with_stream(42, 1);
        let mut a2 = RandomSource::new(42);
        assert!((0..10).any(|_| a2.next_word() != c.next_word()));
    }

    #[test]
    fn uniform_draws_stay_in_range() {
        let mut rng = RandomSource::new(7);
        for k in 1..=17 {
            for _ in 0..200 {
                let v = rng.uniform(k);
                assert!((1..=k).contains(&v));
            }
        }
    }

    #[test]
    fn uniform_permutation_small_cases() {
        let mut rng = RandomSource::new(1);
        assert_eq!(uniform_permutation(1, &mut rng), Permutation::identity(1));

        let mut rng = RandomSource::new(99);
        let mut counts: BTreeMap<Permutation, u64> = BTreeMap::new();
        let samples = 100_000u64;
        for _ in 0..samples {
            *counts.entry(uniform_permutation(4, &mut rng)).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 24);
        let expected = samples as f64 / 24.0;
        let sigma = (samples as f64 * (1.0 / 24.0) * (23.0 / 24.0)).sqrt();
        for (_, &c) in &counts {
            assert!((c as f64 - expected).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn uniform_permutation_replays_under_same_seed() {
        let mut a = RandomSource::new(5);
        let mut b = RandomSource::new(5);
        for _ in 0..50 {
            assert_eq!(uniform_permutation(20, &mut a), uniform_permutation(20, &mut b));
        }
    }

    #[test]
    fn insertion_children_of_singleton() {
        let kids = insertion_children(&Permutation::identity(1));
        let expected: Vec<Permutation> =
            vec!["2,1".parse().unwrap(), "1,2".parse().unwrap()];
        assert_eq!(kids, expected);
    }

    #[test]
    fn seating_structures() {
        let s1 = RestaurantState::new();
        assert_eq!(s1.permutation(), Permutation::identity(1));

        let joined = s1.seat(SeatChoice::LeftOf(1));
        assert_eq!(joined.permutation(), "2,1".parse().unwrap());
        let alone = s1.seat(SeatChoice::NewTable);
        assert_eq!(alone.permutation(), Permutation::identity(2));
        assert_eq!(alone.counted_singletons(), 1);
        assert_eq!(joined.counted_singletons(), 0);

        // Left-of splices the newcomer as the left neighbor: sigma(c) = new.
        let s3 = joined.seat(SeatChoice::LeftOf(1));
        assert_eq!(s3.permutation().apply(1), 3);
    }

    #[test]
    fn cycle_growth_children_of_transposition() {
        let two_cycle: Permutation = "2,1".parse().unwrap();
        let kids = cycle_growth_children(&two_cycle).unwrap();
        assert_eq!(kids, vec!["3,1,2".parse().unwrap(), "2,3,1".parse().unwrap()]);
        for kid in kids {
            assert!(kid.is_single_cycle());
        }
        assert!(cycle_growth_children(&Permutation::identity(3)).is_err());
        let mut rng = RandomSource::new(3);
        assert!(cycle_growth_step(&Permutation::identity(3), &mut rng).is_err());
    }

    #[test]
    fn exact_laws_are_uniform() {
        for n in 1..=5 {
            let factorial: usize = (1..=n).product();
            let unit = Rational::new(BigInt::one(), BigInt::from(factorial));

            let insertion = exact_chain_law(ChainKind::Insertion, n).unwrap();
            assert_eq!(insertion.len(), factorial);
            assert!(insertion.values().all(|p| *p == unit));

            let crp = exact_chain_law(ChainKind::Crp, n).unwrap();
            assert_eq!(crp.len(), factorial);
            assert!(crp.values().all(|p| *p == unit));

            let cycles = exact_chain_law(ChainKind::CycleGrowth, n).unwrap();
            let cycle_count: usize = (1..n).product::<usize>().max(1);
            assert_eq!(cycles.len(), cycle_count);
            let cycle_unit = Rational::new(BigInt::one(), BigInt::from(cycle_count));
            assert!(cycles.values().all(|p| *p == cycle_unit));
            assert!(cycles.keys().all(|g| g.is_single_cycle()));
        }
        assert!(exact_chain_law(ChainKind::Insertion, 8).is_err());
    }

    #[test]
    fn exact_law_supports_match_enumerations() {
        let insertion = exact_chain_law(ChainKind::Insertion, 4).unwrap();
        let all: Vec<Permutation> = all_permutations(4).collect();
        assert!(all.iter().all(|p| insertion.contains_key(p)));

        let cycles = exact_chain_law(ChainKind::CycleGrowth, 4).unwrap();
        let all_cycles: Vec<Permutation> = all_n_cycles(4).collect();
        assert!(all_cycles.iter().all(|g| cycles.contains_key(g)));
    }

    #[test]
    fn conjugacy_sampler_cases() {
        let mut rng = RandomSource::new(11);
        let id = Permutation::identity(6);
        for _ in 0..20 {
            assert_eq!(conjugacy_sampler(&id, &mut rng), id);
        }

        let eta: Permutation = "2,1,3".parse().unwrap();
        let mut counts: BTreeMap<Permutation, u64> = BTreeMap::new();
        let samples = 100_000u64;
        for _ in 0..samples {
            let s = conjugacy_sampler(&eta, &mut rng);
            assert_eq!(s.cycle_partition(), eta.cycle_partition());
            *counts.entry(s).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        let expected = samples as f64 / 3.0;
        let sigma = (samples as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for (_, &c) in &counts {
            assert!((c as f64 - expected).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn growth_laws_sum_to_one() {
        for kind in [ChainKind::Insertion, ChainKind::Crp, ChainKind::CycleGrowth] {
            let law = exact_chain_law(kind, 5).unwrap();
            let total = law.values().fold(Rational::zero(), |acc, p| acc + p);
            assert!(total.is_one());
        }
    }
}
