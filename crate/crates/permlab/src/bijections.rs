//! Constructive bijections between the permutation statistics.
//!
//! Three families live here:
//!
//! * the fundamental transformation: write a permutation in canonical cycle
//!   form (each cycle led by its least element, leaders decreasing left to
//!   right), erase the parentheses, and read the result as one-line
//!   notation;
//! * the shift bijection built on it: `p -> hat(rho_h ∘ p)^{-1}` turns the
//!   fixed points of `p` inside `[n-h]` into exactly the shifted
//!   successions of the image, bijectively on the whole symmetric group;
//! * circular insertion/deletion: growing a circular permutation by
//!   relabeling and splicing `k+1` to the right of `k`, which realizes the
//!   count identity between classes with a prescribed circular-succession
//!   set and smaller classes with none.

use crate::error::{Error, Result};
use crate::perm::{CircularPermutation, Permutation};

use itertools::Itertools;
use std::fmt;

/// Cycle decomposition normalized for parenthesis erasure: every cycle is
/// led by its least element and the leaders strictly decrease.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCycleForm {
    cycles: Vec<Vec<usize>>,
}

impl CanonicalCycleForm {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Concatenation of the cycles with parentheses erased.
    pub fn word(&self) -> Vec<usize> {
        self.cycles.iter().flatten().copied().collect()
    }

    pub fn to_permutation(&self) -> Permutation {
        let n = self.cycles.iter().map(Vec::len).sum();
        Permutation::from_cycles(n, &self.cycles).expect("canonical cycles are disjoint")
    }
}

impl fmt::Display for CanonicalCycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "({})", cycle.iter().join(","))?;
        }
        Ok(())
    }
}

/// Canonical cycle form of `p`: min-led cycles ordered by decreasing leader.
pub fn canonical_cycle_form(p: &Permutation) -> CanonicalCycleForm {
    let mut cycles = p.cycles();
    cycles.reverse();
    CanonicalCycleForm { cycles }
}

/// Erases the parentheses of the canonical cycle form, giving a new
/// permutation in one-line notation.
pub fn fundamental_transform(p: &Permutation) -> Permutation {
    Permutation::from_one_line(canonical_cycle_form(p).word())
        .expect("cycle erasure permutes [n]")
}

/// Inverse of [`fundamental_transform`]: reinserts parentheses before each
/// left-to-right minimum of the word and reads off the cycles.
pub fn inverse_fundamental(w: &Permutation) -> Permutation {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut running_min = usize::MAX;
    for &v in w.one_line() {
        if v < running_min {
            running_min = v;
            cycles.push(Vec::new());
        }
        cycles.last_mut().expect("a cycle was opened").push(v);
    }
    Permutation::from_cycles(w.n(), &cycles).expect("bracketing partitions [n]")
}

/// Sends `p` to a permutation whose shifted successions at shift `h` are
/// exactly the fixed points of `p` inside `[n-h]`; a bijection of the
/// symmetric group for each fixed `h`.
pub fn fixed_to_shifted(p: &Permutation, h: usize) -> Result<Permutation> {
    let n = p.n();
    if h == 0 || h >= n {
        return Err(Error::ShiftOutOfRange { h, n });
    }
    let rho = Permutation::rotation(n, h)?;
    let lifted = rho.compose(p)?;
    Ok(fundamental_transform(&lifted).inverse())
}

/// Exact inverse of [`fixed_to_shifted`].
pub fn shifted_to_fixed(q: &Permutation, h: usize) -> Result<Permutation> {
    let n = q.n();
    if h == 0 || h >= n {
        return Err(Error::ShiftOutOfRange { h, n });
    }
    let lifted = inverse_fundamental(&q.inverse());
    let rho_inv = Permutation::rotation(n, n - h)?;
    rho_inv.compose(&lifted)
}

/// One circular growth step on a raw listing: bump every entry above `k`,
/// then splice `k+1` immediately to the right of `k`; when `k` exceeds every
/// present entry, splice the new top value immediately to the left of `1`
/// instead.
fn insert_into_word(word: &[usize], k: usize) -> Result<Vec<usize>> {
    let n = word.len();
    if k == 0 || k > n + 1 {
        return Err(Error::InsertionOutOfRange { k, max: n + 1 });
    }
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut out = Vec::with_capacity(n + 1);
    if k == n + 1 {
        for &v in word {
            if v == 1 {
                out.push(k);
            }
            out.push(v);
        }
    } else {
        for &v in word {
            let relabeled = if v > k { v + 1 } else { v };
            out.push(relabeled);
            if v == k {
                out.push(k + 1);
            }
        }
    }
    Ok(out)
}

/// Grows a circular permutation of `[n']` into one of `[n'+1]` whose
/// circular-succession set gains `k` (entries above `k` are relabeled up).
pub fn circular_insert(sigma: &CircularPermutation, k: usize) -> Result<CircularPermutation> {
    CircularPermutation::from_word(insert_into_word(sigma.word(), k)?)
}

/// Undoes [`circular_insert`]. Only the largest circular succession may be
/// peeled, matching the descending order in which the growth recursion is
/// inverted.
pub fn circular_delete(sigma: &CircularPermutation, k: usize) -> Result<CircularPermutation> {
    let n = sigma.n();
    let theta = sigma.theta();
    if !theta.contains(&k) {
        return Err(Error::NotPeelable {
            k,
            reason: "not a circular succession".into(),
        });
    }
    if theta.iter().next_back() != Some(&k) {
        return Err(Error::NotPeelable {
            k,
            reason: "larger circular successions must be peeled first".into(),
        });
    }
    let word = sigma.word();
    let out: Vec<usize> = if k == n {
        // The top value sits immediately left of 1; drop it.
        word.iter().copied().filter(|&v| v != n).collect()
    } else {
        word.iter()
            .copied()
            .filter(|&v| v != k + 1)
            .map(|v| if v > k + 1 { v - 1 } else { v })
            .collect()
    };
    CircularPermutation::from_word(out)
}

/// Runs the growth recursion from a class with no circular successions
/// through an ascending set of target labels, returning every intermediate
/// stage (the starting class first).
pub fn build_circular_trace(
    sigma0: &CircularPermutation,
    ks: &[usize],
) -> Result<Vec<CircularPermutation>> {
    if !sigma0.theta().is_empty() {
        return Err(Error::Domain(
            "starting class must have no circular successions".into(),
        ));
    }
    if !ks.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain(
            "target labels must be strictly ascending".into(),
        ));
    }
    let mut stages = Vec::with_capacity(ks.len() + 1);
    stages.push(sigma0.clone());
    for &k in ks {
        let next = circular_insert(stages.last().expect("nonempty"), k)?;
        stages.push(next);
    }
    Ok(stages)
}

/// As [`build_circular_trace`], returning only the final class, whose
/// circular-succession set is exactly `ks`.
pub fn build_circular(
    sigma0: &CircularPermutation,
    ks: &[usize],
) -> Result<CircularPermutation> {
    Ok(build_circular_trace(sigma0, ks)?
        .pop()
        .expect("trace contains the start"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_circular, all_permutations};
    use proptest::prelude::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn circ(s: &str) -> CircularPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_cases() {
        assert_eq!(
            canonical_cycle_form(&perm("7,2,6,4,1,3,5")).to_string(),
            "(4)(3,6)(2)(1,7,5)"
        );
        assert_eq!(
            canonical_cycle_form(&Permutation::identity(3)).to_string(),
            "(3)(2)(1)"
        );
        assert_eq!(
            canonical_cycle_form(&perm("1,3,7,5,2,4,6")).to_string(),
            "(2,3,7,6,4,5)(1)"
        );
        let form = canonical_cycle_form(&perm("7,2,6,4,1,3,5"));
        assert_eq!(form.to_permutation(), perm("7,2,6,4,1,3,5"));
    }

    #[test]
    fn fundamental_transform_cases() {
        assert_eq!(
            fundamental_transform(&perm("1,3,7,5,2,4,6")),
            perm("2,3,7,6,4,5,1")
        );
        assert_eq!(
            fundamental_transform(&Permutation::identity(5)),
            perm("5,4,3,2,1")
        );
    }

    #[test]
    fn fundamental_transform_is_a_bijection_on_s6() {
        let images: BTreeSet<Permutation> =
            all_permutations(6).map(|p| fundamental_transform(&p)).collect();
        assert_eq!(images.len(), 720);
    }

    #[test]
    fn inverse_fundamental_cases() {
        assert_eq!(
            inverse_fundamental(&perm("2,3,7,6,4,5,1")),
            perm("1,3,7,5,2,4,6")
        );
        assert_eq!(
            inverse_fundamental(&perm("5,4,3,2,1")),
            Permutation::identity(5)
        );
        for p in all_permutations(7) {
            assert_eq!(inverse_fundamental(&fundamental_transform(&p)), p);
        }
    }

    #[test]
    fn fixed_to_shifted_worked_example() {
        let p = perm("7,2,6,4,1,3,5");
        let q = fixed_to_shifted(&p, 1).unwrap();
        assert_eq!(q, perm("7,1,2,5,6,4,3"));
        assert_eq!(q.unseparated_pairs(), p.fixed_points());
        assert_eq!(shifted_to_fixed(&q, 1).unwrap(), p);
    }

    #[test]
    fn fixed_to_shifted_identity_case() {
        for n in 2..=7 {
            let q = fixed_to_shifted(&Permutation::identity(n), 1).unwrap();
            let expected: BTreeSet<usize> = (1..n).collect();
            assert_eq!(q.unseparated_pairs(), expected);
        }
        assert!(fixed_to_shifted(&Permutation::identity(4), 0).is_err());
        assert!(fixed_to_shifted(&Permutation::identity(4), 4).is_err());
    }

    #[test]
    fn shifted_to_fixed_rotation_case() {
        // The rotation word 2,3,...,n,1 pulls back to the permutation fixing
        // 1..=n-2 and swapping the top two labels.
        let q = perm("2,3,4,5,6,1");
        let p = shifted_to_fixed(&q, 1).unwrap();
        assert_eq!(p, perm("1,2,3,4,6,5"));
        assert_eq!(fixed_to_shifted(&p, 1).unwrap(), q);
    }

    #[test]
    fn shift_bijection_exhaustive() {
        for n in 2..=6 {
            for h in 1..n {
                let mut images = BTreeSet::new();
                for p in all_permutations(n) {
                    let q = fixed_to_shifted(&p, h).unwrap();
                    let fixed_in_window: BTreeSet<usize> = p
                        .fixed_points()
                        .into_iter()
                        .filter(|&k| k <= n - h)
                        .collect();
                    assert_eq!(q.shifted_successions(h).unwrap(), fixed_in_window);
                    assert_eq!(shifted_to_fixed(&q, h).unwrap(), p);
                    images.insert(q);
                }
                assert_eq!(images.len(), all_permutations(n).count());
            }
        }
    }

    #[test]
    fn circular_insert_example_first_case() {
        let sigma = circ("3,1,6,5,7,2,4");
        let s1 = circular_insert(&sigma, 3).unwrap();
        assert_eq!(s1, circ("3,4,1,7,6,8,2,5"));
        let s2 = circular_insert(&s1, 5).unwrap();
        assert_eq!(s2, circ("3,4,1,8,7,9,2,5,6"));
        let s3 = circular_insert(&s2, 6).unwrap();
        assert_eq!(s3, circ("3,4,1,9,8,10,2,5,6,7"));
        let theta: BTreeSet<usize> = [3, 5, 6].into_iter().collect();
        assert_eq!(s3.theta(), theta);
    }

    #[test]
    fn circular_insert_example_second_case() {
        let sigma = circ("6,1,3,5,4,7,2");
        let s1 = circular_insert(&sigma, 5).unwrap();
        assert_eq!(s1, circ("7,1,3,5,6,4,8,2"));
        let s2 = circular_insert(&s1, 8).unwrap();
        assert_eq!(s2, circ("7,1,3,5,6,4,8,9,2"));
        let s3 = circular_insert(&s2, 9).unwrap();
        assert_eq!(s3, circ("7,1,3,5,6,4,8,9,10,2"));
    }

    #[test]
    fn circular_delete_example() {
        let s3 = circ("7,1,3,5,6,4,8,9,10,2");
        let s2 = circular_delete(&s3, 9).unwrap();
        assert_eq!(s2, circ("7,1,3,5,6,4,8,9,2"));
        let s1 = circular_delete(&s2, 8).unwrap();
        assert_eq!(s1, circ("7,1,3,5,6,4,8,2"));
        let sigma = circular_delete(&s1, 5).unwrap();
        assert_eq!(sigma, circ("6,1,3,5,4,7,2"));

        assert!(circular_delete(&s3, 4).is_err());
        assert!(circular_delete(&s3, 5).is_err()); // 9 must go first
    }

    #[test]
    fn insert_then_delete_round_trip() {
        for sigma in all_circular(6).filter(|s| s.theta().is_empty()) {
            for k in 1..=7 {
                let grown = circular_insert(&sigma, k).unwrap();
                let mut expected = BTreeSet::new();
                expected.insert(k);
                assert_eq!(grown.theta(), expected);
                assert_eq!(circular_delete(&grown, k).unwrap(), sigma);
            }
        }
    }

    #[test]
    fn insert_is_rotation_invariant() {
        for n in 1..=6 {
            for sigma in all_circular(n) {
                let word = sigma.word().to_vec();
                for k in 1..=n + 1 {
                    let reference =
                        CircularPermutation::from_word(insert_into_word(&word, k).unwrap())
                            .unwrap();
                    for r in 1..n {
                        let mut rotated = word[r..].to_vec();
                        rotated.extend_from_slice(&word[..r]);
                        let got = CircularPermutation::from_word(
                            insert_into_word(&rotated, k).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(got, reference);
                    }
                }
            }
        }
    }

    #[test]
    fn build_circular_cases() {
        let sigma = circ("3,1,6,5,7,2,4");
        assert_eq!(build_circular(&sigma, &[]).unwrap(), sigma);
        assert_eq!(
            build_circular(&sigma, &[3, 5, 6]).unwrap(),
            circ("3,4,1,9,8,10,2,5,6,7")
        );
        let trace = build_circular_trace(&sigma, &[3, 5, 6]).unwrap();
        assert_eq!(trace.len(), 4);
        assert_eq!(trace[1], circ("3,4,1,7,6,8,2,5"));

        assert!(build_circular(&sigma, &[5, 3]).is_err());
        assert!(build_circular(&circ("1,2,3"), &[2]).is_err());
    }

    #[test]
    fn build_circular_bijects_prescribed_sets() {
        // For every target set K, growing all succession-free classes of the
        // reduced size yields each class with circular-succession set K
        // exactly once.
        for n in 1..=6usize {
            let mut by_theta: BTreeMap<BTreeSet<usize>, BTreeSet<CircularPermutation>> =
                BTreeMap::new();
            for tau in all_circular(n) {
                by_theta.entry(tau.theta()).or_default().insert(tau);
            }
            for mask in 0u32..(1 << n) {
                let ks: Vec<usize> = (1..=n).filter(|&k| mask >> (k - 1) & 1 == 1).collect();
                let key: BTreeSet<usize> = ks.iter().copied().collect();
                let sources: Vec<CircularPermutation> = all_circular(n - ks.len())
                    .filter(|s| s.theta().is_empty())
                    .collect();
                let images: BTreeSet<CircularPermutation> = sources
                    .iter()
                    .map(|s| build_circular(s, &ks).unwrap())
                    .collect();
                assert_eq!(images.len(), sources.len(), "n={n} K={ks:?}");
                let expected = by_theta.remove(&key).unwrap_or_default();
                assert_eq!(images, expected, "n={n} K={ks:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn fundamental_round_trip_random(word in Just((1..=30usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::from_one_line(word).unwrap();
            prop_assert_eq!(inverse_fundamental(&fundamental_transform(&p)), p);
        }

        #[test]
        fn shift_bijection_random(
            word in Just((1..=20usize).collect::<Vec<_>>()).prop_shuffle(),
            h in 1usize..20,
        ) {
            let p = Permutation::from_one_line(word).unwrap();
            let q = fixed_to_shifted(&p, h).unwrap();
            let fixed_in_window: BTreeSet<usize> =
                p.fixed_points().into_iter().filter(|&k| k <= 20 - h).collect();
            prop_assert_eq!(q.shifted_successions(h).unwrap(), fixed_in_window);
            prop_assert_eq!(shifted_to_fixed(&q, h).unwrap(), p);
        }
    }
}
