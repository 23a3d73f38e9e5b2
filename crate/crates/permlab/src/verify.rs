//! Exhaustive verification suites: every closed form, bijection, and chain
//! law in the crate checked against brute-force enumeration over whole
//! symmetric groups at desk scale, in exact arithmetic.
//!
//! Each suite returns a [`SuiteReport`] of named pass/fail lines so callers
//! (the CLI and the acceptance tests) can render or gate on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bijections::{build_circular, fixed_to_shifted, shifted_to_fixed};
use crate::commutator::{
    exact_commutator_pmf, expectation_formula, two_cycle_factorial_moment,
};
use crate::dist::{
    circular_pmf, derangement_count, factorial, theta_empty_count, unseparated_pmf,
    whitworth_zero_prob, Rational,
};
use crate::error::{Error, Result};
use crate::generators::{
    cycle_growth_children, exact_chain_law, insertion_children, ChainKind, RestaurantState,
    EXACT_CHAIN_CAP,
};
use crate::perm::{all_circular, all_n_cycles, all_permutations, Permutation};

/// One named check inside a suite.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            lines: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let tag = if line.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{tag}] {}: {}\n", line.name, line.detail));
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("suite {}: {overall}\n", self.suite));
        out
    }
}

fn cap_guard(suite: &str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("suite {suite}: need n >= 1")));
    }
    if n > cap {
        return Err(Error::ExceedsCap { n, cap });
    }
    Ok(())
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

fn histogram(n: usize, stat: impl Fn(&Permutation) -> usize) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    for p in all_permutations(n) {
        *counts.entry(stat(&p)).or_insert(0) += 1;
    }
    counts
}

fn pmf_matches_histogram(
    pmf: &crate::dist::ExactPmf,
    counts: &BTreeMap<usize, u64>,
    total: u64,
) -> bool {
    pmf.matches_counts(counts, total)
}

/// Pair law equality: the unseparated-pair and truncated fixed-point
/// histograms coincide and match the closed form, for every size up to `n`.
pub fn thm1_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("thm1", n, 8)?;
    let mut report = SuiteReport::new("thm1");
    for size in 1..=n {
        let unseparated = histogram(size, |p| p.unseparated_pairs().len());
        let truncated_fixed = histogram(size, |p| {
            p.fixed_points().into_iter().filter(|&k| k < size).count()
        });
        let equal = unseparated == truncated_fixed;
        report.check(
            format!("histograms equal (n={size})"),
            equal,
            format!("{unseparated:?}"),
        );
        let pmf = unseparated_pmf(size)?;
        let matches = pmf_matches_histogram(&pmf, &unseparated, factorial_u64(size));
        report.check(
            format!("closed form matches enumeration (n={size})"),
            matches,
            "n! * P{m} equals the exact count for every m",
        );
    }
    Ok(report)
}

/// Zero-count closed form: `n! * P{no unseparated pair}` is an integer equal
/// to the enumerated count.
pub fn whitworth_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("whitworth", n, 8)?;
    let mut report = SuiteReport::new("whitworth");
    for size in 1..=n {
        let scaled = whitworth_zero_prob(size)?
            * Rational::from_integer(factorial(size));
        let oracle = all_permutations(size)
            .filter(|p| p.unseparated_pairs().is_empty())
            .count() as u64;
        let ok = scaled.is_integer() && scaled.to_integer() == BigInt::from(oracle);
        report.check(
            format!("integer count (n={size})"),
            ok,
            format!("n! * P{{0}} = {scaled}, enumeration = {oracle}"),
        );
    }
    Ok(report)
}

fn set_counts(
    n: usize,
    of: impl Fn(&Permutation) -> std::collections::BTreeSet<usize>,
) -> BTreeMap<u64, u64> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for p in all_permutations(n) {
        let mask = of(&p)
            .into_iter()
            .fold(0u64, |acc, k| acc | 1u64 << (k - 1));
        *counts.entry(mask).or_insert(0) += 1;
    }
    counts
}

fn counts_depend_only_on_size(counts: &BTreeMap<u64, u64>, universe_bits: usize) -> bool {
    let mut by_size: BTreeMap<u32, u64> = BTreeMap::new();
    for mask in 0..(1u64 << universe_bits) {
        let c = counts.get(&mask).copied().unwrap_or(0);
        let size = mask.count_ones();
        match by_size.get(&size) {
            None => {
                by_size.insert(size, c);
            }
            Some(&prev) if prev != c => return false,
            _ => {}
        }
    }
    true
}

/// Exchangeability: the number of permutations realizing a given statistic
/// set depends only on the set's cardinality, for both the unseparated-pair
/// and circular-succession sets; the adjacent-versus-spread contrast is
/// called out explicitly.
pub fn exchangeability_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("exchangeability", n, 7)?;
    let mut report = SuiteReport::new("exchangeability");
    for size in 1..=n {
        let s_counts = set_counts(size, |p| p.unseparated_pairs());
        report.check(
            format!("unseparated sets exchangeable (n={size})"),
            counts_depend_only_on_size(&s_counts, size.saturating_sub(1)),
            "counts grouped by |A| are constant",
        );
        let u_counts = set_counts(size, |p| p.circular_successions());
        report.check(
            format!("circular sets exchangeable (n={size})"),
            counts_depend_only_on_size(&u_counts, size),
            "counts grouped by |A| are constant",
        );
        if size >= 4 {
            let adjacent = s_counts.get(&0b11).copied().unwrap_or(0);
            let spread = s_counts.get(&0b101).copied().unwrap_or(0);
            report.check(
                format!("adjacent {{1,2}} vs spread {{1,3}} (n={size})"),
                adjacent == spread,
                format!("{adjacent} vs {spread}"),
            );
        }
    }
    Ok(report)
}

/// The shift bijection: for every shift, the image realizes the prescribed
/// shifted-succession set, the map is invertible, and it exhausts the group.
pub fn bijection_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("bijection", n, 7)?;
    let mut report = SuiteReport::new("bijection");
    for size in 2..=n {
        for h in 1..size {
            let mut images = std::collections::BTreeSet::new();
            let mut set_identity = true;
            let mut round_trip = true;
            for p in all_permutations(size) {
                let q = fixed_to_shifted(&p, h)?;
                let expected: std::collections::BTreeSet<usize> = p
                    .fixed_points()
                    .into_iter()
                    .filter(|&k| k <= size - h)
                    .collect();
                set_identity &= q.shifted_successions(h)? == expected;
                round_trip &= shifted_to_fixed(&q, h)? == p;
                images.insert(q);
            }
            let bijective = images.len() as u64 == factorial_u64(size);
            report.check(
                format!("shift map (n={size}, h={h})"),
                set_identity && round_trip && bijective,
                format!(
                    "set identity {set_identity}, round trip {round_trip}, image size {}",
                    images.len()
                ),
            );
        }
    }
    Ok(report)
}

/// Circular-succession laws: closed form versus enumeration, the
/// empty-count formula, the class/permutation count bridge, the reduction
/// identity for prescribed sets, and the insertion bijection.
pub fn circular_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("circular", n, 8)?;
    let mut report = SuiteReport::new("circular");
    for size in 1..=n {
        let pmf = circular_pmf(size)?;
        let counts = histogram(size, |p| p.circular_successions().len());
        report.check(
            format!("closed form matches enumeration (n={size})"),
            pmf_matches_histogram(&pmf, &counts, factorial_u64(size)),
            format!("{counts:?}"),
        );
    }

    let class_count = all_circular(n)
        .filter(|s| s.theta().is_empty())
        .count();
    report.check(
        format!("empty-count formula (n={n})"),
        theta_empty_count(n)? == BigInt::from(class_count),
        format!("{class_count} classes without circular successions"),
    );

    // Classify classes and permutations by their exact succession sets.
    let mut classes_by_theta: BTreeMap<u64, Vec<crate::perm::CircularPermutation>> =
        BTreeMap::new();
    for tau in all_circular(n) {
        let mask = tau
            .theta()
            .into_iter()
            .fold(0u64, |acc, k| acc | 1u64 << (k - 1));
        classes_by_theta.entry(mask).or_default().push(tau);
    }
    let perm_counts = set_counts(n, |p| p.circular_successions());

    let bridge = (0..(1u64 << n)).all(|mask| {
        let perms = perm_counts.get(&mask).copied().unwrap_or(0);
        let classes = classes_by_theta.get(&mask).map_or(0, Vec::len) as u64;
        perms == n as u64 * classes
    });
    report.check(
        format!("each class carries n permutations (n={n})"),
        bridge,
        "set-level counts over the group are n times the class counts",
    );

    // Reduction identity: the count with a prescribed set A of size m,
    // rescaled, equals the empty count at size n - m.
    let mut reduction = true;
    for (mask, &count) in &perm_counts {
        let m = mask.count_ones() as usize;
        if m == n {
            continue;
        }
        let reduced = all_permutations(n - m)
            .filter(|p| p.circular_successions().is_empty())
            .count() as u64;
        if count * (n - m) as u64 != reduced * n as u64 {
            reduction = false;
        }
    }
    report.check(
        format!("prescribed-set reduction identity (n={n})"),
        reduction,
        "count_n(A) * (n-m) = count_{n-m}(empty) * n for every realized A",
    );

    // The insertion construction bijects succession-free classes of the
    // reduced size onto the classes with any prescribed succession set.
    let mut insertion_bijects = true;
    for mask in 0..(1u64 << n) {
        let ks: Vec<usize> = (1..=n).filter(|&k| mask >> (k - 1) & 1 == 1).collect();
        let sources: Vec<_> = all_circular(n - ks.len())
            .filter(|s| s.theta().is_empty())
            .collect();
        let mut images = std::collections::BTreeSet::new();
        for s in &sources {
            images.insert(build_circular(s, &ks)?);
        }
        let expected: std::collections::BTreeSet<_> = classes_by_theta
            .get(&mask)
            .map(|v| v.iter().cloned().collect())
            .unwrap_or_default();
        if images.len() != sources.len() || images != expected {
            insertion_bijects = false;
        }
    }
    report.check(
        format!("insertion bijection for every prescribed set (n={n})"),
        insertion_bijects,
        "grown classes hit each target class exactly once",
    );
    Ok(report)
}

/// Growth chains: exactly uniform terminal laws, the count-process
/// transition laws as exact conditional frequencies, and the agreement of
/// the cycle-growth statistic with the fixed-point law.
pub fn chains_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("chains", n, 6)?;
    if n > EXACT_CHAIN_CAP {
        return Err(Error::ExceedsCap {
            n,
            cap: EXACT_CHAIN_CAP,
        });
    }
    let mut report = SuiteReport::new("chains");

    for kind in [ChainKind::Insertion, ChainKind::Crp] {
        let law = exact_chain_law(kind, n)?;
        let unit = Rational::new(BigInt::one(), factorial(n));
        let uniform = law.len() as u64 == factorial_u64(n) && law.values().all(|p| *p == unit);
        report.check(
            format!("{kind:?} law uniform on S_{n}"),
            uniform,
            format!("{} states, each 1/{}!", law.len(), n),
        );
    }
    let law = exact_chain_law(ChainKind::CycleGrowth, n)?;
    let cycle_total = factorial_u64(n - 1).max(1);
    let unit = Rational::new(BigInt::one(), factorial(n - 1));
    let uniform = law.len() as u64 == cycle_total
        && law.values().all(|p| *p == unit)
        && law.keys().all(Permutation::is_single_cycle);
    report.check(
        format!("CycleGrowth law uniform on {n}-cycles"),
        uniform,
        format!("{} cycles, each 1/({}-1)!", law.len(), n),
    );

    // Insertion count process: from each size k, the unseparated count drops
    // by one with conditional frequency M/(k+1), rises with 1/(k+1).
    let mut insertion_law_ok = true;
    for k in 1..n {
        let mut by_m: BTreeMap<usize, [u64; 4]> = BTreeMap::new(); // [states, down, same, up]
        for p in all_permutations(k) {
            let m = p.unseparated_pairs().len();
            let entry = by_m.entry(m).or_insert([0; 4]);
            entry[0] += 1;
            for child in insertion_children(&p) {
                let m2 = child.unseparated_pairs().len();
                match m2 as i64 - m as i64 {
                    -1 => entry[1] += 1,
                    0 => entry[2] += 1,
                    1 => entry[3] += 1,
                    _ => insertion_law_ok = false,
                }
            }
        }
        for (m, [states, down, same, up]) in by_m {
            insertion_law_ok &= down == m as u64 * states;
            insertion_law_ok &= up == states;
            insertion_law_ok &= same == (k - m) as u64 * states;
        }
    }
    report.check(
        "insertion count transitions",
        insertion_law_ok,
        "P{down} = M/(k+1), P{up} = 1/(k+1) exactly at every size",
    );

    // Seating count process: the number of counted singleton tables obeys
    // the same transition law.
    let mut crp_law_ok = true;
    let mut level = vec![RestaurantState::new()];
    for k in 1..n {
        let mut by_n: BTreeMap<usize, [u64; 4]> = BTreeMap::new();
        for state in &level {
            let count = state.counted_singletons();
            let entry = by_n.entry(count).or_insert([0; 4]);
            entry[0] += 1;
            for choice in state.choices() {
                let next = state.seat(choice);
                match next.counted_singletons() as i64 - count as i64 {
                    -1 => entry[1] += 1,
                    0 => entry[2] += 1,
                    1 => entry[3] += 1,
                    _ => crp_law_ok = false,
                }
            }
        }
        for (count, [states, down, same, up]) in by_n {
            crp_law_ok &= down == count as u64 * states;
            crp_law_ok &= up == states;
            crp_law_ok &= same == (k - count) as u64 * states;
        }
        level = level
            .iter()
            .flat_map(|s| s.choices().into_iter().map(|c| s.seat(c)))
            .collect();
        let _ = k;
    }
    report.check(
        "seating count transitions",
        crp_law_ok,
        "counted singletons drop with frequency N/(k+1), rise with 1/(k+1)",
    );

    // Cycle growth: successions gamma(j) = j+1 drop with frequency N/k, rise
    // with 1/k.
    let mut cycle_law_ok = true;
    for k in 2..n {
        let mut by_n: BTreeMap<usize, [u64; 4]> = BTreeMap::new();
        for gamma in all_n_cycles(k) {
            let count = (1..k).filter(|&j| gamma.apply(j) == j + 1).count();
            let entry = by_n.entry(count).or_insert([0; 4]);
            entry[0] += 1;
            for child in cycle_growth_children(&gamma)? {
                let c2 = (1..=k).filter(|&j| child.apply(j) == j + 1).count();
                match c2 as i64 - count as i64 {
                    -1 => entry[1] += 1,
                    0 => entry[2] += 1,
                    1 => entry[3] += 1,
                    _ => cycle_law_ok = false,
                }
            }
        }
        for (count, [states, down, same, up]) in by_n {
            cycle_law_ok &= down == count as u64 * states;
            cycle_law_ok &= up == states;
            cycle_law_ok &= same == (k - count - 1) as u64 * states;
        }
    }
    report.check(
        "cycle-growth count transitions",
        cycle_law_ok,
        "successions drop with frequency N/k, rise with 1/k",
    );

    // The cycle statistic at size n+1 matches the fixed-point law at size n.
    let mut growth_hist: BTreeMap<usize, u64> = BTreeMap::new();
    for gamma in all_n_cycles(n + 1) {
        let c = (1..=n).filter(|&j| gamma.apply(j) == j + 1).count();
        *growth_hist.entry(c).or_insert(0) += 1;
    }
    let fixed_hist = histogram(n, |p| p.fixed_points().len());
    report.check(
        format!("cycle successions match fixed points (n={n})"),
        growth_hist == fixed_hist,
        format!("{growth_hist:?}"),
    );

    Ok(report)
}

/// Commutator laws: the rotation case reduces to the circular-succession
/// law, the closed-form mean holds for every conjugacy shape, and paired
/// 2-cycle permutations match their factorial-moment formula.
pub fn commutator_suite(n: usize) -> Result<SuiteReport> {
    cap_guard("commutator", n, 6)?;
    let mut report = SuiteReport::new("commutator");

    let mut rotation_ok = true;
    for size in 1..=8 {
        let rho = Permutation::rotation(size, 1)?;
        if exact_commutator_pmf(&rho)? != circular_pmf(size)? {
            rotation_ok = false;
        }
    }
    report.check(
        "rotation law equals circular-succession law (n <= 8)",
        rotation_ok,
        "two independent computations agree exactly",
    );

    let mut means_ok = true;
    for eta in all_permutations(n) {
        let pmf = exact_commutator_pmf(&eta)?;
        let f = eta.cycle_partition().fixed_count();
        if pmf.mean() != expectation_formula(n, f)? {
            means_ok = false;
        }
    }
    report.check(
        format!("means match closed form on all of S_{n}"),
        means_ok,
        "mean depends only on the fixed-point count",
    );

    let mut moments_ok = true;
    for m in 1..=4usize {
        let cycles: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, m + i]).collect();
        let eta = Permutation::from_cycles(2 * m, &cycles)?;
        let pmf = exact_commutator_pmf(&eta)?;
        moments_ok &= pmf.support().all(|(v, _)| v % 2 == 0);
        for k in 1..=m {
            let mut moment = Rational::zero();
            for (v, p) in pmf.support() {
                let half = v / 2;
                if half < k {
                    continue;
                }
                let mut w = Rational::one();
                for j in 0..k {
                    w *= Rational::from_integer(BigInt::from(half - j));
                }
                moment += w * p;
            }
            moments_ok &= moment == two_cycle_factorial_moment(m, k)?;
        }
    }
    report.check(
        "paired 2-cycle factorial moments (m <= 4)",
        moments_ok,
        "halved count matches the closed form exactly",
    );

    Ok(report)
}

/// Derangement identities: the empty-count recursion and the quasi-fixed
/// cycle formulation checked at small sizes against enumeration.
pub fn identity53_suite(nmax: usize) -> Result<SuiteReport> {
    if nmax == 0 {
        return Err(Error::Domain("need nmax >= 1".into()));
    }
    let mut report = SuiteReport::new("identity53");
    let mut identity_ok = true;
    for k in 1..=nmax {
        identity_ok &= crate::dist::check_derangement_identity(k)?;
    }
    report.check(
        format!("D(n) = c(n) + c(n+1) for n <= {nmax}"),
        identity_ok,
        "derangement numbers split into consecutive empty counts",
    );

    // D(n) also counts the (n+1)-classes whose avatar avoids j -> j+1 on [n].
    let mut quasi_ok = true;
    for k in 1..=nmax.min(6) {
        let count = all_circular(k + 1)
            .filter(|sigma| {
                let avatar = sigma.avatar();
                (1..=k).all(|j| avatar.apply(j) != j + 1)
            })
            .count();
        quasi_ok &= derangement_count(k) == BigInt::from(count);
    }
    report.check(
        format!("quasi-fixed cycle count (n <= {})", nmax.min(6)),
        quasi_ok,
        "derangements equal avoidance counts among one-larger classes",
    );
    Ok(report)
}
