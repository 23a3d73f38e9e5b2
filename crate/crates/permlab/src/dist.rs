//! Exact rational distributions of the permutation statistics, plus total
//! variation distance against a Poisson reference.
//!
//! All probability mass functions here are closed forms evaluated in
//! arbitrary-precision rational arithmetic, so equality against brute-force
//! enumeration is literal. The only non-rational object, the Poisson
//! reference `e^{-lambda} lambda^m / m!`, is approximated by rationals with
//! a per-computation error bound below `1e-60` and an explicit truncation
//! tail.
//!
//! The closed forms, with `A(N) = sum_{k=0}^{N} (-1)^k / k!` (empty sums are
//! zero):
//!
//! * fixed points: `P{m} = A(n-m) / m!`;
//! * unseparated pairs: `P{m} = A(n-m)/m! * (n-m)/n + A(n-m-1)/(m+1)! * (m+1)/n`;
//! * shifted successions at shift `h`: hypergeometric thinning of the
//!   fixed-point law, `P{m} = sum_{l=m}^{m+h} A(n-l)/l! * C(n-h,m) C(h,l-m) / C(n,l)`;
//! * circular successions:
//!   `P{m} = (1/m!) (sum_{h=0}^{n-m-1} (-1)^h/h! * n/(n-m-h) + (-1)^{n-m} n/(n-m)!)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k))
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `sum_{k=0}^{upper} (-1)^k / k!`, with the convention that an empty sum
/// (negative `upper`) is zero.
fn alternating_exp_sum(upper: isize) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for k in 0..=upper.max(-1) {
        if k > 0 {
            term = -term / int(k as usize);
        }
        sum += term.clone();
    }
    sum
}

/// Converts a rational to `f64`, tolerating numerators and denominators far
/// outside the `f64` range by shifting both down together.
pub fn rational_to_f64(r: &Rational) -> f64 {
    let bits = r.numer().bits().max(r.denom().bits());
    if bits <= 900 {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        return n / d;
    }
    let shift = bits - 128;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// A finitely supported probability mass function over the nonnegative
/// integers with exact rational weights summing to exactly one.
///
/// Only outcomes of positive probability are stored. Empirical laws from
/// Monte Carlo runs use the same type: `count / samples` is again exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPmf {
    probs: BTreeMap<usize, Rational>,
}

impl ExactPmf {
    /// Validates nonnegativity and exact normalization.
    pub fn new(probs: BTreeMap<usize, Rational>) -> Result<Self> {
        let mut sum = Rational::zero();
        for p in probs.values() {
            if p.is_negative() {
                return Err(Error::Domain("negative probability".into()));
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(Error::Domain(format!("pmf sums to {sum}, not 1")));
        }
        let probs = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(Self { probs })
    }

    /// Point mass at `m`.
    pub fn point_mass(m: usize) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(m, Rational::one());
        Self { probs }
    }

    /// Empirical law `count / total` from a histogram of outcomes.
    pub fn from_counts(counts: &BTreeMap<usize, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::Domain("empty histogram".into()));
        }
        let probs = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&m, &c)| (m, ratio(BigInt::from(c), BigInt::from(total))))
            .collect();
        Self::new(probs)
    }

    /// Probability of outcome `m` (zero off the support).
    pub fn prob(&self, m: usize) -> Rational {
        self.probs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Outcomes with positive probability, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.probs.iter().map(|(&m, p)| (m, p))
    }

    pub fn max_outcome(&self) -> usize {
        self.probs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn mean(&self) -> Rational {
        self.probs
            .iter()
            .map(|(&m, p)| int(m) * p)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// `E[M (M-1) ... (M-k+1)]`, the `k`-th falling factorial moment.
    pub fn factorial_moment(&self, k: usize) -> Rational {
        let mut total = Rational::zero();
        for (&m, p) in &self.probs {
            if m < k {
                continue;
            }
            let mut w = Rational::one();
            for j in 0..k {
                w *= int(m - j);
            }
            total += w * p;
        }
        total
    }

    /// Checks that this law is exactly the normalized version of `counts`
    /// over `total` outcomes.
    pub fn matches_counts(&self, counts: &BTreeMap<usize, u64>, total: u64) -> bool {
        let total_big = BigInt::from(total);
        let mut outcomes: Vec<usize> = self.probs.keys().copied().collect();
        outcomes.extend(counts.keys().copied());
        outcomes.sort_unstable();
        outcomes.dedup();
        outcomes.into_iter().all(|m| {
            let c = counts.get(&m).copied().unwrap_or(0);
            self.prob(m) * &total_big == Rational::from_integer(BigInt::from(c))
        })
    }

    /// CSV rows `m,numerator,denominator`, one outcome per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (&m, p) in &self.probs {
            out.push_str(&format!("{m},{},{}\n", p.numer(), p.denom()));
        }
        out
    }

    /// JSON object `{"m": "num/den"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .probs
            .iter()
            .map(|(&m, p)| {
                (
                    m.to_string(),
                    serde_json::Value::String(format!("{}/{}", p.numer(), p.denom())),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Number of derangements of `[n]`, `D(n) = n! sum_{j=0}^{n} (-1)^j / j!`.
pub fn derangement_count(n: usize) -> BigInt {
    let exact = Rational::from_integer(factorial(n)) * alternating_exp_sum(n as isize);
    debug_assert!(exact.is_integer());
    exact.to_integer()
}

/// Law of the number of fixed points of a uniform permutation of `[n]`.
pub fn fixed_point_pmf(n: usize) -> Result<ExactPmf> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut probs = BTreeMap::new();
    for m in 0..=n {
        let p = alternating_exp_sum((n - m) as isize) / Rational::from_integer(factorial(m));
        probs.insert(m, p);
    }
    ExactPmf::new(probs)
}

/// Common law of the number of unseparated pairs and of the number of fixed
/// points in `[n-1]`, supported on `0..=n-1`.
pub fn unseparated_pmf(n: usize) -> Result<ExactPmf> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut probs = BTreeMap::new();
    for m in 0..n {
        let first = alternating_exp_sum((n - m) as isize)
            / Rational::from_integer(factorial(m))
            * ratio(BigInt::from(n - m), BigInt::from(n));
        let second = alternating_exp_sum((n - m - 1) as isize)
            / Rational::from_integer(factorial(m + 1))
            * ratio(BigInt::from(m + 1), BigInt::from(n));
        probs.insert(m, first + second);
    }
    ExactPmf::new(probs)
}

/// Probability that a uniform permutation of `[n]` has no unseparated pair:
/// `A(n) + A(n-1)/n`.
pub fn whitworth_zero_prob(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    Ok(alternating_exp_sum(n as isize) + alternating_exp_sum(n as isize - 1) / int(n))
}

/// Law of the number of shifted successions at shift `h`, supported on
/// `0..=n-h`. At `h = 1` this is exactly [`unseparated_pmf`].
pub fn shifted_pmf(n: usize, h: usize) -> Result<ExactPmf> {
    if h == 0 || h >= n {
        return Err(Error::ShiftOutOfRange { h, n });
    }
    let mut probs = BTreeMap::new();
    for m in 0..=n - h {
        let mut p = Rational::zero();
        for l in m..=m + h {
            let fixed = alternating_exp_sum((n - l) as isize)
                / Rational::from_integer(factorial(l));
            let thinning = ratio(
                big_binomial(n - h, m) * big_binomial(h, l - m),
                big_binomial(n, l),
            );
            p += fixed * thinning;
        }
        probs.insert(m, p);
    }
    ExactPmf::new(probs)
}

/// Law of the number of circular successions, supported on `0..=n`.
pub fn circular_pmf(n: usize) -> Result<ExactPmf> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut probs = BTreeMap::new();
    for m in 0..=n {
        let mut inner = Rational::zero();
        let mut sign_term = Rational::one(); // (-1)^h / h!
        for h in 0..n - m {
            if h > 0 {
                sign_term = -sign_term / int(h);
            }
            inner += &sign_term * ratio(BigInt::from(n), BigInt::from(n - m - h));
        }
        let boundary_sign = if (n - m) % 2 == 0 { 1 } else { -1 };
        inner += ratio(
            BigInt::from(boundary_sign) * BigInt::from(n),
            factorial(n - m),
        );
        probs.insert(m, inner / Rational::from_integer(factorial(m)));
    }
    ExactPmf::new(probs)
}

/// Number of circular permutations of `[n]` whose circular-succession set is
/// empty: `sum_{h=0}^{n-1} (-1)^h C(n,h) (n-h-1)! + (-1)^n`.
pub fn theta_empty_count(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut total = BigInt::zero();
    for h in 0..n {
        let term = big_binomial(n, h) * factorial(n - h - 1);
        if h % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total += if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(total)
}

/// The derangement identity `D(n) = c(n) + c(n+1)` relating derangement
/// numbers to empty circular-succession counts.
pub fn check_derangement_identity(n: usize) -> Result<bool> {
    Ok(derangement_count(n) == theta_empty_count(n)? + theta_empty_count(n + 1)?)
}

/// Per-term error budget for the Poisson reference: `1e-60`, comfortably
/// beyond fifty decimal digits.
fn poisson_epsilon() -> Rational {
    ratio(BigInt::one(), BigInt::from(10u8).pow(60))
}

/// A truncated Poisson law with rational probability approximants and
/// explicit error accounting.
#[derive(Debug, Clone)]
pub struct PoissonReference {
    lambda: Rational,
    probs: Vec<Rational>,
    /// Bound on `sum_m |probs[m] - true p(m)|` over the retained outcomes.
    approx_error: Rational,
    /// Upper bound on the true mass above `cap`.
    tail_upper: Rational,
}

impl PoissonReference {
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn cap(&self) -> usize {
        self.probs.len() - 1
    }

    /// Rational approximant of `e^{-lambda} lambda^m / m!` for `m <= cap`.
    pub fn prob(&self, m: usize) -> &Rational {
        &self.probs[m]
    }

    pub fn tail_upper(&self) -> &Rational {
        &self.tail_upper
    }

    pub fn approx_error(&self) -> &Rational {
        &self.approx_error
    }
}

/// Builds the Poisson reference with rate `lambda > 0`, keeping outcomes
/// `0..=cap` and an explicit bound on the discarded tail.
pub fn poisson_reference(lambda: &Rational, cap: usize) -> Result<PoissonReference> {
    if !lambda.is_positive() {
        return Err(Error::Domain("lambda must be positive".into()));
    }
    let eps = poisson_epsilon();

    // Partial sum of exp(-lambda) until the remainder bound
    // lambda^{K+1}/(K+1)! * 1/(1 - lambda/(K+2)) drops below eps.
    let mut exp_neg = Rational::one();
    let mut term = Rational::one(); // lambda^k / k! with alternating sign
    let mut k = 0usize;
    let remainder_bound = loop {
        k += 1;
        term = -(&term) * lambda / int(k);
        exp_neg += &term;
        let next_ratio = lambda / int(k + 2);
        if next_ratio < Rational::one() {
            let bound = term.abs() * lambda / int(k + 1)
                / (Rational::one() - next_ratio);
            if bound < eps {
                break bound;
            }
        }
        if k > 10_000 {
            return Err(Error::Domain("poisson series failed to converge".into()));
        }
    };

    let mut probs = Vec::with_capacity(cap + 1);
    let mut weight = Rational::one(); // lambda^m / m!
    let mut weight_sum = Rational::zero();
    for m in 0..=cap {
        if m > 0 {
            weight = &weight * lambda / int(m);
        }
        weight_sum += &weight;
        probs.push(&exp_neg * &weight);
    }
    let approx_error = &remainder_bound * &weight_sum;

    let retained: Rational = probs.iter().fold(Rational::zero(), |acc, p| acc + p);
    let mut tail_estimate = Rational::one() - retained;
    if tail_estimate.is_negative() {
        tail_estimate = Rational::zero();
    }
    let tail_upper = tail_estimate + &approx_error;

    Ok(PoissonReference {
        lambda: lambda.clone(),
        probs,
        approx_error,
        tail_upper,
    })
}

/// Total variation distance report.
///
/// `distance` is the computed value; when the reference was truncated, the
/// true distance lies within `tail_bound` of it.
#[derive(Debug, Clone)]
pub struct TvReport {
    pub distance: Rational,
    pub tail_bound: Rational,
    pub reference: String,
}

impl TvReport {
    pub fn distance_f64(&self) -> f64 {
        rational_to_f64(&self.distance)
    }
}

impl fmt::Display for TvReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_TV = {:.12} (+/- {:.3e}) vs {}",
            self.distance_f64(),
            rational_to_f64(&self.tail_bound),
            self.reference
        )
    }
}

/// Exact total variation distance `(1/2) sum_m |a(m) - b(m)|` between two
/// finitely supported laws.
pub fn tv_distance(a: &ExactPmf, b: &ExactPmf) -> TvReport {
    let max = a.max_outcome().max(b.max_outcome());
    let mut sum = Rational::zero();
    for m in 0..=max {
        sum += (a.prob(m) - b.prob(m)).abs();
    }
    TvReport {
        distance: sum / int(2),
        tail_bound: Rational::zero(),
        reference: "exact".into(),
    }
}

/// Total variation distance between an exact law and the truncated Poisson
/// reference; the truncation and approximation error appear as `tail_bound`.
pub fn tv_distance_poisson(a: &ExactPmf, q: &PoissonReference) -> TvReport {
    let mut sum = Rational::zero();
    for m in 0..=q.cap() {
        sum += (a.prob(m) - q.prob(m)).abs();
    }
    for (m, p) in a.support() {
        if m > q.cap() {
            sum += p;
        }
    }
    TvReport {
        distance: sum / int(2),
        tail_bound: (q.approx_error() + q.tail_upper()) / int(2),
        reference: format!(
            "Poisson({}) truncated at {}",
            rational_to_f64(q.lambda()),
            q.cap()
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn rat(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Brute-force histogram of a statistic over all of S_n.
    fn histogram(n: usize, stat: impl Fn(&crate::perm::Permutation) -> usize) -> BTreeMap<usize, u64> {
        let mut counts = BTreeMap::new();
        for p in all_permutations(n) {
            *counts.entry(stat(&p)).or_insert(0) += 1;
        }
        counts
    }

    fn factorial_u64(n: usize) -> u64 {
        (1..=n as u64).product::<u64>().max(1)
    }

    #[test]
    fn alternating_sum_conventions() {
        assert_eq!(alternating_exp_sum(-1), Rational::zero());
        assert_eq!(alternating_exp_sum(0), Rational::one());
        assert_eq!(alternating_exp_sum(1), Rational::zero());
        assert_eq!(alternating_exp_sum(3), rat(1, 3));
    }

    #[test]
    fn derangement_values() {
        let expected: [i64; 10] = [0, 1, 2, 9, 44, 265, 1854, 14833, 133496, 1334961];
        for (i, &d) in expected.iter().enumerate() {
            assert_eq!(derangement_count(i + 1), BigInt::from(d));
        }
        assert_eq!(derangement_count(0), BigInt::one());
    }

    #[test]
    fn derangement_count_matches_enumeration() {
        for n in 1..=7 {
            let count = all_permutations(n)
                .filter(|p| p.fixed_points().is_empty())
                .count();
            assert_eq!(derangement_count(n), BigInt::from(count));
        }
    }

    #[test]
    fn derangement_recurrence() {
        // D(n) = (n-1) (D(n-1) + D(n-2)), an independent route.
        for n in 2..=25 {
            let lhs = derangement_count(n);
            let rhs = BigInt::from(n - 1) * (derangement_count(n - 1) + derangement_count(n - 2));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fixed_point_pmf_cases() {
        let p1 = fixed_point_pmf(1).unwrap();
        assert_eq!(p1.prob(1), Rational::one());

        let p4 = fixed_point_pmf(4).unwrap();
        assert_eq!(p4.prob(0), rat(9, 24));
        assert_eq!(p4.prob(3), Rational::zero());

        for n in 1..=6 {
            let pmf = fixed_point_pmf(n).unwrap();
            let counts = histogram(n, |p| p.fixed_points().len());
            assert!(pmf.matches_counts(&counts, factorial_u64(n)));
        }
    }

    #[test]
    fn unseparated_pmf_cases() {
        let p1 = unseparated_pmf(1).unwrap();
        assert_eq!(p1.prob(0), Rational::one());

        let p4 = unseparated_pmf(4).unwrap();
        assert_eq!(p4.prob(0), rat(11, 24));

        for n in 1..=7 {
            let pmf = unseparated_pmf(n).unwrap();
            let counts = histogram(n, |p| p.unseparated_pairs().len());
            assert!(pmf.matches_counts(&counts, factorial_u64(n)));
        }
    }

    #[test]
    fn whitworth_cases() {
        assert_eq!(whitworth_zero_prob(1).unwrap(), Rational::one());
        assert_eq!(whitworth_zero_prob(3).unwrap(), rat(1, 2));
        assert_eq!(whitworth_zero_prob(4).unwrap(), rat(11, 24));
        for n in 1..=12 {
            assert_eq!(
                whitworth_zero_prob(n).unwrap(),
                unseparated_pmf(n).unwrap().prob(0)
            );
        }
    }

    #[test]
    fn shifted_pmf_specializes_to_unseparated() {
        for n in 2..=8 {
            assert_eq!(shifted_pmf(n, 1).unwrap(), unseparated_pmf(n).unwrap());
        }
        assert!(shifted_pmf(5, 0).is_err());
        assert!(shifted_pmf(5, 5).is_err());
    }

    #[test]
    fn shifted_pmf_matches_enumeration() {
        for n in 2..=6 {
            for h in 1..n {
                let pmf = shifted_pmf(n, h).unwrap();
                let counts = histogram(n, |p| p.shifted_successions(h).unwrap().len());
                assert!(pmf.matches_counts(&counts, factorial_u64(n)));
            }
        }
        // n = 5, h = 4: only the pair pi(5) = pi(1) + 1 can survive.
        let edge = shifted_pmf(5, 4).unwrap();
        assert_eq!(edge.max_outcome(), 1);
        assert_eq!(edge.prob(1), rat(1, 5));
        assert_eq!(edge.prob(0), rat(4, 5));
        let count = all_permutations(5)
            .filter(|p| p.shifted_successions(4).unwrap().len() == 1)
            .count();
        assert_eq!(count, 24);
    }

    #[test]
    fn circular_pmf_cases() {
        let p4 = circular_pmf(4).unwrap();
        assert_eq!(p4.prob(4), rat(1, 6));
        assert_eq!(p4.prob(0), rat(1, 6));
        assert_eq!(p4.prob(1), rat(2, 3));

        let p1 = circular_pmf(1).unwrap();
        assert_eq!(p1.prob(1), Rational::one());

        for n in 1..=7 {
            let pmf = circular_pmf(n).unwrap();
            let counts = histogram(n, |p| p.circular_successions().len());
            assert!(pmf.matches_counts(&counts, factorial_u64(n)));
            assert_eq!(pmf.prob(n), Rational::new(BigInt::one(), factorial(n - 1)));
        }
    }

    #[test]
    fn circular_pmf_converges_to_poisson() {
        let pmf = circular_pmf(200).unwrap();
        let e_inv = 0.36787944117144233;
        let mut weight = 1.0;
        for m in 0..=5 {
            if m > 0 {
                weight /= m as f64;
            }
            let got = rational_to_f64(&pmf.prob(m));
            assert!(
                (got - e_inv * weight).abs() < 0.01,
                "m={m}: {got} vs {}",
                e_inv * weight
            );
        }
    }

    #[test]
    fn theta_empty_count_values() {
        let expected: [i64; 10] = [0, 0, 1, 1, 8, 36, 229, 1625, 13208, 120288];
        for (i, &c) in expected.iter().enumerate() {
            assert_eq!(theta_empty_count(i + 1).unwrap(), BigInt::from(c));
        }
    }

    #[test]
    fn derangement_identity_holds() {
        for n in 1..=20 {
            assert!(check_derangement_identity(n).unwrap());
        }
    }

    #[test]
    fn poisson_reference_basics() {
        let q = poisson_reference(&Rational::one(), 20).unwrap();
        // lambda = 1 makes p(0) and p(1) identical approximants.
        assert_eq!(q.prob(0), q.prob(1));
        let p0 = rational_to_f64(q.prob(0));
        assert!((p0 - 0.367879441).abs() < 1e-9);
        // The tail above 20 is bounded by ~1/21!, far below 1e-18.
        assert!(q.tail_upper() < &rat(1, 1_000_000_000_000_000_000));
        assert!(poisson_reference(&Rational::zero(), 5).is_err());
    }

    #[test]
    fn tv_distance_cases() {
        let a = circular_pmf(5).unwrap();
        let report = tv_distance(&a, &a);
        assert!(report.distance.is_zero());

        let p0 = ExactPmf::point_mass(0);
        let p1 = ExactPmf::point_mass(1);
        assert_eq!(tv_distance(&p0, &p1).distance, Rational::one());
    }

    #[test]
    fn tv_against_poisson_is_symmetric_in_accounting() {
        // Mass above the cap must count: a point mass far out is at distance
        // ~1 from Poisson(1).
        let far = ExactPmf::point_mass(30);
        let q = poisson_reference(&Rational::one(), 20).unwrap();
        let report = tv_distance_poisson(&far, &q);
        let d = report.distance_f64();
        assert!(d > 0.999 && d <= 1.0 + 1e-12);
    }

    #[test]
    fn pmf_serialization_formats() {
        let pmf = unseparated_pmf(3).unwrap();
        // P{0} = 1/2, P{1} = 1/3, P{2} = 1/6.
        assert_eq!(pmf.to_csv(), "0,1,2\n1,1,3\n2,1,6\n");
        assert_eq!(
            pmf.to_json().to_string(),
            r#"{"0":"1/2","1":"1/3","2":"1/6"}"#
        );
    }

    #[test]
    fn pmf_rejects_bad_mass() {
        let mut probs = BTreeMap::new();
        probs.insert(0usize, rat(1, 2));
        assert!(ExactPmf::new(probs.clone()).is_err());
        probs.insert(1usize, rat(1, 3));
        assert!(ExactPmf::new(probs).is_err());
    }

    #[test]
    fn factorial_moments() {
        let pmf = fixed_point_pmf(6).unwrap();
        // Falling factorial moments of the fixed-point count are all 1 up to
        // order n.
        for k in 1..=4 {
            assert_eq!(pmf.factorial_moment(k), Rational::one(), "k={k}");
        }
        assert_eq!(pmf.mean(), Rational::one());
    }
}
