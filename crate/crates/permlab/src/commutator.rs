//! Fixed points of commutators `[eta, pi] = eta^{-1} pi^{-1} eta pi` for
//! uniform `pi`, against a unit-mean Poisson reference.
//!
//! An index is fixed by the commutator exactly when `eta(pi(i)) = pi(eta(i))`,
//! so the count can be read off without composing permutations. When `eta`
//! is the rotation `i -> i+1 mod n` this is precisely the circular-succession
//! count; when `eta` is the identity it is constantly `n`.
//!
//! The count also has the law of `#{i : U(i) = V(i)}` for independent `U`,
//! `V` uniform on the conjugacy class of `eta`, which gives the closed-form
//! mean `n [((n-f)/n)^2 / (n-1) + (f/n)^2]` in the number of fixed points
//! `f` of `eta`, and for `eta` a product of `m` disjoint 2-cycles makes the
//! halved count's falling factorial moments
//! `m(m-1)...(m-k+1) / ((2m-1)(2m-3)...(2m-2k+1))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde_json::json;

use crate::dist::{
    poisson_reference, rational_to_f64, tv_distance_poisson, ExactPmf, PoissonReference,
    Rational, TvReport,
};
use crate::error::{Error, Result};
use crate::generators::{conjugacy_sampler, uniform_permutation, RandomSource};
use crate::perm::Permutation;

/// Largest `n` for which the commutator law is enumerated over all of `S_n`.
pub const COMMUTATOR_EXACT_CAP: usize = 8;

/// Two-sided 99% normal quantile, used for Monte Carlo half-widths.
const Z_99: f64 = 2.5758293035489004;

/// Outcomes above this value are pooled into one tail bin when aggregating
/// per-bin confidence half-widths.
const CI_BIN_CAP: usize = 20;

/// Number of independent streams a Monte Carlo run is split across.
const MC_STREAMS: u64 = 64;

/// Number of fixed points of `[eta, pi]`, computed as the number of indices
/// where `eta ∘ pi` and `pi ∘ eta` agree.
pub fn commutator_fixed_count(eta: &Permutation, pi: &Permutation) -> usize {
    let n = eta.n();
    (1..=n)
        .filter(|&i| eta.apply(pi.apply(i)) == pi.apply(eta.apply(i)))
        .count()
}

/// Summary of the conjugacy data of `eta` carried on every report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaDescriptor {
    pub n: usize,
    pub fixed_points: usize,
    pub two_cycles: usize,
    pub cycle_type: String,
}

impl EtaDescriptor {
    pub fn of(eta: &Permutation) -> Self {
        let parts = eta.cycle_partition();
        Self {
            n: eta.n(),
            fixed_points: parts.fixed_count(),
            two_cycles: parts.two_cycle_count(),
            cycle_type: parts.to_string(),
        }
    }
}

/// How a commutator law was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Law of the commutator fixed-point count for one `eta`, with its distance
/// to the unit Poisson reference.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub eta: EtaDescriptor,
    pub method: Method,
    pub pmf: ExactPmf,
    pub mean: Rational,
    pub tv: TvReport,
    /// Conservative 99% half-width for the Monte Carlo distance estimate
    /// (absent in exact mode).
    pub ci_half_width: Option<f64>,
}

impl CommutatorReport {
    pub fn to_json(&self) -> serde_json::Value {
        let method = match &self.method {
            Method::Exact => json!({ "mode": "exact" }),
            Method::MonteCarlo { samples, seed } => json!({
                "mode": "monte-carlo",
                "samples": samples,
                "seed": seed,
            }),
        };
        json!({
            "eta": {
                "n": self.eta.n,
                "fixed_points": self.eta.fixed_points,
                "two_cycles": self.eta.two_cycles,
                "cycle_type": self.eta.cycle_type,
            },
            "method": method,
            "pmf": self.pmf.to_json(),
            "mean": format!("{}/{}", self.mean.numer(), self.mean.denom()),
            "mean_decimal": rational_to_f64(&self.mean),
            "tv": {
                "distance": self.tv.distance_f64(),
                "distance_exact": format!(
                    "{}/{}",
                    self.tv.distance.numer(),
                    self.tv.distance.denom()
                ),
                "tail_bound": rational_to_f64(&self.tv.tail_bound),
                "reference": self.tv.reference,
            },
            "ci_half_width_99": self.ci_half_width,
        })
    }

    /// One header line plus one summary row.
    pub fn to_csv(&self) -> String {
        let (mode, samples, seed) = match &self.method {
            Method::Exact => ("exact".to_string(), String::new(), String::new()),
            Method::MonteCarlo { samples, seed } => {
                ("monte-carlo".to_string(), samples.to_string(), seed.to_string())
            }
        };
        let ci = self
            .ci_half_width
            .map(|v| format!("{v}"))
            .unwrap_or_default();
        format!(
            "n,f,t,cycle_type,mode,samples,seed,mean,tv_distance,ci_half_width_99\n\
             {},{},{},{},{mode},{samples},{seed},{},{},{ci}\n",
            self.eta.n,
            self.eta.fixed_points,
            self.eta.two_cycles,
            self.eta.cycle_type,
            rational_to_f64(&self.mean),
            self.tv.distance_f64(),
        )
    }
}

/// Closed-form mean of the commutator fixed-point count for any `eta` with
/// `f` fixed points: `n [((n-f)/n)^2 / (n-1) + (f/n)^2]`.
pub fn expectation_formula(n: usize, f: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    if f > n {
        return Err(Error::Domain(format!("f={f} exceeds n={n}")));
    }
    let n_rat = Rational::from_integer(BigInt::from(n));
    let moved = Rational::new(BigInt::from(n - f), BigInt::from(n));
    let fixed = Rational::new(BigInt::from(f), BigInt::from(n));
    let inv = Rational::new(BigInt::one(), BigInt::from(n - 1));
    Ok(n_rat * (moved.clone() * moved * inv + fixed.clone() * fixed))
}

/// For `eta` a product of `m` disjoint 2-cycles (`n = 2m`), the `k`-th
/// falling factorial moment of half the commutator fixed-point count:
/// `m(m-1)...(m-k+1) / ((2m-1)(2m-3)...(2m-2k+1))`. Tends to `1/2^k`.
pub fn two_cycle_factorial_moment(m: usize, k: usize) -> Result<Rational> {
    if k == 0 || k > m {
        return Err(Error::Domain(format!("need 1 <= k <= m (got k={k}, m={m})")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(m - j);
        den *= BigInt::from(2 * m - 2 * j - 1);
    }
    Ok(Rational::new(num, den))
}

/// Exact law of the commutator fixed-point count over all of `S_n`.
///
/// The identity needs no enumeration (the count is constantly `n`); every
/// other `eta` is capped at [`COMMUTATOR_EXACT_CAP`].
pub fn exact_commutator_pmf(eta: &Permutation) -> Result<ExactPmf> {
    let n = eta.n();
    if eta.is_identity() {
        return Ok(ExactPmf::point_mass(n));
    }
    if n > COMMUTATOR_EXACT_CAP {
        return Err(Error::ExceedsCap {
            n,
            cap: COMMUTATOR_EXACT_CAP,
        });
    }
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for pi in crate::perm::all_permutations(n) {
        *counts.entry(commutator_fixed_count(eta, &pi)).or_insert(0) += 1;
    }
    ExactPmf::from_counts(&counts)
}

fn unit_poisson_for(pmf: &ExactPmf) -> PoissonReference {
    let cap = pmf.max_outcome().max(40);
    poisson_reference(&Rational::one(), cap).expect("unit rate is positive")
}

/// Exact report for one `eta`: law, mean, and distance to Poisson(1).
pub fn exact_commutator_report(eta: &Permutation) -> Result<CommutatorReport> {
    let pmf = exact_commutator_pmf(eta)?;
    let tv = tv_distance_poisson(&pmf, &unit_poisson_for(&pmf));
    Ok(CommutatorReport {
        eta: EtaDescriptor::of(eta),
        method: Method::Exact,
        mean: pmf.mean(),
        tv,
        pmf,
        ci_half_width: None,
    })
}

fn merge_histograms(
    mut a: BTreeMap<usize, u64>,
    b: BTreeMap<usize, u64>,
) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Splits `samples` across the fixed stream count; stream `s` (1-based)
/// receives `chunk_size(samples, s)` samples.
fn chunk_size(samples: u64, stream: u64) -> u64 {
    samples / MC_STREAMS + u64::from(stream <= samples % MC_STREAMS)
}

/// Conservative 99% half-width for an empirical total variation distance:
/// half the sum of per-bin normal half-widths over outcomes `0..=20` plus
/// one pooled tail bin.
fn tv_half_width(counts: &BTreeMap<usize, u64>, samples: u64) -> f64 {
    let n = samples as f64;
    let mut bins = vec![0u64; CI_BIN_CAP + 2];
    for (&m, &c) in counts {
        bins[m.min(CI_BIN_CAP + 1)] += c;
    }
    let sum: f64 = bins
        .iter()
        .map(|&c| {
            let p = c as f64 / n;
            Z_99 * (p * (1.0 - p) / n).sqrt()
        })
        .sum();
    sum / 2.0
}

/// Monte Carlo law of the commutator fixed-point count: `samples` uniform
/// draws of `pi`, split over independent substreams of `seed` and merged.
/// Deterministic for a fixed `(eta, samples, seed)`.
pub fn mc_commutator_pmf(eta: &Permutation, samples: u64, seed: u64) -> Result<CommutatorReport> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let n = eta.n();
    let counts = (1..=MC_STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = RandomSource::with_stream(seed, stream);
            let mut local: BTreeMap<usize, u64> = BTreeMap::new();
            for _ in 0..chunk_size(samples, stream) {
                let pi = uniform_permutation(n, &mut rng);
                *local.entry(commutator_fixed_count(eta, &pi)).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_histograms);

    let pmf = ExactPmf::from_counts(&counts)?;
    let tv = tv_distance_poisson(&pmf, &unit_poisson_for(&pmf));
    Ok(CommutatorReport {
        eta: EtaDescriptor::of(eta),
        method: Method::MonteCarlo { samples, seed },
        mean: pmf.mean(),
        tv,
        pmf,
        ci_half_width: Some(tv_half_width(&counts, samples)),
    })
}

/// One draw of the exchangeable pair `(W, W')`.
///
/// `U` and `V` are independent and uniform on the conjugacy class of `eta`;
/// `I != J` are uniform labels. `N` counts agreement labels avoiding every
/// fixed point and 2-cycle member of `U` and `V`; `A` asks `I` and `J` to
/// avoid those same labels; `W = N 1_A`. `W'` repeats the count after `I`
/// and `J` are interchanged in the cycle representation of `V`. At most
/// eight agreement indicators can flip, so `|W' - W| <= 8` always.
#[derive(Debug, Clone)]
pub struct ExchangeablePairSample {
    pub w: usize,
    pub w_prime: usize,
    pub a: bool,
    pub u: Permutation,
    pub v: Permutation,
    pub i: usize,
    pub j: usize,
}

/// Draws one exchangeable-pair sample; needs `n >= 4` so that two labels can
/// avoid the excluded sets.
pub fn exchangeable_pair_sample(
    eta: &Permutation,
    rng: &mut RandomSource,
) -> Result<ExchangeablePairSample> {
    let n = eta.n();
    if n < 4 {
        return Err(Error::Domain("need n >= 4".into()));
    }
    let u = conjugacy_sampler(eta, rng);
    let v = conjugacy_sampler(eta, rng);
    let i = rng.uniform(n);
    let j = loop {
        let draw = rng.uniform(n);
        if draw != i {
            break draw;
        }
    };

    // Fixed points and 2-cycle members are exactly the order <= 2 labels.
    let short_u: Vec<bool> = (1..=n).map(|x| u.apply(u.apply(x)) == x).collect();
    let short_v: Vec<bool> = (1..=n).map(|x| v.apply(v.apply(x)) == x).collect();
    let a = !short_u[i - 1] && !short_v[i - 1] && !short_u[j - 1] && !short_v[j - 1];

    let w = if a {
        (1..=n)
            .filter(|&x| u.apply(x) == v.apply(x) && !short_u[x - 1] && !short_v[x - 1])
            .count()
    } else {
        0
    };

    // V' interchanges i and j in the cycle representation of V, i.e. is the
    // conjugate of V by the transposition (i j).
    let tau = |x: usize| {
        if x == i {
            j
        } else if x == j {
            i
        } else {
            x
        }
    };
    let v_prime = |x: usize| tau(v.apply(tau(x)));
    let w_prime = if a {
        let short_vp: Vec<bool> = (1..=n).map(|x| v_prime(v_prime(x)) == x).collect();
        (1..=n)
            .filter(|&x| u.apply(x) == v_prime(x) && !short_u[x - 1] && !short_vp[x - 1])
            .count()
    } else {
        0
    };

    Ok(ExchangeablePairSample {
        w,
        w_prime,
        a,
        u,
        v,
        i,
        j,
    })
}

/// Aggregate of a Monte Carlo run of the exchangeable pair.
#[derive(Debug, Clone)]
pub struct PairMcReport {
    pub eta: EtaDescriptor,
    pub samples: u64,
    pub seed: u64,
    pub hist_w: BTreeMap<usize, u64>,
    pub hist_w_prime: BTreeMap<usize, u64>,
    /// Largest `|W' - W|` seen across all samples.
    pub max_abs_diff: usize,
    /// Number of samples with `W' = W - 1`.
    pub down_steps: u64,
    pub mean_w: f64,
}

/// Runs `samples` draws of the exchangeable pair over independent
/// substreams of `seed`; deterministic for fixed inputs.
pub fn exchangeable_pair_mc(eta: &Permutation, samples: u64, seed: u64) -> Result<PairMcReport> {
    if eta.n() < 4 {
        return Err(Error::Domain("need n >= 4".into()));
    }
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let (hist_w, hist_w_prime, max_abs_diff, down_steps, sum_w) = (1..=MC_STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = RandomSource::with_stream(seed, stream);
            let mut hw: BTreeMap<usize, u64> = BTreeMap::new();
            let mut hwp: BTreeMap<usize, u64> = BTreeMap::new();
            let mut max_diff = 0usize;
            let mut down = 0u64;
            let mut sum = 0u64;
            for _ in 0..chunk_size(samples, stream) {
                let s = exchangeable_pair_sample(eta, &mut rng).expect("n checked above");
                *hw.entry(s.w).or_insert(0) += 1;
                *hwp.entry(s.w_prime).or_insert(0) += 1;
                max_diff = max_diff.max(s.w.abs_diff(s.w_prime));
                if s.w_prime + 1 == s.w {
                    down += 1;
                }
                sum += s.w as u64;
            }
            (hw, hwp, max_diff, down, sum)
        })
        .reduce(
            || (BTreeMap::new(), BTreeMap::new(), 0, 0, 0),
            |a, b| {
                (
                    merge_histograms(a.0, b.0),
                    merge_histograms(a.1, b.1),
                    a.2.max(b.2),
                    a.3 + b.3,
                    a.4 + b.4,
                )
            },
        );
    Ok(PairMcReport {
        eta: EtaDescriptor::of(eta),
        samples,
        seed,
        hist_w,
        hist_w_prime,
        max_abs_diff,
        down_steps,
        mean_w: sum_w as f64 / samples as f64,
    })
}
