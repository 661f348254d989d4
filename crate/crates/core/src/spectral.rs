//! Distributions over irrep names: the Plancherel distribution, the
//! weak-sampling distribution for a hidden involution subgroup, the
//! low-dimensional cutoff sets, and empirical dimension statistics.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{character, dimension, matching_cycle_type, rational_to_f64};
use crate::combinatorics::{enumerate_partitions, factorial, Involution, Partition};
use crate::error::{Error, Result};

/// Which distribution over irrep names this is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistributionKind {
    Plancherel,
    /// Weak Fourier sampling with hidden subgroup `{1, m}`.
    WeakSampling(Involution),
    /// Weak sampling with the trivial hidden subgroup (same as Plancherel).
    WeakSamplingTrivial,
}

impl DistributionKind {
    pub fn label(&self) -> String {
        match self {
            DistributionKind::Plancherel => "plancherel".into(),
            DistributionKind::WeakSamplingTrivial => "weak_sampling(trivial)".into(),
            DistributionKind::WeakSampling(m) => {
                format!("weak_sampling({:?})", m.pairs())
            }
        }
    }
}

/// An exact-rational probability distribution over the irreps of `S_n`,
/// listed in reverse-lexicographic partition order.
#[derive(Clone, Debug)]
pub struct IrrepDistribution {
    pub n: u32,
    pub kind: DistributionKind,
    pub weights: Vec<(Partition, BigRational)>,
}

impl IrrepDistribution {
    pub fn total_mass(&self) -> BigRational {
        self.weights.iter().map(|(_, w)| w.clone()).sum()
    }

    pub fn probability(&self, lambda: &Partition) -> BigRational {
        self.weights
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Draw one irrep name. The cumulative walk compares the exact rational
    /// weights against the exact dyadic rational `r / 2^64`, so two runs with
    /// the same seed pick identical names.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Partition {
        let r: u64 = rng.gen();
        let draw = BigRational::new(BigInt::from(r), BigInt::from(1u128 << 64u32));
        let mut acc = BigRational::zero();
        for (lam, w) in &self.weights {
            acc += w;
            if draw < acc {
                return lam.clone();
            }
        }
        self.weights.last().expect("nonempty distribution").0.clone()
    }

    /// JSON report with exact numerator/denominator entries.
    pub fn to_json(&self, seed: Option<u64>) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .weights
            .iter()
            .map(|(lam, w)| {
                serde_json::json!({
                    "partition": lam.to_string(),
                    "probability_numerator": w.numer().to_string(),
                    "probability_denominator": w.denom().to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "kind": self.kind.label(),
            "seed": seed,
            "entries": entries,
        })
    }
}

/// The Plancherel distribution: weight `d^lambda^2 / n!`.
pub fn plancherel(n: u32) -> IrrepDistribution {
    let order = BigInt::from(factorial(n));
    let weights = enumerate_partitions(n)
        .into_iter()
        .map(|lam| {
            let d = BigInt::from(dimension(&lam));
            let w = BigRational::new(&d * &d, order.clone());
            (lam, w)
        })
        .collect();
    IrrepDistribution { n, kind: DistributionKind::Plancherel, weights }
}

/// Rank of the involution projector on `S^lambda`: `(d + chi^lambda(M)) / 2`,
/// an exact non-negative integer.
pub fn involution_projector_rank(lambda: &Partition) -> Result<BigInt> {
    let mu = matching_cycle_type(lambda.n())?;
    let chi = character(lambda, &mu)?;
    let d = BigInt::from(dimension(lambda));
    let twice = d + chi;
    debug_assert!((&twice % BigInt::from(2)).is_zero());
    debug_assert!(!twice.is_negative());
    Ok(twice / BigInt::from(2))
}

/// The irrep-name distribution of weak Fourier sampling: for the trivial
/// subgroup this is Plancherel; for `H = {1, m}` the weight of `lambda` is
/// `(2 d^lambda / n!) * rk(Pi_m on S^lambda)`.
pub fn weak_sampling_distribution(n: u32, hidden: Option<&Involution>) -> Result<IrrepDistribution> {
    match hidden {
        None => {
            let mut dist = plancherel(n);
            dist.kind = DistributionKind::WeakSamplingTrivial;
            Ok(dist)
        }
        Some(m) => {
            if m.n() as u32 != n {
                return Err(Error::SizeMismatch(format!(
                    "involution is on {} points but n = {n}",
                    m.n()
                )));
            }
            let order = BigInt::from(factorial(n));
            let mut weights = Vec::new();
            for lam in enumerate_partitions(n) {
                let d = BigInt::from(dimension(&lam));
                let rank = involution_projector_rank(&lam)?;
                let w = BigRational::new(BigInt::from(2) * d * rank, order.clone());
                weights.push((lam, w));
            }
            Ok(IrrepDistribution {
                n,
                kind: DistributionKind::WeakSampling(m.clone()),
                weights,
            })
        }
    }
}

/// Which cutoff-set geometry to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CutoffStyle {
    /// First row or column at least `(1 - c) n`; requires `0 < c < 1/4`.
    LinearPart1,
    /// First row or column at least `n - c sqrt(n) / ln n`.
    SqrtPart2,
}

/// A set of Young diagrams with first row or column close to `n`.
#[derive(Clone, Debug)]
pub struct CutoffSet {
    pub n: u32,
    pub style: CutoffStyle,
    pub c: f64,
    /// Width threshold actually applied: `lambda in members` iff
    /// `max(lambda_1, lambda'_1) >= threshold`.
    pub threshold: f64,
    pub members: Vec<Partition>,
    /// Exact maximum of `d^nu` over members (zero if empty).
    pub max_dimension: BigUint,
    /// The counting bound `2 x p(ceil(x))` with `x` the width slack.
    pub cardinality_bound: f64,
}

pub fn cutoff_set(n: u32, c: f64, style: CutoffStyle) -> Result<CutoffSet> {
    if c <= 0.0 {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let slack = match style {
        CutoffStyle::LinearPart1 => {
            if c >= 0.25 {
                return Err(Error::InvalidParameter(format!(
                    "linear style requires 0 < c < 1/4, got {c}"
                )));
            }
            c * n as f64
        }
        CutoffStyle::SqrtPart2 => {
            if n < 2 {
                return Err(Error::InvalidParameter("n must be at least 2".into()));
            }
            c * (n as f64).sqrt() / (n as f64).ln()
        }
    };
    let threshold = n as f64 - slack;
    let members: Vec<Partition> = enumerate_partitions(n)
        .into_iter()
        .filter(|lam| {
            let width = lam.first_part().max(lam.first_column()) as f64;
            width >= threshold
        })
        .collect();
    let max_dimension = members
        .iter()
        .map(dimension)
        .max()
        .unwrap_or_else(BigUint::zero);
    let x = slack;
    let px = crate::combinatorics::partition_count(x.ceil().max(0.0) as u32)
        .to_f64()
        .unwrap_or(f64::INFINITY);
    Ok(CutoffSet {
        n,
        style,
        c,
        threshold,
        members,
        max_dimension,
        cardinality_bound: 2.0 * x * px,
    })
}

/// One sampled or enumerated point of the dimension statistics report.
#[derive(Clone, Debug, Serialize)]
pub struct VkQuantile {
    pub quantile: f64,
    /// `ln(d^lambda / sqrt(n!)) / sqrt(n)` at that quantile.
    pub value: f64,
}

/// Empirical Plancherel dimension statistics. Purely observational: the
/// constants implied by the bracketing theorems are reported, never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct VershikKerovReport {
    pub n: u32,
    pub trials: u32,
    pub seed: u64,
    pub exact: bool,
    /// `ln(max_lambda d^lambda)`.
    pub ln_max_dimension: f64,
    /// `c` such that `max d = e^{-c sqrt(n)} sqrt(n!)`.
    pub implied_max_dim_constant: f64,
    pub quantiles: Vec<VkQuantile>,
    /// All sampled dimensions were at most the maximum over partitions
    /// (only checked when exact enumeration is available).
    pub samples_respect_max: bool,
}

/// Natural log of `d^lambda` via the hook length formula, stable for large n.
pub fn ln_dimension(lambda: &Partition) -> f64 {
    let n = lambda.n();
    let mut acc = ln_factorial(n);
    let conj = lambda.conjugate();
    let cols = conj.parts();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let hook = (row - j as u32) + (cols[j] - i as u32) - 1;
            acc -= (hook as f64).ln();
        }
    }
    acc
}

pub fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|k| (k as f64).ln()).sum()
}

/// Shape of the RSK insertion tableau of a uniformly random permutation;
/// distributed according to Plancherel.
pub fn rsk_shape(n: u32, rng: &mut ChaCha8Rng) -> Partition {
    // Fisher-Yates for a uniform word, then row insertion tracking rows only.
    let mut word: Vec<u32> = (0..n).collect();
    for i in (1..n as usize).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &x in &word {
        let mut item = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            match row.iter().position(|&y| y > item) {
                Some(pos) => {
                    std::mem::swap(&mut row[pos], &mut item);
                }
                None => {
                    row.push(item);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![item]);
        }
    }
    let parts: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
    Partition::new(parts).expect("RSK row lengths are non-increasing")
}

/// Cap below which the Plancherel sampler enumerates all partitions exactly;
/// above it, RSK insertion of a random permutation is used.
pub const EXACT_ENUMERATION_CAP: u32 = 30;

pub fn vershik_kerov_report(n: u32, trials: u32, seed: u64) -> Result<VershikKerovReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exact = n <= EXACT_ENUMERATION_CAP;
    let half_ln_order = 0.5 * ln_factorial(n);
    let sqrt_n = (n as f64).sqrt();
    let normalized = |lnd: f64| (lnd - half_ln_order) / sqrt_n;

    let (ln_max, samples): (f64, Vec<f64>) = if exact {
        let dist = plancherel(n);
        let ln_dims: Vec<(Partition, f64)> = dist
            .weights
            .iter()
            .map(|(lam, _)| (lam.clone(), ln_dimension(lam)))
            .collect();
        let ln_max = ln_dims.iter().map(|(_, d)| *d).fold(f64::NEG_INFINITY, f64::max);
        let mut samples = Vec::with_capacity(trials as usize);
        for _ in 0..trials {
            let lam = dist.sample(&mut rng);
            samples.push(ln_dimension(&lam));
        }
        (ln_max, samples)
    } else {
        let mut samples = Vec::with_capacity(trials as usize);
        for _ in 0..trials {
            let lam = rsk_shape(n, &mut rng);
            samples.push(ln_dimension(&lam));
        }
        let ln_max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (ln_max, samples)
    };

    let samples_respect_max = samples.iter().all(|&s| s <= ln_max + 1e-9);
    let mut sorted: Vec<f64> = samples.iter().map(|&s| normalized(s)).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantiles = if sorted.is_empty() {
        Vec::new()
    } else {
        [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0]
            .iter()
            .map(|&q| {
                let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
                VkQuantile { quantile: q, value: sorted[idx] }
            })
            .collect()
    };
    Ok(VershikKerovReport {
        n,
        trials,
        seed,
        exact,
        ln_max_dimension: ln_max,
        implied_max_dim_constant: -normalized(ln_max),
        quantiles,
        samples_respect_max,
    })
}

/// Total variation distance between two exact irrep distributions.
pub fn tv_distance_exact(p: &IrrepDistribution, q: &IrrepDistribution) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut acc = BigRational::zero();
    for (lam, w) in &p.weights {
        let diff = w - q.probability(lam);
        acc += diff.abs();
    }
    // Mass in q but not p.
    for (lam, w) in &q.weights {
        if p.weights.iter().all(|(l, _)| l != lam) {
            acc += w.abs();
        }
    }
    half * acc
}

/// Probability mass a distribution places on a cutoff set.
pub fn mass_on_cutoff(dist: &IrrepDistribution, cutoff: &CutoffSet) -> f64 {
    let mass: BigRational = dist
        .weights
        .iter()
        .filter(|(lam, _)| cutoff.members.contains(lam))
        .map(|(_, w)| w.clone())
        .sum();
    rational_to_f64(&mass)
}
