//! The analytic measurement pipeline: observation distributions for one and
//! k registers, the subset functionals entering the expectation and variance
//! formulas, and total-variation experiments against the natural
//! distribution.
//!
//! Every spectral quantity here reduces to group sums of the scalar
//! functions `f_I(g) = <b, (⊗_{i in I} rho_i(g) ⊗ 1) b>`: the isotypic
//! projector norms are `||Pi_sigma b||^2 = (d_sigma / n!) sum_g
//! chi_sigma(g) f_I(g)`, and the same holds on `b ⊗ b*` with the product
//! `f_{I1} f_{I2}`. Matrices are real (Young orthogonal form), so
//! conjugation is the identity throughout.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::characters::{character, matching_cycle_type, rational_to_f64};
use crate::combinatorics::{
    enumerate_matchings, enumerate_partitions, enumerate_symmetric_group, Involution, Partition,
};
use crate::error::{Error, Result};
use crate::spectral::{involution_projector_rank, plancherel};
use crate::yor::{apply_registerwise, Irrep, MeasurementFrame};

/// A measurement context: observed irrep names (one per register) and the
/// frame measured on their tensor product.
pub struct RegisterContext {
    pub n: u32,
    pub irreps: Vec<Irrep>,
    pub frame: MeasurementFrame,
    is_standard_frame: bool,
}

impl RegisterContext {
    pub fn new(n: u32, lambdas: &[Partition], frame: Option<MeasurementFrame>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::EmptyTensorProduct);
        }
        for lam in lambdas {
            if lam.n() != n {
                return Err(Error::SizeMismatch(format!("{lam} is not a partition of {n}")));
            }
        }
        let irreps: Vec<Irrep> = lambdas
            .iter()
            .map(Irrep::build)
            .collect::<Result<_>>()?;
        let dim: usize = irreps.iter().map(|ir| ir.dim).product();
        let (frame, is_standard_frame) = match frame {
            Some(f) => {
                if f.dim() != dim {
                    return Err(Error::InvalidFrame(format!(
                        "frame dimension {} does not match product dimension {dim}",
                        f.dim()
                    )));
                }
                (f, false)
            }
            None => (MeasurementFrame::standard(dim), true),
        };
        Ok(RegisterContext { n, irreps, frame, is_standard_frame })
    }

    pub fn k(&self) -> usize {
        self.irreps.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|ir| ir.dim).collect()
    }

    pub fn product_dim(&self) -> usize {
        self.irreps.iter().map(|ir| ir.dim).product()
    }

    /// Exact rank of `Pi_m^{⊗k}`: the product of the per-register ranks
    /// `(d + chi(M)) / 2`.
    pub fn projector_rank(&self) -> Result<u64> {
        let mut rank = 1u64;
        for ir in &self.irreps {
            let r = involution_projector_rank(&ir.lambda)?
                .to_u64()
                .ok_or_else(|| Error::CapExceeded("rank overflows u64".into()))?;
            rank = rank.checked_mul(r).ok_or_else(|| {
                Error::CapExceeded("product rank overflows u64".into())
            })?;
        }
        Ok(rank)
    }

    /// The natural distribution `a_b / dim` on the frame.
    pub fn natural_distribution(&self) -> Vec<f64> {
        let dim = self.product_dim() as f64;
        self.frame.weights.iter().map(|&a| a / dim).collect()
    }
}

/// Precomputed group data shared by the spectral evaluations in one context:
/// all elements of `S_n`, their per-register matrices, per-class characters,
/// and the matching class.
pub struct GroupCache {
    pub group: Vec<crate::combinatorics::Permutation>,
    /// class index of each group element
    class_of: Vec<usize>,
    pub classes: Vec<Partition>,
    /// `matrices[register][element]`
    matrices: Vec<Vec<DMatrix<f64>>>,
    pub matchings: Vec<Involution>,
    /// index into `group` of each matching, as a permutation
    matching_elements: Vec<usize>,
    /// `chi_table[sigma_index][class_index]`
    chi_table: Vec<Vec<f64>>,
    /// `chi_sigma(M) / d_sigma` per sigma
    normalized_on_matching: Vec<f64>,
    /// exact dimensions per sigma
    sigma_dims: Vec<f64>,
}

impl GroupCache {
    pub fn new(ctx: &RegisterContext) -> Result<Self> {
        let n = ctx.n;
        let group = enumerate_symmetric_group(n as usize);
        let classes = enumerate_partitions(n);
        let class_index: HashMap<Partition, usize> =
            classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let class_of: Vec<usize> =
            group.iter().map(|g| class_index[&g.cycle_type()]).collect();
        let matrices: Vec<Vec<DMatrix<f64>>> = ctx
            .irreps
            .iter()
            .map(|ir| group.iter().map(|g| ir.matrix_of(g)).collect())
            .collect();
        let element_index: HashMap<Vec<usize>, usize> = group
            .iter()
            .enumerate()
            .map(|(i, g)| (g.images().to_vec(), i))
            .collect();
        let matchings = enumerate_matchings(n as usize)?;
        let matching_elements = matchings
            .iter()
            .map(|m| element_index[m.to_permutation().images()])
            .collect();
        let m_type = matching_cycle_type(n)?;
        let mut chi_table = Vec::with_capacity(classes.len());
        let mut normalized_on_matching = Vec::with_capacity(classes.len());
        let mut sigma_dims = Vec::with_capacity(classes.len());
        for sigma in &classes {
            let row: Vec<f64> = classes
                .iter()
                .map(|mu| character(sigma, mu).unwrap().to_f64().unwrap())
                .collect();
            let d = crate::characters::dimension(sigma).to_f64().unwrap();
            let chi_m = character(sigma, &m_type)?.to_f64().unwrap();
            chi_table.push(row);
            normalized_on_matching.push(chi_m / d);
            sigma_dims.push(d);
        }
        Ok(GroupCache {
            group,
            class_of,
            classes,
            matrices,
            matchings,
            matching_elements,
            chi_table,
            normalized_on_matching,
            sigma_dims,
        })
    }

    fn order(&self) -> f64 {
        self.group.len() as f64
    }

    /// `f_I(g) = <b, (⊗_{i in I} rho_i(g) ⊗ 1) b>` for every group element.
    fn subset_scalars(&self, ctx: &RegisterContext, b: &DVector<f64>, subset: &[usize]) -> Vec<f64> {
        let dims = ctx.dims();
        self.group
            .iter()
            .enumerate()
            .map(|(g_idx, _)| {
                let ops: Vec<Option<&DMatrix<f64>>> = (0..ctx.k())
                    .map(|i| {
                        if subset.contains(&i) {
                            Some(&self.matrices[i][g_idx])
                        } else {
                            None
                        }
                    })
                    .collect();
                let moved = apply_registerwise(b, &ops, &dims);
                b.dot(&moved)
            })
            .collect()
    }

    /// Matrix of `m^I` for one matching: per-register involution action.
    fn matching_ops<'a>(
        &'a self,
        ctx: &RegisterContext,
        m_idx: usize,
        subset: &[usize],
    ) -> Vec<Option<&'a DMatrix<f64>>> {
        let g_idx = self.matching_elements[m_idx];
        (0..ctx.k())
            .map(|i| {
                if subset.contains(&i) {
                    Some(&self.matrices[i][g_idx])
                } else {
                    None
                }
            })
            .collect()
    }
}

fn validate_subset(ctx: &RegisterContext, subset: &[usize]) -> Result<()> {
    for &i in subset {
        if i >= ctx.k() {
            return Err(Error::InvalidParameter(format!(
                "register index {i} out of range for k = {}",
                ctx.k()
            )));
        }
    }
    Ok(())
}

/// Both evaluations of a subset functional; the two routes must agree.
#[derive(Clone, Debug)]
pub struct FunctionalValue {
    /// Character/isotypic-projector route.
    pub spectral: f64,
    /// Exhaustive average over the matching class.
    pub direct: f64,
    /// Per-irreducible contributions `(sigma, chi_sigma(M)/d_sigma * ||Pi_sigma ...||^2)`.
    pub per_sigma: Vec<(Partition, f64)>,
}

/// `E^I(b) = sum_{sigma < ⊗_{i in I} rho_i} (chi_sigma(M)/d_sigma) ||Pi^I_sigma b||^2`.
pub fn subset_functional_e(
    ctx: &RegisterContext,
    cache: &GroupCache,
    b: &DVector<f64>,
    subset: &[usize],
) -> Result<FunctionalValue> {
    validate_subset(ctx, subset)?;
    if subset.is_empty() {
        let norm2 = b.norm_squared();
        return Ok(FunctionalValue { spectral: norm2, direct: norm2, per_sigma: vec![] });
    }
    let f = cache.subset_scalars(ctx, b, subset);
    let spectral_terms = isotypic_sums(cache, &f, None);
    let spectral = spectral_terms.iter().map(|(_, v)| v).sum();
    let dims = ctx.dims();
    let direct = cache
        .matchings
        .iter()
        .enumerate()
        .map(|(m_idx, _)| {
            let ops = cache.matching_ops(ctx, m_idx, subset);
            b.dot(&apply_registerwise(b, &ops, &dims))
        })
        .sum::<f64>()
        / cache.matchings.len() as f64;
    Ok(FunctionalValue { spectral, direct, per_sigma: spectral_terms })
}

/// `E^{I1,I2}(b)` on `b ⊗ b*`; spectral and exhaustive-average evaluations.
pub fn subset_functional_e2(
    ctx: &RegisterContext,
    cache: &GroupCache,
    b: &DVector<f64>,
    subset1: &[usize],
    subset2: &[usize],
) -> Result<FunctionalValue> {
    validate_subset(ctx, subset1)?;
    validate_subset(ctx, subset2)?;
    if subset1.is_empty() && subset2.is_empty() {
        let norm4 = b.norm_squared().powi(2);
        return Ok(FunctionalValue { spectral: norm4, direct: norm4, per_sigma: vec![] });
    }
    let f1 = cache.subset_scalars(ctx, b, subset1);
    let f2 = cache.subset_scalars(ctx, b, subset2);
    let spectral_terms = isotypic_sums(cache, &f1, Some(&f2));
    let spectral = spectral_terms.iter().map(|(_, v)| v).sum();
    let dims = ctx.dims();
    let direct = cache
        .matchings
        .iter()
        .enumerate()
        .map(|(m_idx, _)| {
            let ops1 = cache.matching_ops(ctx, m_idx, subset1);
            let ops2 = cache.matching_ops(ctx, m_idx, subset2);
            let a = b.dot(&apply_registerwise(b, &ops1, &dims));
            let c = b.dot(&apply_registerwise(b, &ops2, &dims));
            a * c
        })
        .sum::<f64>()
        / cache.matchings.len() as f64;
    Ok(FunctionalValue { spectral, direct, per_sigma: spectral_terms })
}

/// For each irreducible sigma, `(chi_sigma(M)/d_sigma) * (d_sigma/n!)
/// sum_g chi_sigma(g) f(g) [f2(g)]`; dropping near-zero projections.
fn isotypic_sums(
    cache: &GroupCache,
    f1: &[f64],
    f2: Option<&[f64]>,
) -> Vec<(Partition, f64)> {
    let order = cache.order();
    let mut out = Vec::new();
    for (s_idx, sigma) in cache.classes.iter().enumerate() {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for (g_idx, &f) in f1.iter().enumerate() {
            let chi = cache.chi_table[s_idx][cache.class_of[g_idx]];
            let term = match f2 {
                None => chi * f,
                Some(f2) => chi * f * f2[g_idx],
            };
            // compensated summation
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let projection = cache.sigma_dims[s_idx] / order * acc;
        if projection.abs() > 1e-14 {
            out.push((
                sigma.clone(),
                cache.normalized_on_matching[s_idx] * projection,
            ));
        }
    }
    out
}

/// Expectation and variance of `||Pi_m^{⊗k} b||^2` over the matching class.
#[derive(Clone, Copy, Debug)]
pub struct Moments {
    pub expectation: f64,
    pub variance: f64,
}

/// Formula route: expectation `(1/2^k)(1 + sum_{I != ∅} E^I)` and variance
/// `(1/4^k) sum_{I1,I2 != ∅} (E^{I1,I2} - E^{I1} E^{I2})`, with the subset
/// functionals evaluated spectrally.
pub fn projector_moments(
    ctx: &RegisterContext,
    cache: &GroupCache,
    b: &DVector<f64>,
) -> Result<Moments> {
    let k = ctx.k();
    let subsets = nonempty_subsets(k);
    let mut e_values = Vec::with_capacity(subsets.len());
    for s in &subsets {
        e_values.push(subset_functional_e(ctx, cache, b, s)?.spectral);
    }
    let expectation =
        (b.norm_squared() + e_values.iter().sum::<f64>()) / 2f64.powi(k as i32);
    let mut var = 0.0;
    for (i1, s1) in subsets.iter().enumerate() {
        for (i2, s2) in subsets.iter().enumerate() {
            let e12 = subset_functional_e2(ctx, cache, b, s1, s2)?.spectral;
            var += e12 - e_values[i1] * e_values[i2];
        }
    }
    Ok(Moments { expectation, variance: var / 4f64.powi(k as i32) })
}

/// Independent route: exhaustive first and second moments of
/// `||Pi_m^{⊗k} b||^2` over every m in the matching class.
pub fn exhaustive_moments(ctx: &RegisterContext, b: &DVector<f64>) -> Result<Moments> {
    let matchings = enumerate_matchings(ctx.n as usize)?;
    let dims = ctx.dims();
    let mut first = 0.0;
    let mut second = 0.0;
    for m in &matchings {
        let perm = m.to_permutation();
        let projs: Vec<DMatrix<f64>> = ctx
            .irreps
            .iter()
            .map(|ir| {
                (DMatrix::identity(ir.dim, ir.dim) + ir.matrix_of(&perm)) * 0.5
            })
            .collect();
        let ops: Vec<Option<&DMatrix<f64>>> = projs.iter().map(Some).collect();
        let v = apply_registerwise(b, &ops, &dims).norm_squared();
        first += v;
        second += v * v;
    }
    let count = matchings.len() as f64;
    let expectation = first / count;
    Ok(Moments { expectation, variance: second / count - expectation * expectation })
}

fn nonempty_subsets(k: usize) -> Vec<Vec<usize>> {
    (1..(1usize << k))
        .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// The observation distribution over frame vectors for one matching.
#[derive(Clone, Debug)]
pub struct DistributionReport {
    pub n: u32,
    pub lambdas: Vec<Partition>,
    /// `None` for the trivial hidden subgroup (natural distribution).
    pub matching: Option<Involution>,
    pub probabilities: Vec<f64>,
    pub rank: u64,
    pub tv_to_natural: f64,
    /// most negative pre-clamp probability seen (round-off diagnostics)
    pub min_pre_clamp: f64,
}

/// `P_m(b) = a_b ||Pi_m^{⊗k} b||^2 / rk Pi_m^{⊗k}`; for the trivial hidden
/// subgroup, the natural distribution `a_b / dim`.
pub fn observation_distribution(
    ctx: &RegisterContext,
    m: Option<&Involution>,
) -> Result<DistributionReport> {
    let natural = ctx.natural_distribution();
    let lambdas: Vec<Partition> = ctx.irreps.iter().map(|ir| ir.lambda.clone()).collect();
    let Some(m) = m else {
        return Ok(DistributionReport {
            n: ctx.n,
            lambdas,
            matching: None,
            probabilities: natural,
            rank: ctx.product_dim() as u64,
            tv_to_natural: 0.0,
            min_pre_clamp: 0.0,
        });
    };
    if m.n() as u32 != ctx.n {
        return Err(Error::SizeMismatch(format!(
            "matching on {} points in an S_{} context",
            m.n(),
            ctx.n
        )));
    }
    let rank = ctx.projector_rank()?;
    if rank == 0 {
        // happens exactly when some chi_lambda(M) = -d_lambda (the sign
        // representation for n = 2 mod 4); the tuple has sampling
        // probability zero and no conditional distribution
        return Err(Error::InvalidParameter(format!(
            "projector rank is zero for {:?}; the tuple cannot be observed",
            lambdas
        )));
    }
    let dims = ctx.dims();
    let perm = m.to_permutation();
    let projs: Vec<DMatrix<f64>> = ctx
        .irreps
        .iter()
        .map(|ir| (DMatrix::identity(ir.dim, ir.dim) + ir.matrix_of(&perm)) * 0.5)
        .collect();
    let raw: Vec<f64> = if ctx.is_standard_frame {
        // diagonal shortcut: <e_x, Pi e_x> factorizes across registers
        let diags: Vec<Vec<f64>> = projs
            .iter()
            .map(|p| (0..p.nrows()).map(|i| p[(i, i)]).collect())
            .collect();
        let mut out = vec![1.0; ctx.product_dim()];
        let mut stride = ctx.product_dim();
        for diag in &diags {
            stride /= diag.len();
            for (x, v) in out.iter_mut().enumerate() {
                *v *= diag[(x / stride) % diag.len()];
            }
        }
        out
    } else {
        let ops: Vec<Option<&DMatrix<f64>>> = projs.iter().map(Some).collect();
        ctx.frame
            .vectors
            .iter()
            .zip(&ctx.frame.weights)
            .map(|(b, &a)| a * apply_registerwise(b, &ops, &dims).norm_squared())
            .collect()
    };
    let mut min_pre_clamp = 0.0f64;
    let probabilities: Vec<f64> = raw
        .iter()
        .map(|&v| {
            let p = v / rank as f64;
            min_pre_clamp = min_pre_clamp.min(p);
            p.max(0.0)
        })
        .collect();
    let tv = tv_distance(&probabilities, &natural);
    Ok(DistributionReport {
        n: ctx.n,
        lambdas,
        matching: Some(m.clone()),
        probabilities,
        rank,
        tv_to_natural: tv,
        min_pre_clamp,
    })
}

/// Total variation distance `(1/2) sum |p - q|` in compensated summation.
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let mut acc = 0.0;
    let mut comp = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        let term = (a - b).abs();
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc / 2.0
}

/// How the irrep tuples for a TV experiment are chosen.
#[derive(Clone, Debug)]
pub enum TupleSelection {
    /// All k-tuples within the dimension cap.
    Exhaustive,
    /// An explicit list.
    Explicit(Vec<Vec<Partition>>),
    /// `count` tuples sampled independently from Plancherel.
    PlancherelSample(usize),
}

#[derive(Clone, Debug)]
pub struct TvExperimentConfig {
    pub n: u32,
    pub k: usize,
    pub selection: TupleSelection,
    pub seed: u64,
    /// Exhaustive over the matching class up to this n, sampled above.
    pub exhaustive_matching_cap: u32,
    pub sampled_matchings: usize,
    pub product_dim_cap: usize,
    /// Frame applied on every context (must match the product dimension);
    /// `None` means the standard basis per tuple.
    pub frame: Option<MeasurementFrame>,
}

impl TvExperimentConfig {
    pub fn new(n: u32, k: usize, selection: TupleSelection, seed: u64) -> Self {
        TvExperimentConfig {
            n,
            k,
            selection,
            seed,
            exhaustive_matching_cap: 10,
            sampled_matchings: 40,
            product_dim_cap: crate::yor::DEFAULT_PRODUCT_DIM_CAP,
            frame: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TvRow {
    pub tuple: Vec<Partition>,
    pub matching_index: usize,
    pub tv: f64,
    pub rank: u64,
}

#[derive(Clone, Debug)]
pub struct TvTupleSummary {
    pub tuple: Vec<Partition>,
    pub median_tv: f64,
    pub max_tv: f64,
    /// `|| mean_m P_m - natural ||_1 / 2` over the sampled/enumerated m.
    pub averaged_tv: f64,
    pub plancherel_weight: f64,
}

#[derive(Clone, Debug)]
pub struct TvExperimentTable {
    pub n: u32,
    pub k: usize,
    pub seed: u64,
    pub exhaustive_matchings: bool,
    pub rows: Vec<TvRow>,
    pub summaries: Vec<TvTupleSummary>,
    /// Plancherel-weighted aggregate of the per-tuple median TVs (weights
    /// renormalized over the tuples actually run).
    pub aggregate_median_tv: f64,
    /// Median over all (tuple, m) rows.
    pub overall_median_tv: f64,
}

pub fn tv_experiment(config: &TvExperimentConfig) -> Result<TvExperimentTable> {
    let n = config.n;
    if n % 2 != 0 {
        return Err(Error::OddMatching(n as usize));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let plan = plancherel(n);
    let tuples: Vec<Vec<Partition>> = match &config.selection {
        TupleSelection::Explicit(list) => list.clone(),
        TupleSelection::PlancherelSample(count) => (0..*count)
            .map(|_| (0..config.k).map(|_| plan.sample(&mut rng)).collect())
            .collect(),
        TupleSelection::Exhaustive => {
            let parts = enumerate_partitions(n);
            let mut out: Vec<Vec<Partition>> = vec![vec![]];
            for _ in 0..config.k {
                out = out
                    .into_iter()
                    .flat_map(|t| {
                        parts.iter().map(move |p| {
                            let mut next = t.clone();
                            next.push(p.clone());
                            next
                        })
                    })
                    .collect();
            }
            out
        }
    };

    let all_matchings = enumerate_matchings(n as usize)?;
    let exhaustive = n <= config.exhaustive_matching_cap;
    let matchings: Vec<Involution> = if exhaustive {
        all_matchings
    } else {
        use rand::seq::SliceRandom;
        all_matchings
            .choose_multiple(&mut rng, config.sampled_matchings)
            .cloned()
            .collect()
    };

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for tuple in &tuples {
        let dim: u128 = tuple
            .iter()
            .map(|lam| {
                crate::characters::dimension(lam)
                    .to_u128()
                    .unwrap_or(u128::MAX)
            })
            .product();
        if dim > config.product_dim_cap as u128 {
            return Err(Error::CapExceeded(format!(
                "tuple {tuple:?} has product dimension {dim} > cap {}",
                config.product_dim_cap
            )));
        }
        let ctx = RegisterContext::new(n, tuple, config.frame.clone())?;
        if ctx.projector_rank()? == 0 {
            // never observed under weak sampling
            if matches!(config.selection, TupleSelection::Explicit(_)) {
                return Err(Error::InvalidParameter(format!(
                    "tuple {tuple:?} has a rank-zero projector"
                )));
            }
            continue;
        }
        let natural = ctx.natural_distribution();
        let mut tvs = Vec::with_capacity(matchings.len());
        let mut averaged = vec![0.0; natural.len()];
        for (m_idx, m) in matchings.iter().enumerate() {
            let report = observation_distribution(&ctx, Some(m))?;
            for (acc, &p) in averaged.iter_mut().zip(&report.probabilities) {
                *acc += p / matchings.len() as f64;
            }
            tvs.push(report.tv_to_natural);
            rows.push(TvRow {
                tuple: tuple.clone(),
                matching_index: m_idx,
                tv: report.tv_to_natural,
                rank: report.rank,
            });
        }
        let mut sorted = tvs.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let weight: f64 = tuple
            .iter()
            .map(|lam| rational_to_f64(&plan.probability(lam)))
            .product();
        summaries.push(TvTupleSummary {
            tuple: tuple.clone(),
            median_tv: median_of_sorted(&sorted),
            max_tv: sorted.last().copied().unwrap_or(0.0),
            averaged_tv: tv_distance(&averaged, &natural),
            plancherel_weight: weight,
        });
    }
    let total_weight: f64 = summaries.iter().map(|s| s.plancherel_weight).sum();
    let aggregate_median_tv = if total_weight > 0.0 {
        summaries
            .iter()
            .map(|s| s.plancherel_weight * s.median_tv)
            .sum::<f64>()
            / total_weight
    } else {
        0.0
    };
    let mut all_tvs: Vec<f64> = rows.iter().map(|r| r.tv).collect();
    all_tvs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(TvExperimentTable {
        n,
        k: config.k,
        seed: config.seed,
        exhaustive_matchings: exhaustive,
        rows,
        summaries,
        aggregate_median_tv,
        overall_median_tv: median_of_sorted(&all_tvs),
    })
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Diagnostic from the two-register proof bookkeeping: the mass a frame
/// vector projects onto copies of low-dimensional irreps (members of a
/// cutoff set) inside the `(I1, I2)` decomposition.
pub fn low_dimensional_mass(
    ctx: &RegisterContext,
    cache: &GroupCache,
    b: &DVector<f64>,
    subset1: &[usize],
    subset2: &[usize],
    cutoff_members: &[Partition],
) -> Result<f64> {
    validate_subset(ctx, subset1)?;
    validate_subset(ctx, subset2)?;
    let f1 = cache.subset_scalars(ctx, b, subset1);
    let f2 = cache.subset_scalars(ctx, b, subset2);
    let order = cache.order();
    let mut total = 0.0;
    for (s_idx, sigma) in cache.classes.iter().enumerate() {
        if !cutoff_members.contains(sigma) {
            continue;
        }
        let mut acc = 0.0;
        for (g_idx, &f) in f1.iter().enumerate() {
            acc += cache.chi_table[s_idx][cache.class_of[g_idx]] * f * f2[g_idx];
        }
        total += (cache.sigma_dims[s_idx] / order * acc).max(0.0);
    }
    Ok(total)
}
