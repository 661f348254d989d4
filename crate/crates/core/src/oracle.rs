//! Dense group-algebra simulation of the standard method, used as an
//! independent oracle for the analytic pipeline.
//!
//! The simulation builds the coset-state mixed state over `C[S_n]`
//! explicitly, applies a dense Fourier transform, and marginalizes the
//! unmeasured matrix index of each irrep block. No character identities or
//! projector formulas enter; agreement with the analytic distributions is
//! checked from the outside.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;

use crate::combinatorics::{enumerate_partitions, enumerate_symmetric_group, Partition, Permutation};
use crate::error::{Error, Result};
use crate::yor::{apply_registerwise, Irrep, MeasurementFrame};

/// Largest group order for which the dense transform is built (one
/// register).
pub const DENSE_GROUP_CAP: usize = 720;
/// Largest per-register group order for multi-register simulations.
pub const DENSE_GROUP_CAP_MULTI: usize = 120;

/// Row order of the Fourier basis: irrep blocks in the partition
/// enumeration order, each block row-major over matrix entries `(i, j)`.
pub struct FourierLayout {
    pub n: u32,
    pub blocks: Vec<(Partition, usize)>,
    offsets: Vec<usize>,
}

impl FourierLayout {
    pub fn new(n: u32) -> Result<Self> {
        let blocks: Vec<(Partition, usize)> = enumerate_partitions(n)
            .into_iter()
            .map(|lam| {
                let d = crate::characters::dimension(&lam)
                    .to_usize()
                    .ok_or_else(|| Error::CapExceeded("irrep dimension overflow".into()))?;
                Ok((lam, d))
            })
            .collect::<Result<_>>()?;
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for (_, d) in &blocks {
            offsets.push(acc);
            acc += d * d;
        }
        Ok(FourierLayout { n, blocks, offsets })
    }

    pub fn total_dim(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + {
            let (_, d) = &self.blocks[self.blocks.len() - 1];
            d * d
        })
    }

    /// Flat index of entry `(i, j)` in block `block`.
    pub fn index(&self, block: usize, i: usize, j: usize) -> usize {
        let d = self.blocks[block].1;
        self.offsets[block] + i * d + j
    }
}

/// The dense Fourier transform over `S_n`: row `(lambda, i, j)` has entries
/// `sqrt(d_lambda / n!) rho_lambda(g)_{ij}` across the group in enumeration
/// order. Orthogonality of matrix coefficients makes it a real orthogonal
/// matrix.
pub fn qft_matrix(n: u32) -> Result<(DMatrix<f64>, FourierLayout)> {
    let group = enumerate_symmetric_group(n as usize);
    if group.len() > DENSE_GROUP_CAP {
        return Err(Error::CapExceeded(format!(
            "dense transform needs {}! = {} columns, cap {DENSE_GROUP_CAP}",
            n,
            group.len()
        )));
    }
    let layout = FourierLayout::new(n)?;
    let order = group.len() as f64;
    let mut f = DMatrix::zeros(layout.total_dim(), group.len());
    for (block, (lam, d)) in layout.blocks.iter().enumerate() {
        let ir = Irrep::build(lam)?;
        let scale = (*d as f64 / order).sqrt();
        for (col, g) in group.iter().enumerate() {
            let rho = ir.matrix_of(g);
            for i in 0..*d {
                for j in 0..*d {
                    f[(layout.index(block, i, j), col)] = scale * rho[(i, j)];
                }
            }
        }
    }
    Ok((f, layout))
}

/// Checks closure, inverses, and the identity; returns the elements sorted
/// and deduplicated.
pub fn validate_subgroup(n: usize, elements: &[Permutation]) -> Result<Vec<Permutation>> {
    let mut sorted: Vec<Permutation> = elements.to_vec();
    for h in &sorted {
        if h.n() != n {
            return Err(Error::NotASubgroup(format!(
                "element on {} points in S_{n}",
                h.n()
            )));
        }
    }
    sorted.sort_by(|a, b| a.images().cmp(b.images()));
    sorted.dedup();
    if !sorted.iter().any(|h| h.is_identity()) {
        return Err(Error::NotASubgroup("missing identity".into()));
    }
    let member: std::collections::HashSet<Vec<usize>> =
        sorted.iter().map(|h| h.images().to_vec()).collect();
    for a in &sorted {
        if !member.contains(a.inverse().images()) {
            return Err(Error::NotASubgroup(format!("missing inverse of {:?}", a.images())));
        }
        for b in &sorted {
            if !member.contains(a.compose(b).images()) {
                return Err(Error::NotASubgroup(format!(
                    "not closed: {:?} * {:?}",
                    a.images(),
                    b.images()
                )));
            }
        }
    }
    Ok(sorted)
}

/// The coset-state mixed state `(1/|G|) sum_c |cH><cH|` as a dense matrix
/// over the group basis, built by accumulating the outer products.
pub fn hidden_subgroup_state(n: u32, subgroup: &[Permutation]) -> Result<DMatrix<f64>> {
    let group = enumerate_symmetric_group(n as usize);
    if group.len() > DENSE_GROUP_CAP {
        return Err(Error::CapExceeded(format!(
            "mixed state needs {}! rows, cap {DENSE_GROUP_CAP}",
            n
        )));
    }
    let h = validate_subgroup(n as usize, subgroup)?;
    let index: HashMap<Vec<usize>, usize> = group
        .iter()
        .enumerate()
        .map(|(i, g)| (g.images().to_vec(), i))
        .collect();
    let order = group.len();
    let mut rho = DMatrix::zeros(order, order);
    let amp = 1.0 / (h.len() as f64).sqrt();
    for c in &group {
        let coset: Vec<usize> = h.iter().map(|x| index[c.compose(x).images()]).collect();
        for &a in &coset {
            for &b in &coset {
                rho[(a, b)] += amp * amp / order as f64;
            }
        }
    }
    Ok(rho)
}

/// The reduced state of one register after the transform: for each irrep
/// block the row index is marginalized and the state on the measured
/// (column) index is returned, `T[j, j'] = sum_i S[(i,j), (i,j')]` with
/// `S = F rho_H F^T`.
pub fn reduced_row_states(
    n: u32,
    subgroup: &[Permutation],
) -> Result<Vec<(Partition, DMatrix<f64>)>> {
    let (f, layout) = qft_matrix(n)?;
    let rho = hidden_subgroup_state(n, subgroup)?;
    let s = &f * rho * f.transpose();
    let mut out = Vec::with_capacity(layout.blocks.len());
    for (block, (lam, d)) in layout.blocks.iter().enumerate() {
        let mut t = DMatrix::zeros(*d, *d);
        for j in 0..*d {
            for jp in 0..*d {
                let mut acc = 0.0;
                for i in 0..*d {
                    acc += s[(layout.index(block, i, j), layout.index(block, i, jp))];
                }
                t[(j, jp)] = acc;
            }
        }
        out.push((lam.clone(), t));
    }
    Ok(out)
}

/// One joint outcome of the standard method: the observed irrep tuple, its
/// probability, and the conditional distribution over frame vectors.
#[derive(Clone, Debug)]
pub struct JointObservation {
    pub tuple: Vec<Partition>,
    pub tuple_probability: f64,
    pub conditional: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct StandardMethodOutcome {
    pub n: u32,
    pub k: usize,
    pub observations: Vec<JointObservation>,
}

impl StandardMethodOutcome {
    /// Probability of a tuple together with a frame index.
    pub fn joint_probability(&self, tuple: &[Partition], frame_index: usize) -> f64 {
        self.observations
            .iter()
            .find(|o| o.tuple == tuple)
            .map_or(0.0, |o| o.tuple_probability * o.conditional[frame_index])
    }

    pub fn total_mass(&self) -> f64 {
        self.observations
            .iter()
            .map(|o| {
                o.tuple_probability * o.conditional.iter().sum::<f64>()
            })
            .sum()
    }
}

/// Simulates the standard method on `k` independent coset states: Fourier
/// transform, observe the irrep label of each register, marginalize the
/// unmeasured matrix index, and measure the frame on the product of the
/// remaining spaces. `frame_for` supplies a frame per tuple (product
/// dimension passed along); `None` means the standard basis.
pub fn simulate_standard_method(
    n: u32,
    subgroup: &[Permutation],
    k: usize,
    frame_for: Option<&dyn Fn(&[Partition], usize) -> Option<MeasurementFrame>>,
) -> Result<StandardMethodOutcome> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let order = crate::combinatorics::factorial(n)
        .to_usize()
        .ok_or_else(|| Error::CapExceeded("group order overflow".into()))?;
    let cap = if k == 1 { DENSE_GROUP_CAP } else { DENSE_GROUP_CAP_MULTI };
    if order > cap {
        return Err(Error::CapExceeded(format!(
            "group order {order} over the dense cap {cap} for k = {k}"
        )));
    }
    // identical registers: one reduced-state computation serves all k
    let reduced = reduced_row_states(n, subgroup)?;
    let traces: Vec<f64> = reduced.iter().map(|(_, t)| t.trace()).collect();
    let normalized: Vec<DMatrix<f64>> = reduced
        .iter()
        .zip(&traces)
        .map(|((_, t), &tr)| if tr > 1e-15 { t / tr } else { t.clone() })
        .collect();

    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..reduced.len()).map(move |b| {
                    let mut next = t.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }

    let mut observations = Vec::with_capacity(tuples.len());
    for tuple_idx in tuples {
        let tuple: Vec<Partition> =
            tuple_idx.iter().map(|&b| reduced[b].0.clone()).collect();
        let tuple_probability: f64 = tuple_idx.iter().map(|&b| traces[b]).product();
        let dims: Vec<usize> = tuple_idx.iter().map(|&b| normalized[b].nrows()).collect();
        let dim: usize = dims.iter().product();
        let frame = frame_for
            .and_then(|f| f(&tuple, dim))
            .unwrap_or_else(|| MeasurementFrame::standard(dim));
        if frame.dim() != dim {
            return Err(Error::InvalidFrame(format!(
                "frame dimension {} does not match tuple dimension {dim}",
                frame.dim()
            )));
        }
        let ops: Vec<Option<&DMatrix<f64>>> =
            tuple_idx.iter().map(|&b| Some(&normalized[b])).collect();
        let conditional: Vec<f64> = frame
            .vectors
            .iter()
            .zip(&frame.weights)
            .map(|(b, &a)| {
                let v: DVector<f64> = apply_registerwise(b, &ops, &dims);
                (a * b.dot(&v)).max(0.0)
            })
            .collect();
        observations.push(JointObservation { tuple, tuple_probability, conditional });
    }
    Ok(StandardMethodOutcome { n, k, observations })
}

/// The subgroup `{1, m}` generated by an involution.
pub fn involution_subgroup(m: &crate::combinatorics::Involution) -> Vec<Permutation> {
    vec![Permutation::identity(m.n()), m.to_permutation()]
}

#[derive(Clone, Copy, Debug)]
pub struct OracleComparison {
    pub max_abs_delta: f64,
    pub comparisons: usize,
}

/// Compares the dense simulation against the analytic joint distribution
/// (irrep-name marginal times conditional over the standard frame):
/// Plancherel x natural for the trivial subgroup, weak sampling x
/// observation for a hidden involution. Returns the largest absolute joint
/// probability difference.
pub fn compare_with_analytic(
    n: u32,
    k: usize,
    hidden: Option<&crate::combinatorics::Involution>,
) -> Result<OracleComparison> {
    use crate::characters::rational_to_f64;
    use crate::measurement::{observation_distribution, RegisterContext};
    use crate::spectral::{plancherel, weak_sampling_distribution};

    let subgroup = match hidden {
        None => vec![Permutation::identity(n as usize)],
        Some(m) => involution_subgroup(m),
    };
    let outcome = simulate_standard_method(n, &subgroup, k, None)?;
    let marginal = match hidden {
        None => plancherel(n),
        Some(m) => weak_sampling_distribution(n, Some(m))?,
    };
    let mut max_abs_delta = 0.0f64;
    let mut comparisons = 0usize;
    for obs in &outcome.observations {
        let tuple_expected: f64 = obs
            .tuple
            .iter()
            .map(|lam| rational_to_f64(&marginal.probability(lam)))
            .product();
        let conditional_expected: Vec<f64> = if tuple_expected < 1e-15 {
            // a rank-zero component: the analytic conditional is undefined,
            // so the comparison degenerates to "no joint mass at all"
            vec![0.0; obs.conditional.len()]
        } else {
            match hidden {
                None => {
                    let dim = obs.conditional.len() as f64;
                    vec![1.0 / dim; obs.conditional.len()]
                }
                Some(m) => {
                    let ctx = RegisterContext::new(n, &obs.tuple, None)?;
                    observation_distribution(&ctx, Some(m))?.probabilities
                }
            }
        };
        for (&c, &p) in obs.conditional.iter().zip(&conditional_expected) {
            let joint_oracle = obs.tuple_probability * c;
            let joint_analytic = if tuple_expected < 1e-15 {
                0.0
            } else {
                tuple_expected * p
            };
            max_abs_delta = max_abs_delta.max((joint_oracle - joint_analytic).abs());
            comparisons += 1;
        }
    }
    Ok(OracleComparison { max_abs_delta, comparisons })
}
