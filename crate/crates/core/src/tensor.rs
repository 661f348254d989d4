//! Kronecker decompositions via character inner products, the two
//! combinatorial representations (regular and conjugation), Plancherel
//! average multiplicities, and the transverse projection check.
//!
//! The characters of `S_n` are real, so conjugating factors never changes a
//! multiplicity; conjugation flags affect labels only.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::characters::{character, dimension};
use crate::combinatorics::{enumerate_partitions, factorial, ConjugacyClass, Partition};
use crate::error::{Error, Result};

/// Multiplicity of `S^nu` in the tensor product of the factor irreps:
/// the character inner product `(1/n!) sum_mu |C_mu| chi^nu(mu) prod_f chi^f(mu)`.
pub fn kronecker_multiplicity(nu: &Partition, factors: &[Partition]) -> Result<BigUint> {
    let n = nu.n();
    for f in factors {
        if f.n() != n {
            return Err(Error::SizeMismatch(format!(
                "factor {f} has size {} but nu has size {n}",
                f.n()
            )));
        }
    }
    let mut acc = BigInt::zero();
    for mu in enumerate_partitions(n) {
        let size = BigInt::from(ConjugacyClass::new(mu.clone()).size());
        let mut term = character(nu, &mu)?;
        for f in factors {
            term *= character(f, &mu)?;
        }
        acc += size * term;
    }
    let order = BigInt::from(factorial(n));
    debug_assert!((&acc % &order).is_zero(), "inner product must be integral");
    let q = acc / order;
    if q.is_negative() {
        return Err(Error::InvalidParameter(format!(
            "negative multiplicity computed for nu={nu}; character table inconsistent"
        )));
    }
    Ok(q.to_biguint().unwrap())
}

/// Full decomposition of a tensor product of irreps into irreducibles.
#[derive(Clone, Debug)]
pub struct KroneckerDecomposition {
    pub factors: Vec<(Partition, bool)>,
    pub multiplicities: BTreeMap<Partition, BigUint>,
}

impl KroneckerDecomposition {
    /// `sum_nu mult(nu) d^nu`, which must equal the product of factor dims.
    pub fn total_dimension(&self) -> BigUint {
        self.multiplicities
            .iter()
            .map(|(nu, m)| m * dimension(nu))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|(p, conj)| serde_json::json!({"partition": p.to_string(), "conjugated": conj}))
            .collect();
        let mults: serde_json::Map<String, serde_json::Value> = self
            .multiplicities
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(p, m)| (p.to_string(), serde_json::json!(m.to_string())))
            .collect();
        serde_json::json!({"factors": factors, "multiplicities": mults})
    }
}

/// Decompose `prod_f S^f` (conjugation flags are dimension-irrelevant for
/// `S_n` and kept for labeling only).
pub fn kronecker_decomposition(
    factors: &[(Partition, bool)],
) -> Result<KroneckerDecomposition> {
    let plain: Vec<Partition> = factors.iter().map(|(p, _)| p.clone()).collect();
    let n = plain
        .first()
        .ok_or(Error::EmptyTensorProduct)?
        .n();
    let mut multiplicities = BTreeMap::new();
    for nu in enumerate_partitions(n) {
        let m = kronecker_multiplicity(&nu, &plain)?;
        if !m.is_zero() {
            multiplicities.insert(nu, m);
        }
    }
    Ok(KroneckerDecomposition { factors: factors.to_vec(), multiplicities })
}

/// The two combinatorial representations on the group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinatorialKind {
    /// Left multiplication; character `|G|` at 1 and 0 elsewhere.
    Regular,
    /// Conjugation action; character `|G| / |[g]|`.
    Conjugation,
}

/// Exact character of the regular or conjugation representation on a class.
pub fn combinatorial_character(kind: CombinatorialKind, class: &ConjugacyClass) -> BigUint {
    let n = class.n();
    match kind {
        CombinatorialKind::Regular => {
            if class.cycle_type == Partition::column(n) {
                factorial(n)
            } else {
                BigUint::zero()
            }
        }
        CombinatorialKind::Conjugation => class.centralizer_order(),
    }
}

/// Closed form for the Plancherel-average normalized multiplicity of `tau`
/// in `V(rho, sigma)` (k plain Plancherel factors, l conjugation-squared
/// factors): `(1 / |G|^{k+l}) <chi_tau, chi_R^k chi_C^l>`.
///
/// Equals `d_tau / |G|` whenever `k > 0`, and
/// `(1/|G|) sum_g chi_tau(g) / |[g]|^l` when `k = 0`.
pub fn average_multiplicity(tau: &Partition, k: u32, l: u32) -> Result<BigRational> {
    if k == 0 && l == 0 {
        return Err(Error::EmptyTensorProduct);
    }
    let n = tau.n();
    let order = BigInt::from(factorial(n));
    // <chi_tau, chi_R^k chi_C^l> = (1/|G|) sum_C |C| chi_tau(C) chi_R(C)^k chi_C(C)^l
    let mut acc = BigRational::zero();
    for mu in enumerate_partitions(n) {
        let class = ConjugacyClass::new(mu.clone());
        let reg = BigInt::from(combinatorial_character(CombinatorialKind::Regular, &class));
        if k > 0 && reg.is_zero() {
            continue;
        }
        let conj = BigInt::from(combinatorial_character(CombinatorialKind::Conjugation, &class));
        let mut term = BigRational::from(BigInt::from(class.size()));
        term *= BigRational::from(character(tau, &mu)?);
        for _ in 0..k {
            term *= BigRational::from(reg.clone());
        }
        for _ in 0..l {
            term *= BigRational::from(conj.clone());
        }
        acc += term;
    }
    let mut denom = BigRational::from(order.clone());
    for _ in 0..(k + l) {
        denom *= BigRational::from(order.clone());
    }
    Ok(acc / denom)
}

/// Exact `sum over cycle types lambda of 1 / |C_lambda|`.
///
/// Computed as `(sum_lambda (prod tau_i!)(prod lambda_i)) / n!` so the whole
/// sweep stays in integer arithmetic until the final division.
pub fn conjugacy_reciprocal_sum(n: u32) -> BigRational {
    let mut numer = BigUint::zero();
    for mu in enumerate_partitions(n) {
        numer += ConjugacyClass::new(mu).centralizer_order();
    }
    BigRational::new(BigInt::from(numer), BigInt::from(factorial(n)))
}

/// Result of one randomized transverse-projection trial.
#[derive(Clone, Debug)]
pub struct TransverseProjectionReport {
    pub dim_u: usize,
    pub dim_y: usize,
    pub dim_w: usize,
    pub trials: u32,
    pub seed: u64,
    /// `sum_b ||(Pi_W ⊗ 1)(b ⊗ b*)||^2` for each trial.
    pub sums: Vec<f64>,
    /// `dim Y * dim W`.
    pub bound: f64,
    pub all_within_bound: bool,
}

/// Randomized check of the transverse projection bound: for a random
/// orthonormal basis `B` of `U ⊗ Y` and a random subspace `W` of `U ⊗ U*`,
/// `sum_{b in B} ||(Pi_W ⊗ 1)(b ⊗ b*)||^2 <= dim Y * dim W`.
pub fn transverse_projection_check(
    dim_u: usize,
    dim_y: usize,
    dim_w: usize,
    trials: u32,
    seed: u64,
) -> Result<TransverseProjectionReport> {
    if dim_u < 1 || dim_y < 1 || dim_w < 1 {
        return Err(Error::InvalidParameter("dimensions must be at least 1".into()));
    }
    if dim_w > dim_u * dim_u {
        return Err(Error::InvalidParameter(format!(
            "dim W = {dim_w} exceeds dim(U ⊗ U*) = {}",
            dim_u * dim_u
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = (dim_y * dim_w) as f64;
    let mut sums = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let basis = random_orthogonal(dim_u * dim_y, &mut rng);
        // Orthonormal spanning set of W: first dim_w columns of a random
        // orthogonal matrix on U ⊗ U*.
        let w_full = random_orthogonal(dim_u * dim_u, &mut rng);
        let w_cols = w_full.columns(0, dim_w).into_owned();
        let mut total = 0.0;
        for bcol in basis.column_iter() {
            // b ⊗ b* as a (dimU^2) x (dimY^2) coefficient matrix:
            // T[(u,u'), (y,y')] = b[u,y] b[u',y'].
            let b = DVector::from_column_slice(bcol.as_slice());
            let t = outer_reshuffle(&b, dim_u, dim_y);
            // ||(Pi_W ⊗ 1) T||_F^2 = ||Q^T T||_F^2 for orthonormal Q.
            let projected = w_cols.transpose() * t;
            total += projected.iter().map(|x| x * x).sum::<f64>();
        }
        sums.push(total);
    }
    let all_within_bound = sums.iter().all(|&s| s <= bound + 1e-9);
    Ok(TransverseProjectionReport {
        dim_u,
        dim_y,
        dim_w,
        trials,
        seed,
        sums,
        bound,
        all_within_bound,
    })
}

/// Reshuffle `b b^T` for `b in U ⊗ Y` into a `(dimU^2) x (dimY^2)` matrix so
/// that operators on `U ⊗ U*` act by left multiplication.
fn outer_reshuffle(b: &DVector<f64>, dim_u: usize, dim_y: usize) -> DMatrix<f64> {
    let mut t = DMatrix::zeros(dim_u * dim_u, dim_y * dim_y);
    for u in 0..dim_u {
        for up in 0..dim_u {
            for y in 0..dim_y {
                for yp in 0..dim_y {
                    t[(u * dim_u + up, y * dim_y + yp)] =
                        b[u * dim_y + y] * b[up * dim_y + yp];
                }
            }
        }
    }
    t
}

/// Haar-ish random orthogonal matrix from the QR factorization of a
/// Gaussian matrix (sign-corrected).
pub fn random_orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let data: Vec<f64> = (0..dim * dim)
        .map(|_| StandardNormal.sample(rng))
        .collect();
    let a = DMatrix::from_vec(dim, dim, data);
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// CSV sweep of the reciprocal sum: rows `n, numerator, denominator, float`.
pub fn reciprocal_sum_csv(n_max: u32) -> String {
    let mut out = String::from("n,numerator,denominator,float\n");
    for n in 1..=n_max {
        let s = conjugacy_reciprocal_sum(n);
        out.push_str(&format!(
            "{n},{},{},{:.12}\n",
            s.numer(),
            s.denom(),
            crate::characters::rational_to_f64(&s)
        ));
    }
    out
}
