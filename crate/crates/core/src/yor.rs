//! Explicit real orthogonal matrices for the irreps of `S_n` in Young's
//! orthogonal form, involution projectors and their tensor powers, and
//! weighted measurement frames.
//!
//! The group does not prefer any basis; Young's orthogonal form is fixed
//! here so that reports are reproducible and all generator matrices are
//! real orthogonal. Matrix entries are floating point; characters and
//! dimensions stay exact in the `characters` module.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::combinatorics::{Involution, Partition, Permutation};
use crate::error::{Error, Result};

/// Default cap on a single irrep dimension.
pub const DEFAULT_DIM_CAP: usize = 5000;

/// A standard Young tableau, stored as `position[value] = (row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tableau {
    positions: Vec<(usize, usize)>,
}

impl Tableau {
    fn content(&self, value: usize) -> i64 {
        let (r, c) = self.positions[value];
        c as i64 - r as i64
    }
}

/// Enumerate all standard Young tableaux of the given shape, in a fixed
/// deterministic order.
fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.n() as usize;
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut out = Vec::new();
    let mut fill: Vec<usize> = vec![0; shape.len()]; // next free column per row
    let mut positions: Vec<(usize, usize)> = Vec::with_capacity(n);
    fn rec(
        n: usize,
        shape: &[usize],
        fill: &mut Vec<usize>,
        positions: &mut Vec<(usize, usize)>,
        out: &mut Vec<Tableau>,
    ) {
        if positions.len() == n {
            out.push(Tableau { positions: positions.clone() });
            return;
        }
        for row in 0..shape.len() {
            let col = fill[row];
            if col >= shape[row] {
                continue;
            }
            // must not overhang the row above
            if row > 0 && fill[row - 1] <= col {
                continue;
            }
            fill[row] += 1;
            positions.push((row, col));
            rec(n, shape, fill, positions, out);
            positions.pop();
            fill[row] -= 1;
        }
    }
    rec(n, &shape, &mut fill, &mut positions, &mut out);
    out
}

/// An irrep of `S_n` with explicit generator matrices for the adjacent
/// transpositions `(i, i+1)`, `i = 0..n-2`.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub lambda: Partition,
    pub dim: usize,
    generators: Vec<DMatrix<f64>>,
}

impl Irrep {
    /// Build the Young orthogonal form of `S^lambda`.
    pub fn build(lambda: &Partition) -> Result<Self> {
        Self::build_capped(lambda, DEFAULT_DIM_CAP)
    }

    pub fn build_capped(lambda: &Partition, cap: usize) -> Result<Self> {
        let dim_exact = crate::characters::dimension(lambda);
        let dim = dim_exact
            .to_usize()
            .filter(|&d| d <= cap)
            .ok_or_else(|| {
                Error::CapExceeded(format!(
                    "irrep {lambda} has dimension {dim_exact} > cap {cap}"
                ))
            })?;
        let tableaux = standard_tableaux(lambda);
        debug_assert_eq!(tableaux.len(), dim);
        let n = lambda.n() as usize;
        let mut generators = Vec::with_capacity(n.saturating_sub(1));
        for a in 0..n.saturating_sub(1) {
            let mut m = DMatrix::zeros(dim, dim);
            for (t_idx, t) in tableaux.iter().enumerate() {
                let axial = (t.content(a + 1) - t.content(a)) as f64;
                let inv = 1.0 / axial;
                m[(t_idx, t_idx)] = inv;
                if axial.abs() > 1.0 {
                    // swapping a and a+1 keeps the tableau standard
                    let mut swapped = t.clone();
                    swapped.positions.swap(a, a + 1);
                    let s_idx = tableaux
                        .iter()
                        .position(|u| *u == swapped)
                        .expect("swapped tableau is standard");
                    m[(t_idx, s_idx)] = (1.0 - inv * inv).sqrt();
                }
            }
            generators.push(m);
        }
        Ok(Irrep { lambda: lambda.clone(), dim, generators })
    }

    /// Matrix of an arbitrary permutation: product of generator matrices
    /// along the deterministic adjacent-transposition word.
    pub fn matrix_of(&self, g: &Permutation) -> DMatrix<f64> {
        assert_eq!(g.n() as u32, self.lambda.n(), "permutation size mismatch");
        let mut acc = DMatrix::identity(self.dim, self.dim);
        for i in g.adjacent_word() {
            acc *= &self.generators[i];
        }
        acc
    }

    pub fn generator(&self, i: usize) -> &DMatrix<f64> {
        &self.generators[i]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

/// A symmetric projector matrix with a record of where it came from.
#[derive(Clone, Debug)]
pub struct Projector {
    pub matrix: DMatrix<f64>,
    pub lambdas: Vec<Partition>,
    pub involution: Involution,
}

impl Projector {
    /// Count eigenvalues above 1/2 (projector spectra are near {0,1}).
    pub fn numeric_rank(&self) -> usize {
        let eig = self.matrix.clone().symmetric_eigen();
        eig.eigenvalues.iter().filter(|&&v| v > 0.5).count()
    }

    /// Largest deviation of `P^2` from `P`.
    pub fn idempotency_residual(&self) -> f64 {
        let sq = &self.matrix * &self.matrix;
        (&sq - &self.matrix).amax()
    }
}

/// Default cap on the product dimension for tensor-power projectors.
pub const DEFAULT_PRODUCT_DIM_CAP: usize = 20000;

/// The projector `Pi_m^{⊗k}` onto the subspace fixed by the hidden subgroup
/// `{1, m}^k`, on the product of the given irreps (one per register).
pub fn involution_projector(irreps: &[&Irrep], m: &Involution) -> Result<Projector> {
    involution_projector_capped(irreps, m, DEFAULT_PRODUCT_DIM_CAP)
}

pub fn involution_projector_capped(
    irreps: &[&Irrep],
    m: &Involution,
    cap: usize,
) -> Result<Projector> {
    if irreps.is_empty() {
        return Err(Error::EmptyTensorProduct);
    }
    let n = m.n() as u32;
    for ir in irreps {
        if ir.lambda.n() != n {
            return Err(Error::SizeMismatch(format!(
                "irrep {} is over S_{} but the involution is on {} points",
                ir.lambda,
                ir.lambda.n(),
                n
            )));
        }
    }
    let product_dim: usize = irreps.iter().map(|ir| ir.dim).product();
    if product_dim > cap {
        return Err(Error::CapExceeded(format!(
            "product dimension {product_dim} > cap {cap}"
        )));
    }
    let perm = m.to_permutation();
    let mut acc: Option<DMatrix<f64>> = None;
    for ir in irreps {
        let rho_m = ir.matrix_of(&perm);
        let p = (DMatrix::identity(ir.dim, ir.dim) + rho_m) * 0.5;
        acc = Some(match acc {
            None => p,
            Some(prev) => prev.kronecker(&p),
        });
    }
    Ok(Projector {
        matrix: acc.unwrap(),
        lambdas: irreps.iter().map(|ir| ir.lambda.clone()).collect(),
        involution: m.clone(),
    })
}

/// A weighted family of unit vectors `{(b, a_b)}` used as a measurement
/// frame; complete when `sum_b a_b pi_b = 1`.
#[derive(Clone, Debug)]
pub struct MeasurementFrame {
    pub vectors: Vec<DVector<f64>>,
    pub weights: Vec<f64>,
}

#[derive(Deserialize)]
struct FrameFile {
    dim: usize,
    vectors: Vec<Vec<f64>>,
    weights: Option<Vec<f64>>,
}

impl MeasurementFrame {
    /// The standard orthonormal basis with unit weights.
    pub fn standard(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| {
                let mut v = DVector::zeros(dim);
                v[i] = 1.0;
                v
            })
            .collect();
        MeasurementFrame { vectors, weights: vec![1.0; dim] }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map(|v| v.len()).unwrap_or(0)
    }

    /// Operator-norm residual `||sum_b a_b pi_b - 1||`.
    pub fn completeness_residual(&self) -> Result<f64> {
        let dim = self.dim();
        if dim == 0 {
            return Err(Error::InvalidFrame("empty frame".into()));
        }
        let mut acc = DMatrix::<f64>::zeros(dim, dim);
        for (v, &w) in self.vectors.iter().zip(&self.weights) {
            if w <= 0.0 {
                return Err(Error::InvalidFrame(format!("non-positive weight {w}")));
            }
            let norm = v.norm();
            if norm < 1e-12 {
                return Err(Error::InvalidFrame("zero-length vector".into()));
            }
            let unit = v / norm;
            acc += w * &unit * unit.transpose();
        }
        let diff = acc - DMatrix::identity(dim, dim);
        let eig = diff.symmetric_eigen();
        Ok(eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs())))
    }

    /// Load from JSON `{dim, vectors: [[...]], weights: [...] optional}`.
    /// Missing weights are fitted by nonnegative least squares against the
    /// completeness condition; the frame is rejected above the residual cap.
    pub fn from_json(text: &str, residual_cap: f64) -> Result<Self> {
        let file: FrameFile = serde_json::from_str(text)?;
        let vectors: Vec<DVector<f64>> = file
            .vectors
            .iter()
            .map(|v| {
                if v.len() != file.dim {
                    return Err(Error::InvalidFrame(format!(
                        "vector has length {} but dim = {}",
                        v.len(),
                        file.dim
                    )));
                }
                let vec = DVector::from_column_slice(v);
                let norm = vec.norm();
                if norm < 1e-12 {
                    return Err(Error::InvalidFrame("zero-length vector".into()));
                }
                Ok(vec / norm)
            })
            .collect::<Result<_>>()?;
        let weights = match file.weights {
            Some(w) => {
                if w.len() != vectors.len() {
                    return Err(Error::InvalidFrame("weights/vectors length mismatch".into()));
                }
                if w.iter().any(|&x| x <= 0.0) {
                    return Err(Error::InvalidFrame("non-positive weight".into()));
                }
                w
            }
            None => fit_weights(&vectors)?,
        };
        let frame = MeasurementFrame { vectors, weights };
        let residual = frame.completeness_residual()?;
        if residual > residual_cap {
            return Err(Error::InvalidFrame(format!(
                "completeness residual {residual:.3e} exceeds cap {residual_cap:.3e}"
            )));
        }
        Ok(frame)
    }
}

/// Fit nonnegative weights so that `sum_b a_b pi_b` is as close to the
/// identity as possible (Lawson-Hanson active set on the vectorized system).
pub fn fit_weights(vectors: &[DVector<f64>]) -> Result<Vec<f64>> {
    let dim = vectors
        .first()
        .ok_or_else(|| Error::InvalidFrame("empty frame".into()))?
        .len();
    let rows = dim * dim;
    let cols = vectors.len();
    let mut a = DMatrix::zeros(rows, cols);
    for (j, v) in vectors.iter().enumerate() {
        let unit = v / v.norm();
        let pi = &unit * unit.transpose();
        for r in 0..dim {
            for c in 0..dim {
                a[(r * dim + c, j)] = pi[(r, c)];
            }
        }
    }
    let mut y = DVector::zeros(rows);
    for i in 0..dim {
        y[i * dim + i] = 1.0;
    }
    nnls(&a, &y)
}

/// Nonnegative least squares by the Lawson-Hanson active-set method.
fn nnls(a: &DMatrix<f64>, y: &DVector<f64>) -> Result<Vec<f64>> {
    let cols = a.ncols();
    let mut passive = vec![false; cols];
    let mut w = DVector::<f64>::zeros(cols);
    let tol = 1e-10;
    let solve_passive = |passive: &[bool]| -> DVector<f64> {
        let idx: Vec<usize> =
            (0..cols).filter(|&j| passive[j]).collect();
        if idx.is_empty() {
            return DVector::zeros(cols);
        }
        let sub = a.select_columns(idx.iter());
        let sol = sub
            .svd(true, true)
            .solve(y, 1e-12)
            .expect("SVD solve");
        let mut full = DVector::zeros(cols);
        for (k, &j) in idx.iter().enumerate() {
            full[j] = sol[k];
        }
        full
    };
    for _ in 0..(cols * 4 + 10) {
        let residual = y - a * &w;
        let grad = a.transpose() * residual;
        let candidate = (0..cols)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| grad[i].partial_cmp(&grad[j]).unwrap());
        match candidate {
            Some(j) if grad[j] > tol => passive[j] = true,
            _ => break,
        }
        let mut z = solve_passive(&passive);
        while (0..cols).any(|j| passive[j] && z[j] <= 0.0) {
            let alpha = (0..cols)
                .filter(|&j| passive[j] && z[j] <= 0.0)
                .map(|j| w[j] / (w[j] - z[j]))
                .fold(f64::INFINITY, f64::min);
            w = &w + alpha * (&z - &w);
            for j in 0..cols {
                if passive[j] && w[j].abs() < tol {
                    passive[j] = false;
                    w[j] = 0.0;
                }
            }
            z = solve_passive(&passive);
        }
        w = z;
    }
    Ok(w.iter().copied().collect())
}

/// Apply one matrix per register to a vector on the tensor product space
/// (`None` leaves that register untouched). Dimensions are per register.
pub fn apply_registerwise(
    b: &DVector<f64>,
    ops: &[Option<&DMatrix<f64>>],
    dims: &[usize],
) -> DVector<f64> {
    assert_eq!(ops.len(), dims.len());
    debug_assert_eq!(b.len(), dims.iter().product::<usize>());
    let mut current = b.clone();
    for (i, op) in ops.iter().enumerate() {
        let Some(m) = op else { continue };
        let d = dims[i];
        assert_eq!(m.nrows(), d);
        let left: usize = dims[..i].iter().product();
        let right: usize = dims[i + 1..].iter().product();
        let mut next = DVector::zeros(current.len());
        for l in 0..left {
            for r in 0..right {
                for a in 0..d {
                    let mut acc = 0.0;
                    for bidx in 0..d {
                        acc += m[(a, bidx)] * current[(l * d + bidx) * right + r];
                    }
                    next[(l * d + a) * right + r] = acc;
                }
            }
        }
        current = next;
    }
    current
}
