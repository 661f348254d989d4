//! Integer partitions, permutations, conjugacy classes, the matching class
//! of fixed-point-free involutions, and the graph-pair reduction.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, stored as a non-increasing list of positive parts.
///
/// Partitions index both the irreducible representations of `S_n` (as Young
/// diagrams) and its conjugacy classes (as cycle types).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build a partition, validating that parts are positive and non-increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidParameter(format!(
                    "partition parts must be non-increasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidParameter("partition parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// One-row partition `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// One-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Cell count `n = sum of parts`.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First row length, or 0 for the empty partition.
    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// First column length (= number of rows).
    pub fn first_column(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut col = 0u32;
        loop {
            let height = self.parts.iter().filter(|&&p| p > col).count() as u32;
            if height == 0 {
                break;
            }
            parts.push(height);
            col += 1;
        }
        Partition { parts }
    }

    /// Multiplicity view: list of `(part value, multiplicity)` pairs,
    /// descending in part value.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Parse "3,1,1" (or "0" / "" for the empty partition).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "()" {
            return Ok(Self::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts
            .map_err(|e| Error::InvalidParameter(format!("bad partition {s:?}: {e}")))?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and
/// `(1^n)` last. The order is fixed so report files are reproducible.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    if n == 0 {
        // rec pushed the empty partition already via remaining == 0
        debug_assert_eq!(out.len(), 1);
    }
    out
}

/// Number of partitions of `n` (length of `enumerate_partitions`).
pub fn partition_count(n: u32) -> BigUint {
    // Euler's pentagonal number recurrence.
    let mut p: Vec<num_bigint::BigInt> = vec![num_bigint::BigInt::from(1)];
    for m in 1..=(n as i64) {
        let mut acc = num_bigint::BigInt::from(0);
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > m && g2 > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            if g1 <= m {
                acc += sign * &p[(m - g1) as usize];
            }
            if g2 <= m {
                acc += sign * &p[(m - g2) as usize];
            }
            k += 1;
        }
        p.push(acc);
    }
    p[n as usize].to_biguint().expect("partition count is non-negative")
}

/// A permutation of `{0..n-1}` in image (one-line) notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "not a bijection on 0..{n}: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The adjacent transposition `(i, i+1)`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: lens }
    }

    /// Number of non-fixed points.
    pub fn support(&self) -> usize {
        self.images.iter().enumerate().filter(|(x, &y)| *x != y).count()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Sign of the permutation: +1 or -1.
    pub fn sign(&self) -> i32 {
        let transpositions: u32 =
            self.cycle_type().parts().iter().map(|&l| l - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Decompose into adjacent transpositions by bubble sort, so that
    /// `self = s_{w[0]} s_{w[1]} ... s_{w[last]}` (deterministic word).
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut images = self.images.clone();
        let n = images.len();
        // Selection-sort images back to identity; each swap of positions
        // (i, i+1) multiplies by an adjacent transposition on the left of
        // the remaining word.
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if images[i] > images[i + 1] {
                    images.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // s_{w_k} ... s_{w_1} * self = id, hence self = s_{w_1} ... s_{w_k}.
        word.reverse();
        word
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// Enumerate all of `S_n` in lexicographic order of image vectors.
/// Index 0 is always the identity.
pub fn enumerate_symmetric_group(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: images.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

/// A conjugacy class of `S_n`, labeled by its cycle type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
}

impl ConjugacyClass {
    pub fn new(cycle_type: Partition) -> Self {
        ConjugacyClass { cycle_type }
    }

    pub fn n(&self) -> u32 {
        self.cycle_type.n()
    }

    /// Support of any member: number of cells in parts of size >= 2.
    pub fn support(&self) -> u32 {
        self.cycle_type.parts().iter().filter(|&&p| p >= 2).sum()
    }

    /// Exact class cardinality `n! / ((prod tau_i!)(prod lambda_i))`.
    pub fn size(&self) -> BigUint {
        let n = self.n();
        factorial(n) / self.centralizer_order()
    }

    /// Order of the centralizer, `(prod tau_i!)(prod lambda_i)`.
    pub fn centralizer_order(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (part, mult) in self.cycle_type.multiplicities() {
            denom *= factorial(mult);
            for _ in 0..mult {
                denom *= BigUint::from(part);
            }
        }
        denom
    }

    /// A canonical representative permutation with this cycle type:
    /// cycles laid out left to right, largest first.
    pub fn representative(&self) -> Permutation {
        let n = self.n() as usize;
        let mut images: Vec<usize> = (0..n).collect();
        let mut base = 0usize;
        for &len in self.cycle_type.parts() {
            let len = len as usize;
            for k in 0..len {
                images[base + k] = base + (k + 1) % len;
            }
            base += len;
        }
        Permutation { images }
    }
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// A fixed-point-free involution of `{0..n-1}`, stored as a perfect matching.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Involution {
    pairs: Vec<(usize, usize)>,
    n: usize,
}

impl Involution {
    /// Build from a pair list; pairs are normalized (each sorted, list sorted).
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = pairs.len() * 2;
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            if a == b || a >= n || b >= n || seen[a] || seen[b] {
                return Err(Error::InvalidParameter(format!(
                    "pairs must be disjoint and cover 0..{n}: {pairs:?}"
                )));
            }
            seen[a] = true;
            seen[b] = true;
        }
        Ok(Involution { pairs, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        for &(a, b) in &self.pairs {
            images[a] = b;
            images[b] = a;
        }
        Permutation { images }
    }

    /// Reinterpret a fixed-point-free involutive permutation as a matching.
    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        let n = p.n();
        if n % 2 != 0 {
            return Err(Error::OddMatching(n));
        }
        let mut pairs = Vec::with_capacity(n / 2);
        for x in 0..n {
            let y = p.apply(x);
            if y == x || p.apply(y) != x {
                return Err(Error::InvalidParameter(
                    "not a fixed-point-free involution".into(),
                ));
            }
            if x < y {
                pairs.push((x, y));
            }
        }
        Involution::new(pairs)
    }

    /// Conjugate by `sigma`: the matching pairing `sigma(a)` with `sigma(b)`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Involution {
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (sigma.apply(a), sigma.apply(b)))
            .collect();
        Involution::new(pairs).expect("conjugation preserves matchings")
    }

    /// Cycle type `(2,2,...,2)` as a partition of n.
    pub fn cycle_type(&self) -> Partition {
        Partition { parts: vec![2; self.n / 2] }
    }
}

/// The matching class `M_n`: all `(n-1)!!` perfect matchings of `n` points,
/// in canonical order.
pub fn enumerate_matchings(n: usize) -> Result<Vec<Involution>> {
    if n % 2 != 0 || n == 0 {
        return Err(Error::OddMatching(n));
    }
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Involution>,
    ) {
        let Some(a) = (0..n).find(|&x| !used[x]) else {
            out.push(Involution { pairs: pairs.clone(), n });
            return;
        };
        used[a] = true;
        for b in a + 1..n {
            if used[b] {
                continue;
            }
            used[b] = true;
            pairs.push((a, b));
            rec(n, used, pairs, out);
            pairs.pop();
            used[b] = false;
        }
        used[a] = false;
    }
    rec(n, &mut used, &mut pairs, &mut out);
    Ok(out)
}

/// A simple undirected graph on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.0 == e.1 || e.1 >= n {
                return Err(Error::InvalidParameter(format!("bad edge {e:?} for n={n}")));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph { n, edges })
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut degs: Vec<usize> =
            adj.iter().map(|row| row.iter().filter(|&&x| x).count()).collect();
        degs.sort_unstable();
        degs
    }
}

/// Parse the two-graph edge-list format: first line `n_vertices`, then one
/// `u v` edge per line; the two graphs separated by a blank line.
pub fn parse_graph_pair(text: &str) -> Result<(Graph, Graph)> {
    let blocks: Vec<&str> = text.split("\n\n").filter(|b| !b.trim().is_empty()).collect();
    if blocks.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "expected two graphs separated by a blank line, found {} block(s)",
            blocks.len()
        )));
    }
    let parse_block = |block: &str| -> Result<Graph> {
        let mut lines = block.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty graph block".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| Error::InvalidParameter(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|e| Error::InvalidParameter(format!("bad edge: {e}")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| Error::InvalidParameter(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|e| Error::InvalidParameter(format!("bad edge: {e}")))?;
            edges.push((u, v));
        }
        Graph::new(n, edges)
    };
    Ok((parse_block(blocks[0])?, parse_block(blocks[1])?))
}

/// Reduce a pair of graphs on `n/2` vertices each to a hidden-subgroup
/// involution on their disjoint union: if an isomorphism `sigma: g1 -> g2`
/// exists, returns the matching `i <-> n/2 + sigma(i)`; otherwise `None`.
///
/// Isomorphism search is brute force over vertex permutations; this is a
/// demonstration of the reduction, not a GI solver, so graphs are capped at
/// 10 vertices each.
pub fn involution_from_graph_pair(g1: &Graph, g2: &Graph) -> Result<Option<Involution>> {
    if g1.n != g2.n {
        return Err(Error::SizeMismatch(format!(
            "graphs have {} and {} vertices",
            g1.n, g2.n
        )));
    }
    if g1.n > 10 {
        return Err(Error::OracleScaleExceeded);
    }
    if g1.edges.len() != g2.edges.len() || g1.degree_sequence() != g2.degree_sequence() {
        return Ok(None);
    }
    let half = g1.n;
    let a1 = g1.adjacency();
    let a2 = g2.adjacency();
    for sigma in enumerate_symmetric_group(half) {
        let ok = (0..half).all(|u| {
            (u + 1..half).all(|v| a1[u][v] == a2[sigma.apply(u)][sigma.apply(v)])
        });
        if ok {
            let pairs = (0..half).map(|i| (i, half + sigma.apply(i))).collect();
            return Ok(Some(Involution::new(pairs)?));
        }
    }
    Ok(None)
}
