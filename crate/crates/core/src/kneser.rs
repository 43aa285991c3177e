//! k-subsets of `[n]` and the Kneser graphs built on them.
//!
//! Subsets are stored as 64-bit masks (bit `i - 1` set when `i` is a member),
//! so the ground set is capped at 64 points. Comparing masks numerically is
//! exactly colexicographic order on subsets of equal size, which is the
//! public vertex order of [`KneserGraph`].

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::graph::Graph;

/// Largest ground set a [`KSubset`] mask can hold.
pub const MAX_GROUND: u32 = 64;

/// Exact binomial coefficient; returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A subset of `[n]`, the vertex type of Kneser graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset(u64);

impl KSubset {
    /// Builds a subset from 1-based labels. Labels must be distinct and lie in `1..=64`.
    pub fn new(elements: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::Shape(format!("label {e} outside 1..={MAX_GROUND}")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::Shape(format!("label {e} repeated")));
            }
            mask |= bit;
        }
        Ok(KSubset(mask))
    }

    pub fn from_mask(mask: u64) -> Self {
        KSubset(mask)
    }

    pub fn pair(a: u32, b: u32) -> Self {
        debug_assert!(a != b && a >= 1 && b >= 1 && a <= MAX_GROUND && b <= MAX_GROUND);
        KSubset((1u64 << (a - 1)) | (1u64 << (b - 1)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn is_disjoint(self, other: KSubset) -> bool {
        self.0 & other.0 == 0
    }

    /// Sorted 1-based labels.
    pub fn elements(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }

    /// Largest label, or 0 for the empty set.
    pub fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Position in colexicographic order among subsets of the same size.
    pub fn colex_rank(self) -> usize {
        self.elements()
            .iter()
            .enumerate()
            .map(|(i, &e)| binomial(u64::from(e - 1), i as u64 + 1) as usize)
            .sum()
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `k`-element submasks of `universe`, in increasing numeric (colex) order.
pub fn submasks_of_size(universe: u64, k: u32) -> Vec<u64> {
    let positions: Vec<u32> = (0..64).filter(|&i| universe & (1u64 << i) != 0).collect();
    let m = positions.len();
    let k = k as usize;
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    // colex enumeration over indices into `positions`
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | (1u64 << positions[i])));
        // advance the lowest index that can move right
        let mut p = 0;
        loop {
            if p == k {
                return out;
            }
            let limit = if p + 1 < k { idx[p + 1] } else { m };
            if idx[p] + 1 < limit {
                break;
            }
            p += 1;
        }
        idx[p] += 1;
        for (q, slot) in idx.iter_mut().enumerate().take(p) {
            *slot = q;
        }
    }
}

/// The Kneser graph `K(n,k)`.
#[derive(Clone, Debug)]
pub struct KneserGraph {
    n: u32,
    k: u32,
    vertices: Vec<KSubset>,
}

impl KneserGraph {
    /// Builds `K(n,k)`.
    ///
    /// Besides the usual `1 <= k <= n/2`, the edgeless boundary cases with
    /// `2k <= n + 2` and `k <= n` (such as `K(3,2)` and `K(2,2)`) are admitted.
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 1 || k > n || 2 * k > n + 2 || n > MAX_GROUND {
            return domain(format!(
                "K(n,k) requires 1 <= k <= n, 2k <= n + 2 and n <= {MAX_GROUND}; got n={n}, k={k}"
            ));
        }
        let universe = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let vertices = submasks_of_size(universe, k).into_iter().map(KSubset).collect();
        Ok(KneserGraph { n, k, vertices })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> KSubset {
        self.vertices[index]
    }

    pub fn contains(&self, s: KSubset) -> bool {
        s.len() == self.k && s.max_element() <= self.n
    }

    pub fn index_of(&self, s: KSubset) -> Option<usize> {
        self.contains(s).then(|| s.colex_rank())
    }

    /// Disjointness test, rejecting subsets that are not vertices of this graph.
    pub fn adjacent(&self, u: KSubset, v: KSubset) -> Result<bool> {
        for s in [u, v] {
            if !self.contains(s) {
                return Err(Error::ForeignVertex(format!("{s} in K({},{})", self.n, self.k)));
            }
        }
        Ok(u.is_disjoint(v))
    }

    /// Common degree `C(n-k, k)`.
    pub fn degree(&self) -> usize {
        binomial(u64::from(self.n - self.k.min(self.n)), u64::from(self.k)) as usize
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() * self.degree() / 2
    }

    fn universe(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

impl Graph for KneserGraph {
    fn order(&self) -> usize {
        self.vertices.len()
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.vertices[u].is_disjoint(self.vertices[v])
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        let rest = self.universe() & !self.vertices[v].mask();
        submasks_of_size(rest, self.k)
            .into_iter()
            .map(|m| KSubset(m).colex_rank())
            .collect()
    }

    fn label(&self, v: usize) -> Option<KSubset> {
        Some(self.vertices[v])
    }
}

/// Lovász's value `n - 2(k - 1)` for the chromatic number of `K(n,k)`.
pub fn lovasz_chromatic(n: u32, k: u32) -> Result<u32> {
    if k < 1 || 2 * k > n {
        return domain(format!("chromatic formula requires 1 <= k <= n/2; got n={n}, k={k}"));
    }
    Ok(n - 2 * (k - 1))
}
