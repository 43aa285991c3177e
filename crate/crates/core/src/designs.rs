//! Block designs consumed by the coloring constructions: Steiner and Kirkman
//! triple systems, the projective plane of order 4, and 1-factorizations of
//! complete graphs with no 4-cycle in the union of two factors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact_cover::first_exact_cover;

/// Node budget for exact-cover searches over blocks.
pub const EXACT_COVER_BUDGET: u64 = 50_000_000;

/// Default number of Kempe swaps allowed when repairing a 1-factorization.
pub const DEFAULT_SWAP_BUDGET: u64 = 1_000_000;

/// A balanced incomplete block design with points `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub n: u32,
    /// Declared block size.
    pub k: u32,
    /// Declared pair multiplicity.
    pub lambda: u32,
    /// Sorted point lists.
    pub blocks: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub n: u32,
    pub b: usize,
    pub k: u32,
    pub r: u32,
    pub lambda: u32,
}

impl Design {
    pub fn new(n: u32, k: u32, lambda: u32, mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        Design { n, k, lambda, blocks }
    }

    /// Parameters implied by the declared `n`, `k`, `lambda` and the block count.
    pub fn params(&self) -> DesignParams {
        let r = if self.k > 1 { self.lambda * (self.n - 1) / (self.k - 1) } else { 0 };
        DesignParams { n: self.n, b: self.blocks.len(), k: self.k, r, lambda: self.lambda }
    }

    /// Block indices incident to `point`.
    pub fn blocks_through(&self, point: u32) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].contains(&point)).collect()
    }

    /// The points other than `v` together with every block, `v` removed.
    pub fn delete_point(&self, v: u32) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&p| p != v).collect())
            .collect()
    }
}

/// Per-axiom audit of a design.
#[derive(Clone, Debug, Serialize)]
pub struct DesignReport {
    pub params: DesignParams,
    pub block_sizes_ok: bool,
    pub replication_ok: bool,
    pub pair_balance_ok: bool,
    /// `nr = bk` and `r(k-1) = λ(n-1)`.
    pub equations_ok: bool,
    /// Blocks with the wrong size or with points outside `1..=n`.
    pub bad_blocks: Vec<usize>,
    /// Points whose replication number differs from `r`, with the observed count.
    pub bad_points: Vec<(u32, usize)>,
    /// Point pairs covered a number of times other than `λ`, with the observed count.
    pub bad_pairs: Vec<(u32, u32, usize)>,
}

impl DesignReport {
    pub fn passed(&self) -> bool {
        self.block_sizes_ok && self.replication_ok && self.pair_balance_ok && self.equations_ok
    }
}

/// Audits the three design axioms and the two parameter equations.
pub fn verify_design(d: &Design) -> DesignReport {
    let p = d.params();
    let n = d.n as usize;
    let bad_blocks: Vec<usize> = d
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            let mut s = (*b).clone();
            s.dedup();
            s.len() != d.k as usize || b.len() != d.k as usize || b.iter().any(|&x| x < 1 || x > d.n)
        })
        .map(|(i, _)| i)
        .collect();

    let mut replication = vec![0usize; n + 1];
    let mut pairs = vec![0usize; (n + 1) * (n + 1)];
    for b in &d.blocks {
        for (i, &x) in b.iter().enumerate() {
            if x < 1 || x > d.n {
                continue;
            }
            replication[x as usize] += 1;
            for &y in &b[i + 1..] {
                if y >= 1 && y <= d.n && y != x {
                    let (a, c) = (x.min(y) as usize, x.max(y) as usize);
                    pairs[a * (n + 1) + c] += 1;
                }
            }
        }
    }
    let bad_points: Vec<(u32, usize)> = (1..=n)
        .filter(|&x| replication[x] != p.r as usize)
        .map(|x| (x as u32, replication[x]))
        .collect();
    let mut bad_pairs = Vec::new();
    for a in 1..=n {
        for c in a + 1..=n {
            let cnt = pairs[a * (n + 1) + c];
            if cnt != d.lambda as usize {
                bad_pairs.push((a as u32, c as u32, cnt));
            }
        }
    }
    let (nn, b, k, r, l) = (d.n as u64, p.b as u64, d.k as u64, p.r as u64, d.lambda as u64);
    let equations_ok = nn * r == b * k && r * k.saturating_sub(1) == l * (nn - 1);
    DesignReport {
        params: p,
        block_sizes_ok: bad_blocks.is_empty(),
        replication_ok: bad_points.is_empty(),
        pair_balance_ok: bad_pairs.is_empty(),
        equations_ok,
        bad_blocks,
        bad_points,
        bad_pairs,
    }
}

/// A design whose blocks are partitioned into parallel classes.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub design: Design,
    /// Block indices per class.
    pub classes: Vec<Vec<usize>>,
}

impl Resolution {
    /// Checks that the classes partition the blocks and each class partitions the points.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let d = &self.design;
        let mut used = vec![false; d.blocks.len()];
        for (ci, class) in self.classes.iter().enumerate() {
            let mut seen = vec![false; d.n as usize + 1];
            for &bi in class {
                let block = d.blocks.get(bi).ok_or(format!("class {ci}: block {bi} out of range"))?;
                if std::mem::replace(&mut used[bi], true) {
                    return Err(format!("block {bi} appears in two classes"));
                }
                for &p in block {
                    if std::mem::replace(&mut seen[p as usize], true) {
                        return Err(format!("class {ci}: point {p} covered twice"));
                    }
                }
            }
            if let Some(p) = (1..=d.n as usize).find(|&p| !seen[p]) {
                return Err(format!("class {ci}: point {p} uncovered"));
            }
        }
        if let Some(bi) = used.iter().position(|u| !u) {
            return Err(format!("block {bi} in no class"));
        }
        Ok(())
    }
}

/// Steiner triple system of order `n`: Bose's construction for `n ≡ 3 (mod 6)`,
/// Skolem's for `n ≡ 1 (mod 6)`.
pub fn construct_sts(n: u32) -> Result<Design> {
    if n < 3 || !matches!(n % 6, 1 | 3) {
        return domain(format!("STS(n) requires n ≡ 1,3 (mod 6) and n >= 3; got n={n}"));
    }
    let blocks = if n % 6 == 3 { bose(n) } else { skolem(n) };
    let d = Design::new(n, 3, 1, blocks);
    debug_assert!(verify_design(&d).passed());
    Ok(d)
}

/// Points of `Z_m x Z_3` are numbered `1 + x + m*i`.
fn bose(n: u32) -> Vec<Vec<u32>> {
    let m = n / 3;
    let pt = |x: u32, i: u32| 1 + x + m * (i % 3);
    let half = m.div_ceil(2); // inverse of 2 modulo odd m
    let op = |x: u32, y: u32| ((x + y) * half) % m;
    let mut blocks = Vec::new();
    for x in 0..m {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Points of `Z_{2t} x Z_3` are numbered `1 + x + 2t*i`; the extra point is `n`.
fn skolem(n: u32) -> Vec<Vec<u32>> {
    let t = (n - 1) / 6;
    let m = 2 * t;
    let pt = |x: u32, i: u32| 1 + x + m * (i % 3);
    let inf = n;
    // half-idempotent commutative quasigroup of order 2t
    let op = |x: u32, y: u32| {
        let s = (x + y) % m;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            (s - 1) / 2 + t
        }
    };
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..t {
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + t, i), pt(x, i + 1)]);
        }
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// A parallel class of a triple system found by exact cover over its blocks.
pub fn find_parallel_class(d: &Design) -> Result<Option<Vec<usize>>> {
    if !d.n.is_multiple_of(3) {
        return domain(format!("a parallel class of triples needs 3 | n; got n={}", d.n));
    }
    let options: Vec<Vec<usize>> =
        d.blocks.iter().map(|b| b.iter().map(|&p| p as usize - 1).collect()).collect();
    first_exact_cover(d.n as usize, &options, EXACT_COVER_BUDGET)
}

/// Resolves a given design by exact cover: item `(class, point)` for every
/// class and point, plus one item per block.
pub fn resolve_by_exact_cover(d: &Design, node_budget: u64) -> Result<Option<Resolution>> {
    let k = d.k as usize;
    if k == 0 || !(d.n as usize).is_multiple_of(k) || !d.blocks.len().is_multiple_of(d.n as usize / k) {
        return domain("design cannot be resolvable with these parameters");
    }
    let per_class = d.n as usize / k;
    let r = d.blocks.len() / per_class;
    let n = d.n as usize;
    let block_items = r * n;
    let mut options = Vec::new();
    let mut meta = Vec::new();
    for (bi, b) in d.blocks.iter().enumerate() {
        // a block only goes to classes at or after its smallest-index peer; fix block 0 in class 0
        for c in 0..r {
            if bi == 0 && c != 0 {
                continue;
            }
            let mut opt: Vec<usize> = b.iter().map(|&p| c * n + p as usize - 1).collect();
            opt.push(block_items + bi);
            options.push(opt);
            meta.push((bi, c));
        }
    }
    let Some(rows) = first_exact_cover(block_items + d.blocks.len(), &options, node_budget)? else {
        return Ok(None);
    };
    let mut classes = vec![Vec::new(); r];
    for row in rows {
        let (bi, c) = meta[row];
        classes[c].push(bi);
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    Ok(Some(Resolution { design: d.clone(), classes }))
}

/// Kirkman triple system of order `n ≡ 3 (mod 6)`.
///
/// The translations of `Z_q` act on the resolution, with one of two point sets:
///
/// * `n ≡ 3 (mod 12)`: `Z_q x {0,1}` plus a fixed point `∞`, `q = (n-1)/2`.
///   A base class containing `{∞, (0,0), (0,1)}` is developed into all `q`
///   classes.
/// * `n ≡ 9 (mod 12)`: `Z_q x Z_3`, `q = n/3`. One base class is developed into
///   `q` classes and `(q-1)/2` further classes are each the orbit of a single
///   transversal triple.
///
/// Base triples are found by backtracking so that every pure difference `±d`
/// within a copy and every mixed difference between two copies occurs once.
pub fn construct_kts(n: u32) -> Result<Resolution> {
    if n < 3 || n % 6 != 3 {
        return domain(format!("KTS(n) requires n ≡ 3 (mod 6); got n={n}"));
    }
    if n == 3 {
        let design = Design::new(3, 3, 1, vec![vec![1, 2, 3]]);
        return Ok(Resolution { design, classes: vec![vec![0]] });
    }
    let with_infinity = n % 12 == 3;
    let (q, copies) = if with_infinity { ((n - 1) / 2, 2) } else { (n / 3, 3) };
    let mut search = KtsSearch::new(q, copies, with_infinity);
    if !search.base_class() {
        return Err(Error::SearchExhausted(format!(
            "no base class found for KTS({n}) within {} nodes",
            EXACT_COVER_BUDGET
        )));
    }
    // point (x, i) is label 1 + x + q*i; ∞ is n
    let label = |x: u32, i: u32| 1 + (x % q) + q * i;
    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    for g in 0..q {
        let mut class = Vec::new();
        if with_infinity {
            class.push(blocks.len());
            blocks.push(vec![label(g, 0), label(g, 1), n]);
        }
        for t in &search.base {
            class.push(blocks.len());
            blocks.push(t.iter().map(|&(x, i)| label(x + g, i)).collect());
        }
        classes.push(class);
    }
    for &(b, c) in &search.transversals {
        let class = (0..q)
            .map(|g| {
                blocks.push(vec![label(g, 0), label(b + g, 1), label(c + g, 2)]);
                blocks.len() - 1
            })
            .collect();
        classes.push(class);
    }
    let design = Design::new(n, 3, 1, blocks);
    let res = Resolution { design, classes };
    let report = verify_design(&res.design);
    if !report.passed() {
        return Err(Error::Certificate(format!("KTS({n}) fails the design audit")));
    }
    res.verify().map_err(Error::Certificate)?;
    Ok(res)
}

struct KtsSearch {
    q: u32,
    copies: u32,
    covered: Vec<bool>,
    /// pure difference classes ±d, d in 1..=(q-1)/2, per copy
    pure: Vec<bool>,
    /// mixed differences per copy pair (0,1), (0,2), (1,2)
    mixed: Vec<bool>,
    base: Vec<[(u32, u32); 3]>,
    transversals: Vec<(u32, u32)>,
    nodes: u64,
}

impl KtsSearch {
    fn new(q: u32, copies: u32, with_infinity: bool) -> Self {
        let mut s = KtsSearch {
            q,
            copies,
            covered: vec![false; (copies * q) as usize],
            pure: vec![false; copies as usize * (q as usize / 2 + 1)],
            mixed: vec![false; 3 * q as usize],
            base: Vec::new(),
            transversals: Vec::new(),
            nodes: 0,
        };
        if with_infinity {
            // {∞, (0,0), (0,1)} uses mixed difference 0
            s.covered[0] = true;
            s.covered[q as usize] = true;
            s.mixed[0] = true;
        }
        s
    }

    /// Slot in `pure` or `mixed` of the difference of two points.
    fn diff_slot(&self, a: (u32, u32), b: (u32, u32)) -> (bool, usize) {
        let q = self.q;
        let ((x, i), (y, j)) = if a.1 <= b.1 { (a, b) } else { (b, a) };
        let d = (y + q - x) % q;
        if i == j {
            let d = d.min(q - d);
            (true, i as usize * (q as usize / 2 + 1) + d as usize)
        } else {
            let pair = match (i, j) {
                (0, 1) => 0,
                (0, 2) => 1,
                _ => 2,
            };
            (false, pair * q as usize + d as usize)
        }
    }

    fn slots(&self, t: &[(u32, u32); 3]) -> Option<[(bool, usize); 3]> {
        let s = [self.diff_slot(t[0], t[1]), self.diff_slot(t[0], t[2]), self.diff_slot(t[1], t[2])];
        let distinct = s[0] != s[1] && s[0] != s[2] && s[1] != s[2];
        let free = s.iter().all(|&(p, i)| if p { !self.pure[i] } else { !self.mixed[i] });
        // transversal classes take one difference of each copy pair, so the
        // base class may use at most (q+1)/2 of each
        let q = self.q as usize;
        let quota = self.copies == 2
            || (0..3).all(|pair| {
                let used = self.mixed[pair * q..(pair + 1) * q].iter().filter(|m| **m).count();
                let extra = s.iter().filter(|&&(p, i)| !p && i / q == pair).count();
                used + extra <= q.div_ceil(2)
            });
        (distinct && free && quota).then_some(s)
    }

    fn set(&mut self, slots: &[(bool, usize); 3], v: bool) {
        for &(p, i) in slots {
            if p {
                self.pure[i] = v;
            } else {
                self.mixed[i] = v;
            }
        }
    }

    fn base_class(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > EXACT_COVER_BUDGET {
            return false;
        }
        let q = self.q;
        let Some(first) = self.covered.iter().position(|c| !c) else {
            let half = q as usize / 2;
            let all_pure = (0..self.copies as usize).all(|i| (1..=half).all(|d| self.pure[i * (half + 1) + d]));
            return all_pure && (self.copies == 2 || self.transversal_classes());
        };
        if !self.pure_capacity_ok() {
            return false;
        }
        let pt = |idx: usize| (idx as u32 % q, idx as u32 / q);
        let p0 = pt(first);
        let total = self.covered.len();
        for j in first + 1..total {
            if self.covered[j] {
                continue;
            }
            for k in j + 1..total {
                if self.covered[k] {
                    continue;
                }
                let t = [p0, pt(j), pt(k)];
                let Some(slots) = self.slots(&t) else { continue };
                self.set(&slots, true);
                for idx in [first, j, k] {
                    self.covered[idx] = true;
                }
                self.base.push(t);
                if self.base_class() {
                    return true;
                }
                self.base.pop();
                for idx in [first, j, k] {
                    self.covered[idx] = false;
                }
                self.set(&slots, false);
                if self.nodes > EXACT_COVER_BUDGET {
                    return false;
                }
            }
        }
        false
    }

    /// Each copy still needs its missing pure classes from pairs inside the
    /// copy, and `u` uncovered points hold at most `3*(u/3) + [u%3 == 2]` such pairs.
    fn pure_capacity_ok(&self) -> bool {
        let (q, half) = (self.q as usize, self.q as usize / 2);
        (0..self.copies as usize).all(|i| {
            let u = self.covered[i * q..(i + 1) * q].iter().filter(|c| !**c).count();
            let missing = (1..=half).filter(|&d| !self.pure[i * (half + 1) + d]).count();
            missing <= 3 * (u / 3) + usize::from(u % 3 == 2)
        })
    }

    /// Matches the unused mixed differences into transversal triples `{(0,0),(b,1),(c,2)}`.
    fn transversal_classes(&mut self) -> bool {
        let q = self.q;
        let Some(b) = (0..q).find(|&b| !self.mixed[b as usize]) else {
            return true;
        };
        for c in 0..q {
            let (s02, s12) = (q as usize + c as usize, 2 * q as usize + ((c + q - b) % q) as usize);
            if self.mixed[s02] || self.mixed[s12] {
                continue;
            }
            for s in [b as usize, s02, s12] {
                self.mixed[s] = true;
            }
            self.transversals.push((b, c));
            if self.transversal_classes() {
                return true;
            }
            self.transversals.pop();
            for s in [b as usize, s02, s12] {
                self.mixed[s] = false;
            }
        }
        false
    }
}

/// GF(4) with elements 0, 1, w, w^2 encoded as 0..=3.
fn gf4_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    // log table: 1 -> 0, w -> 1, w^2 -> 2
    let log = |x: u8| x - 1;
    (log(a) + log(b)) % 3 + 1
}

fn gf4_add(a: u8, b: u8) -> u8 {
    // additive group is (Z_2)^2 with 1 = 01, w = 10, w^2 = 11
    let enc = [0b00, 0b01, 0b10, 0b11];
    let dec = |v: u8| enc.iter().position(|&e| e == v).unwrap() as u8;
    dec(enc[a as usize] ^ enc[b as usize])
}

/// The 2-(21,21,5,5,1) design of points and lines of the projective plane over GF(4).
pub fn construct_design_21_5_1() -> Design {
    // normalized representatives: first nonzero coordinate equals 1
    let mut points: Vec<[u8; 3]> = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        points.push(v);
                    }
                }
            }
        }
    }
    let dot = |u: &[u8; 3], v: &[u8; 3]| {
        (0..3).fold(0u8, |acc, i| gf4_add(acc, gf4_mul(u[i], v[i])))
    };
    let blocks = points
        .iter()
        .map(|line| {
            (0..points.len())
                .filter(|&i| dot(line, &points[i]) == 0)
                .map(|i| i as u32 + 1)
                .collect()
        })
        .collect();
    Design::new(21, 5, 1, blocks)
}

/// A partition of the edges of `K_order` into perfect matchings. Vertices are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    pub order: u32,
    pub factors: Vec<Vec<(u32, u32)>>,
}

impl OneFactorization {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.order as usize;
        if self.factors.len() + 1 != n {
            return Err(format!("{} factors for order {n}", self.factors.len()));
        }
        let mut seen = vec![false; n * n];
        for (fi, f) in self.factors.iter().enumerate() {
            let mut covered = vec![false; n];
            if f.len() * 2 != n {
                return Err(format!("factor {fi} has {} edges", f.len()));
            }
            for &(a, b) in f {
                let (a, b) = (a.min(b) as usize, a.max(b) as usize);
                if a == b || b >= n {
                    return Err(format!("factor {fi}: bad edge ({a},{b})"));
                }
                if covered[a] || covered[b] {
                    return Err(format!("factor {fi}: vertex covered twice"));
                }
                covered[a] = true;
                covered[b] = true;
                if std::mem::replace(&mut seen[a * n + b], true) {
                    return Err(format!("edge ({a},{b}) in two factors"));
                }
            }
        }
        Ok(())
    }

    /// Cycle lengths of the union of factors `a` and `b`.
    pub fn union_cycle_lengths(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.order as usize;
        let partner = |f: &Vec<(u32, u32)>| {
            let mut p = vec![0usize; n];
            for &(x, y) in f {
                p[x as usize] = y as usize;
                p[y as usize] = x as usize;
            }
            p
        };
        let (pa, pb) = (partner(&self.factors[a]), partner(&self.factors[b]));
        let mut visited = vec![false; n];
        let mut lengths = Vec::new();
        for s in 0..n {
            if visited[s] {
                continue;
            }
            let (mut v, mut len, mut use_a) = (s, 0, true);
            while !visited[v] {
                visited[v] = true;
                v = if use_a { pa[v] } else { pb[v] };
                use_a = !use_a;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Factor pairs whose union contains a 4-cycle component.
    pub fn four_cycle_pairs(&self) -> Vec<(usize, usize)> {
        let f = self.factors.len();
        let mut out = Vec::new();
        for a in 0..f {
            for b in a + 1..f {
                if self.union_cycle_lengths(a, b).contains(&4) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Circle-method 1-factorization of `K_order`.
pub fn construct_one_factorization(order: u32) -> Result<OneFactorization> {
    if order < 4 || !order.is_multiple_of(2) {
        return domain(format!("1-factorization needs an even order >= 4; got {order}"));
    }
    let m = order - 1;
    let factors = (0..m)
        .map(|i| {
            let mut f = vec![(i.min(m), i.max(m))];
            for j in 1..order / 2 {
                let (a, b) = ((i + j) % m, (i + m - j) % m);
                f.push((a.min(b), a.max(b)));
            }
            f.sort_unstable();
            f
        })
        .collect();
    Ok(OneFactorization { order, factors })
}

/// A 1-factorization of `K_order` with no 4-cycle component in any union of
/// two factors. The circle method is tried first. When it fails the audit
/// (orders ≡ 4 mod 6), seeded random starters in `Z_{order-1}` are tried, and
/// as a last resort the circle method is repaired by Kempe-chain hill climbing.
pub fn c4_free_one_factorization(order: u32, seed: u64, swap_budget: u64) -> Result<OneFactorization> {
    if order < 6 || !order.is_multiple_of(2) {
        return domain(format!(
            "a 4-cycle-free 1-factorization needs an even order >= 6; got {order}"
        ));
    }
    let f = construct_one_factorization(order)?;
    if f.four_cycle_pairs().is_empty() {
        return Ok(f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..STARTER_ATTEMPTS {
        if let Some(s) = random_starter(order - 1, &mut rng) {
            let f = starter_factorization(order, &s);
            f.verify().map_err(Error::Certificate)?;
            if f.four_cycle_pairs().is_empty() {
                return Ok(f);
            }
        }
    }
    for _ in 0..STARTER_ATTEMPTS {
        if let Some(f) = random_c4_free_search(order, &mut rng) {
            f.verify().map_err(Error::Certificate)?;
            if f.four_cycle_pairs().is_empty() {
                return Ok(f);
            }
        }
    }
    repair_four_cycles(&f, seed, swap_budget)
}

/// Builds factors one at a time by randomized backtracking, rejecting an edge
/// `uv` whenever some earlier factor `F` and the current partial factor would
/// contain the 4-cycle `u v F(v) F(u)`.
fn random_c4_free_search(order: u32, rng: &mut ChaCha8Rng) -> Option<OneFactorization> {
    struct St {
        n: usize,
        used: Vec<bool>,
        /// partners[f][v] for completed factors
        partners: Vec<Vec<usize>>,
        cur: Vec<usize>,
        nodes: u64,
    }
    fn fill(st: &mut St, rng: &mut ChaCha8Rng) -> bool {
        st.nodes += 1;
        if st.nodes > STARTER_NODE_BUDGET {
            return false;
        }
        let n = st.n;
        let Some(u) = (0..n).find(|&u| st.cur[u] == usize::MAX) else {
            return true;
        };
        let mut vs: Vec<usize> = (u + 1..n).filter(|&v| st.cur[v] == usize::MAX && !st.used[u * n + v]).collect();
        vs.shuffle(rng);
        for v in vs {
            let closes = st.partners.iter().any(|p| {
                let (pu, pv) = (p[u], p[v]);
                st.cur[pu] == pv
            });
            if closes {
                continue;
            }
            st.cur[u] = v;
            st.cur[v] = u;
            if fill(st, rng) {
                return true;
            }
            st.cur[u] = usize::MAX;
            st.cur[v] = usize::MAX;
        }
        false
    }
    let n = order as usize;
    let mut st = St { n, used: vec![false; n * n], partners: Vec::new(), cur: vec![usize::MAX; n], nodes: 0 };
    for _ in 0..n - 1 {
        st.cur = vec![usize::MAX; n];
        if !fill(&mut st, rng) {
            return None;
        }
        for v in 0..n {
            st.used[v * n + st.cur[v]] = true;
        }
        st.partners.push(st.cur.clone());
    }
    let factors = st
        .partners
        .iter()
        .map(|p| (0..n).filter(|&v| v < p[v]).map(|v| (v as u32, p[v] as u32)).collect())
        .collect();
    Some(OneFactorization { order, factors })
}

const STARTER_ATTEMPTS: usize = 200;
const STARTER_NODE_BUDGET: u64 = 100_000;

/// A starter in `Z_m`: pairs partitioning the nonzero elements whose
/// differences `±(y-x)` cover every nonzero element once. Partial starters
/// whose development already has a 4-cycle component are pruned.
fn random_starter(m: u32, rng: &mut ChaCha8Rng) -> Option<Vec<(u32, u32)>> {
    struct St {
        m: usize,
        /// partner in factor 0; `m` is the fixed point, paired with 0
        partner: Vec<usize>,
        diffs: Vec<bool>,
        pairs: Vec<(usize, usize)>,
        nodes: u64,
    }
    impl St {
        fn shift(&self, v: usize, d: usize) -> usize {
            if v == self.m { v } else { (v + d) % self.m }
        }

        /// Whether some `F_0 ∪ F_d` already contains an alternating 4-cycle
        /// `u1 u2 u3 u4` with `u1u2, u3u4` in `F_0` and `u2u3, u4u1` in `F_d`.
        fn has_four_cycle(&self) -> bool {
            let m = self.m;
            let oriented = self.pairs.iter().copied().chain(std::iter::once((0, m))).flat_map(|(a, b)| [(a, b), (b, a)]);
            for (u1, u2) in oriented.clone() {
                for (x, y) in oriented.clone() {
                    let ds: Vec<usize> = match (u2 == m, x == m) {
                        (true, true) => (1..m).collect(),
                        (false, false) if u2 != x => vec![(u2 + m - x) % m],
                        _ => continue,
                    };
                    for d in ds {
                        let u3 = self.shift(y, d);
                        let u4 = self.partner[u3];
                        if u4 == usize::MAX {
                            continue;
                        }
                        let back = self.partner[self.shift(u4, m - d)];
                        if back != usize::MAX && back == self.shift(u1, m - d) {
                            return true;
                        }
                    }
                }
            }
            false
        }

        fn extend(&mut self, rng: &mut ChaCha8Rng) -> bool {
            self.nodes += 1;
            if self.nodes > STARTER_NODE_BUDGET {
                return false;
            }
            let m = self.m;
            let Some(x) = (1..m).find(|&x| self.partner[x] == usize::MAX) else {
                return true;
            };
            let mut ys: Vec<usize> = (x + 1..m).filter(|&y| self.partner[y] == usize::MAX).collect();
            ys.shuffle(rng);
            for y in ys {
                let d = (y - x).min(m - (y - x));
                if self.diffs[d] {
                    continue;
                }
                self.partner[x] = y;
                self.partner[y] = x;
                self.diffs[d] = true;
                self.pairs.push((x, y));
                if !self.has_four_cycle() && self.extend(rng) {
                    return true;
                }
                self.pairs.pop();
                self.partner[x] = usize::MAX;
                self.partner[y] = usize::MAX;
                self.diffs[d] = false;
            }
            false
        }
    }
    let m = m as usize;
    let mut partner = vec![usize::MAX; m + 1];
    partner[0] = m;
    partner[m] = 0;
    let mut st = St { m, partner, diffs: vec![false; m / 2 + 1], pairs: Vec::new(), nodes: 0 };
    st.extend(rng).then(|| st.pairs.iter().map(|&(a, b)| (a as u32, b as u32)).collect())
}

/// Develops a starter: factor `i` is `{∞, i}` plus the translates `{x+i, y+i}`,
/// with `∞ = order - 1`.
fn starter_factorization(order: u32, starter: &[(u32, u32)]) -> OneFactorization {
    let m = order - 1;
    let factors = (0..m)
        .map(|i| {
            let mut f = vec![(i, m)];
            for &(x, y) in starter {
                let (a, b) = ((x + i) % m, (y + i) % m);
                f.push((a.min(b), a.max(b)));
            }
            f.sort_unstable();
            f
        })
        .collect();
    OneFactorization { order, factors }
}

const ANNEAL_TEMPERATURE: f64 = 1.0;

/// Removes 4-cycle components by hill climbing. Each move either swaps two
/// colors along a two-colored cycle or recolors the union of three factors.
/// A move is kept when it does not increase the number of 4-cycle components,
/// and with probability `exp(-increase / T)` otherwise.
pub fn repair_four_cycles(f: &OneFactorization, seed: u64, swap_budget: u64) -> Result<OneFactorization> {
    f.verify().map_err(Error::Shape)?;
    let n = f.order as usize;
    let colors = f.factors.len();
    let mut color = vec![usize::MAX; n * n];
    for (c, fac) in f.factors.iter().enumerate() {
        for &(a, b) in fac {
            color[a as usize * n + b as usize] = c;
            color[b as usize * n + a as usize] = c;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let partner = |color: &[usize], v: usize, c: usize| (0..n).find(|&u| u != v && color[v * n + u] == c).unwrap();
    let c4_count = |color: &[usize], a: usize, b: usize| -> usize {
        let mut visited = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if visited[s] {
                continue;
            }
            let (mut v, mut len, mut use_a) = (s, 0, true);
            while !visited[v] {
                visited[v] = true;
                v = partner(color, v, if use_a { a } else { b });
                use_a = !use_a;
                len += 1;
            }
            if len == 4 {
                count += 1;
            }
        }
        count
    };
    let mut pair_cost = vec![0usize; colors * colors];
    let mut total = 0;
    for a in 0..colors {
        for b in a + 1..colors {
            pair_cost[a * colors + b] = c4_count(&color, a, b);
            total += pair_cost[a * colors + b];
        }
    }
    let mut swaps = 0u64;
    while total > 0 {
        if swaps >= swap_budget {
            return Err(Error::SearchExhausted(format!(
                "{total} four-cycle components remain after {swap_budget} swaps"
            )));
        }
        swaps += 1;
        let bad: Vec<(usize, usize)> = (0..colors)
            .flat_map(|a| (a + 1..colors).map(move |b| (a, b)))
            .filter(|&(a, b)| pair_cost[a * colors + b] > 0)
            .collect();
        let &(a, b) = bad.choose(&mut rng).unwrap();
        let mut c = rng.gen_range(0..colors);
        while c == a || c == b {
            c = rng.gen_range(0..colors);
        }
        let changes = if rng.gen_bool(0.5) {
            kempe_move(&color, n, a, b, c, &mut rng)
        } else {
            rebuild_move(&color, n, [a, b, c], &mut rng)
        };
        if changes.is_empty() {
            continue;
        }
        for &(x, y, _, new) in &changes {
            color[x * n + y] = new;
            color[y * n + x] = new;
        }
        let mut delta: isize = 0;
        let mut updates = Vec::new();
        for p in 0..colors {
            for q in p + 1..colors {
                if [p, q].iter().any(|&x| x == a || x == b || x == c) {
                    let new = c4_count(&color, p, q);
                    delta += new as isize - pair_cost[p * colors + q] as isize;
                    updates.push((p, q, new));
                }
            }
        }
        if delta <= 0 || rng.gen_bool((-(delta as f64) / ANNEAL_TEMPERATURE).exp()) {
            for (p, q, v) in updates {
                pair_cost[p * colors + q] = v;
            }
            total = (total as isize + delta) as usize;
        } else {
            for &(x, y, old, _) in &changes {
                color[x * n + y] = old;
                color[y * n + x] = old;
            }
        }
    }
    let factors = (0..colors)
        .map(|c| {
            let mut fac = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    if color[x * n + y] == c {
                        fac.push((x as u32, y as u32));
                    }
                }
            }
            fac
        })
        .collect();
    let out = OneFactorization { order: f.order, factors };
    out.verify().map_err(Error::Certificate)?;
    Ok(out)
}

type EdgeChange = (usize, usize, usize, usize);

fn color_partner(color: &[usize], n: usize, v: usize, c: usize) -> usize {
    (0..n).find(|&u| u != v && color[v * n + u] == c).unwrap()
}

/// Swaps colors `a` and `c` along the `(a, c)` cycle through a vertex that
/// lies on a 4-cycle component of the `(a, b)` union.
fn kempe_move(color: &[usize], n: usize, a: usize, b: usize, c: usize, rng: &mut ChaCha8Rng) -> Vec<EdgeChange> {
    let on_c4: Vec<usize> = (0..n)
        .filter(|&v| {
            let w = color_partner(color, n, v, a);
            let x = color_partner(color, n, w, b);
            color_partner(color, n, color_partner(color, n, x, a), b) == v
        })
        .collect();
    let Some(&start) = on_c4.choose(rng) else {
        return Vec::new();
    };
    let mut changes = Vec::new();
    let (mut v, mut use_a) = (start, true);
    loop {
        let cur = if use_a { a } else { c };
        let w = color_partner(color, n, v, cur);
        changes.push((v, w, cur, if use_a { c } else { a }));
        v = w;
        use_a = !use_a;
        if v == start {
            return changes;
        }
    }
}

/// Recolors the cubic graph formed by three factors with a random
/// decomposition into three perfect matchings.
fn rebuild_move(color: &[usize], n: usize, cols: [usize; 3], rng: &mut ChaCha8Rng) -> Vec<EdgeChange> {
    let adj: Vec<Vec<usize>> = (0..n).map(|v| cols.iter().map(|&c| color_partner(color, n, v, c)).collect()).collect();
    fn matching(adj: &[Vec<usize>], mate: &mut Vec<usize>, rng: &mut ChaCha8Rng, nodes: &mut u32) -> bool {
        *nodes += 1;
        if *nodes > 10_000 {
            return false;
        }
        let Some(u) = (0..mate.len()).find(|&u| mate[u] == usize::MAX) else {
            return true;
        };
        let mut vs: Vec<usize> = adj[u].iter().copied().filter(|&v| mate[v] == usize::MAX).collect();
        vs.shuffle(rng);
        for v in vs {
            mate[u] = v;
            mate[v] = u;
            if matching(adj, mate, rng, nodes) {
                return true;
            }
            mate[u] = usize::MAX;
            mate[v] = usize::MAX;
        }
        false
    }
    let mut mate = vec![usize::MAX; n];
    let mut nodes = 0;
    if !matching(&adj, &mut mate, rng, &mut nodes) {
        return Vec::new();
    }
    // the complementary 2-factor must consist of even cycles
    let mut new_color = vec![usize::MAX; n * n];
    let perm = {
        let mut p = cols;
        p.shuffle(rng);
        p
    };
    for v in 0..n {
        new_color[v * n + mate[v]] = perm[0];
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut prev, mut v, mut k) = (usize::MAX, s, 0usize);
        loop {
            seen[v] = true;
            let next = adj[v].iter().copied().find(|&w| w != mate[v] && w != prev).unwrap();
            let c = perm[1 + k % 2];
            new_color[v * n + next] = c;
            new_color[next * n + v] = c;
            k += 1;
            prev = v;
            v = next;
            if v == s {
                break;
            }
        }
        if k % 2 == 1 {
            return Vec::new();
        }
    }
    let mut changes = Vec::new();
    for v in 0..n {
        for &w in &adj[v] {
            if v < w && new_color[v * n + w] != color[v * n + w] {
                changes.push((v, w, color[v * n + w], new_color[v * n + w]));
            }
        }
    }
    changes
}

/// JSON form shared by designs, resolutions and 1-factorizations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DesignFile {
    pub n: u32,
    pub blocks: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classes: Option<Vec<Vec<usize>>>,
}

impl From<&Design> for DesignFile {
    fn from(d: &Design) -> Self {
        DesignFile { n: d.n, blocks: d.blocks.clone(), classes: None }
    }
}

impl From<&Resolution> for DesignFile {
    fn from(r: &Resolution) -> Self {
        DesignFile { n: r.design.n, blocks: r.design.blocks.clone(), classes: Some(r.classes.clone()) }
    }
}

impl From<&OneFactorization> for DesignFile {
    /// Edges become 1-based 2-point blocks; factors become classes.
    fn from(f: &OneFactorization) -> Self {
        let mut blocks = Vec::new();
        let mut classes = Vec::new();
        for fac in &f.factors {
            let mut class = Vec::new();
            for &(a, b) in fac {
                class.push(blocks.len());
                blocks.push(vec![a + 1, b + 1]);
            }
            classes.push(class);
        }
        DesignFile { n: f.order, blocks, classes: Some(classes) }
    }
}

/// Histogram of union cycle lengths over all factor pairs.
pub fn union_cycle_histogram(f: &OneFactorization) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for a in 0..f.factors.len() {
        for b in a + 1..f.factors.len() {
            for len in f.union_cycle_lengths(a, b) {
                *h.entry(len).or_insert(0) += 1;
            }
        }
    }
    h
}

/// Graphs with at most this many edges are decomposed by exact cover, which
/// also proves when no decomposition exists.
const EXACT_TRIANGLE_EDGES: usize = 120;

/// Decomposes `K_n` minus `removed` into edge-disjoint triangles. Points are
/// `1..=n`. Small graphs go to exact cover; larger ones to hill climbing: join
/// two uncovered edges at a live point into a triangle, evicting the triangle
/// that already holds the third edge. `step_budget` bounds either search.
pub fn triangle_decomposition(n: u32, removed: &[(u32, u32)], seed: u64, step_budget: u64) -> Result<Vec<[u32; 3]>> {
    if n < 3 {
        return domain(format!("triangle decomposition needs n >= 3; got n={n}"));
    }
    let size = n as usize + 1;
    let mut allowed = vec![true; size * size];
    for p in 0..size {
        allowed[p * size + p] = false;
    }
    for &(a, b) in removed {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return domain(format!("removed edge {{{a},{b}}} is not an edge of K_{n}"));
        }
        allowed[a as usize * size + b as usize] = false;
        allowed[b as usize * size + a as usize] = false;
    }
    let degree = |p: usize| (1..size).filter(|&q| allowed[p * size + q]).count();
    if let Some(p) = (1..size).find(|&p| degree(p) % 2 == 1) {
        return domain(format!("point {p} has odd degree after removal"));
    }
    let edges: usize = (1..size).map(degree).sum::<usize>() / 2;
    if !edges.is_multiple_of(3) {
        return domain(format!("{edges} edges remain; not a multiple of 3"));
    }
    let target = edges / 3;
    if edges <= EXACT_TRIANGLE_EDGES {
        return exact_triangle_decomposition(n, &allowed, step_budget);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // slot of the triangle holding each covered edge
    let mut holder: Vec<Option<usize>> = vec![None; size * size];
    let mut triangles: Vec<Option<[u32; 3]>> = Vec::new();
    let mut free_slots: Vec<usize> = Vec::new();
    let mut live_count = 0usize;
    let free_at = |holder: &Vec<Option<usize>>, x: usize| -> Vec<usize> {
        (1..size).filter(|&y| allowed[x * size + y] && holder[x * size + y].is_none()).collect()
    };
    for _ in 0..step_budget {
        if live_count == target {
            let mut out: Vec<[u32; 3]> = triangles.into_iter().flatten().collect();
            for t in &mut out {
                t.sort_unstable();
            }
            out.sort_unstable();
            return Ok(out);
        }
        let live: Vec<usize> = (1..size).filter(|&x| !free_at(&holder, x).is_empty()).collect();
        let x = live[rng.gen_range(0..live.len())];
        let nbrs = free_at(&holder, x);
        let y = nbrs[rng.gen_range(0..nbrs.len())];
        let partners: Vec<usize> = nbrs.iter().copied().filter(|&z| z != y && allowed[y * size + z]).collect();
        if partners.is_empty() {
            continue;
        }
        let z = partners[rng.gen_range(0..partners.len())];
        if let Some(old) = holder[y * size + z] {
            let [a, b, c] = triangles[old].take().expect("holder points at a live triangle");
            for (p, q) in [(a, b), (b, c), (a, c)] {
                holder[p as usize * size + q as usize] = None;
                holder[q as usize * size + p as usize] = None;
            }
            free_slots.push(old);
            live_count -= 1;
        }
        let slot = free_slots.pop().unwrap_or_else(|| {
            triangles.push(None);
            triangles.len() - 1
        });
        triangles[slot] = Some([x as u32, y as u32, z as u32]);
        for (p, q) in [(x, y), (y, z), (x, z)] {
            holder[p * size + q] = Some(slot);
            holder[q * size + p] = Some(slot);
        }
        live_count += 1;
    }
    Err(Error::SearchExhausted(format!("no triangle decomposition of K_{n} minus {} edges within {step_budget} steps", removed.len())))
}

fn exact_triangle_decomposition(n: u32, allowed: &[bool], node_budget: u64) -> Result<Vec<[u32; 3]>> {
    let size = n as usize + 1;
    let mut index = vec![usize::MAX; size * size];
    let mut count = 0;
    for a in 1..size {
        for b in a + 1..size {
            if allowed[a * size + b] {
                index[a * size + b] = count;
                count += 1;
            }
        }
    }
    let mut triples = Vec::new();
    let mut options = Vec::new();
    for a in 1..size {
        for b in a + 1..size {
            for c in b + 1..size {
                if allowed[a * size + b] && allowed[b * size + c] && allowed[a * size + c] {
                    triples.push([a as u32, b as u32, c as u32]);
                    options.push(vec![index[a * size + b], index[b * size + c], index[a * size + c]]);
                }
            }
        }
    }
    match first_exact_cover(count, &options, node_budget)? {
        Some(chosen) => Ok(chosen.into_iter().map(|i| triples[i]).collect()),
        None => Err(Error::SearchExhausted(format!("K_{n} minus the given edges has no triangle decomposition"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Design {
        construct_sts(7).unwrap()
    }

    #[test]
    fn sts_small_orders() {
        let d = fano();
        assert_eq!(d.blocks.len(), 7);
        assert_eq!(d.params().r, 3);
        assert!(verify_design(&d).passed());
        let d = construct_sts(9).unwrap();
        assert_eq!((d.blocks.len(), d.params().r), (12, 4));
        assert!(matches!(construct_sts(6), Err(Error::Domain(_))));
        assert!(matches!(construct_sts(1), Err(Error::Domain(_))));
        assert_eq!(construct_sts(3).unwrap().blocks, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn sts_pair_audit_up_to_43() {
        for n in (3..=43).filter(|n| matches!(n % 6, 1 | 3)) {
            let d = construct_sts(n).unwrap();
            let rep = verify_design(&d);
            assert!(rep.passed(), "STS({n}): {:?}", rep.bad_pairs.first());
            assert_eq!(d.blocks.len() as u32, n * (n - 1) / 6);
        }
    }

    #[test]
    fn tampered_fano_lists_bad_pairs() {
        let mut d = fano();
        let old = d.blocks[0][0];
        let replacement = (1..=7).find(|p| !d.blocks[0].contains(p)).unwrap();
        d.blocks[0][0] = replacement;
        d.blocks[0].sort_unstable();
        let rep = verify_design(&d);
        assert!(!rep.pair_balance_ok);
        assert!(!rep.replication_ok);
        assert!(!rep.bad_pairs.is_empty());
        // every listed pair involves the moved point or its replacement
        assert!(rep.bad_pairs.iter().all(|&(a, b, _)| [a, b].contains(&old) || [a, b].contains(&replacement)));
    }

    #[test]
    fn parallel_classes() {
        for n in [9, 15, 21] {
            let d = construct_sts(n).unwrap();
            let class = find_parallel_class(&d).unwrap().expect("Bose systems have a parallel class");
            assert_eq!(class.len() as u32, n / 3);
            let mut pts: Vec<u32> = class.iter().flat_map(|&b| d.blocks[b].clone()).collect();
            pts.sort_unstable();
            assert_eq!(pts, (1..=n).collect::<Vec<_>>());
        }
        assert!(matches!(find_parallel_class(&fano()), Err(Error::Domain(_))));
    }

    #[test]
    fn kts_small() {
        let r = construct_kts(9).unwrap();
        assert_eq!(r.classes.len(), 4);
        assert!(r.classes.iter().all(|c| c.len() == 3));
        r.verify().unwrap();
        let r = construct_kts(15).unwrap();
        assert_eq!(r.classes.len(), 7);
        assert!(r.classes.iter().all(|c| c.len() == 5));
        assert!(matches!(construct_kts(13), Err(Error::Domain(_))));
    }

    #[test]
    fn kts_all_orders() {
        for n in [3, 21, 27, 33, 39] {
            let r = construct_kts(n).unwrap();
            assert_eq!(r.classes.len() as u32, (n - 1) / 2);
        }
    }

    #[test]
    fn exact_cover_resolution_agrees() {
        // STS(9) is unique up to isomorphism, so the Bose system must resolve
        let d = construct_sts(9).unwrap();
        let r = resolve_by_exact_cover(&d, EXACT_COVER_BUDGET).unwrap().unwrap();
        r.verify().unwrap();
        assert_eq!(r.classes.len(), 4);
        // re-resolving the 1-rotational KTS(15) blocks independently
        let k = construct_kts(15).unwrap();
        let r = resolve_by_exact_cover(&k.design, EXACT_COVER_BUDGET).unwrap().unwrap();
        r.verify().unwrap();
    }

    #[test]
    fn projective_plane_of_order_four() {
        let d = construct_design_21_5_1();
        let rep = verify_design(&d);
        assert!(rep.passed());
        let p = rep.params;
        assert_eq!((p.n, p.b, p.k, p.r, p.lambda), (21, 21, 5, 5, 1));
        for i in 0..21 {
            assert_eq!(d.blocks_through(i as u32 + 1).len(), 5);
            for j in i + 1..21 {
                let common = d.blocks[i].iter().filter(|p| d.blocks[j].contains(p)).count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn gf4_is_a_field() {
        for a in 1..4u8 {
            assert!((1..4u8).any(|b| gf4_mul(a, b) == 1));
            assert_eq!(gf4_add(a, a), 0);
        }
        // w^2 = w + 1
        assert_eq!(gf4_mul(2, 2), 3);
        assert_eq!(gf4_add(2, 1), 3);
    }

    #[test]
    fn circle_method() {
        for order in [6, 8] {
            let f = construct_one_factorization(order).unwrap();
            f.verify().unwrap();
            assert_eq!(f.factors.len() as u32, order - 1);
            assert!(f.factors.iter().all(|x| x.len() as u32 == order / 2));
        }
        assert!(construct_one_factorization(5).is_err());
    }

    #[test]
    fn c4_free_orders() {
        let f = c4_free_one_factorization(6, 0, DEFAULT_SWAP_BUDGET).unwrap();
        // any two factors of K_6 unite into a 6-cycle
        assert!(union_cycle_histogram(&f).keys().all(|&l| l == 6));
        for order in (8..=40).step_by(2) {
            let f = c4_free_one_factorization(order, 0, DEFAULT_SWAP_BUDGET).unwrap();
            f.verify().unwrap();
            assert!(union_cycle_histogram(&f).keys().all(|&l| l >= 6), "order {order}");
        }
        assert!(matches!(c4_free_one_factorization(4, 0, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn repair_removes_four_cycles() {
        // the circle method on K_10 pairs factors i and i+3 into 4-cycles
        let bad = construct_one_factorization(10).unwrap();
        assert_eq!(bad.four_cycle_pairs().len(), 9);
        let fixed = repair_four_cycles(&bad, 4, DEFAULT_SWAP_BUDGET).unwrap();
        fixed.verify().unwrap();
        assert!(fixed.four_cycle_pairs().is_empty());
        assert_eq!(fixed, repair_four_cycles(&bad, 4, DEFAULT_SWAP_BUDGET).unwrap());
        assert!(matches!(repair_four_cycles(&bad, 4, 0), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn triangle_decompositions() {
        let tris = triangle_decomposition(9, &[], 1, 100_000).unwrap();
        let d = Design::new(9, 3, 1, tris.iter().map(|t| t.to_vec()).collect());
        assert!(verify_design(&d).passed());
        // K_7 minus a 6-cycle leaves five triangles
        let hex = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)];
        let tris = triangle_decomposition(7, &hex, 3, 100_000).unwrap();
        assert_eq!(tris.len(), 5);
        assert!(matches!(triangle_decomposition(7, &[(1, 2)], 0, 10), Err(Error::Domain(_))));
        assert!(matches!(triangle_decomposition(4, &[], 0, 10), Err(Error::Domain(_))));
        // large enough for hill climbing
        let tris = triangle_decomposition(25, &[], 7, 2_000_000).unwrap();
        let d = Design::new(25, 3, 1, tris.iter().map(|t| t.to_vec()).collect());
        assert!(verify_design(&d).passed());
    }

    #[test]
    fn design_file_shapes() {
        let f = construct_one_factorization(6).unwrap();
        let file = DesignFile::from(&f);
        assert_eq!(file.blocks.len(), 15);
        assert_eq!(file.classes.as_ref().unwrap().len(), 5);
        let json = serde_json::to_string(&DesignFile::from(&fano())).unwrap();
        assert!(json.starts_with("{\"n\":7,\"blocks\":[["));
        assert!(!json.contains("classes"));
    }
}
