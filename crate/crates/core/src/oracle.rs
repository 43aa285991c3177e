//! Exponential-time ground truth for `χ`, `α`, `ψ` and `Γ` on small graphs.
//!
//! Graphs are copied into 64-bit adjacency masks, so no cap can exceed 64
//! vertices. Every search is deterministic and counts its nodes.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kneser::KneserGraph;

pub const CHROMATIC_CAP: usize = 64;
pub const ACHROMATIC_CAP: usize = 16;
pub const GRUNDY_CAP: usize = 16;
pub const DEFAULT_NODE_BUDGET: u64 = 500_000_000;

/// Size cap and node budget for one oracle call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    pub node_budget: u64,
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { cap, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Optimal value with a coloring attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub value: usize,
    pub witness: Coloring,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Chi,
    Alpha,
    Psi,
    Grundy,
}

impl std::str::FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi" => Ok(Param::Chi),
            "alpha" => Ok(Param::Alpha),
            "psi" => Ok(Param::Psi),
            "grundy" => Ok(Param::Grundy),
            _ => Err(Error::Domain(format!("unknown parameter {s:?}; expected alpha, psi, grundy or chi"))),
        }
    }
}

impl Param {
    pub fn default_cap(self) -> usize {
        match self {
            Param::Chi => CHROMATIC_CAP,
            Param::Alpha | Param::Psi => ACHROMATIC_CAP,
            Param::Grundy => GRUNDY_CAP,
        }
    }
}

/// JSON record of one oracle run. `seconds` is wall time and varies between runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub param: Param,
    pub n: u32,
    pub k: u32,
    pub value: usize,
    pub nodes_explored: u64,
    pub seconds: f64,
}

/// Runs one oracle on `K(n,k)`; `cap` defaults to the parameter's cap.
pub fn run_oracle(param: Param, n: u32, k: u32, cap: Option<usize>) -> Result<OracleResult> {
    let g = KneserGraph::new(n, k)?;
    let limits = Limits::with_cap(cap.unwrap_or(param.default_cap()));
    let start = Instant::now();
    let out = match param {
        Param::Chi => exact_chromatic(&g, limits)?,
        Param::Alpha => exact_achromatic(&g, limits)?,
        Param::Psi => exact_pseudoachromatic(&g, limits)?,
        Param::Grundy => exact_grundy(&g, limits)?,
    };
    Ok(OracleResult {
        param,
        n,
        k,
        value: out.value,
        nodes_explored: out.nodes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

struct Masks {
    adj: Vec<u64>,
    degree: Vec<usize>,
    edges: usize,
}

impl Masks {
    fn of<G: Graph + ?Sized>(g: &G, limits: Limits, what: &str) -> Result<Self> {
        let n = g.order();
        let cap = limits.cap.min(64);
        if n > cap {
            return Err(Error::Size(format!("{what} oracle is capped at {cap} vertices; graph has {n}")));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let degree: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
        let edges = degree.iter().sum::<usize>() / 2;
        Ok(Masks { adj, degree, edges })
    }

    fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Static order: highest degree first, then the vertex with most earlier
    /// neighbors, so constraints bite early.
    fn search_order(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| placed & (1 << v) == 0)
                .max_by_key(|&v| ((self.adj[v] & placed).count_ones(), self.degree[v], std::cmp::Reverse(v)))
                .expect("an unplaced vertex remains");
            order.push(v);
            placed |= 1 << v;
        }
        order
    }

    /// Size of a greedily grown clique.
    fn greedy_clique(&self) -> usize {
        let n = self.adj.len();
        let mut best = usize::from(n > 0);
        for start in 0..n {
            let mut cand = self.adj[start];
            let mut size = 1;
            while cand != 0 {
                let v = (0..n).filter(|&v| cand & (1 << v) != 0).max_by_key(|&v| (self.adj[v] & cand).count_ones()).unwrap();
                size += 1;
                cand &= self.adj[v];
            }
            best = best.max(size);
        }
        best
    }
}

fn budget_check(nodes: u64, limits: Limits, what: &str) -> Result<()> {
    if nodes > limits.node_budget {
        return Err(Error::SearchExhausted(format!("{what} search passed {} nodes", limits.node_budget)));
    }
    Ok(())
}

/// Chromatic number by increasing `l` from a clique lower bound.
pub fn exact_chromatic<G: Graph + ?Sized>(g: &G, limits: Limits) -> Result<Outcome> {
    let m = Masks::of(g, limits, "chromatic")?;
    let n = m.adj.len();
    if n == 0 {
        return Ok(Outcome { value: 0, witness: Coloring::from_classes(Vec::new()), nodes: 0 });
    }
    let mut nodes = 0;
    for l in m.greedy_clique().. {
        let mut color = vec![usize::MAX; n];
        if proper_search(&m, l, &mut color, 0, &mut nodes, limits)? {
            return Ok(Outcome { value: l, witness: Coloring::from_assignment(&color)?, nodes });
        }
    }
    unreachable!("n colors always suffice")
}

/// DSATUR-order search for a proper coloring with at most `l` colors.
fn proper_search(m: &Masks, l: usize, color: &mut [usize], used: usize, nodes: &mut u64, limits: Limits) -> Result<bool> {
    *nodes += 1;
    budget_check(*nodes, limits, "chromatic")?;
    let n = color.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for v in (0..n).filter(|&v| color[v] == usize::MAX) {
        let sat = neighbor_colors(m, color, v).count_ones() as usize;
        let key = (sat, m.degree[v], v);
        if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
            best = Some(key);
        }
    }
    let Some((_, _, v)) = best else { return Ok(true) };
    let forbidden = neighbor_colors(m, color, v);
    for c in 0..(used + 1).min(l) {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        color[v] = c;
        if proper_search(m, l, color, used.max(c + 1), nodes, limits)? {
            return Ok(true);
        }
    }
    color[v] = usize::MAX;
    Ok(false)
}

fn neighbor_colors(m: &Masks, color: &[usize], v: usize) -> u64 {
    let mut mask = 0u64;
    let mut nb = m.adj[v];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if color[w] != usize::MAX {
            mask |= 1 << color[w];
        }
    }
    mask
}

/// Achromatic number: largest `l` with a proper complete `l`-coloring.
pub fn exact_achromatic<G: Graph + ?Sized>(g: &G, limits: Limits) -> Result<Outcome> {
    complete_max(g, limits, true)
}

/// Pseudoachromatic number: largest `l` with a complete `l`-coloring.
pub fn exact_pseudoachromatic<G: Graph + ?Sized>(g: &G, limits: Limits) -> Result<Outcome> {
    complete_max(g, limits, false)
}

/// Both searches climb `l` and stop at the first infeasible value. Feasible
/// values form an interval: merging two classes keeps a coloring complete,
/// and proper complete colorings exist for every `l` from `χ` to `α`.
fn complete_max<G: Graph + ?Sized>(g: &G, limits: Limits, proper: bool) -> Result<Outcome> {
    let what = if proper { "achromatic" } else { "pseudoachromatic" };
    let m = Masks::of(g, limits, what)?;
    let n = m.adj.len();
    if n == 0 {
        return Ok(Outcome { value: 0, witness: Coloring::from_classes(Vec::new()), nodes: 0 });
    }
    let start = if proper { exact_chromatic(g, limits)?.value } else { 1 };
    let order = m.search_order();
    let mut nodes = 0;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for l in start..=n {
        let mut s = CompleteSearch::new(&m, l, proper);
        let found = s.run(&order, 0, &mut nodes, limits, what)?;
        if !found {
            break;
        }
        best = Some((l, s.color));
    }
    let (value, color) = best.expect("one color class is always complete");
    Ok(Outcome { value, witness: Coloring::from_assignment(&color)?, nodes })
}

struct CompleteSearch<'a> {
    m: &'a Masks,
    l: usize,
    proper: bool,
    color: Vec<usize>,
    used: usize,
    // edges between classes i and j, row-major l x l
    pair_edges: Vec<u32>,
    missing: usize,
    // edges with an unassigned endpoint
    open_edges: usize,
    // minimum class size: a class must see l - 1 others through at most Δ edges per vertex
    min_class: usize,
    class_size: Vec<usize>,
}

impl<'a> CompleteSearch<'a> {
    fn new(m: &'a Masks, l: usize, proper: bool) -> Self {
        let delta = m.max_degree().max(1);
        CompleteSearch {
            m,
            l,
            proper,
            color: vec![usize::MAX; m.adj.len()],
            used: 0,
            pair_edges: vec![0; l * l],
            missing: l * (l - 1) / 2,
            open_edges: m.edges,
            min_class: if l > 1 { (l - 1).div_ceil(delta) } else { 1 },
            class_size: vec![0; l],
        }
    }

    fn feasible(&self, remaining: usize) -> bool {
        if self.missing > self.open_edges {
            return false;
        }
        let short: usize = (0..self.l).map(|c| self.min_class.saturating_sub(self.class_size[c])).sum();
        short <= remaining
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.class_size[c] += 1;
        let mut nb = self.m.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let d = self.color[w];
            if d == usize::MAX {
                continue;
            }
            self.open_edges -= 1;
            if d != c {
                let i = c * self.l + d;
                if self.pair_edges[i] == 0 {
                    self.missing -= 1;
                }
                self.pair_edges[i] += 1;
                self.pair_edges[d * self.l + c] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        self.class_size[c] -= 1;
        let mut nb = self.m.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let d = self.color[w];
            if d == usize::MAX {
                continue;
            }
            self.open_edges += 1;
            if d != c {
                let i = c * self.l + d;
                self.pair_edges[i] -= 1;
                self.pair_edges[d * self.l + c] -= 1;
                if self.pair_edges[i] == 0 {
                    self.missing += 1;
                }
            }
        }
    }

    fn run(&mut self, order: &[usize], depth: usize, nodes: &mut u64, limits: Limits, what: &str) -> Result<bool> {
        *nodes += 1;
        budget_check(*nodes, limits, what)?;
        if !self.feasible(order.len() - depth) {
            return Ok(false);
        }
        if depth == order.len() {
            return Ok(self.used == self.l && self.missing == 0);
        }
        let v = order[depth];
        let forbidden = if self.proper { neighbor_colors(self.m, &self.color, v) } else { 0 };
        let top = (self.used + 1).min(self.l);
        // a fresh class first, then existing ones from the newest down
        for c in (0..top).rev() {
            if forbidden & (1 << c) != 0 {
                continue;
            }
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            self.assign(v, c);
            if self.run(order, depth + 1, nodes, limits, what)? {
                return Ok(true);
            }
            self.unassign(v);
            self.used = prev_used;
        }
        Ok(false)
    }
}

/// Grundy number: largest `l` with a proper coloring in which every vertex of
/// color `j` has neighbors of all colors below `j`. Searched downward from `Δ + 1`.
pub fn exact_grundy<G: Graph + ?Sized>(g: &G, limits: Limits) -> Result<Outcome> {
    let m = Masks::of(g, limits, "Grundy")?;
    let n = m.adj.len();
    if n == 0 {
        return Ok(Outcome { value: 0, witness: Coloring::from_classes(Vec::new()), nodes: 0 });
    }
    let order = m.search_order();
    let mut nodes = 0;
    for l in (1..=m.max_degree() + 1).rev() {
        let mut color = vec![usize::MAX; n];
        if grundy_search(&m, l, &order, 0, &mut color, &mut nodes, limits)? {
            return Ok(Outcome { value: l, witness: Coloring::from_assignment(&color)?, nodes });
        }
    }
    unreachable!("any greedy coloring is a Grundy coloring with at most Δ + 1 colors")
}

/// Can `v` (colored) still see every color below its own?
fn grundy_slack_ok(m: &Masks, color: &[usize], v: usize) -> bool {
    let j = color[v];
    let mut seen = 0u64;
    let mut open = 0;
    let mut nb = m.adj[v];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        match color[w] {
            usize::MAX => open += 1,
            c => seen |= 1 << c,
        }
    }
    let below = if j == 0 { 0 } else { (1u64 << j) - 1 };
    (below & !seen).count_ones() as usize <= open
}

fn grundy_search(
    m: &Masks,
    l: usize,
    order: &[usize],
    depth: usize,
    color: &mut [usize],
    nodes: &mut u64,
    limits: Limits,
) -> Result<bool> {
    *nodes += 1;
    budget_check(*nodes, limits, "Grundy")?;
    if depth == order.len() {
        return Ok(color.contains(&(l - 1)));
    }
    let v = order[depth];
    let forbidden = neighbor_colors(m, color, v);
    // the top color needs l - 1 neighbors
    let top = if m.degree[v] >= l - 1 { l } else { l - 1 };
    for c in (0..top).rev() {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        color[v] = c;
        let mut ok = grundy_slack_ok(m, color, v);
        let mut nb = m.adj[v];
        while ok && nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if color[w] != usize::MAX {
                ok = grundy_slack_ok(m, color, w);
            }
        }
        if ok && grundy_search(m, l, order, depth + 1, color, nodes, limits)? {
            return Ok(true);
        }
    }
    color[v] = usize::MAX;
    Ok(false)
}
