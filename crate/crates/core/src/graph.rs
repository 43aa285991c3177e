use crate::kneser::KSubset;

/// Minimal read-only graph interface shared by Kneser graphs, disjointness
/// graphs and the small auxiliary graphs used by the oracles.
pub trait Graph {
    fn order(&self) -> usize;
    fn is_adjacent(&self, u: usize, v: usize) -> bool;

    fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order()).filter(|&u| u != v && self.is_adjacent(u, v)).collect()
    }

    /// Subset label of a vertex, when the graph's vertices are k-subsets.
    fn label(&self, _v: usize) -> Option<KSubset> {
        None
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.neighbors(v).len()).max().unwrap_or(0)
    }
}

/// Adjacency-list graph with optional subset labels.
#[derive(Clone, Debug, Default)]
pub struct DenseGraph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<KSubset>>,
}

impl DenseGraph {
    pub fn new(order: usize) -> Self {
        DenseGraph { adj: vec![Vec::new(); order], labels: None }
    }

    /// Builds the graph whose edges are the pairs accepted by `adjacent`.
    pub fn from_predicate(order: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = DenseGraph::new(order);
        for u in 0..order {
            for v in u + 1..order {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<KSubset>) -> Self {
        assert_eq!(labels.len(), self.adj.len());
        self.labels = Some(labels);
        self
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v && !self.adj[u].contains(&v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
    }

    /// Copies any graph into adjacency lists.
    pub fn from_graph<G: Graph + ?Sized>(g: &G) -> Self {
        let mut adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v)).collect();
        for row in &mut adj {
            row.sort_unstable();
        }
        let labels = (0..g.order()).map(|v| g.label(v)).collect::<Option<Vec<_>>>();
        DenseGraph { adj, labels }
    }

    /// The disjoint union of `m` edges: vertices `2t` and `2t + 1` form edge `t`.
    pub fn matching(m: usize) -> Self {
        let mut g = DenseGraph::new(2 * m);
        for t in 0..m {
            g.add_edge(2 * t, 2 * t + 1);
        }
        g
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl Graph for DenseGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v].clone()
    }

    fn label(&self, v: usize) -> Option<KSubset> {
        self.labels.as_ref().map(|l| l[v])
    }
}
