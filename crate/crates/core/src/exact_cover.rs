//! Algorithm X with dancing links, primary items only.
//!
//! Used for parallel classes, resolutions of triple systems, and triangle
//! decompositions of `K_n` minus a forest.

use crate::error::{Error, Result};

const ROOT: usize = 0;

struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    /// column header of each node; for headers, the header itself
    col: Vec<usize>,
    /// option index of each non-header node
    row: Vec<usize>,
    size: Vec<usize>,
}

impl Links {
    fn new(items: usize, options: &[Vec<usize>]) -> Self {
        let headers = items + 1;
        let mut l = Links {
            left: (0..headers).map(|i| if i == 0 { items } else { i - 1 }).collect(),
            right: (0..headers).map(|i| if i == items { 0 } else { i + 1 }).collect(),
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            col: (0..headers).collect(),
            row: vec![usize::MAX; headers],
            size: vec![0; headers],
        };
        for (r, opt) in options.iter().enumerate() {
            let first = l.left.len();
            for (j, &item) in opt.iter().enumerate() {
                let c = item + 1;
                let node = l.left.len();
                let last_in_col = l.up[c];
                l.up.push(last_in_col);
                l.down.push(c);
                l.down[last_in_col] = node;
                l.up[c] = node;
                l.col.push(c);
                l.row.push(r);
                l.size[c] += 1;
                if j == 0 {
                    l.left.push(node);
                    l.right.push(node);
                } else {
                    let prev = node - 1;
                    l.left.push(prev);
                    l.right.push(first);
                    l.right[prev] = node;
                    l.left[first] = node;
                }
            }
        }
        l
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                self.size[self.col[j]] += 1;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }
}

/// Finds the first exact cover of `items` (numbered `0..items`) by `options`,
/// choosing the column of minimum remaining size at every level.
///
/// Returns the chosen option indices in ascending order, `Ok(None)` when the
/// search space is exhausted, and [`Error::SearchExhausted`] when more than
/// `node_budget` search nodes would be needed.
pub fn first_exact_cover(items: usize, options: &[Vec<usize>], node_budget: u64) -> Result<Option<Vec<usize>>> {
    if let Some(bad) = options.iter().flatten().find(|&&i| i >= items) {
        return Err(Error::Shape(format!("option references item {bad} of {items}")));
    }
    let mut links = Links::new(items, options);
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    match search(&mut links, &mut chosen, &mut nodes, node_budget) {
        Some(true) => {
            let mut rows: Vec<usize> = chosen.iter().map(|&n| links.row[n]).collect();
            rows.sort_unstable();
            Ok(Some(rows))
        }
        Some(false) => Ok(None),
        None => Err(Error::SearchExhausted(format!("exact cover exceeded {node_budget} nodes"))),
    }
}

fn search(l: &mut Links, chosen: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> Option<bool> {
    if l.right[ROOT] == ROOT {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let mut best = l.right[ROOT];
    let mut c = l.right[best];
    while c != ROOT {
        if l.size[c] < l.size[best] {
            best = c;
        }
        c = l.right[c];
    }
    if l.size[best] == 0 {
        return Some(false);
    }
    l.cover(best);
    let mut r = l.down[best];
    while r != best {
        chosen.push(r);
        let mut j = l.right[r];
        while j != r {
            l.cover(l.col[j]);
            j = l.right[j];
        }
        let outcome = search(l, chosen, nodes, budget);
        if outcome == Some(true) {
            return outcome;
        }
        let mut j = l.left[r];
        while j != r {
            l.uncover(l.col[j]);
            j = l.left[j];
        }
        chosen.pop();
        outcome?;
        r = l.down[r];
    }
    l.uncover(best);
    Some(false)
}
