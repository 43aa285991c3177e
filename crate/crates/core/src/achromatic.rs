//! Optimal proper complete colorings of `K(n,2)` and their Grundy relabeling.
//!
//! Vertices of `K(n,2)` are read as edges of `K_n`, so a color class is a set
//! of edges of `K_n`. Classes used here are triangles, paths `{xy, yz}` with
//! center `y`, and single edges.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::alpha_upper_kn2;
use crate::coloring::{check_condition_c, verify_coloring, Check, Coloring};
use crate::designs::{construct_sts, find_parallel_class, triangle_decomposition, Design};
use crate::error::{domain, Error, Result};
use crate::kneser::{KSubset, KneserGraph};

/// A class as edges of `K_n` over points `1..=n`.
pub type EdgeClass = Vec<(u32, u32)>;

/// The 9-class pattern on `K_7`: five triangles, two paths, two single edges.
/// Point 7 is the only point that is neither a path center nor on a single edge.
pub const K7_PATTERN: [&[(u32, u32)]; 9] = [
    &[(1, 3), (1, 5), (3, 5)],
    &[(1, 4), (1, 7), (4, 7)],
    &[(2, 4), (2, 6), (4, 6)],
    &[(2, 5), (2, 7), (5, 7)],
    &[(3, 6), (3, 7), (6, 7)],
    &[(1, 2), (2, 3)],
    &[(3, 4)],
    &[(4, 5), (5, 6)],
    &[(1, 6)],
];

fn triangle(a: u32, b: u32, c: u32) -> EdgeClass {
    vec![(a, b), (b, c), (a, c)]
}

/// `{xy, xv}`, `{yz, yv}`, `{zx, zv}`: three paths covering `K_4` on `{x,y,z,v}`.
fn k4_pattern(x: u32, y: u32, z: u32, v: u32) -> Vec<EdgeClass> {
    vec![vec![(x, y), (x, v)], vec![(y, z), (y, v)], vec![(z, x), (z, v)]]
}

/// Class `i` is `{p_i p_{i+1}, p_i p_{i+2}}`, indices mod 5; covers `K_5`.
fn k5_pattern(p: [u32; 5]) -> Vec<EdgeClass> {
    (0..5).map(|i| vec![(p[i], p[(i + 1) % 5]), (p[i], p[(i + 2) % 5])]).collect()
}

/// [`K7_PATTERN`] with pattern point `i` sent to `map[i - 1]`.
fn k7_pattern(map: [u32; 7]) -> Vec<EdgeClass> {
    K7_PATTERN
        .iter()
        .map(|class| class.iter().map(|&(a, b)| (map[a as usize - 1], map[b as usize - 1])).collect())
        .collect()
}

fn to_coloring(g: &KneserGraph, classes: &[EdgeClass]) -> Result<Coloring> {
    let subsets: Vec<Vec<KSubset>> =
        classes.iter().map(|c| c.iter().map(|&(a, b)| KSubset::pair(a, b)).collect()).collect();
    Coloring::from_subset_classes(g, &subsets)
}

/// Proper, complete, condition (C), and the expected class count; otherwise a
/// certificate error naming the first failure.
fn certify(g: &KneserGraph, c: &Coloring, expected: usize) -> Result<()> {
    let n = g.n();
    if c.color_count() != expected {
        return Err(Error::Certificate(format!(
            "K({n},2): {} classes, expected {expected}",
            c.color_count()
        )));
    }
    let report = verify_coloring(g, c, &[Check::Proper, Check::Complete])?;
    if !report.passed() {
        let w: Vec<String> = report.witnesses.iter().map(ToString::to_string).collect();
        return Err(Error::Certificate(format!("K({n},2): {}", w.join("; "))));
    }
    // K(3,2) is the one case outside the accounting
    if n == 3 {
        return Ok(());
    }
    let cc = check_condition_c(g, c)?;
    if !cc.passed {
        return Err(Error::Certificate(format!(
            "K({n},2): condition (C) fails, exceptional points {:?}",
            cc.exceptional
        )));
    }
    Ok(())
}

/// Edge classes of the optimal coloring of `K(n,2)`, before verification.
pub fn achromatic_classes(n: u32) -> Result<Vec<EdgeClass>> {
    if n < 2 {
        return domain(format!("K(n,2) needs n >= 2; got n={n}"));
    }
    match n {
        2 => return Ok(vec![vec![(1, 2)]]),
        3 => return Ok(vec![triangle(1, 2, 3)]),
        4 => return Ok(k4_pattern(1, 2, 3, 4)),
        5 => return Ok(k5_pattern([1, 2, 3, 4, 5])),
        7 => return Ok(k7_pattern([1, 2, 3, 4, 5, 6, 7])),
        _ => {}
    }
    match n % 6 {
        0 | 2 => Ok(case_delete_point(n)?),
        3 | 5 => Ok(case_two_points(n)?),
        4 => Ok(case_one_point(n)?),
        _ => Ok(case_four_points(n, 0)?),
    }
}

/// STS(n+1) minus its last point: triangles, plus the blocks through the
/// deleted point as single edges.
fn case_delete_point(n: u32) -> Result<Vec<EdgeClass>> {
    let sts = construct_sts(n + 1)?;
    let v = n + 1;
    let mut classes: Vec<EdgeClass> = Vec::new();
    let mut singles = Vec::new();
    for b in &sts.blocks {
        if b.contains(&v) {
            let rest: Vec<u32> = b.iter().copied().filter(|&p| p != v).collect();
            singles.push(vec![(rest[0], rest[1])]);
        } else {
            classes.push(triangle(b[0], b[1], b[2]));
        }
    }
    classes.extend(singles);
    Ok(classes)
}

/// STS(n-2) plus points `u = n-1`, `v = n`. The first block becomes the
/// 5-class pattern on `{a,b,c,u,v}`; every other point `x` gives `{ux, xv}`.
fn case_two_points(n: u32) -> Result<Vec<EdgeClass>> {
    let sts = construct_sts(n - 2)?;
    let (u, v) = (n - 1, n);
    let first = sts.blocks[0].clone();
    let mut classes: Vec<EdgeClass> = sts.blocks[1..].iter().map(|b| triangle(b[0], b[1], b[2])).collect();
    classes.extend(k5_pattern([first[0], first[1], first[2], u, v]));
    for x in (1..=n - 2).filter(|x| !first.contains(x)) {
        classes.push(vec![(u, x), (x, v)]);
    }
    Ok(classes)
}

fn parallel_class(sts: &Design) -> Result<Vec<usize>> {
    find_parallel_class(sts)?
        .ok_or_else(|| Error::SearchExhausted(format!("STS({}) has no parallel class", sts.n)))
}

/// STS(n-1) plus `v = n`: each triangle of a parallel class becomes the
/// 3-path pattern on the triangle and `v`.
fn case_one_point(n: u32) -> Result<Vec<EdgeClass>> {
    let sts = construct_sts(n - 1)?;
    let v = n;
    let parallel = parallel_class(&sts)?;
    let mut classes = Vec::new();
    let mut paths = Vec::new();
    for (i, b) in sts.blocks.iter().enumerate() {
        if parallel.contains(&i) {
            paths.extend(k4_pattern(b[0], b[1], b[2], v));
        } else {
            classes.push(triangle(b[0], b[1], b[2]));
        }
    }
    classes.extend(paths);
    Ok(classes)
}

/// STS(n-4) with a parallel class, plus `a,b,c,d = n-3..n`. Every parallel
/// triangle but the last gets six classes on its join with `{a,b,c,d}`; the
/// last one and `{a,b,c,d}` carry the 9-class `K_7` pattern with `d` as its
/// uncovered point. `perm` selects which permutation of the other six points
/// the `K_7` pattern is laid on.
fn case_four_points(n: u32, perm: usize) -> Result<Vec<EdgeClass>> {
    let sts = construct_sts(n - 4)?;
    let (a, b, c, d) = (n - 3, n - 2, n - 1, n);
    let parallel = parallel_class(&sts)?;
    let mut classes = Vec::new();
    let mut joins = Vec::new();
    for (i, blk) in sts.blocks.iter().enumerate() {
        if !parallel.contains(&i) {
            classes.push(triangle(blk[0], blk[1], blk[2]));
        }
    }
    let (&last, rest) = parallel.split_last().expect("a parallel class is nonempty");
    for &i in rest {
        let [v1, v2, v3] = [sts.blocks[i][0], sts.blocks[i][1], sts.blocks[i][2]];
        joins.push(triangle(v1, v2, a));
        joins.push(triangle(v2, v3, b));
        joins.push(triangle(v1, v3, c));
        joins.push(vec![(a, v3), (v3, d)]);
        joins.push(vec![(b, v1), (v1, d)]);
        joins.push(vec![(c, v2), (v2, d)]);
    }
    let t = &sts.blocks[last];
    let six = nth_permutation([t[0], t[1], t[2], a, b, c], perm);
    classes.extend(joins);
    classes.extend(k7_pattern([six[0], six[1], six[2], six[3], six[4], six[5], d]));
    Ok(classes)
}

/// The `idx`-th permutation of `items` in lexicographic order of positions.
fn nth_permutation(items: [u32; 6], mut idx: usize) -> [u32; 6] {
    let mut pool = items.to_vec();
    let mut out = [0; 6];
    for (slot, o) in out.iter_mut().enumerate() {
        let f: usize = (1..6 - slot).product();
        *o = pool.remove(idx / f);
        idx %= f;
    }
    out
}

/// Proper complete coloring of `K(n,2)` with `⌊C(n+1,2)/3⌋` classes (one class for n = 3).
///
/// The result is verified (proper, complete, condition (C), class count)
/// before it is returned.
pub fn achromatic_coloring(n: u32) -> Result<Coloring> {
    let g = KneserGraph::new(n, 2)?;
    let expected = alpha_upper_kn2(n)? as usize;
    let first = to_coloring(&g, &achromatic_classes(n)?)?;
    let outcome = certify(&g, &first, expected);
    if outcome.is_ok() || n < 13 || n % 6 != 1 {
        return outcome.map(|()| first);
    }
    // the tail pattern's placement is not pinned down; try the others
    for perm in 1..720 {
        let c = to_coloring(&g, &case_four_points(n, perm)?)?;
        if certify(&g, &c, expected).is_ok() {
            return Ok(c);
        }
    }
    outcome.map(|()| first)
}

/// Reorders classes by size: triangles first, then paths, then single edges.
/// Ties keep their current order.
pub fn grundy_relabel(c: &Coloring) -> Result<Coloring> {
    if let Some(i) = c.classes().iter().position(|cl| cl.len() > 3) {
        return Err(Error::Shape(format!(
            "class {} has {} vertices; expected at most 3",
            i + 1,
            c.classes()[i].len()
        )));
    }
    let mut order: Vec<usize> = (0..c.color_count()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(c.classes()[i].len()));
    Ok(c.reordered(&order))
}

const GRUNDY_DECOMPOSITION_STEPS: u64 = 2_000_000;
const GRUNDY_LAYOUT_ATTEMPTS: usize = 500;
const GRUNDY_LAYOUT_NODES: u64 = 1_000_000;

/// Checks a leftover (non-triangle) class list: distinct edges, every point of
/// `K_n` left with even triangle degree, and each path's end pair free to lie
/// in a triangle.
fn leftover_ok(n: u32, leftover: &[EdgeClass]) -> bool {
    let mut edges: Vec<(u32, u32)> = leftover.iter().flatten().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    let total = edges.len();
    edges.dedup();
    if edges.len() != total {
        return false;
    }
    let mut degree = vec![0u32; n as usize + 1];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    if (1..=n).any(|p| (n - 1 - degree[p as usize]) % 2 == 1) {
        return false;
    }
    leftover.iter().filter(|c| c.len() == 2).all(|c| {
        let (x, z) = (c[0].1, c[1].1);
        edges.binary_search(&(x.min(z), x.max(z))).is_err()
    })
}

/// Depth-first search over leftover layouts in precedence order. Centers
/// `1..=m` carry paths whose ends lie later in the order; the last four points
/// form two single edges. For even `n`, point `n` is the center of a 3-edge
/// star onto centers `1, 2, 3`, placed before every path. End choices are
/// tried in random order; each complete layout goes to `leaf`, which returns
/// `true` to stop.
struct LayoutSearch<'a> {
    n: u32,
    m: u32,
    quad: [u32; 4],
    // leftover degree that leaves an even triangle degree
    parity: u32,
    degree: Vec<u32>,
    // end pairs so far, which must stay out of the leftover
    blocked: Vec<bool>,
    classes: Vec<EdgeClass>,
    nodes: u64,
    leaves: usize,
    rng: &'a mut ChaCha8Rng,
}

impl LayoutSearch<'_> {
    fn run(&mut self, i: u32, leaf: &mut dyn FnMut(&[EdgeClass]) -> bool) -> bool {
        self.nodes += 1;
        if self.leaves >= GRUNDY_LAYOUT_ATTEMPTS || self.nodes > GRUNDY_LAYOUT_NODES {
            return false;
        }
        if i > self.m {
            if self.quad.iter().any(|&q| (self.degree[q as usize] + 1) % 2 != self.parity) {
                return false;
            }
            let mut layout = self.classes.clone();
            layout.push(vec![(self.quad[0], self.quad[1])]);
            layout.push(vec![(self.quad[2], self.quad[3])]);
            if !leftover_ok(self.n, &layout) {
                return false;
            }
            self.leaves += 1;
            return leaf(&layout);
        }
        // nothing later touches center i, so its degree is final
        if (self.degree[i as usize] + 2) % 2 != self.parity {
            return false;
        }
        let size = self.n as usize + 1;
        let later: Vec<u32> =
            (i + 1..=self.m).chain(self.quad).filter(|&e| !self.blocked[i as usize * size + e as usize]).collect();
        let mut choices: Vec<(u32, u32)> = Vec::new();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                // center i + 1 is final after this step: touch it exactly when its parity needs it
                let touches_next = x == i + 1 || y == i + 1;
                if i < self.m && touches_next != ((self.degree[i as usize + 1] + 2) % 2 != self.parity) {
                    continue;
                }
                if (x, y) != (self.quad[0], self.quad[1]) && (x, y) != (self.quad[2], self.quad[3]) {
                    choices.push((x, y));
                }
            }
        }
        choices.shuffle(self.rng);
        for (x, y) in choices {
            self.degree[x as usize] += 1;
            self.degree[y as usize] += 1;
            let (xy, yx) = (x as usize * size + y as usize, y as usize * size + x as usize);
            let was_blocked = self.blocked[xy];
            self.blocked[xy] = true;
            self.blocked[yx] = true;
            self.classes.push(vec![(i, x), (i, y)]);
            if self.run(i + 1, leaf) {
                return true;
            }
            self.classes.pop();
            self.blocked[xy] = was_blocked;
            self.blocked[yx] = was_blocked;
            self.degree[x as usize] -= 1;
            self.degree[y as usize] -= 1;
            if self.leaves >= GRUNDY_LAYOUT_ATTEMPTS || self.nodes > GRUNDY_LAYOUT_NODES {
                return false;
            }
        }
        false
    }
}

/// Edge classes of an optimal coloring of `K(n,2)` for `n ≡ 3, 4, 5 (mod 6)`,
/// `n >= 9`, listed in an order that is already Grundy: triangles, then the
/// leftover classes, each of which touches only points whose own class comes
/// later.
pub fn grundy_classes(n: u32, seed: u64) -> Result<Vec<EdgeClass>> {
    if n < 9 || !matches!(n % 6, 3..=5) {
        return domain(format!("the ordered construction covers n ≡ 3, 4, 5 (mod 6), n >= 9; got n={n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tri_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let even = n.is_multiple_of(2);
    let m = if even { n - 5 } else { n - 4 };
    let mut degree = vec![0u32; n as usize + 1];
    let mut classes = Vec::new();
    if even {
        classes.push(vec![(n, 1), (n, 2), (n, 3)]);
        degree[n as usize] = 3;
        degree[1..=3].fill(1);
    }
    let mut search = LayoutSearch {
        n,
        m,
        quad: [m + 1, m + 2, m + 3, m + 4],
        parity: (n - 1) % 2,
        degree,
        blocked: vec![false; (n as usize + 1) * (n as usize + 1)],
        classes,
        nodes: 0,
        leaves: 0,
        rng: &mut rng,
    };
    let mut result = None;
    let mut failure = None;
    search.run(1, &mut |layout| {
        let removed: Vec<(u32, u32)> = layout.iter().flatten().copied().collect();
        match triangle_decomposition(n, &removed, tri_rng.gen(), GRUNDY_DECOMPOSITION_STEPS) {
            Ok(tris) => {
                let mut classes: Vec<EdgeClass> = tris.iter().map(|t| triangle(t[0], t[1], t[2])).collect();
                classes.extend_from_slice(layout);
                result = Some(classes);
                true
            }
            Err(Error::SearchExhausted(_)) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    result.ok_or_else(|| {
        Error::SearchExhausted(format!(
            "no ordered layout of K({n},2) within {GRUNDY_LAYOUT_ATTEMPTS} layouts or {GRUNDY_LAYOUT_NODES} nodes"
        ))
    })
}

/// An optimal proper complete coloring of `K(n,2)` whose [`grundy_relabel`]
/// passes the Grundy check, for `n >= 6`.
///
/// For `n ≡ 0, 1, 2 (mod 6)` this relabels [`achromatic_coloring`]. For the
/// other residues that coloring cannot be made Grundy by any reordering (its
/// `K_4` or `K_5` gadget forces a cyclic order), so [`grundy_classes`] is used
/// instead. The result is verified before it is returned.
pub fn grundy_coloring(n: u32) -> Result<Coloring> {
    if n < 6 {
        return domain(format!("Grundy colorings with the optimal count need n >= 6; got n={n}"));
    }
    let g = KneserGraph::new(n, 2)?;
    let expected = alpha_upper_kn2(n)? as usize;
    let mut last = None;
    for seed in 0..8 {
        let base = if matches!(n % 6, 3..=5) {
            match grundy_classes(n, seed) {
                Ok(classes) => to_coloring(&g, &classes)?,
                Err(e) => {
                    last = Some(e);
                    continue;
                }
            }
        } else {
            achromatic_coloring(n)?
        };
        certify(&g, &base, expected)?;
        let c = grundy_relabel(&base)?;
        let report = verify_coloring(&g, &c, &[Check::Grundy])?;
        if report.grundy {
            return Ok(c);
        }
        last = Some(Error::Certificate(format!("K({n},2): {}", report.witnesses[0])));
    }
    Err(last.expect("at least one attempt"))
}
