//! Segment and hull disjointness graphs of planar point sets.
//!
//! All predicates use exact integer arithmetic (`i128` cross products on
//! `i64` coordinates). Point `i` of a set carries label `i + 1`, and the
//! vertices of `D_V(n,k)` are ordered like those of `K(n,k)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{verify_coloring, Check, Coloring};
use crate::designs::{construct_sts, triangle_decomposition};
use crate::error::{domain, Error, Result};
use crate::graph::{DenseGraph, Graph};
use crate::kneser::{binomial, KSubset, KneserGraph};

pub type Point = [i64; 2];

/// Coordinates of random point sets are drawn from `0..RANDOM_RANGE`.
pub const RANDOM_RANGE: i64 = 10_000;
const RANDOM_ATTEMPTS: usize = 100_000;
const DECOMPOSITION_BUDGET: u64 = 50_000_000;

/// Sign of `(q - p) x (r - p)`: `1` counterclockwise, `-1` clockwise, `0` collinear.
pub fn orientation(p: Point, q: Point, r: Point) -> i8 {
    let cross = (q[0] as i128 - p[0] as i128) * (r[1] as i128 - p[1] as i128)
        - (q[1] as i128 - p[1] as i128) * (r[0] as i128 - p[0] as i128);
    cross.signum() as i8
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orientation(a, b, p) == 0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// True iff the closed segments share no point.
pub fn segments_disjoint(a: (Point, Point), b: (Point, Point)) -> bool {
    let (p, q) = a;
    let (r, s) = b;
    let (o1, o2) = (orientation(p, q, r), orientation(p, q, s));
    let (o3, o4) = (orientation(r, s, p), orientation(r, s, q));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return false;
    }
    !(on_segment(r, p, q) || on_segment(s, p, q) || on_segment(p, r, s) || on_segment(q, r, s))
}

/// Labeled planar points; JSON `{"points": [[x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point with label `label` (1-based).
    pub fn at(&self, label: u32) -> Point {
        self.points[label as usize - 1]
    }

    /// First collinear triple of labels, if any.
    pub fn collinear_triple(&self) -> Option<[u32; 3]> {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(self.points[i], self.points[j], self.points[k]) == 0 {
                        return Some([i as u32 + 1, j as u32 + 1, k as u32 + 1]);
                    }
                }
            }
        }
        None
    }

    pub fn is_general_position(&self) -> bool {
        self.collinear_triple().is_none()
    }

    /// Every point is a hull vertex: no point lies inside a triangle of others.
    pub fn is_convex_position(&self) -> bool {
        let n = self.points.len() as u32;
        self.is_general_position()
            && (1..=n).all(|p| {
                !triples(n).any(|t| !t.contains(&p) && point_in_triangle(self.at(p), [self.at(t[0]), self.at(t[1]), self.at(t[2])]))
            })
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        PointSet { points: self.points.iter().map(|p| [p[0] + dx, p[1] + dy]).collect() }
    }

    pub fn scaled(&self, factor: i64) -> Self {
        PointSet { points: self.points.iter().map(|p| [p[0] * factor, p[1] * factor]).collect() }
    }

    fn require_general_position(&self) -> Result<()> {
        match self.collinear_triple() {
            Some(t) => Err(Error::GeneralPosition(format!("points {t:?} are collinear"))),
            None => Ok(()),
        }
    }
}

fn triples(n: u32) -> impl Iterator<Item = [u32; 3]> {
    (1..=n).flat_map(move |a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| [a, b, c])))
}

fn point_in_triangle(p: Point, t: [Point; 3]) -> bool {
    let o = [orientation(t[0], t[1], p), orientation(t[1], t[2], p), orientation(t[2], t[0], p)];
    o.iter().all(|&s| s >= 0) || o.iter().all(|&s| s <= 0)
}

/// Points `(i, i^2)`, `i = 1..=n`: convex and in general position, listed in
/// hull order.
pub fn convex_position_points(n: usize) -> Result<PointSet> {
    if n < 3 {
        return domain(format!("a convex point set needs n >= 3; got n={n}"));
    }
    Ok(PointSet { points: (1..=n as i64).map(|i| [i, i * i]).collect() })
}

/// `n` random points in general position, by rejection sampling.
pub fn random_points(n: usize, seed: u64) -> Result<PointSet> {
    if n < 1 {
        return domain("a point set needs n >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    for _ in 0..RANDOM_ATTEMPTS {
        if points.len() == n {
            break;
        }
        let p = [rng.gen_range(0..RANDOM_RANGE), rng.gen_range(0..RANDOM_RANGE)];
        let clash = points.iter().enumerate().any(|(i, &a)| a == p || points[i + 1..].iter().any(|&b| orientation(a, b, p) == 0));
        if !clash {
            points.push(p);
        }
    }
    if points.len() < n {
        return Err(Error::SearchExhausted(format!("only {} of {n} points placed", points.len())));
    }
    Ok(PointSet { points })
}

/// Closed convex hulls of two labeled subsets are disjoint. Points are in
/// general position, so it suffices that the sets share no point, no point
/// of one lies in a triangle of the other, and no two segments meet.
pub fn hulls_disjoint(ps: &PointSet, a: KSubset, b: KSubset) -> bool {
    if !a.is_disjoint(b) {
        return false;
    }
    let (ea, eb) = (a.elements(), b.elements());
    let inside = |p: u32, set: &[u32]| {
        set.len() >= 3
            && (0..set.len()).any(|i| {
                (i + 1..set.len()).any(|j| {
                    (j + 1..set.len()).any(|k| point_in_triangle(ps.at(p), [ps.at(set[i]), ps.at(set[j]), ps.at(set[k])]))
                })
            })
    };
    if ea.iter().any(|&p| inside(p, &eb)) || eb.iter().any(|&p| inside(p, &ea)) {
        return false;
    }
    let segments = |set: &[u32]| -> Vec<(Point, Point)> {
        if set.len() == 1 {
            return vec![(ps.at(set[0]), ps.at(set[0]))];
        }
        (0..set.len()).flat_map(|i| (i + 1..set.len()).map(move |j| (i, j))).map(|(i, j)| (ps.at(set[i]), ps.at(set[j]))).collect()
    };
    let (sa, sb) = (segments(&ea), segments(&eb));
    sa.iter().all(|&s| sb.iter().all(|&t| segments_disjoint(s, t)))
}

/// `D_V(n,k)`: `k`-subsets of the points, adjacent when their hulls are disjoint.
#[derive(Clone, Debug)]
pub struct DisjointnessGraph {
    pub points: PointSet,
    pub k: u32,
    vertices: Vec<KSubset>,
    graph: DenseGraph,
}

impl DisjointnessGraph {
    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn n(&self) -> u32 {
        self.points.len() as u32
    }
}

impl Graph for DisjointnessGraph {
    fn order(&self) -> usize {
        self.graph.order()
    }
    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.is_adjacent(u, v)
    }
    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.graph.neighbors(v)
    }
    fn label(&self, v: usize) -> Option<KSubset> {
        Some(self.vertices[v])
    }
}

/// Builds `D_V(n,k)`; pairs are tested in parallel.
pub fn build_dv(ps: &PointSet, k: u32) -> Result<DisjointnessGraph> {
    let n = ps.len() as u32;
    if k < 2 || 2 * k > n {
        return domain(format!("D_V(n,k) needs 2 <= k <= n/2; got n={n}, k={k}"));
    }
    ps.require_general_position()?;
    let vertices = KneserGraph::new(n, k)?.vertices().to_vec();
    let edges: Vec<(usize, usize)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let vs = &vertices;
            (u + 1..vs.len()).filter(move |&v| hulls_disjoint(ps, vs[u], vs[v])).map(move |v| (u, v))
        })
        .collect();
    let mut graph = DenseGraph::new(vertices.len());
    for (u, v) in edges {
        graph.add_edge(u, v);
    }
    Ok(DisjointnessGraph { points: ps.clone(), k, vertices: vertices.clone(), graph: graph.with_labels(vertices) })
}

/// Largest set of segments that pairwise meet (share an endpoint or cross).
pub fn thrackle_max_edges(ps: &PointSet) -> Result<usize> {
    let n = ps.len();
    if n > 7 {
        return Err(Error::Size(format!("thrackle search is capped at 7 points; got {n}")));
    }
    if n < 2 {
        return Ok(0);
    }
    ps.require_general_position()?;
    let segs: Vec<(u32, u32)> = (1..=n as u32).flat_map(|a| (a + 1..=n as u32).map(move |b| (a, b))).collect();
    let m = segs.len();
    let mut meets = vec![0u32; m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (segs[i], segs[j]);
            if i != j && !segments_disjoint((ps.at(a.0), ps.at(a.1)), (ps.at(b.0), ps.at(b.1))) {
                meets[i] |= 1 << j;
            }
        }
    }
    fn grow(meets: &[u32], cand: u32, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow(meets, cand & meets[v], size + 1, best);
        grow(meets, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    grow(&meets, (1u32 << m) - 1, 0, &mut best);
    Ok(best)
}

/// Outcome of checking that triangles sharing at most one point always have
/// two disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePairReport {
    pub pairs_checked: usize,
    /// Pairs sharing two points, which the statement exempts.
    pub pairs_skipped: usize,
    pub counterexamples: Vec<([u32; 3], [u32; 3])>,
}

impl TrianglePairReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn triangle_pair_check(ps: &PointSet) -> Result<TrianglePairReport> {
    ps.require_general_position()?;
    let tris: Vec<[u32; 3]> = triples(ps.len() as u32).collect();
    let sides = |t: [u32; 3]| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
    let mut report = TrianglePairReport { pairs_checked: 0, pairs_skipped: 0, counterexamples: Vec::new() };
    for (i, &s) in tris.iter().enumerate() {
        for &t in &tris[i + 1..] {
            if s.iter().filter(|p| t.contains(p)).count() >= 2 {
                report.pairs_skipped += 1;
                continue;
            }
            report.pairs_checked += 1;
            let ok = sides(s).iter().any(|&(a, b)| {
                sides(t).iter().any(|&(c, d)| segments_disjoint((ps.at(a), ps.at(b)), (ps.at(c), ps.at(d))))
            });
            if !ok {
                report.counterexamples.push((s, t));
            }
        }
    }
    Ok(report)
}

fn classes_to_coloring(n: u32, classes: &[Vec<(u32, u32)>]) -> Result<Coloring> {
    let g = KneserGraph::new(n, 2)?;
    let subsets: Vec<Vec<KSubset>> =
        classes.iter().map(|c| c.iter().map(|&(a, b)| KSubset::pair(a, b)).collect()).collect();
    Coloring::from_subset_classes(&g, &subsets)
}

fn certify_on(dv: &DisjointnessGraph, c: &Coloring, checks: &[Check]) -> Result<()> {
    let report = verify_coloring(dv, c, checks)?;
    if let Some(w) = report.witnesses.first() {
        return Err(Error::Certificate(format!("D_V({}): {w}", dv.n())));
    }
    Ok(())
}

/// Proper complete coloring of `D_V(n)`, verified on `D_V(n)` itself.
///
/// * `n ≡ 1, 3 (mod 6)`, general position: one class per STS(n) triangle.
/// * `n ≡ 0, 2 (mod 6)`, convex position in hull order: STS(n+1) minus a
///   point, relabeled so the leftover matching is every other hull edge; each
///   matching edge is its own class.
/// * `n ≡ 4 (mod 6)`, convex position in hull order: `F` is a 3-edge star at
///   point 2 onto `1, 3, n` plus the hull edges `{4,5}, {6,7}, ...`; `K_n - F`
///   is split into triangles by exact cover; each component of `F` is a class.
pub fn dv_achromatic_coloring(ps: &PointSet) -> Result<Coloring> {
    let n = ps.len() as u32;
    let dv = build_dv(ps, 2)?;
    let classes = match n % 6 {
        1 | 3 => construct_sts(n)?.blocks.iter().map(|b| triangle(b[0], b[1], b[2])).collect(),
        _ if n % 2 == 1 => {
            return domain(format!("the triangle route needs n ≡ 1, 3 (mod 6); got n={n}"));
        }
        _ if !ps.is_convex_position() => {
            return domain("the even route needs points in convex position");
        }
        0 | 2 => hull_matching_classes(n)?,
        _ => star_forest_classes(n)?,
    };
    let c = classes_to_coloring(n, &classes)?;
    certify_on(&dv, &c, &[Check::Proper, Check::Complete])?;
    Ok(c)
}

fn triangle(a: u32, b: u32, c: u32) -> Vec<(u32, u32)> {
    vec![(a, b), (b, c), (a, c)]
}

fn hull_matching_classes(n: u32) -> Result<Vec<Vec<(u32, u32)>>> {
    let sts = construct_sts(n + 1)?;
    let v = n + 1;
    // partner pairs of the deleted point go to (1,2), (3,4), ...
    let mut relabel = vec![0u32; n as usize + 2];
    let mut next = 1;
    for b in sts.blocks.iter().filter(|b| b.contains(&v)) {
        for &p in b.iter().filter(|&&p| p != v) {
            relabel[p as usize] = next;
            next += 1;
        }
    }
    let mut classes = Vec::new();
    for b in &sts.blocks {
        let r: Vec<u32> = b.iter().filter(|&&p| p != v).map(|&p| relabel[p as usize]).collect();
        classes.push(if r.len() == 2 { vec![(r[0], r[1])] } else { triangle(r[0], r[1], r[2]) });
    }
    Ok(classes)
}

fn star_forest_classes(n: u32) -> Result<Vec<Vec<(u32, u32)>>> {
    let star = vec![(2, 1), (2, 3), (2, n)];
    let matching: Vec<(u32, u32)> = (4..n - 1).step_by(2).map(|a| (a, a + 1)).collect();
    let forest: Vec<(u32, u32)> = star.iter().chain(&matching).copied().collect();
    let tris = triangle_decomposition(n, &forest, 0, DECOMPOSITION_BUDGET)?;
    let mut classes: Vec<Vec<(u32, u32)>> = tris.iter().map(|t| triangle(t[0], t[1], t[2])).collect();
    classes.push(star);
    classes.extend(matching.into_iter().map(|e| vec![e]));
    Ok(classes)
}

/// Complete coloring of `D_V(n,k)` with `C(n/2,k)` classes, verified. The
/// points are split in lexicographic `(x, y)` order, which a line separates;
/// class `i` holds the `i`-th `k`-subset of each half, and every mixed subset
/// joins class 1.
pub fn dvnk_lower_coloring(ps: &PointSet, k: u32) -> Result<Coloring> {
    let n = ps.len() as u32;
    if n % 2 == 1 {
        return domain(format!("the halving coloring needs n even; got n={n}"));
    }
    let dv = build_dv(ps, k)?;
    let mut by_position: Vec<u32> = (1..=n).collect();
    by_position.sort_by_key(|&p| ps.at(p));
    let half = (n / 2) as usize;
    let (left, right) = by_position.split_at(half);
    let side_subsets = |side: &[u32]| -> Vec<KSubset> {
        KneserGraph::new(half as u32, k)
            .expect("k <= n/2")
            .vertices()
            .iter()
            .map(|s| KSubset::new(&s.elements().iter().map(|&i| side[i as usize - 1]).collect::<Vec<_>>()).expect("valid subset"))
            .collect()
    };
    let (xs, ys) = (side_subsets(left), side_subsets(right));
    let classes_len = binomial(half as u64, k as u64) as usize;
    debug_assert_eq!(xs.len(), classes_len);
    let mut color = vec![0usize; dv.order()];
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        for s in [x, y] {
            let v = dv.vertices().iter().position(|t| t == s).expect("subset is a vertex");
            color[v] = i;
        }
    }
    let c = Coloring::from_assignment(&color)?;
    certify_on(&dv, &c, &[Check::Complete])?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        assert_eq!(orientation([0, 0], [1, 0], [0, 1]), 1);
        assert_eq!(orientation([0, 0], [1, 1], [2, 2]), 0);
        assert_eq!(orientation([0, 0], [0, 1], [1, 0]), -1);
        assert!(segments_disjoint(([0, 0], [1, 0]), ([0, 1], [1, 1])));
        assert!(!segments_disjoint(([0, 0], [2, 2]), ([0, 2], [2, 0])));
        assert!(!segments_disjoint(([0, 0], [1, 0]), ([1, 0], [2, 1])));
        // cross product is -1 here; f64 would round it to 0
        let big = i64::MAX / 2;
        assert_eq!(orientation([0, 0], [big, big - 1], [big - 1, big - 2]), -1);
    }

    #[test]
    fn point_sets() {
        let p = convex_position_points(10).unwrap();
        assert!(p.is_general_position() && p.is_convex_position());
        assert!(convex_position_points(2).is_err());
        let r = random_points(9, 5).unwrap();
        assert!(r.is_general_position());
        assert_eq!(r, random_points(9, 5).unwrap());
        let inner = PointSet { points: vec![[0, 0], [10, 0], [0, 10], [2, 2]] };
        assert!(!inner.is_convex_position());
    }

    #[test]
    fn dv_examples() {
        let g = build_dv(&convex_position_points(4).unwrap(), 2).unwrap();
        assert_eq!((g.order(), g.edges().len()), (6, 2));
        let g = build_dv(&convex_position_points(6).unwrap(), 3).unwrap();
        let (a, b) = (KSubset::new(&[1, 2, 3]).unwrap(), KSubset::new(&[4, 5, 6]).unwrap());
        let (ia, ib) = (g.vertices().iter().position(|&s| s == a).unwrap(), g.vertices().iter().position(|&s| s == b).unwrap());
        assert!(g.is_adjacent(ia, ib));
        let bad = PointSet { points: vec![[0, 0], [1, 1], [2, 2], [5, 0]] };
        assert!(matches!(build_dv(&bad, 2), Err(Error::GeneralPosition(_))));
    }

    #[test]
    fn thrackles_and_triangle_pairs() {
        for n in 3..=7 {
            assert_eq!(thrackle_max_edges(&convex_position_points(n).unwrap()).unwrap(), n);
        }
        assert!(thrackle_max_edges(&convex_position_points(8).unwrap()).is_err());
        assert!(triangle_pair_check(&convex_position_points(6).unwrap()).unwrap().passed());
    }

    #[test]
    fn dv_colorings() {
        let c = dv_achromatic_coloring(&convex_position_points(7).unwrap()).unwrap();
        assert_eq!(c.color_count(), 7);
        let c = dv_achromatic_coloring(&convex_position_points(8).unwrap()).unwrap();
        assert_eq!(c.color_count(), 12);
        let c = dv_achromatic_coloring(&convex_position_points(10).unwrap()).unwrap();
        assert_eq!(c.color_count(), 17);
        let c = dvnk_lower_coloring(&convex_position_points(8).unwrap(), 2).unwrap();
        assert_eq!(c.color_count(), 6);
        assert!(dvnk_lower_coloring(&convex_position_points(7).unwrap(), 2).is_err());
    }
}
