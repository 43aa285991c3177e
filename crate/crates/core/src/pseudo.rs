//! Complete (not necessarily proper) colorings of `K(n,2)` with many colors,
//! and optimal colorings of perfect matchings such as `K(2k,k)`.

use crate::achromatic::EdgeClass;
use crate::bounds::{matching_colors, psi_lower_kn2, psi_upper_kn2};
use crate::coloring::{verify_coloring, Check, Coloring};
use crate::designs::{c4_free_one_factorization, construct_design_21_5_1, DEFAULT_SWAP_BUDGET};
use crate::error::{domain, Error, Result};
use crate::graph::DenseGraph;
use crate::kneser::{binomial, KSubset, KneserGraph};

fn to_coloring(g: &KneserGraph, classes: &[EdgeClass]) -> Result<Coloring> {
    let subsets: Vec<Vec<KSubset>> =
        classes.iter().map(|c| c.iter().map(|&(a, b)| KSubset::pair(a, b)).collect()).collect();
    Coloring::from_subset_classes(g, &subsets)
}

fn certify_complete(g: &KneserGraph, c: &Coloring, expected: usize) -> Result<()> {
    let n = g.n();
    if c.color_count() != expected {
        return Err(Error::Certificate(format!("K({n},2): {} classes, expected {expected}", c.color_count())));
    }
    let report = verify_coloring(g, c, &[Check::Complete])?;
    if let Some(w) = report.witnesses.first() {
        return Err(Error::Certificate(format!("K({n},2): {w}")));
    }
    Ok(())
}

/// Pairs consecutive edges inside each factor of a 4-cycle-free
/// 1-factorization of `K_order`, dropping the edges at `skip` (0-based) if
/// given. Points are shifted to `1..`.
fn factor_pairs(order: u32, skip: Option<u32>, seed: u64) -> Result<Vec<EdgeClass>> {
    let f = c4_free_one_factorization(order, seed, DEFAULT_SWAP_BUDGET)?;
    let mut classes = Vec::new();
    for factor in &f.factors {
        let edges: Vec<(u32, u32)> = factor
            .iter()
            .filter(|&&(a, b)| Some(a) != skip && Some(b) != skip)
            .map(|&(a, b)| (a + 1, b + 1))
            .collect();
        for pair in edges.chunks(2) {
            classes.push(pair.to_vec());
        }
    }
    Ok(classes)
}

/// Edge classes of the `⌊C(n,2)/2⌋`-class complete coloring, by `n mod 4`.
pub fn psi_lower_classes(n: u32, seed: u64) -> Result<Vec<EdgeClass>> {
    if n < 7 {
        return domain(format!("the pair construction needs n >= 7; got n={n}"));
    }
    let with_two_points = |mut base: Vec<EdgeClass>, m: u32| {
        // a = m+1, b = m+2; {ax, xb} per old point x; ab joins class 1
        let (a, b) = (m + 1, m + 2);
        for x in 1..=m {
            base.push(vec![(a, x), (x, b)]);
        }
        base[0].push((a, b));
        base
    };
    Ok(match n % 4 {
        0 => factor_pairs(n, None, seed)?,
        1 => factor_pairs(n + 1, Some(n), seed)?,
        2 => with_two_points(factor_pairs(n - 2, None, seed)?, n - 2),
        _ => with_two_points(factor_pairs(n - 1, Some(n - 2), seed)?, n - 2),
    })
}

/// Complete coloring of `K(n,2)` with `⌊C(n,2)/2⌋` classes, verified.
pub fn psi_lower_coloring(n: u32) -> Result<Coloring> {
    psi_lower_coloring_seeded(n, 0)
}

/// As [`psi_lower_coloring`], with the seed of the factorization search.
pub fn psi_lower_coloring_seeded(n: u32, seed: u64) -> Result<Coloring> {
    let classes = psi_lower_classes(n, seed)?;
    let g = KneserGraph::new(n, 2)?;
    let c = to_coloring(&g, &classes)?;
    certify_complete(&g, &c, psi_lower_kn2(n)? as usize)?;
    Ok(c)
}

/// Five improper classes covering `K_5` on a block: `{p_i p_{i+1}, p_{i+2} p_{i+4}}`.
fn five_block_pattern(p: &[u32]) -> Vec<EdgeClass> {
    (0..5).map(|i| vec![(p[i], p[(i + 1) % 5]), (p[(i + 2) % 5], p[(i + 4) % 5])]).collect()
}

/// The four non-`f` edges of a 4-block in label order, under one of the 24
/// orderings.
fn e_edges(q: &[u32], perm: usize) -> [(u32, u32); 4] {
    let base = [(q[0], q[2]), (q[0], q[3]), (q[1], q[2]), (q[1], q[3])];
    let mut pool = base.to_vec();
    let mut out = [(0, 0); 4];
    let mut idx = perm;
    for (slot, o) in out.iter_mut().enumerate() {
        let f: usize = (1..4 - slot).product();
        *o = pool.remove(idx / f);
        idx %= f;
    }
    out
}

/// Edge classes of the 100-class coloring of `K(20,2)`; `perms[i]` picks the
/// e-labeling inside the 4-block `Q_i`.
fn psi_tight_classes(perms: [usize; 5]) -> Vec<EdgeClass> {
    let design = construct_design_21_5_1();
    let v = 21;
    let mut classes = Vec::new();
    let mut quads = Vec::new();
    for b in &design.blocks {
        if b.contains(&v) {
            quads.push(b.iter().copied().filter(|&p| p != v).collect::<Vec<_>>());
        } else {
            classes.extend(five_block_pattern(b));
        }
    }
    let mut e = [(0, 0); 20];
    for (i, q) in quads.iter().enumerate() {
        // f_{2i} = v1v2 and f_{2i+1} = v3v4 are singletons
        classes.push(vec![(q[0], q[1])]);
        classes.push(vec![(q[2], q[3])]);
        for (j, edge) in e_edges(q, perms[i]).into_iter().enumerate() {
            e[5 * j + i] = edge;
        }
    }
    for j in 0..10 {
        classes.push(vec![e[2 * j], e[2 * j + 1]]);
    }
    classes
}

/// Complete coloring of `K(20,2)` with `⌊(C(20,2) + 10)/2⌋ = 100` classes,
/// built from the projective plane of order 4 minus a point.
pub fn psi_tight_coloring(n: u32) -> Result<Coloring> {
    if n != 20 {
        return domain(format!("the tight construction is available for n = 20 only; got n={n}"));
    }
    let g = KneserGraph::new(20, 2)?;
    let expected = psi_upper_kn2(20)? as usize;
    let first = to_coloring(&g, &psi_tight_classes([0; 5]))?;
    let outcome = certify_complete(&g, &first, expected);
    if outcome.is_ok() {
        return Ok(first);
    }
    // the e-labeling inside each 4-block is free; search it
    for code in 1..24usize.pow(5) {
        let mut perms = [0; 5];
        let mut rest = code;
        for p in &mut perms {
            *p = rest % 24;
            rest /= 24;
        }
        let c = to_coloring(&g, &psi_tight_classes(perms))?;
        if certify_complete(&g, &c, expected).is_ok() {
            return Ok(c);
        }
    }
    outcome.map(|()| first)
}

/// Proper complete coloring of the `m`-edge matching (vertices `2t`, `2t+1`
/// form edge `t`) with `⌊1/2 + √(1/4 + 2m)⌋` colors.
pub fn matching_coloring(m: usize) -> Result<Coloring> {
    if m < 1 {
        return domain("a matching coloring needs m >= 1");
    }
    let r = matching_colors(m as u128) as usize;
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let mut colors = vec![0; 2 * m];
    for t in 0..m {
        let (i, j) = if t < pairs.len() { pairs[t] } else { pairs[0] };
        colors[2 * t] = i;
        colors[2 * t + 1] = j;
    }
    let c = Coloring::from_assignment(&colors)?;
    let report = verify_coloring(&DenseGraph::matching(m), &c, &[Check::Proper, Check::Complete])?;
    if let Some(w) = report.witnesses.first() {
        return Err(Error::Certificate(format!("matching of size {m}: {w}")));
    }
    Ok(c)
}

/// The matching coloring carried over to `K(2k,k)`, whose edges are the
/// complementary pairs `{S, [2k] \ S}`.
pub fn kneser_matching_coloring(k: u32) -> Result<(KneserGraph, Coloring)> {
    if !(1..=16).contains(&k) {
        return domain(format!("K(2k,k) needs 1 <= k <= 16; got k={k}"));
    }
    let g = KneserGraph::new(2 * k, k)?;
    let full = (1u64 << (2 * k)) - 1;
    // edge t joins the t-th subset containing 1 and its complement
    let with_one: Vec<usize> = (0..g.vertices().len()).filter(|&i| g.vertex(i).contains(1)).collect();
    let m = (binomial(2 * k as u64, k as u64) / 2) as usize;
    debug_assert_eq!(with_one.len(), m);
    let mc = matching_coloring(m)?;
    let mcolor = mc.assignment(2 * m)?;
    let mut colors = vec![0; g.vertices().len()];
    for (t, &s) in with_one.iter().enumerate() {
        let comp = g.index_of(KSubset::from_mask(full ^ g.vertex(s).mask())).expect("complement is a vertex");
        colors[s] = mcolor[2 * t];
        colors[comp] = mcolor[2 * t + 1];
    }
    let c = Coloring::from_assignment(&colors)?;
    let report = verify_coloring(&g, &c, &[Check::Proper, Check::Complete])?;
    if let Some(w) = report.witnesses.first() {
        return Err(Error::Certificate(format!("K({},{k}): {w}", 2 * k)));
    }
    Ok((g, c))
}
