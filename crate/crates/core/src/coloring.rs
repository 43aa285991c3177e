//! Colorings as certificates, and the exhaustive checks run against them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::Graph;
use crate::kneser::{KSubset, KneserGraph};

/// A partition of a graph's vertices into color classes; the color of a
/// vertex is the 1-based index of its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    classes: Vec<Vec<usize>>,
}

impl Coloring {
    /// Keeps class order; sorts the vertices inside each class.
    pub fn from_classes(mut classes: Vec<Vec<usize>>) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        Coloring { classes }
    }

    /// Builds classes from a 0-based color per vertex. Colors must be `0..l` with none skipped.
    pub fn from_assignment(colors: &[usize]) -> Result<Self> {
        let l = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut classes = vec![Vec::new(); l];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].push(v);
        }
        if let Some(c) = classes.iter().position(Vec::is_empty) {
            return Err(Error::Coverage(format!("color {} is unused", c + 1)));
        }
        Ok(Coloring { classes })
    }

    /// Classes given as lists of subset labels of `g`'s vertices.
    pub fn from_subset_classes(g: &KneserGraph, classes: &[Vec<KSubset>]) -> Result<Self> {
        let mut out = Vec::with_capacity(classes.len());
        for class in classes {
            let mut idx = Vec::with_capacity(class.len());
            for &s in class {
                idx.push(g.index_of(s).ok_or_else(|| {
                    Error::ForeignVertex(format!("{s} in K({},{})", g.n(), g.k()))
                })?);
            }
            out.push(idx);
        }
        Ok(Coloring::from_classes(out))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn color_count(&self) -> usize {
        self.classes.len()
    }

    /// 0-based color per vertex; fails unless the classes partition `0..order` into nonempty sets.
    pub fn assignment(&self, order: usize) -> Result<Vec<usize>> {
        let mut color = vec![usize::MAX; order];
        for (c, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Coverage(format!("class {} is empty", c + 1)));
            }
            for &v in class {
                if v >= order {
                    return Err(Error::Coverage(format!("vertex {v} out of range (order {order})")));
                }
                if color[v] != usize::MAX {
                    return Err(Error::Coverage(format!(
                        "vertex {v} in classes {} and {}",
                        color[v] + 1,
                        c + 1
                    )));
                }
                color[v] = c;
            }
        }
        if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Coverage(format!("vertex {v} is uncolored")));
        }
        Ok(color)
    }

    /// Reorders classes: new class `i` is old class `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Coloring { classes: order.iter().map(|&i| self.classes[i].clone()).collect() }
    }

    pub fn class_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.classes {
            *h.entry(c.len()).or_insert(0) += 1;
        }
        h
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Proper,
    Complete,
    Grundy,
    Dominating,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Proper, Check::Complete, Check::Grundy, Check::Dominating];
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "proper" => Ok(Check::Proper),
            "complete" => Ok(Check::Complete),
            "grundy" => Ok(Check::Grundy),
            "dominating" => Ok(Check::Dominating),
            other => Err(Error::Shape(format!("unknown check '{other}'"))),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Proper => "proper",
            Check::Complete => "complete",
            Check::Grundy => "grundy",
            Check::Dominating => "dominating",
        };
        f.write_str(s)
    }
}

/// The first violation found by a failed check. Colors are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two adjacent vertices share a color.
    MonochromaticEdge { u: String, v: String, color: usize },
    /// No edge joins these two classes.
    MissingColorPair { i: usize, j: usize },
    /// More colors than any Grundy coloring of the graph can use.
    GrundyImpossible { colors: usize, max_degree: usize },
    /// A vertex of color `color` has no neighbor colored `missing < color`.
    GrundyMissing { vertex: String, color: usize, missing: usize },
    /// No vertex of this class sees every other class.
    NotDominating { color: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::MonochromaticEdge { u, v, color } => {
                write!(f, "adjacent vertices {u} and {v} both have color {color}")
            }
            Witness::MissingColorPair { i, j } => write!(f, "no edge between colors {i} and {j}"),
            Witness::GrundyImpossible { colors, max_degree } => write!(
                f,
                "{colors} colors exceed max degree + 1 = {}; no Grundy coloring can use them",
                max_degree + 1
            ),
            Witness::GrundyMissing { vertex, color, missing } => {
                write!(f, "vertex {vertex} of color {color} has no neighbor of color {missing}")
            }
            Witness::NotDominating { color } => {
                write!(f, "no vertex of color {color} sees every other color")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub color_count: usize,
    pub checks: Vec<Check>,
    pub proper: bool,
    pub complete: bool,
    pub grundy: bool,
    pub dominating: bool,
    pub max_degree: usize,
    pub witnesses: Vec<Witness>,
    /// class size -> number of classes of that size
    pub class_histogram: BTreeMap<usize, usize>,
}

impl VerificationReport {
    pub fn flag(&self, check: Check) -> bool {
        match check {
            Check::Proper => self.proper,
            Check::Complete => self.complete,
            Check::Grundy => self.grundy,
            Check::Dominating => self.dominating,
        }
    }

    /// True when every requested check holds.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&c| self.flag(c))
    }
}

fn vertex_name<G: Graph + ?Sized>(g: &G, v: usize) -> String {
    g.label(v).map_or_else(|| v.to_string(), |s| s.to_string())
}

/// Runs every check exhaustively; witnesses are reported for the requested ones.
///
/// Completeness is decided by marking the color pairs seen across the edge
/// list. Witnesses are the first violation in canonical vertex (or color-pair) order.
pub fn verify_coloring<G: Graph + ?Sized>(g: &G, c: &Coloring, checks: &[Check]) -> Result<VerificationReport> {
    let order = g.order();
    let color = c.assignment(order)?;
    let l = c.color_count();
    let neighbors: Vec<Vec<usize>> = (0..order).map(|v| g.neighbors(v)).collect();
    let max_degree = neighbors.iter().map(Vec::len).max().unwrap_or(0);

    let mut proper_witness = None;
    let mut seen = vec![false; l * l];
    for u in 0..order {
        for &v in &neighbors[u] {
            if u >= v {
                continue;
            }
            let (a, b) = (color[u], color[v]);
            if a == b {
                proper_witness.get_or_insert(Witness::MonochromaticEdge {
                    u: vertex_name(g, u),
                    v: vertex_name(g, v),
                    color: a + 1,
                });
            } else {
                seen[a * l + b] = true;
                seen[b * l + a] = true;
            }
        }
    }
    let complete_witness = (0..l)
        .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
        .find(|&(i, j)| !seen[i * l + j])
        .map(|(i, j)| Witness::MissingColorPair { i: i + 1, j: j + 1 });

    // per-vertex color neighborhoods, shared by the Grundy and dominating checks
    let mut grundy_witness = None;
    let mut dominated = vec![false; l];
    let mut mark = vec![usize::MAX; l];
    for v in 0..order {
        let mut distinct = 0;
        for &u in &neighbors[v] {
            let cu = color[u];
            if mark[cu] != v && cu != color[v] {
                mark[cu] = v;
                distinct += 1;
            }
        }
        if distinct == l - 1 {
            dominated[color[v]] = true;
        }
        if grundy_witness.is_none() {
            if let Some(missing) = (0..color[v]).find(|&i| mark[i] != v) {
                grundy_witness = Some(Witness::GrundyMissing {
                    vertex: vertex_name(g, v),
                    color: color[v] + 1,
                    missing: missing + 1,
                });
            }
        }
    }
    let dominating_witness = dominated
        .iter()
        .position(|d| !d)
        .map(|c| Witness::NotDominating { color: c + 1 });

    let proper = proper_witness.is_none();
    let complete = complete_witness.is_none();
    let grundy = proper && grundy_witness.is_none();
    let dominating = dominating_witness.is_none();

    let mut checks: Vec<Check> = checks.to_vec();
    checks.sort_unstable();
    checks.dedup();
    let mut witnesses = Vec::new();
    for &chk in &checks {
        match chk {
            Check::Proper => witnesses.extend(proper_witness.clone()),
            Check::Complete => witnesses.extend(complete_witness.clone()),
            Check::Grundy if !grundy => {
                if l > max_degree + 1 {
                    witnesses.push(Witness::GrundyImpossible { colors: l, max_degree });
                }
                witnesses.extend(grundy_witness.clone().or_else(|| proper_witness.clone()));
            }
            Check::Grundy => {}
            Check::Dominating => witnesses.extend(dominating_witness.clone()),
        }
    }
    Ok(VerificationReport {
        color_count: l,
        checks,
        proper,
        complete,
        grundy,
        dominating,
        max_degree,
        witnesses,
        class_histogram: c.class_histogram(),
    })
}

/// Audit of the tightness accounting for colorings of `K(n,2)` read as edge classes of `K_n`.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionCReport {
    /// Every class has at most three vertices.
    pub sizes_ok: bool,
    /// Every size-2 class is a path on three points of `K_n`.
    pub shapes_ok: bool,
    /// 1-based indices of size-2 classes that are two disjoint edges.
    pub bad_shapes: Vec<usize>,
    /// Points covered by a singleton class or centering a size-2 class.
    pub covered: Vec<u32>,
    /// Points playing more than one such role.
    pub shared: Vec<u32>,
    /// Points playing no such role.
    pub exceptional: Vec<u32>,
    pub passed: bool,
}

pub fn check_condition_c(g: &KneserGraph, c: &Coloring) -> Result<ConditionCReport> {
    if g.k() != 2 {
        return domain(format!("condition (C) concerns K(n,2); got k={}", g.k()));
    }
    c.assignment(g.order())?;
    let n = g.n();
    let mut roles = vec![0usize; n as usize + 1];
    let mut bad_shapes = Vec::new();
    let mut sizes_ok = true;
    for (i, class) in c.classes().iter().enumerate() {
        match class.len() {
            1 => {
                for p in g.vertex(class[0]).elements() {
                    roles[p as usize] += 1;
                }
            }
            2 => {
                let (a, b) = (g.vertex(class[0]), g.vertex(class[1]));
                let common = a.mask() & b.mask();
                if common == 0 {
                    bad_shapes.push(i + 1);
                } else {
                    roles[common.trailing_zeros() as usize + 1] += 1;
                }
            }
            3 => {}
            _ => sizes_ok = false,
        }
    }
    let covered: Vec<u32> = (1..=n).filter(|&p| roles[p as usize] >= 1).collect();
    let shared: Vec<u32> = (1..=n).filter(|&p| roles[p as usize] >= 2).collect();
    let exceptional: Vec<u32> = (1..=n).filter(|&p| roles[p as usize] == 0).collect();
    let shapes_ok = bad_shapes.is_empty();
    Ok(ConditionCReport {
        sizes_ok,
        shapes_ok,
        bad_shapes,
        covered,
        shared,
        passed: sizes_ok && shapes_ok && exceptional.len() <= 1,
        exceptional,
    })
}

/// JSON certificate: classes of vertices written as sorted subset labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: u32,
    pub k: u32,
    pub classes: Vec<Vec<Vec<u32>>>,
}

impl ColoringFile {
    /// Serializes a coloring of a graph whose vertices carry subset labels.
    pub fn from_coloring<G: Graph + ?Sized>(g: &G, n: u32, k: u32, c: &Coloring) -> Result<Self> {
        let classes = c
            .classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&v| {
                        g.label(v)
                            .map(KSubset::elements)
                            .ok_or_else(|| Error::Shape(format!("vertex {v} has no subset label")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoringFile { n, k, classes })
    }

    /// Resolves labels against the vertex order of `K(n,k)`.
    pub fn to_coloring(&self) -> Result<Coloring> {
        let g = KneserGraph::new(self.n, self.k)?;
        let classes = self
            .classes
            .iter()
            .map(|class| class.iter().map(|e| KSubset::new(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Coloring::from_subset_classes(&g, &classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DenseGraph;

    fn pair(a: u32, b: u32) -> KSubset {
        KSubset::pair(a, b)
    }

    fn petersen_five() -> (KneserGraph, Coloring) {
        let g = KneserGraph::new(5, 2).unwrap();
        // paths {i,i+1},{i,i+2} around Z_5, points relabeled 1..=5
        let p = |x: u32| x % 5 + 1;
        let classes: Vec<Vec<KSubset>> =
            (0..5).map(|i| vec![pair(p(i), p(i + 1)), pair(p(i), p(i + 2))]).collect();
        let c = Coloring::from_subset_classes(&g, &classes).unwrap();
        (g, c)
    }

    #[test]
    fn petersen_five_coloring() {
        let (g, c) = petersen_five();
        let r = verify_coloring(&g, &c, &[Check::Proper, Check::Complete]).unwrap();
        assert!(r.passed());
        assert_eq!(r.color_count, 5);
        assert_eq!(r.class_histogram, BTreeMap::from([(2, 5)]));
        // five colors on a 3-regular graph cannot be Grundy
        let r = verify_coloring(&g, &c, &[Check::Grundy]).unwrap();
        assert!(!r.grundy);
        assert_eq!(r.witnesses[0], Witness::GrundyImpossible { colors: 5, max_degree: 3 });
    }

    #[test]
    fn single_class_is_improper_but_complete() {
        let g = KneserGraph::new(4, 2).unwrap();
        let c = Coloring::from_classes(vec![(0..6).collect()]);
        let r = verify_coloring(&g, &c, &[Check::Proper, Check::Complete]).unwrap();
        assert!(!r.proper && r.complete);
        assert_eq!(
            r.witnesses,
            vec![Witness::MonochromaticEdge { u: "{1,2}".into(), v: "{3,4}".into(), color: 1 }]
        );
    }

    #[test]
    fn disjoint_pair_pattern_is_complete_not_proper() {
        let g = KneserGraph::new(5, 2).unwrap();
        let p = |x: u32| x % 5 + 1;
        let classes: Vec<Vec<KSubset>> =
            (0..5).map(|i| vec![pair(p(i), p(i + 1)), pair(p(i + 2), p(i + 4))]).collect();
        let c = Coloring::from_subset_classes(&g, &classes).unwrap();
        let r = verify_coloring(&g, &c, &Check::ALL).unwrap();
        assert!(r.complete && !r.proper && !r.grundy);
    }

    #[test]
    fn coverage_errors() {
        let g = KneserGraph::new(4, 2).unwrap();
        let missing = Coloring::from_classes(vec![vec![0, 1, 2]]);
        assert!(matches!(verify_coloring(&g, &missing, &[]), Err(Error::Coverage(_))));
        let twice = Coloring::from_classes(vec![vec![0, 1, 2, 3, 4, 5], vec![0]]);
        assert!(matches!(verify_coloring(&g, &twice, &[]), Err(Error::Coverage(_))));
        let empty = Coloring::from_classes(vec![vec![0, 1, 2, 3, 4, 5], vec![]]);
        assert!(matches!(verify_coloring(&g, &empty, &[]), Err(Error::Coverage(_))));
        assert!(Coloring::from_assignment(&[0, 2]).is_err());
    }

    #[test]
    fn grundy_and_dominating_on_a_path() {
        let g = DenseGraph::from_predicate(3, |u, v| u + 1 == v);
        let good = Coloring::from_assignment(&[0, 1, 0]).unwrap();
        let r = verify_coloring(&g, &good, &Check::ALL).unwrap();
        assert!(r.passed());
        // colors 1,1,2 on 0-1-2: improper
        let bad = Coloring::from_assignment(&[0, 0, 1]).unwrap();
        let r = verify_coloring(&g, &bad, &[Check::Grundy]).unwrap();
        assert!(!r.grundy);
        assert!(matches!(r.witnesses[0], Witness::MonochromaticEdge { .. }));
        // path of 4 colored 2,1,3,1: the vertex colored 3 sees only color 1
        let g4 = DenseGraph::from_predicate(4, |u, v| u + 1 == v);
        let c = Coloring::from_assignment(&[1, 0, 2, 0]).unwrap();
        let r = verify_coloring(&g4, &c, &Check::ALL).unwrap();
        assert!(r.proper && !r.complete && !r.grundy && !r.dominating);
        assert!(r.witnesses.contains(&Witness::GrundyMissing { vertex: "2".into(), color: 3, missing: 2 }));
    }

    #[test]
    fn condition_c_reports_shared_point() {
        let g = KneserGraph::new(4, 2).unwrap();
        // singletons {1,2} and {1,3} share point 1
        let classes = vec![
            vec![pair(1, 2)],
            vec![pair(1, 3)],
            vec![pair(2, 3), pair(1, 4), pair(2, 4), pair(3, 4)],
        ];
        let c = Coloring::from_subset_classes(&g, &classes).unwrap();
        let r = check_condition_c(&g, &c).unwrap();
        assert!(r.shared.contains(&1));
        assert!(!r.sizes_ok && !r.passed);
        let v = verify_coloring(&g, &c, &[Check::Complete]).unwrap();
        assert!(!v.complete);
    }

    #[test]
    fn json_roundtrip() {
        let (g, c) = petersen_five();
        let f = ColoringFile::from_coloring(&g, 5, 2, &c).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.starts_with("{\"n\":5,\"k\":2,\"classes\":[[["));
        let back: ColoringFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_coloring().unwrap(), c);
    }
}
