//! Stable dual trees of pointed rational curves, limit configurations and
//! the degree-`e` map solver.

mod limit;
mod maps;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::configs::{check_distinct, Param};
use crate::error::{Error, Result};
use crate::exactlin::Rat;

pub use limit::{
    aux_independence_check, cut_criterion, default_aux, limit_config, semistable_partitions, SectionSpace,
    SemistableSelection,
};
pub use maps::{degree_map_solve, verify_piecewise_map, PiecewiseMap, SubspaceConstraint, VertexMap};

/// What a special point on a component is: a mark (zero based) or a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Mark(usize),
    Edge(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Mark(i) => write!(f, "mark:{}", i + 1),
            Label::Edge(id) => write!(f, "edge:{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoint {
    pub label: Label,
    pub coord: Param,
}

impl SpecialPoint {
    pub fn mark(i: usize, coord: Param) -> Self {
        SpecialPoint {
            label: Label::Mark(i),
            coord,
        }
    }

    pub fn edge(id: &str, coord: Param) -> Self {
        SpecialPoint {
            label: Label::Edge(id.to_string()),
            coord,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub a: usize,
    pub b: usize,
}

/// A stable `n`-pointed rational curve: components with coordinates of their
/// special points, glued along a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableTree {
    n: usize,
    vertices: Vec<Vec<SpecialPoint>>,
    edges: Vec<Edge>,
    marks: Vec<(usize, Param)>,
}

impl StableTree {
    pub fn new(vertices: Vec<Vec<SpecialPoint>>, edges: Vec<Edge>) -> Result<Self> {
        let r = vertices.len();
        if r == 0 {
            return Err(Error::InvalidTree("no components".into()));
        }
        if edges.len() + 1 != r {
            return Err(Error::InvalidTree(format!("{} edges for {r} components", edges.len())));
        }
        let mut ids = BTreeSet::new();
        for e in &edges {
            if e.a >= r || e.b >= r || e.a == e.b {
                return Err(Error::InvalidTree(format!("edge {} joins {} and {}", e.id, e.a, e.b)));
            }
            if !ids.insert(e.id.as_str()) {
                return Err(Error::InvalidTree(format!("edge id {} repeated", e.id)));
            }
        }
        // connectivity
        let mut seen = vec![false; r];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &edges {
                for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::InvalidTree("components are not connected".into()));
        }
        let mut marks: BTreeMap<usize, (usize, Param)> = BTreeMap::new();
        for (v, points) in vertices.iter().enumerate() {
            if points.len() < 3 {
                return Err(Error::InvalidTree(format!(
                    "component {v} has {} special points, needs at least 3",
                    points.len()
                )));
            }
            let coords: Vec<Param> = points.iter().map(|p| p.coord.clone()).collect();
            check_distinct(&coords).map_err(|e| Error::InvalidTree(format!("component {v}: {e}")))?;
            for p in points {
                match &p.label {
                    Label::Mark(i) => {
                        if marks.insert(*i, (v, p.coord.clone())).is_some() {
                            return Err(Error::InvalidTree(format!("mark {} appears twice", i + 1)));
                        }
                    }
                    Label::Edge(id) => {
                        let ok = edges.iter().any(|e| &e.id == id && (e.a == v || e.b == v));
                        if !ok {
                            return Err(Error::InvalidTree(format!("component {v} carries unknown node {id}")));
                        }
                    }
                }
            }
        }
        for e in &edges {
            for v in [e.a, e.b] {
                let count = vertices[v]
                    .iter()
                    .filter(|p| p.label == Label::Edge(e.id.clone()))
                    .count();
                if count != 1 {
                    return Err(Error::InvalidTree(format!(
                        "node {} appears {count} times on component {v}",
                        e.id
                    )));
                }
            }
        }
        let n = marks.len();
        if marks.keys().enumerate().any(|(k, &i)| k != i) {
            return Err(Error::InvalidTree("marks must be numbered 1..n without gaps".into()));
        }
        Ok(StableTree {
            n,
            vertices,
            edges,
            marks: marks.into_values().collect(),
        })
    }

    /// A smooth curve: one component with the marks at `coords`.
    pub fn smooth(coords: &[Param]) -> Result<Self> {
        let points = coords
            .iter()
            .enumerate()
            .map(|(i, t)| SpecialPoint::mark(i, t.clone()))
            .collect();
        StableTree::new(vec![points], Vec::new())
    }

    /// The maximally degenerate chain ("caterpillar"): components `0..n-2`,
    /// marks `0, 1` on the first, mark `v+1` on each inner component and
    /// `n-2, n-1` on the last. Special points sit at `0, 1, ∞` in that order.
    pub fn caterpillar(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidTree(format!("need n >= 3 marks, got {n}")));
        }
        let r = n - 2;
        let slots = [Param::int(0), Param::int(1), Param::Infinity];
        let id = |v: usize| format!("e{}", v + 1);
        let mut vertices = Vec::with_capacity(r);
        for v in 0..r {
            let mut labels = Vec::new();
            if v == 0 {
                labels.push(Label::Mark(0));
            } else {
                labels.push(Label::Edge(id(v - 1)));
            }
            labels.push(Label::Mark(v + 1));
            if v + 1 == r {
                labels.push(Label::Mark(n - 1));
            } else {
                labels.push(Label::Edge(id(v)));
            }
            vertices.push(
                labels
                    .into_iter()
                    .zip(slots.iter().cloned())
                    .map(|(label, coord)| SpecialPoint { label, coord })
                    .collect(),
            );
        }
        let edges = (0..r - 1).map(|v| Edge { id: id(v), a: v, b: v + 1 }).collect();
        StableTree::new(vertices, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<SpecialPoint>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Component and coordinate of mark `i`.
    pub fn mark(&self, i: usize) -> (usize, &Param) {
        let (v, t) = &self.marks[i];
        (*v, t)
    }

    /// Coordinate of the node `e` on component `v`.
    pub fn node_coord(&self, e: &Edge, v: usize) -> &Param {
        &self.vertices[v]
            .iter()
            .find(|p| matches!(&p.label, Label::Edge(id) if id == &e.id))
            .expect("validated on construction")
            .coord
    }

    /// Marks on each side of edge `e`: (side of `e.a`, side of `e.b`).
    pub fn cut(&self, e: &Edge) -> (Vec<usize>, Vec<usize>) {
        let side = self.side_vertices(e);
        (0..self.n).partition(|&i| side[self.mark(i).0])
    }

    /// Components on the `e.a` side of `e`.
    pub(crate) fn side_vertices(&self, e: &Edge) -> Vec<bool> {
        let mut side = vec![false; self.vertices.len()];
        let mut stack = vec![e.a];
        side[e.a] = true;
        while let Some(v) = stack.pop() {
            for f in self.edges.iter().filter(|f| f.id != e.id) {
                for (x, y) in [(f.a, f.b), (f.b, f.a)] {
                    if x == v && !side[y] {
                        side[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        side
    }

    pub fn is_maximally_degenerate(&self) -> bool {
        self.vertices.iter().all(|v| v.len() == 3)
    }
}

/// Nonnegative degrees, one per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreePartition {
    degrees: Vec<usize>,
}

impl DegreePartition {
    pub fn new(tree: &StableTree, degrees: Vec<usize>) -> Result<Self> {
        if degrees.len() != tree.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees for {} components",
                degrees.len(),
                tree.num_vertices()
            )));
        }
        Ok(DegreePartition { degrees })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn d(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// All ways to write `d` as an ordered sum over `r` components, in
    /// lexicographic order.
    pub fn compositions(tree: &StableTree, d: usize) -> Vec<DegreePartition> {
        fn go(i: usize, r: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreePartition>) {
            if i + 1 == r {
                cur.push(rest);
                out.push(DegreePartition { degrees: cur.clone() });
                cur.pop();
                return;
            }
            for x in 0..=rest {
                cur.push(x);
                go(i + 1, r, rest - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, tree.num_vertices(), d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for DegreePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Auxiliary points: `d_v` finite coordinates on component `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxDivisor {
    points: Vec<Vec<Rat>>,
}

impl AuxDivisor {
    pub fn new(tree: &StableTree, deg: &DegreePartition, points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.len() != tree.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "aux points given for {} components, tree has {}",
                points.len(),
                tree.num_vertices()
            )));
        }
        for (v, (pts, &dv)) in points.iter().zip(deg.degrees()).enumerate() {
            if pts.len() != dv {
                return Err(Error::DimensionMismatch(format!(
                    "component {v} has degree {dv} but {} aux points",
                    pts.len()
                )));
            }
            for (j, q) in pts.iter().enumerate() {
                if pts[j + 1..].contains(q) {
                    return Err(Error::Precondition(format!("aux point {q} repeated on component {v}")));
                }
                for p in &tree.vertices()[v] {
                    if p.coord.as_finite() == Some(q) {
                        return Err(match p.label {
                            Label::Mark(i) => Error::PoleAtMark(i),
                            Label::Edge(ref id) => {
                                Error::Precondition(format!("aux point {q} collides with node {id}"))
                            }
                        });
                    }
                }
            }
        }
        Ok(AuxDivisor { points })
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }
}
