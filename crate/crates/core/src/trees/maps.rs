use std::collections::{BTreeMap, HashMap};

use super::{Label, StableTree};
use crate::configs::Param;
use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, parallel, Mat, Rat, Span};

/// The linear subspace of `k^{d+1}` spanned by the rows of `subspace`; the
/// mark `index` must map into its projectivization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceConstraint {
    pub index: usize,
    subspace: Mat,
}

impl SubspaceConstraint {
    pub fn new(index: usize, rows: Mat) -> Result<Self> {
        let rank = rows.rank();
        if rows.rows() == 0 || rank != rows.rows() {
            return Err(Error::RankDeficient {
                rank,
                expected: rows.rows().max(1),
            });
        }
        Ok(SubspaceConstraint {
            index,
            subspace: rows.rref().0,
        })
    }

    pub fn subspace(&self) -> &Mat {
        &self.subspace
    }

    pub fn ambient(&self) -> usize {
        self.subspace.cols()
    }

    pub fn codim(&self) -> usize {
        self.subspace.cols() - self.subspace.rows()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut span = Span::new(self.ambient());
        for r in self.subspace.row_vecs() {
            span.insert(&r);
        }
        span.contains(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexMap {
    /// The component goes to a single point.
    Contracted(Vec<Rat>),
    /// `t ↦ M·(1, t)ᵀ` for a `(d+1) × 2` matrix of rank two.
    Linear(Mat),
}

impl VertexMap {
    pub fn eval(&self, t: &Param) -> Vec<Rat> {
        match self {
            VertexMap::Contracted(p) => p.clone(),
            VertexMap::Linear(m) => m.mul_vec(&t.homogeneous()),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            VertexMap::Contracted(_) => 0,
            VertexMap::Linear(_) => 1,
        }
    }
}

/// A map from the nodal curve that is linear or constant on each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseMap {
    pub vertex_maps: Vec<VertexMap>,
    pub mark_images: Vec<Vec<Rat>>,
}

impl PiecewiseMap {
    pub fn degree(&self) -> usize {
        self.vertex_maps.iter().map(VertexMap::degree).sum()
    }
}

/// Checks a map directly against the tree and constraints: the components
/// agree at nodes, every mark lands in its subspace, the recorded mark images
/// are the evaluations, and the total degree is `e`.
pub fn verify_piecewise_map(
    tree: &StableTree,
    constraints: &[SubspaceConstraint],
    map: &PiecewiseMap,
    e: usize,
) -> bool {
    if map.vertex_maps.len() != tree.num_vertices() || map.mark_images.len() != tree.n() {
        return false;
    }
    let maps_ok = map.vertex_maps.iter().all(|m| match m {
        VertexMap::Contracted(p) => !is_zero_vec(p),
        VertexMap::Linear(m) => m.rank() == 2,
    });
    let nodes_ok = tree.edges().iter().all(|edge| {
        let a = map.vertex_maps[edge.a].eval(tree.node_coord(edge, edge.a));
        let b = map.vertex_maps[edge.b].eval(tree.node_coord(edge, edge.b));
        parallel(&a, &b)
    });
    let marks_ok = constraints.iter().all(|c| {
        let (v, t) = tree.mark(c.index);
        let img = map.vertex_maps[v].eval(t);
        !is_zero_vec(&img) && parallel(&img, &map.mark_images[c.index]) && c.contains(&img)
    });
    maps_ok && nodes_ok && marks_ok && map.degree() == e
}

fn intersect(u: &Mat, w: &Mat) -> Mat {
    u.kernel_basis().vstack(&w.kernel_basis()).kernel_basis()
}

fn sum(u: &Mat, w: &Mat) -> Mat {
    let (r, pivots) = u.vstack(w).rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

fn non_generic(msg: impl Into<String>) -> Error {
    Error::NonGenericConstraints(msg.into())
}

/// Solves `x·p + y·q = r` for homogeneous 2-vectors.
fn coefficients(p: &[Rat; 2], q: &[Rat; 2], r: &[Rat; 2]) -> (Rat, Rat) {
    let det = &p[0] * &q[1] - &p[1] * &q[0];
    let x = (&r[0] * &q[1] - &r[1] * &q[0]) / &det;
    let y = (&p[0] * &r[1] - &p[1] * &r[0]) / &det;
    (x, y)
}

/// `M` with `M·τ_a = u` and `M·τ_b = v`.
fn line_through(u: &[Rat], v: &[Rat], ta: &[Rat; 2], tb: &[Rat; 2]) -> Mat {
    let dim = u.len();
    let t = Mat::from_fn(2, 2, |i, j| if j == 0 { ta[i].clone() } else { tb[i].clone() });
    let uv = Mat::from_fn(dim, 2, |i, j| if j == 0 { u[i].clone() } else { v[i].clone() });
    &uv * &t.inverse().expect("distinct points on a component")
}

/// Combination `Σ x_k row_k`.
fn combine(basis: &Mat, x: &[Rat]) -> Vec<Rat> {
    basis.transpose().mul_vec(x)
}

#[derive(Clone)]
struct Work {
    dim: usize,
    vertices: BTreeMap<usize, Vec<(Label, Param)>>,
    edges: HashMap<String, (usize, usize)>,
    constraints: BTreeMap<usize, Mat>,
    next_mark: usize,
}

#[derive(Clone, Default)]
struct Partial {
    maps: BTreeMap<usize, VertexMap>,
    images: BTreeMap<usize, Vec<Rat>>,
}

fn marks_of(points: &[(Label, Param)]) -> Vec<(usize, Param)> {
    points
        .iter()
        .filter_map(|(l, t)| match l {
            Label::Mark(i) => Some((*i, t.clone())),
            Label::Edge(_) => None,
        })
        .collect()
}

fn solve(work: &Work, e: usize) -> Result<Vec<Partial>> {
    if work.vertices.len() == 1 {
        return solve_single(work, e);
    }
    let (&leaf, points) = work
        .vertices
        .iter()
        .find(|(_, pts)| pts.iter().filter(|(l, _)| matches!(l, Label::Edge(_))).count() == 1)
        .expect("a tree with two or more components has a leaf");
    let marks = marks_of(points);
    let (edge_id, tq) = points
        .iter()
        .find_map(|(l, t)| match l {
            Label::Edge(id) => Some((id.clone(), t.clone())),
            Label::Mark(_) => None,
        })
        .expect("leaf has a node");
    let [(a, ta), (b, tb)] = [marks[0].clone(), marks[1].clone()];
    let (la, lb) = (&work.constraints[&a], &work.constraints[&b]);
    let (x, y) = work.edges[&edge_id];
    let neighbour = if x == leaf { y } else { x };

    let inter = intersect(la, lb);
    let expected = (la.rows() + lb.rows()).saturating_sub(work.dim);
    if inter.rows() != expected {
        return Err(non_generic(format!(
            "subspaces at marks {a} and {b} meet in dimension {}, expected {expected}",
            inter.rows()
        )));
    }
    let contract = expected > 0;
    if !contract && e == 0 {
        return Ok(Vec::new());
    }

    let mut next = work.clone();
    let new = next.next_mark;
    next.next_mark += 1;
    next.vertices.remove(&leaf);
    next.edges.remove(&edge_id);
    for p in next.vertices.get_mut(&neighbour).expect("neighbour exists").iter_mut() {
        if p.0 == Label::Edge(edge_id.clone()) {
            p.0 = Label::Mark(new);
        }
    }
    next.constraints.remove(&a);
    next.constraints.remove(&b);
    next.constraints.insert(new, if contract { inter } else { sum(la, lb) });

    let sub = solve(&next, if contract { e } else { e - 1 })?;
    let (ta, tb, tq) = (ta.homogeneous(), tb.homogeneous(), tq.homogeneous());
    let mut out = Vec::with_capacity(sub.len());
    for mut s in sub {
        let p = s.images.remove(&new).expect("new mark has an image");
        if contract {
            s.maps.insert(leaf, VertexMap::Contracted(p.clone()));
            s.images.insert(a, p.clone());
            s.images.insert(b, p);
        } else {
            let stacked = la.vstack(lb).transpose();
            let (coef, _) = stacked
                .solve_affine(&p)?
                .ok_or_else(|| non_generic("node image outside the sum of the subspaces"))?;
            let u = combine(la, &coef[..la.rows()]);
            let v = combine(lb, &coef[la.rows()..]);
            if is_zero_vec(&u) || is_zero_vec(&v) {
                return Err(non_generic(format!("node image lies in the subspace of mark {a} or {b}")));
            }
            let (alpha, beta) = coefficients(&ta, &tb, &tq);
            let u: Vec<Rat> = u.iter().map(|x| x / &alpha).collect();
            let v: Vec<Rat> = v.iter().map(|x| x / &beta).collect();
            s.maps.insert(leaf, VertexMap::Linear(line_through(&u, &v, &ta, &tb)));
            s.images.insert(a, u);
            s.images.insert(b, v);
        }
        out.push(s);
    }
    Ok(out)
}

/// One component carrying three marks.
fn solve_single(work: &Work, e: usize) -> Result<Vec<Partial>> {
    let (&v, points) = work.vertices.iter().next().expect("one component");
    let marks = marks_of(points);
    let ls: Vec<&Mat> = marks.iter().map(|(i, _)| &work.constraints[i]).collect();
    match e {
        0 => {
            let inter = intersect(&intersect(ls[0], ls[1]), ls[2]);
            match inter.rows() {
                0 => Ok(Vec::new()),
                1 => {
                    let p = inter.row(0).to_vec();
                    let mut s = Partial::default();
                    s.maps.insert(v, VertexMap::Contracted(p.clone()));
                    for (i, _) in &marks {
                        s.images.insert(*i, p.clone());
                    }
                    Ok(vec![s])
                }
                k => Err(non_generic(format!("three subspaces meet in dimension {k}"))),
            }
        }
        1 => {
            let taus: Vec<[Rat; 2]> = marks.iter().map(|(_, t)| t.homogeneous()).collect();
            let (alpha, beta) = coefficients(&taus[0], &taus[1], &taus[2]);
            // α·u + β·v - w = 0 with u, v, w in the three subspaces
            let (r0, r1, r2) = (ls[0].rows(), ls[1].rows(), ls[2].rows());
            let system = Mat::from_fn(work.dim, r0 + r1 + r2, |row, col| {
                if col < r0 {
                    &alpha * &ls[0][(col, row)]
                } else if col < r0 + r1 {
                    &beta * &ls[1][(col - r0, row)]
                } else {
                    -ls[2][(col - r0 - r1, row)].clone()
                }
            });
            let kernel = system.kernel_basis();
            match kernel.rows() {
                0 => Ok(Vec::new()),
                1 => {
                    let x = kernel.row(0);
                    let u = combine(ls[0], &x[..r0]);
                    let w = combine(ls[1], &x[r0..r0 + r1]);
                    if is_zero_vec(&u) || is_zero_vec(&w) || parallel(&u, &w) {
                        return Err(non_generic("the line through the three subspaces degenerates"));
                    }
                    let m = line_through(&u, &w, &taus[0], &taus[1]);
                    let mut s = Partial::default();
                    for (i, t) in &marks {
                        s.images.insert(*i, m.mul_vec(&t.homogeneous()));
                    }
                    s.maps.insert(v, VertexMap::Linear(m));
                    Ok(vec![s])
                }
                k => Err(non_generic(format!("lines meeting three subspaces form a family of dimension {}", k - 1))),
            }
        }
        _ => Ok(Vec::new()),
    }
}

/// All maps of total degree `e`, linear or constant on each component, with
/// mark `i` landing in its subspace, on a maximally degenerate tree.
///
/// Recurses on a leaf component carrying marks `a, b`: when the two
/// subspaces meet, the leaf is contracted into their intersection; otherwise
/// the rest of the curve is solved in degree `e-1` against their sum and the
/// leaf becomes the line through the node image meeting both.
pub fn degree_map_solve(tree: &StableTree, e: usize, constraints: &[SubspaceConstraint]) -> Result<Vec<PiecewiseMap>> {
    if !tree.is_maximally_degenerate() {
        return Err(Error::Precondition("every component must carry exactly 3 special points".into()));
    }
    let n = tree.n();
    if constraints.len() != n {
        return Err(Error::Precondition(format!("{} constraints for {n} marks", constraints.len())));
    }
    let dim = constraints[0].ambient();
    if dim < 2 {
        return Err(Error::Precondition("constraints must live in P^d with d >= 1".into()));
    }
    let d = dim - 1;
    let mut by_mark: BTreeMap<usize, Mat> = BTreeMap::new();
    for c in constraints {
        if c.ambient() != dim {
            return Err(Error::DimensionMismatch(format!(
                "constraint {} lives in dimension {}, expected {dim}",
                c.index + 1,
                c.ambient()
            )));
        }
        if c.index >= n || by_mark.insert(c.index, c.subspace().clone()).is_some() {
            return Err(Error::Precondition(format!("constraint index {} invalid or repeated", c.index + 1)));
        }
    }
    if e > d {
        return Err(Error::Precondition(format!("need e <= d, got e = {e}, d = {d}")));
    }
    let total: usize = constraints.iter().map(SubspaceConstraint::codim).sum();
    if total + 1 != (d + 1) * (e + 1) {
        return Err(Error::Precondition(format!(
            "codimensions sum to {total}, expected (d+1)(e+1)-1 = {}",
            (d + 1) * (e + 1) - 1
        )));
    }
    let work = Work {
        dim,
        vertices: tree
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, pts)| (v, pts.iter().map(|p| (p.label.clone(), p.coord.clone())).collect()))
            .collect(),
        edges: tree.edges().iter().map(|e| (e.id.clone(), (e.a, e.b))).collect(),
        constraints: by_mark,
        next_mark: n,
    };
    let solutions = solve(&work, e)?;
    Ok(solutions
        .into_iter()
        .map(|mut s| PiecewiseMap {
            vertex_maps: (0..tree.num_vertices())
                .map(|v| s.maps.remove(&v).expect("every component is assigned"))
                .collect(),
            mark_images: (0..n).map(|i| s.images.remove(&i).expect("every mark has an image")).collect(),
        })
        .collect())
}
