use num_traits::{One, Zero};

use super::{AuxDivisor, DegreePartition, StableTree};
use crate::configs::{proj_equivalent, Configuration, Param};
use crate::error::{Error, Result};
use crate::exactlin::{dot, int, Mat, Rat};
use crate::gitstab::{semistability, Linearization, StabilityVerdict, Status};

/// Global sections of `O(q_1 + … + q_d)` on the nodal curve.
///
/// A section is a tuple of rational functions `f_v ∈ span{1, 1/(x-q)}` over
/// the aux points `q` of each component, agreeing at every node. The basis is
/// the reduced kernel of the node-matching equations.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    tree: StableTree,
    aux: AuxDivisor,
    offsets: Vec<usize>,
    basis: Mat,
}

impl SectionSpace {
    pub fn new(tree: &StableTree, deg: &DegreePartition, aux: &AuxDivisor) -> Result<Self> {
        let aux = AuxDivisor::new(tree, deg, aux.points().to_vec())?;
        let mut offsets = Vec::with_capacity(tree.num_vertices());
        let mut unknowns = 0;
        for pts in aux.points() {
            offsets.push(unknowns);
            unknowns += 1 + pts.len();
        }
        let mut space = SectionSpace {
            tree: tree.clone(),
            aux,
            offsets,
            basis: Mat::zeros(0, unknowns),
        };
        let rows = tree
            .edges()
            .iter()
            .map(|e| {
                let a = space.value_row(e.a, tree.node_coord(e, e.a));
                let b = space.value_row(e.b, tree.node_coord(e, e.b));
                a.into_iter().zip(b).map(|(x, y)| x - y).collect()
            })
            .collect();
        let basis = Mat::from_rows(unknowns, rows)?.kernel_basis();
        let expected = deg.d() + 1;
        if basis.rows() != expected {
            return Err(Error::SectionSpaceDimension {
                expected,
                got: basis.rows(),
            });
        }
        space.basis = basis;
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Evaluation functional at `t` on component `v`, in the coefficient
    /// coordinates of all components.
    fn value_row(&self, v: usize, t: &Param) -> Vec<Rat> {
        let mut row = vec![Rat::zero(); self.basis.cols()];
        let o = self.offsets[v];
        row[o] = Rat::one();
        if let Param::Finite(t) = t {
            for (j, q) in self.aux.points()[v].iter().enumerate() {
                row[o + 1 + j] = (t - q).recip();
            }
        }
        row
    }

    /// `(s_0(t), …, s_d(t))` at coordinate `t` on component `v`.
    pub fn eval(&self, v: usize, t: &Param) -> Result<Vec<Rat>> {
        if let Param::Finite(t) = t {
            if self.aux.points()[v].contains(t) {
                return Err(Error::Precondition(format!("{t} is a pole on component {v}")));
            }
        }
        let row = self.value_row(v, t);
        Ok((0..self.dim()).map(|k| dot(self.basis.row(k), &row)).collect())
    }

    /// The images of the marks.
    pub fn configuration(&self) -> Result<Configuration> {
        let columns = (0..self.tree.n())
            .map(|i| {
                let (v, t) = self.tree.mark(i);
                self.eval(v, t)
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(Mat::from_columns(self.dim(), &columns)?)
    }
}

/// Images of the marks under the map given by `deg` and the aux points.
pub fn limit_config(tree: &StableTree, deg: &DegreePartition, aux: &AuxDivisor) -> Result<Configuration> {
    SectionSpace::new(tree, deg, aux)?.configuration()
}

/// Smallest nonnegative integers avoiding `avoid`.
fn small_integers(count: usize, avoid: &[Rat]) -> Vec<Rat> {
    (0..)
        .map(int)
        .filter(|q| !avoid.contains(q))
        .take(count)
        .collect()
}

fn finite_coords(tree: &StableTree, v: usize) -> Vec<Rat> {
    tree.vertices()[v]
        .iter()
        .filter_map(|p| p.coord.as_finite().cloned())
        .collect()
}

/// Deterministic aux points: on each component the smallest nonnegative
/// integers that are not special-point coordinates.
pub fn default_aux(tree: &StableTree, deg: &DegreePartition) -> Result<AuxDivisor> {
    let points = (0..tree.num_vertices())
        .map(|v| small_integers(deg.degrees()[v], &finite_coords(tree, v)))
        .collect();
    AuxDivisor::new(tree, deg, points)
}

/// Whether two aux choices give projectively equivalent limit configurations.
///
/// First compares the two maps on an enlarged point set (marks, nodes and
/// `d_v + 3` further points per component), where a frame is available; an
/// equivalence there restricts to the marks. Otherwise compares the marks
/// alone.
pub fn aux_independence_check(
    tree: &StableTree,
    deg: &DegreePartition,
    a1: &AuxDivisor,
    a2: &AuxDivisor,
) -> Result<bool> {
    let s1 = SectionSpace::new(tree, deg, a1)?;
    let s2 = SectionSpace::new(tree, deg, a2)?;
    let mut sites: Vec<(usize, Param)> = (0..tree.n())
        .map(|i| {
            let (v, t) = tree.mark(i);
            (v, t.clone())
        })
        .collect();
    for e in tree.edges() {
        sites.push((e.a, tree.node_coord(e, e.a).clone()));
    }
    for v in 0..tree.num_vertices() {
        let mut avoid = finite_coords(tree, v);
        avoid.extend(a1.points()[v].iter().cloned());
        avoid.extend(a2.points()[v].iter().cloned());
        for t in small_integers(deg.degrees()[v] + 3, &avoid) {
            sites.push((v, Param::Finite(t)));
        }
    }
    let extended = |s: &SectionSpace| -> Result<Configuration> {
        let cols = sites.iter().map(|(v, t)| s.eval(*v, t)).collect::<Result<Vec<_>>>()?;
        Configuration::new(Mat::from_columns(s.dim(), &cols)?)
    };
    if proj_equivalent(&extended(&s1)?, &extended(&s2)?)? {
        return Ok(true);
    }
    proj_equivalent(&s1.configuration()?, &s2.configuration()?)
}

/// Degree partitions whose limit configuration is not unstable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistableSelection {
    pub entries: Vec<(DegreePartition, StabilityVerdict)>,
}

impl SemistableSelection {
    pub fn stable(&self) -> Vec<&DegreePartition> {
        self.entries
            .iter()
            .filter(|(_, v)| v.status == Status::Stable)
            .map(|(p, _)| p)
            .collect()
    }

    /// More than one partition survives; the survivors are not compared up to
    /// GIT equivalence.
    pub fn is_ambiguous(&self) -> bool {
        self.entries.len() > 1
    }
}

/// Components allowed in [`semistable_partitions`].
pub const MAX_COMPONENTS: usize = 8;

/// Runs every composition of `d` over the components through
/// [`limit_config`] (with [`default_aux`]) and keeps the non-unstable ones.
pub fn semistable_partitions(tree: &StableTree, l: &Linearization) -> Result<SemistableSelection> {
    if l.n() != tree.n() {
        return Err(Error::DimensionMismatch(format!(
            "linearization on {} points for a tree with {} marks",
            l.n(),
            tree.n()
        )));
    }
    if tree.num_vertices() > MAX_COMPONENTS {
        return Err(Error::Precondition(format!(
            "at most {MAX_COMPONENTS} components supported, got {}",
            tree.num_vertices()
        )));
    }
    let mut entries = Vec::new();
    for deg in DegreePartition::compositions(tree, l.d()) {
        let aux = default_aux(tree, &deg)?;
        let c = limit_config(tree, &deg, &aux)?;
        let verdict = semistability(&c, l)?;
        if verdict.status != Status::Unstable {
            entries.push((deg, verdict));
        }
    }
    Ok(SemistableSelection { entries })
}

/// Edge-cut test: the marks on a side of total degree `δ` span at most a
/// `P^δ`, so semistability forces their weight to be at most `δ + 1` on both
/// sides of every edge.
pub fn cut_criterion(tree: &StableTree, deg: &DegreePartition, l: &Linearization) -> bool {
    let d = deg.d();
    tree.edges().iter().all(|e| {
        let side = tree.side_vertices(e);
        let delta: usize = (0..tree.num_vertices()).filter(|&v| side[v]).map(|v| deg.degrees()[v]).sum();
        let (a, b) = tree.cut(e);
        let fits = |marks: &[usize], delta: usize| delta >= d || l.weight_of(marks) <= int(delta as i64 + 1);
        fits(&a, delta) && fits(&b, d - delta)
    })
}
