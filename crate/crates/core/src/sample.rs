//! Seeded generators for random test inputs. Everything is driven by a
//! `ChaCha8Rng`, so a seed fixes the output on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::configs::{Configuration, Param};
use crate::error::{Error, Result};
use crate::exactlin::{int, rat, Mat, Rat};
use crate::gitstab::{walls, Linearization};
use crate::trees::{AuxDivisor, DegreePartition, Edge, Label, SpecialPoint, StableTree, SubspaceConstraint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=7))
}

/// `count` pairwise distinct rationals, none in `avoid`.
pub fn distinct_rationals<R: Rng>(rng: &mut R, count: usize, avoid: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    while out.len() < count {
        let r = rational(rng);
        if !out.contains(&r) && !avoid.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// A `(d+1) × n` integer configuration in linearly general position.
pub fn general_configuration<R: Rng>(rng: &mut R, d: usize, n: usize) -> Configuration {
    loop {
        let m = Mat::from_fn(d + 1, n, |_, _| int(rng.gen_range(-9..=9)));
        if let Ok(c) = Configuration::new(m) {
            if c.in_general_position() {
                return c;
            }
        }
    }
}

fn off_walls(d: usize, x: Vec<Rat>) -> Option<Linearization> {
    let l = Linearization::new(d, x.len(), x).ok()?;
    walls(&l).is_empty().then_some(l)
}

/// A small perturbation of the symmetric linearization lying in the
/// interior of a chamber.
pub fn perturbed_symmetric<R: Rng>(rng: &mut R, d: usize, n: usize) -> Linearization {
    let base = rat(d as i64 + 1, n as i64);
    loop {
        let mut x: Vec<Rat> = (0..n - 1)
            .map(|_| &base + rat(rng.gen_range(-40..=40), 1000 + rng.gen_range(0..7)))
            .collect();
        let rest = int(d as i64 + 1) - x.iter().sum::<Rat>();
        x.push(rest);
        if let Some(l) = off_walls(d, x) {
            return l;
        }
    }
}

/// A random linearization in the interior of the hypersimplex; when
/// `off_wall` is set it also avoids every wall.
pub fn random_linearization<R: Rng>(rng: &mut R, d: usize, n: usize, off_wall: bool) -> Linearization {
    let base = rat(d as i64 + 1, n as i64);
    let room = std::cmp::min(base.clone(), int(1) - &base) / int(2);
    loop {
        let u: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-99..=99), 100)).collect();
        let mean = u.iter().sum::<Rat>() / int(n as i64);
        let x: Vec<Rat> = u.iter().map(|ui| &base + &room * (ui - &mean)).collect();
        let l = if off_wall {
            off_walls(d, x)
        } else {
            Linearization::new(d, n, x).ok()
        };
        if let Some(l) = l {
            return l;
        }
    }
}

/// Fewest marks a tree shape needs to be stable.
fn required_marks(degree: &[usize]) -> usize {
    degree.iter().map(|&k| 3usize.saturating_sub(k)).sum()
}

/// A random stable tree with `r` components and `n` marks; special-point
/// coordinates are random rationals, with `∞` used now and then.
pub fn stable_tree<R: Rng>(rng: &mut R, n: usize, r: usize) -> Result<StableTree> {
    if r == 0 {
        return Err(Error::InvalidTree("need at least one component".into()));
    }
    for _ in 0..64 {
        let parents: Vec<usize> = (1..r).map(|v| rng.gen_range(0..v)).collect();
        let mut degree = vec![0; r];
        for (i, &p) in parents.iter().enumerate() {
            degree[p] += 1;
            degree[i + 1] += 1;
        }
        if required_marks(&degree) > n {
            continue;
        }
        let mut owner: Vec<usize> = Vec::with_capacity(n);
        for (v, &k) in degree.iter().enumerate() {
            owner.extend(std::iter::repeat_n(v, 3usize.saturating_sub(k)));
        }
        while owner.len() < n {
            owner.push(rng.gen_range(0..r));
        }
        owner.shuffle(rng);
        let mut labels: Vec<Vec<Label>> = vec![Vec::new(); r];
        for (i, &v) in owner.iter().enumerate() {
            labels[v].push(Label::Mark(i));
        }
        let edges: Vec<Edge> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| Edge {
                id: format!("e{}", i + 1),
                a: p,
                b: i + 1,
            })
            .collect();
        for e in &edges {
            labels[e.a].push(Label::Edge(e.id.clone()));
            labels[e.b].push(Label::Edge(e.id.clone()));
        }
        let vertices = labels
            .into_iter()
            .map(|ls| {
                let mut coords: Vec<Param> = distinct_rationals(rng, ls.len(), &[]).into_iter().map(Param::Finite).collect();
                if rng.gen_bool(0.4) {
                    let j = rng.gen_range(0..coords.len());
                    coords[j] = Param::Infinity;
                }
                ls.into_iter()
                    .zip(coords)
                    .map(|(label, coord)| SpecialPoint { label, coord })
                    .collect()
            })
            .collect();
        return StableTree::new(vertices, edges);
    }
    Err(Error::InvalidTree(format!("no stable tree with {r} components and {n} marks found")))
}

/// A random maximally degenerate tree on `n ≥ 3` marks, grown by
/// repeatedly sprouting a new component at a random mark.
pub fn trivalent_tree<R: Rng>(rng: &mut R, n: usize) -> Result<StableTree> {
    if n < 3 {
        return Err(Error::InvalidTree(format!("need n >= 3 marks, got {n}")));
    }
    let mut labels: Vec<Vec<Label>> = vec![vec![Label::Mark(0), Label::Mark(1), Label::Mark(2)]];
    let mut edges: Vec<Edge> = Vec::new();
    for next in 3..n {
        let slots: Vec<(usize, usize)> = (0..labels.len())
            .flat_map(|v| (0..3).map(move |j| (v, j)))
            .filter(|&(v, j)| matches!(labels[v][j], Label::Mark(_)))
            .collect();
        let &(v, j) = slots.choose(rng).expect("a leaf component always carries a mark");
        let id = format!("e{}", edges.len() + 1);
        let moved = std::mem::replace(&mut labels[v][j], Label::Edge(id.clone()));
        labels.push(vec![Label::Edge(id.clone()), moved, Label::Mark(next)]);
        edges.push(Edge { id, a: v, b: labels.len() - 1 });
    }
    let vertices = labels
        .into_iter()
        .map(|ls| {
            let coords = distinct_rationals(rng, 3, &[]);
            ls.into_iter()
                .zip(coords)
                .map(|(label, t)| SpecialPoint { label, coord: Param::Finite(t) })
                .collect()
        })
        .collect();
    StableTree::new(vertices, edges)
}

/// A uniformly random composition of `d` into `r` nonnegative parts.
pub fn composition<R: Rng>(rng: &mut R, d: usize, r: usize) -> Vec<usize> {
    let mut parts = vec![0; r];
    for _ in 0..d {
        parts[rng.gen_range(0..r)] += 1;
    }
    parts
}

/// Random finite aux points avoiding the special points of each component.
pub fn aux_divisor<R: Rng>(rng: &mut R, tree: &StableTree, deg: &DegreePartition) -> Result<AuxDivisor> {
    let points = tree
        .vertices()
        .iter()
        .zip(deg.degrees())
        .map(|(pts, &dv)| {
            let avoid: Vec<Rat> = pts.iter().filter_map(|p| p.coord.as_finite().cloned()).collect();
            distinct_rationals(rng, dv, &avoid)
        })
        .collect();
    AuxDivisor::new(tree, deg, points)
}

/// Random subspaces of `k^{d+1}` for marks `0..n` with codimensions summing
/// to `(d+1)(e+1) - 1`.
pub fn generic_constraints<R: Rng>(rng: &mut R, n: usize, d: usize, e: usize) -> Result<Vec<SubspaceConstraint>> {
    let target = (d + 1) * (e + 1) - 1;
    if n * d < target {
        return Err(Error::Precondition(format!(
            "{n} marks cannot carry codimension {target} in P^{d}"
        )));
    }
    let mut codims = vec![0; n];
    let mut placed = 0;
    while placed < target {
        let i = rng.gen_range(0..n);
        if codims[i] < d {
            codims[i] += 1;
            placed += 1;
        }
    }
    codims
        .iter()
        .enumerate()
        .map(|(i, &m)| loop {
            let rows = d + 1 - m;
            let basis = Mat::from_fn(rows, d + 1, |_, _| int(rng.gen_range(-5..=5)));
            if basis.rank() == rows {
                break SubspaceConstraint::new(i, basis);
            }
        })
        .collect()
}
