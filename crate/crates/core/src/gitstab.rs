//! Linearizations on `(P^d)^n`, GIT (semi)stability of configurations, walls
//! of the hypersimplex, and the F-curve contraction criteria.
//!
//! Weights are normalized so that `Σ x_i = d + 1`. With that normalization a
//! configuration is semistable iff every proper linear subspace `W` carries
//! total weight at most `dim W + 1`.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::configs::{subsets, Configuration};
use crate::error::{Error, Result};
use crate::exactlin::{floor_int, ceil_int, int, Rat, Span};
use crate::fcurves::{FPartition, SymFPartition};

/// A weight vector `x ∈ Δ(d+1, n)` with all `x_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    d: usize,
    x: Vec<Rat>,
    // integer numerators over a common denominator, when they fit
    grid: Option<(Vec<i128>, i128)>,
}

impl Linearization {
    pub fn new(d: usize, n: usize, x: Vec<Rat>) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfHypersimplex("d must be at least 1".into()));
        }
        if x.len() != n {
            return Err(Error::OutOfHypersimplex(format!("{} weights given for n = {n}", x.len())));
        }
        if let Some(i) = x.iter().position(|w| !w.is_positive()) {
            return Err(Error::OutOfHypersimplex(format!("x_{} = {} is not positive", i + 1, x[i])));
        }
        if let Some(i) = x.iter().position(|w| w > &Rat::one()) {
            return Err(Error::OutOfHypersimplex(format!(
                "max{{x_i}} <= 1 fails: x_{} = {}",
                i + 1,
                x[i]
            )));
        }
        let total: Rat = x.iter().sum();
        if total != int(d as i64 + 1) {
            return Err(Error::OutOfHypersimplex(format!("sum of weights is {total}, expected d+1 = {}", d + 1)));
        }
        let grid = integer_grid(&x);
        Ok(Linearization { d, x, grid })
    }

    /// The `S_n`-invariant linearization `x_i = (d+1)/n`.
    pub fn symmetric(d: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfHypersimplex("n must be positive".into()));
        }
        let w = Rat::new((d as i64 + 1).into(), (n as i64).into());
        Linearization::new(d, n, vec![w; n])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.x
    }

    pub fn weight_of(&self, idx: &[usize]) -> Rat {
        idx.iter().map(|&i| &self.x[i]).sum()
    }

    /// `floor` of each block weight of an F-partition.
    fn block_floors(&self, p: &FPartition) -> [i64; 4] {
        let blocks = p.blocks();
        match &self.grid {
            Some((num, den)) => std::array::from_fn(|j| {
                let s: i128 = blocks[j].iter().map(|&i| num[i]).sum();
                (s / den) as i64
            }),
            None => std::array::from_fn(|j| {
                floor_int(&self.weight_of(&blocks[j]))
                    .to_i64()
                    .expect("weights are bounded by n")
            }),
        }
    }

    fn max_block_at_least(&self, p: &FPartition, bound: usize) -> bool {
        match &self.grid {
            Some((num, den)) => p
                .blocks()
                .iter()
                .any(|b| b.iter().map(|&i| num[i]).sum::<i128>() >= bound as i128 * den),
            None => p.blocks().iter().any(|b| self.weight_of(b) >= int(bound as i64)),
        }
    }
}

fn integer_grid(x: &[Rat]) -> Option<(Vec<i128>, i128)> {
    let mut den = num_bigint::BigInt::one();
    for w in x {
        den = den.lcm(w.denom());
    }
    let den_i = den.to_i64()? as i128;
    let num = x
        .iter()
        .map(|w| (w.numer() * (&den / w.denom())).to_i64().map(i128::from))
        .collect::<Option<Vec<_>>>()?;
    Some((num, den_i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// A subspace spanned by configuration points, with the weight it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// All points lying in the subspace (zero based).
    pub subset: Vec<usize>,
    pub dim: usize,
    pub weight: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    pub fn is_semistable(&self) -> bool {
        self.status != Status::Unstable
    }
}

#[derive(Clone, Debug)]
struct Flat {
    members: u64,
    rank: usize,
}

/// Every proper linear subspace spanned by a subset of the columns, each
/// given by the full set of columns it contains.
fn proper_flats(c: &Configuration) -> Vec<Flat> {
    let n = c.n();
    let dim = c.d() + 1;
    let cols = c.matrix().columns();
    let closure = |seed: &[usize]| -> Flat {
        let mut span = Span::new(dim);
        for &j in seed {
            span.insert(&cols[j]);
        }
        let members = (0..n)
            .filter(|&j| span.contains(&cols[j]))
            .fold(0u64, |m, j| m | (1 << j));
        Flat {
            members,
            rank: span.rank(),
        }
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for j in 0..n {
        let f = closure(&[j]);
        if f.rank < dim && seen.insert(f.members) {
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        if f.rank + 1 < dim {
            let members: Vec<usize> = (0..n).filter(|&j| f.members >> j & 1 == 1).collect();
            // a basis of the flat plus one outside point spans the next flat
            let mut span = Span::new(dim);
            let basis: Vec<usize> = members.iter().copied().filter(|&j| span.insert(&cols[j])).collect();
            for j in (0..n).filter(|&j| f.members >> j & 1 == 0) {
                let mut seed = basis.clone();
                seed.push(j);
                let g = closure(&seed);
                if g.rank < dim && seen.insert(g.members) {
                    queue.push_back(g);
                }
            }
        }
        out.push(f);
    }
    let key = |f: &Flat| (f.rank, (0..n).filter(|&j| f.members >> j & 1 == 1).collect::<Vec<_>>());
    out.sort_by_key(key);
    out
}

/// GIT stability of `c` with respect to `l`.
///
/// Unstable iff some proper subspace spanned by points carries weight
/// `> dim + 1`; strictly semistable iff no violation but some equality.
pub fn semistability(c: &Configuration, l: &Linearization) -> Result<StabilityVerdict> {
    if c.d() != l.d() || c.n() != l.n() {
        return Err(Error::DimensionMismatch(format!(
            "configuration (d={}, n={}) against linearization (d={}, n={})",
            c.d(),
            c.n(),
            l.d(),
            l.n()
        )));
    }
    if c.n() > 63 {
        return Err(Error::Precondition("stability check supports at most 63 points".into()));
    }
    let mut equality: Option<Witness> = None;
    for f in proper_flats(c) {
        let subset: Vec<usize> = (0..c.n()).filter(|&j| f.members >> j & 1 == 1).collect();
        let weight = l.weight_of(&subset);
        let bound = int(f.rank as i64);
        let witness = || Witness {
            subset: subset.clone(),
            dim: f.rank - 1,
            weight: weight.clone(),
        };
        if weight > bound {
            return Ok(StabilityVerdict {
                status: Status::Unstable,
                witness: Some(witness()),
            });
        }
        if weight == bound && equality.is_none() {
            equality = Some(witness());
        }
    }
    Ok(match equality {
        Some(w) => StabilityVerdict {
            status: Status::StrictlySemistable,
            witness: Some(w),
        },
        None => StabilityVerdict {
            status: Status::Stable,
            witness: None,
        },
    })
}

/// A wall `Σ_{i∈I} x_i = k` through `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub subset: Vec<usize>,
    pub k: usize,
}

/// Walls containing `l`, ordered by subset size, then lexicographically.
/// Empty iff `l` lies in the interior of a chamber.
pub fn walls(l: &Linearization) -> Vec<Wall> {
    let n = l.n();
    let mut out = Vec::new();
    for size in 1..n {
        for subset in subsets(n, size) {
            let s = l.weight_of(&subset);
            if s.is_integer() {
                let k = s.to_integer();
                if k >= One::one() && k <= (l.d() as i64).into() {
                    out.push(Wall {
                        subset,
                        k: k.to_usize().expect("small integer"),
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    /// `α_j ≥ 0` with `Σα = d` bounding leg weights from below.
    AlphaFamily,
    /// `β_j ≥ 1` with `Σβ = d+2` bounding leg weights from above.
    BetaFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ContractionCertificate {
    pub kind: CertificateKind,
    pub vector: [u64; 4],
}

impl ContractionCertificate {
    pub(crate) fn new(kind: CertificateKind, v: [i64; 4]) -> Self {
        ContractionCertificate {
            kind,
            vector: v.map(|x| x as u64),
        }
    }
}

/// Lexicographically smallest integer vector with `lower ≤ v ≤ upper`
/// entrywise and `Σ v = total`, nondecreasing when `sorted` is set.
pub(crate) fn lex_smallest(lower: [i64; 4], upper: [i64; 4], total: i64, sorted: bool) -> Option<[i64; 4]> {
    fn go(i: usize, v: &mut [i64; 4], lower: &[i64; 4], upper: &[i64; 4], rest: i64, sorted: bool) -> bool {
        if i == 4 {
            return rest == 0;
        }
        let lo = if sorted && i > 0 { lower[i].max(v[i - 1]) } else { lower[i] };
        let hi = upper[i].min(rest);
        for x in lo..=hi {
            let tail_max: i64 = upper[i + 1..].iter().sum();
            let tail_min: i64 = if sorted {
                lower[i + 1..].iter().map(|&l| l.max(x)).sum()
            } else {
                lower[i + 1..].iter().sum()
            };
            if rest - x > tail_max {
                continue;
            }
            if rest - x < tail_min {
                break;
            }
            v[i] = x;
            if go(i + 1, v, lower, upper, rest - x, sorted) {
                return true;
            }
        }
        false
    }
    let mut v = [0; 4];
    go(0, &mut v, &lower, &upper, total, sorted).then_some(v)
}

fn check_partition(l: &Linearization, p: &FPartition) -> Result<()> {
    if l.n() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "partition of {} points against a linearization on {} points",
            p.n(),
            l.n()
        )));
    }
    Ok(())
}

/// Integers `α_j ≥ 0`, `Σα = d`, with leg weight `≥ α_j` on every leg:
/// a sufficient condition for the F-curve to be contracted.
pub fn cont_predicate(l: &Linearization, p: &FPartition) -> Result<Option<ContractionCertificate>> {
    check_partition(l, p)?;
    let floors = l.block_floors(p);
    let d = l.d() as i64;
    if floors.iter().sum::<i64>() < d {
        return Ok(None);
    }
    let v = lex_smallest([0; 4], floors, d, false).expect("floor sum admits a certificate");
    Ok(Some(ContractionCertificate::new(CertificateKind::AlphaFamily, v)))
}

/// The contraction criterion for the symmetric linearization, in terms of
/// leg sizes only.
pub fn symcont_predicate(n: usize, d: usize, sizes: &SymFPartition) -> Result<Option<ContractionCertificate>> {
    if sizes.n() != n {
        return Err(Error::InvalidPartition(format!("{sizes} does not sum to n = {n}")));
    }
    if d == 0 || d + 3 > n {
        return Err(Error::Precondition(format!("need 1 <= d <= n-3, got n = {n}, d = {d}")));
    }
    let unit = Rat::new((d as i64 + 1).into(), (n as i64).into());
    let weights = sizes.sizes().map(|s| int(s as i64) * &unit);
    let to_i64 = |b: num_bigint::BigInt| b.to_i64().expect("bounded by d+1");
    let floors = weights.clone().map(|w| to_i64(floor_int(&w)));
    let d = d as i64;
    if floors.iter().sum::<i64>() >= d {
        let v = lex_smallest([0; 4], floors, d, true).expect("floor sum admits a certificate");
        return Ok(Some(ContractionCertificate::new(CertificateKind::AlphaFamily, v)));
    }
    let lower = weights.map(|w| to_i64(ceil_int(&w)).max(1));
    if lower.iter().sum::<i64>() <= d + 2 {
        let v = lex_smallest(lower, [d + 2; 4], d + 2, true).expect("ceiling sum admits a certificate");
        return Ok(Some(ContractionCertificate::new(CertificateKind::BetaFamily, v)));
    }
    Ok(None)
}

/// Whether the Hassett reduction morphism to weights `l` contracts the
/// F-curve: the three lightest legs carry total weight at most one,
/// equivalently the heaviest leg carries at least `d`.
pub fn hassett_contracted(l: &Linearization, p: &FPartition) -> Result<bool> {
    check_partition(l, p)?;
    Ok(l.max_block_at_least(p, l.d()))
}

/// Literal form of the Hassett inequality, used to cross-check
/// [`hassett_contracted`].
pub fn hassett_inequality(l: &Linearization, p: &FPartition) -> Result<bool> {
    check_partition(l, p)?;
    let weights: Vec<Rat> = p.blocks().iter().map(|b| l.weight_of(b)).collect();
    let heaviest = (0..4).max_by(|&a, &b| weights[a].cmp(&weights[b])).expect("four legs");
    let others: Rat = (0..4).filter(|&j| j != heaviest).map(|j| &weights[j]).sum();
    Ok(others <= Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{veronese_config, Param};
    use crate::exactlin::{rat, Mat};
    use crate::fcurves::enumerate_fpartitions;

    fn sym(s: [usize; 4]) -> SymFPartition {
        SymFPartition::new(s).unwrap()
    }

    #[test]
    fn linearization_validation() {
        let l = Linearization::symmetric(1, 4).unwrap();
        assert_eq!(l.weights(), &[rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert!(Linearization::new(2, 4, vec![int(1), int(1), rat(1, 2), rat(1, 2)]).is_ok());
        let err = Linearization::new(1, 4, vec![rat(5, 4), rat(1, 4), rat(1, 4), rat(1, 4)]).unwrap_err();
        assert!(matches!(&err, Error::OutOfHypersimplex(m) if m.contains("max{x_i} <= 1")));
        assert!(Linearization::new(1, 3, vec![int(1), int(1), int(0)]).is_err());
        assert!(Linearization::new(1, 3, vec![int(1), rat(1, 2), rat(1, 3)]).is_err());
    }

    #[test]
    fn stability_examples() {
        let ts: Vec<Param> = (0..5).map(Param::int).collect();
        let c = veronese_config(1, &ts).unwrap();
        let v = semistability(&c, &Linearization::symmetric(1, 5).unwrap()).unwrap();
        assert_eq!(v.status, Status::Stable);
        assert!(v.witness.is_none());

        let l = Linearization::symmetric(1, 4).unwrap();
        let c = Configuration::new(Mat::from_ints(&[&[1, 1, 0, 1], &[0, 0, 1, 1]])).unwrap();
        let v = semistability(&c, &l).unwrap();
        assert_eq!(v.status, Status::StrictlySemistable);
        assert_eq!(
            v.witness,
            Some(Witness {
                subset: vec![0, 1],
                dim: 0,
                weight: int(1)
            })
        );

        let c = Configuration::new(Mat::from_ints(&[&[1, 2, 3, 0], &[1, 2, 3, 1]])).unwrap();
        let v = semistability(&c, &l).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.witness.unwrap().weight, rat(3, 2));
    }

    #[test]
    fn stability_in_the_plane() {
        // three collinear points of weight 1 each in P^2 with d+1 = 3
        let c = Configuration::new(Mat::from_ints(&[&[1, 0, 1, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]])).unwrap();
        let l = Linearization::new(2, 4, vec![int(1), int(1), rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(semistability(&c, &l).unwrap().status, Status::Unstable);
        let l = Linearization::symmetric(2, 4).unwrap();
        let v = semistability(&c, &l).unwrap();
        // the line through the first three points carries 9/4 > 2
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.witness.unwrap().subset, vec![0, 1, 2]);
    }

    #[test]
    fn wall_examples() {
        let l = Linearization::symmetric(1, 4).unwrap();
        let w = walls(&l);
        assert_eq!(w.len(), 6);
        assert!(w.iter().all(|w| w.subset.len() == 2 && w.k == 1));

        let l = Linearization::symmetric(1, 6).unwrap();
        let w = walls(&l);
        // 3-subsets sum to exactly 1
        assert_eq!(w.len(), 20);
        assert!(w.iter().all(|w| w.subset.len() == 3));

        let l = Linearization::new(1, 4, vec![rat(3, 7), rat(11, 20), rat(2, 5), rat(87, 140)]).unwrap();
        assert!(walls(&l).is_empty());
    }

    #[test]
    fn cont_examples() {
        let l = Linearization::symmetric(1, 6).unwrap();
        let p = FPartition::new(6, [vec![0], vec![1], vec![2], vec![3, 4, 5]]).unwrap();
        let c = cont_predicate(&l, &p).unwrap().unwrap();
        assert_eq!(c.vector, [0, 0, 0, 1]);

        let l = Linearization::symmetric(1, 5).unwrap();
        let p = FPartition::new(5, [vec![0], vec![1], vec![2], vec![3, 4]]).unwrap();
        assert!(cont_predicate(&l, &p).unwrap().is_none());

        let l = Linearization::new(2, 6, vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(3, 4), int(1), rat(1, 2)]).unwrap();
        let p = FPartition::new(6, [vec![0], vec![1], vec![2], vec![3, 4, 5]]).unwrap();
        assert_eq!(cont_predicate(&l, &p).unwrap().unwrap().vector, [0, 0, 0, 2]);
    }

    #[test]
    fn symcont_examples() {
        let c = symcont_predicate(6, 1, &sym([1, 1, 1, 3])).unwrap().unwrap();
        assert_eq!((c.kind, c.vector), (CertificateKind::AlphaFamily, [0, 0, 0, 1]));
        assert!(symcont_predicate(6, 1, &sym([1, 1, 2, 2])).unwrap().is_none());
        let c = symcont_predicate(8, 3, &sym([2, 2, 2, 2])).unwrap().unwrap();
        assert_eq!((c.kind, c.vector), (CertificateKind::AlphaFamily, [0, 1, 1, 1]));
        let c = symcont_predicate(8, 2, &sym([2, 2, 2, 2])).unwrap().unwrap();
        assert_eq!((c.kind, c.vector), (CertificateKind::BetaFamily, [1, 1, 1, 1]));
        assert!(symcont_predicate(6, 4, &sym([1, 1, 1, 3])).is_err());
    }

    #[test]
    fn hassett_examples() {
        let l = Linearization::symmetric(1, 6).unwrap();
        let p = FPartition::new(6, [vec![0], vec![1], vec![2], vec![3, 4, 5]]).unwrap();
        assert!(hassett_contracted(&l, &p).unwrap());
        assert!(hassett_inequality(&l, &p).unwrap());

        let l = Linearization::symmetric(2, 6).unwrap();
        let p = FPartition::new(6, [vec![0], vec![1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(!hassett_contracted(&l, &p).unwrap());
        assert!(!hassett_inequality(&l, &p).unwrap());
    }

    #[test]
    fn hassett_forms_agree_and_imply_cont() {
        for n in 5..=8 {
            for d in 1..=n - 3 {
                let l = Linearization::symmetric(d, n).unwrap();
                for p in enumerate_fpartitions(n) {
                    let h = hassett_contracted(&l, &p).unwrap();
                    assert_eq!(h, hassett_inequality(&l, &p).unwrap());
                    if h {
                        assert!(cont_predicate(&l, &p).unwrap().is_some());
                    }
                }
            }
        }
    }

    /// Literal search over all integer vectors in a box, in lexicographic order.
    fn oracle_lex(lower: [i64; 4], upper: [i64; 4], total: i64, sorted: bool) -> Option<[i64; 4]> {
        for a in lower[0]..=upper[0] {
            for b in lower[1]..=upper[1] {
                for c in lower[2]..=upper[2] {
                    for e in lower[3]..=upper[3] {
                        let v = [a, b, c, e];
                        if v.iter().sum::<i64>() == total && (!sorted || v.windows(2).all(|w| w[0] <= w[1])) {
                            return Some(v);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn lex_smallest_matches_literal_search() {
        for total in 0..7 {
            for u0 in 0..4 {
                for u1 in 0..4 {
                    for u2 in 0..5 {
                        for u3 in 0..6 {
                            for sorted in [false, true] {
                                let upper = [u0, u1, u2, u3];
                                assert_eq!(
                                    lex_smallest([0; 4], upper, total, sorted),
                                    oracle_lex([0; 4], upper, total, sorted),
                                    "{upper:?} {total} {sorted}"
                                );
                                let lower = [u0.min(1), 1, u2.min(2), 1];
                                assert_eq!(
                                    lex_smallest(lower, [total; 4], total, sorted),
                                    oracle_lex(lower, [total; 4], total, sorted)
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
