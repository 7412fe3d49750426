//! Intersection numbers of the `D_k` with symmetric F-curves and the
//! extremal-ray consistency report.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, Mat, Span};
use crate::fcurves::{enumerate_sym_fcurves, fakhruddin_degree, SymFPartition};
use crate::gitstab::symcont_predicate;

/// `⌊n/2⌋ - 1`, the number of independent symmetric `D_k`.
pub fn rho(n: usize) -> usize {
    (n / 2).saturating_sub(1)
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Precondition(format!("need n >= 4, got {n}")));
    }
    Ok(())
}

/// The degrees `(D_k · F)` for `k = 2..=⌊n/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymCurveVector {
    pub n: usize,
    pub sizes: SymFPartition,
    pub degrees: Vec<usize>,
}

pub fn sym_curve_vector(n: usize, sizes: &SymFPartition) -> Result<SymCurveVector> {
    check_n(n)?;
    let degrees = (2..=n / 2).map(|k| fakhruddin_degree(n, k, sizes)).collect::<Result<_>>()?;
    Ok(SymCurveVector {
        n,
        sizes: *sizes,
        degrees,
    })
}

/// Rows `k = 2..=⌊n/2⌋`, columns the symmetric F-curves in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    pub n: usize,
    pub ks: Vec<usize>,
    pub curves: Vec<SymFPartition>,
    pub entries: Vec<Vec<usize>>,
}

impl IntersectionMatrix {
    pub fn rank(&self) -> usize {
        to_mat(&self.entries, self.curves.len()).rank()
    }
}

fn to_mat(rows: &[Vec<usize>], cols: usize) -> Mat {
    Mat::from_fn(rows.len(), cols, |i, j| int(rows[i][j] as i64))
}

fn rank_of(vectors: &[SymCurveVector], n: usize) -> usize {
    let rows: Vec<Vec<usize>> = vectors.iter().map(|v| v.degrees.clone()).collect();
    to_mat(&rows, rho(n)).rank()
}

pub fn intersection_matrix(n: usize) -> Result<IntersectionMatrix> {
    check_n(n)?;
    let curves = enumerate_sym_fcurves(n);
    let ks: Vec<usize> = (2..=n / 2).collect();
    let entries = ks
        .iter()
        .map(|&k| curves.iter().map(|f| fakhruddin_degree(n, k, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(IntersectionMatrix { n, ks, curves, entries })
}

/// Symmetric F-curves of degree zero against `D_k`.
pub fn contracted_set(n: usize, k: usize) -> Result<BTreeSet<SymFPartition>> {
    let mut out = BTreeSet::new();
    for f in enumerate_sym_fcurves(n) {
        if fakhruddin_degree(n, k, &f)? == 0 {
            out.insert(f);
        }
    }
    Ok(out)
}

/// Symmetric F-curves contracted by the map to the symmetric GIT quotient of
/// `n` points in `P^d`.
pub fn git_contracted_set(n: usize, d: usize) -> Result<BTreeSet<SymFPartition>> {
    let mut out = BTreeSet::new();
    for f in enumerate_sym_fcurves(n) {
        if symcont_predicate(n, d, &f)?.is_some() {
            out.insert(f);
        }
    }
    Ok(out)
}

/// The curve `F_{a,b,c}` with leg sizes `a, b, c, n-a-b-c`.
pub fn f_curve(n: usize, a: usize, b: usize, c: usize) -> Result<SymFPartition> {
    let rest = n
        .checked_sub(a + b + c)
        .ok_or_else(|| Error::InvalidPartition(format!("F_{{{a},{b},{c}}} exceeds n = {n}")))?;
    SymFPartition::from_unsorted([a, b, c, rest])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgssFamily {
    pub n: usize,
    pub d: usize,
    pub q: usize,
    pub curves: Vec<SymFPartition>,
}

/// Contracted curves spanning the face of the symmetric nef cone, for
/// `(d+1) | n`.
///
/// For each `1 ≤ i ≤ ⌊n/2⌋-1` the family takes `F_{i,q,q}` when `q | (i+1)`
/// and `F_{i,1,1}` otherwise, then drops the `F_{i,q,q}` with the largest `i`
/// (which need not be a valid curve itself).
pub fn agss_family(n: usize, d: usize) -> Result<AgssFamily> {
    check_n(n)?;
    if d > 0 && !n.is_multiple_of(d + 1) {
        return Err(Error::DivisibilityViolated { n, divisor: d + 1 });
    }
    if d == 0 || d > rho(n) {
        return Err(Error::Precondition(format!("need 1 <= d <= floor(n/2)-1, got n = {n}, d = {d}")));
    }
    let q = n / (d + 1);
    let mut entries: Vec<(bool, [usize; 3])> = (1..=rho(n))
        .map(|i| if (i + 1) % q == 0 { (true, [i, q, q]) } else { (false, [i, 1, 1]) })
        .collect();
    if let Some(last) = entries.iter().rposition(|(qq, _)| *qq) {
        entries.remove(last);
    }
    let curves = entries
        .into_iter()
        .map(|(_, [a, b, c])| f_curve(n, a, b, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(AgssFamily {
        n,
        d,
        q,
        curves,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub d: usize,
    pub rho: usize,
    pub fakhruddin_contracted: Vec<SymFPartition>,
    pub git_contracted: Vec<SymFPartition>,
    /// Both descriptions give the same set.
    pub clause_a: bool,
    pub family: Option<AgssFamily>,
    /// Every family curve lies in both sets.
    pub clause_b: Option<bool>,
    pub family_rank: Option<usize>,
    /// The family has `ρ-1` curves of rank `ρ-1`.
    pub clause_c: Option<bool>,
    pub basis: Vec<SymFPartition>,
    /// Some `ρ` symmetric F-curves have intersection vectors of rank `ρ`.
    pub clause_d: bool,
    pub notices: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.clause_a && self.clause_b != Some(false) && self.clause_c != Some(false) && self.clause_d
    }
}

/// Greedy choice of symmetric F-curves with independent intersection vectors.
fn independent_curves(n: usize) -> Result<Vec<SymFPartition>> {
    let mut span = Span::new(rho(n));
    let mut chosen = Vec::new();
    for f in enumerate_sym_fcurves(n) {
        let v = sym_curve_vector(n, &f)?;
        let row: Vec<_> = v.degrees.iter().map(|&x| int(x as i64)).collect();
        if span.insert(&row) {
            chosen.push(f);
        }
    }
    Ok(chosen)
}

pub fn verify_theorem_cb(n: usize, d: usize) -> Result<TheoremReport> {
    check_n(n)?;
    if d == 0 || d > rho(n) {
        return Err(Error::Precondition(format!("need 1 <= d <= floor(n/2)-1, got n = {n}, d = {d}")));
    }
    let rho = rho(n);
    let fak = contracted_set(n, d + 1)?;
    let git = git_contracted_set(n, d)?;
    let mut notices = Vec::new();
    let (family, clause_b, family_rank, clause_c) = match agss_family(n, d) {
        Ok(fam) => {
            let b = fam.curves.iter().all(|f| fak.contains(f) && git.contains(f));
            let vectors = fam
                .curves
                .iter()
                .map(|f| sym_curve_vector(n, f))
                .collect::<Result<Vec<_>>>()?;
            let rank = rank_of(&vectors, n);
            let c = fam.curves.len() + 1 == rho && rank + 1 == rho;
            (Some(fam), Some(b), Some(rank), Some(c))
        }
        Err(Error::DivisibilityViolated { .. }) => {
            notices.push(format!(
                "d+1 = {} does not divide n = {n}; the contracted family is only built in the divisible case, clauses (b) and (c) skipped",
                d + 1
            ));
            (None, None, None, None)
        }
        Err(e) => return Err(e),
    };
    let basis = independent_curves(n)?;
    let clause_d = basis.len() == rho;
    Ok(TheoremReport {
        n,
        d,
        rho,
        clause_a: fak == git,
        fakhruddin_contracted: fak.into_iter().collect(),
        git_contracted: git.into_iter().collect(),
        family,
        clause_b,
        family_rank,
        clause_c,
        basis,
        clause_d,
        notices,
    })
}
