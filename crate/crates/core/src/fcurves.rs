//! F-curve classes and Fakhruddin's degree formula for the `D_k` bundles.

use std::fmt;

use crate::error::{Error, Result};
use crate::gitstab::{lex_smallest, CertificateKind, ContractionCertificate};

/// A partition of `{0, …, n-1}` into four nonempty legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPartition {
    n: usize,
    blocks: [Vec<usize>; 4],
}

impl FPartition {
    pub fn new(n: usize, mut blocks: [Vec<usize>; 4]) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty leg".into()));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!("index {i} out of range for n = {n}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("index {i} is not covered")));
        }
        Ok(FPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>; 4] {
        &self.blocks
    }

    pub fn sizes(&self) -> SymFPartition {
        let mut s = self.blocks.clone().map(|b| b.len());
        s.sort_unstable();
        SymFPartition { sizes: s }
    }
}

/// Every partition of `{0, …, n-1}` into four nonempty legs, each listed once
/// (legs ordered by their smallest element).
pub fn enumerate_fpartitions(n: usize) -> impl Iterator<Item = FPartition> {
    // restricted growth strings using exactly four labels
    let mut labels = vec![0usize; n];
    let mut done = n < 4;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let max_label = labels.iter().copied().max().unwrap_or(0);
        let current = (max_label == 3).then(|| {
            let mut blocks: [Vec<usize>; 4] = Default::default();
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(i);
            }
            FPartition { n, blocks }
        });
        // advance to the next restricted growth string with labels <= 3
        let mut i = n;
        loop {
            if i <= 1 {
                done = true;
                break;
            }
            i -= 1;
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max && labels[i] < 3 {
                labels[i] += 1;
                for l in labels[i + 1..].iter_mut() {
                    *l = 0;
                }
                break;
            }
        }
        if current.is_some() {
            return current;
        }
    })
}

/// Leg sizes `n_1 ≤ n_2 ≤ n_3 ≤ n_4` of a symmetric F-curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct SymFPartition {
    sizes: [usize; 4],
}

impl SymFPartition {
    pub fn new(sizes: [usize; 4]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!("{sizes:?} has an empty leg")));
        }
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{sizes:?} is not sorted")));
        }
        Ok(SymFPartition { sizes })
    }

    /// Sorts the given sizes first.
    pub fn from_unsorted(mut sizes: [usize; 4]) -> Result<Self> {
        sizes.sort_unstable();
        SymFPartition::new(sizes)
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }
}

impl fmt::Display for SymFPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.sizes;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// All sorted four-part partitions of `n`, in lexicographic order.
pub fn enumerate_sym_fcurves(n: usize) -> Vec<SymFPartition> {
    let mut out = Vec::new();
    for a in 1..=n / 4 {
        for b in a..=(n - a) / 3 {
            for c in b..=(n - a - b) / 2 {
                let d = n - a - b - c;
                if d >= c {
                    out.push(SymFPartition { sizes: [a, b, c, d] });
                }
            }
        }
    }
    out
}

/// `ν_j = k·n_j mod n` together with its extremes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueVector {
    pub nu: [usize; 4],
    pub nu_max: usize,
    pub nu_min: usize,
}

impl ResidueVector {
    pub fn new(n: usize, k: usize, sizes: &SymFPartition) -> Self {
        let nu = sizes.sizes.map(|s| (k * s) % n);
        ResidueVector {
            nu,
            nu_max: *nu.iter().max().expect("four entries"),
            nu_min: *nu.iter().min().expect("four entries"),
        }
    }

    pub fn sum(&self) -> usize {
        self.nu.iter().sum()
    }
}

fn check_level(n: usize, k: usize) -> Result<()> {
    if k < 2 || k + 2 > n {
        return Err(Error::Precondition(format!("need 2 <= k <= n-2, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn check_sum(n: usize, sizes: &SymFPartition) -> Result<()> {
    if sizes.n() != n {
        return Err(Error::InvalidPartition(format!("{sizes} does not sum to n = {n}")));
    }
    Ok(())
}

/// Intersection number `D_k · F` of the level one `sl_n` conformal blocks
/// bundle with all weights `ω_k` against the F-curve with leg sizes `sizes`.
pub fn fakhruddin_degree(n: usize, k: usize, sizes: &SymFPartition) -> Result<usize> {
    check_level(n, k)?;
    check_sum(n, sizes)?;
    let r = ResidueVector::new(n, k, sizes);
    Ok(if r.sum() != 2 * n {
        0
    } else if r.nu_max + r.nu_min <= n {
        r.nu_min
    } else {
        n - r.nu_max
    })
}

/// Same as [`fakhruddin_degree`] for a labelled partition; only leg sizes matter.
pub fn fakhruddin_degree_of(k: usize, p: &FPartition) -> Result<usize> {
    fakhruddin_degree(p.n(), k, &p.sizes())
}

/// Certificate that `|D_k|` contracts the F-curve: either integers
/// `0 ≤ α_1 ≤ … ≤ α_4` with `Σα = k-1` and `n·α_j ≤ k·n_j`, or
/// `1 ≤ β_1 ≤ … ≤ β_4` with `Σβ = k+1` and `k·n_j ≤ n·β_j`.
pub fn cont2_predicate(n: usize, k: usize, sizes: &SymFPartition) -> Result<Option<ContractionCertificate>> {
    check_level(n, k)?;
    check_sum(n, sizes)?;
    let s = sizes.sizes.map(|x| (k * x) as i64);
    let n = n as i64;
    let k = k as i64;
    let floors = s.map(|x| x / n);
    let ceils = s.map(|x| (x + n - 1) / n);
    if floors.iter().sum::<i64>() >= k - 1 {
        let v = lex_smallest([0; 4], floors, k - 1, true).expect("floor sum admits a certificate");
        return Ok(Some(ContractionCertificate::new(CertificateKind::AlphaFamily, v)));
    }
    let lower = ceils.map(|c| c.max(1));
    if lower.iter().sum::<i64>() <= k + 1 {
        let v = lex_smallest(lower, [k + 1; 4], k + 1, true).expect("ceiling sum admits a certificate");
        return Ok(Some(ContractionCertificate::new(CertificateKind::BetaFamily, v)));
    }
    Ok(None)
}

/// True iff `D_k · F = D_{n-k} · F` for every `k` and every symmetric F-curve.
pub fn dk_symmetry_check(n: usize) -> Result<bool> {
    if n < 4 {
        return Err(Error::Precondition(format!("need n >= 4, got {n}")));
    }
    let curves = enumerate_sym_fcurves(n);
    for k in 2..=n - 2 {
        for f in &curves {
            if fakhruddin_degree(n, k, f)? != fakhruddin_degree(n, n - k, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
