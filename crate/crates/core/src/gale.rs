//! The Gale transform (association) of point configurations.
//!
//! For a `(d+1) × n` matrix of full rank, the Gale dual is the configuration
//! whose matrix rows span the orthogonal complement of its row space: `n`
//! points of `P^{n-d-2}`, defined up to projectivity and column scaling.

use num_traits::{One, Zero};

use crate::configs::{on_rnc, proj_equivalent, veronese_config, Configuration, Param};
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Rat};
use crate::gitstab::Linearization;

pub fn gale_transform(c: &Configuration) -> Result<Configuration> {
    let (d, n) = (c.d(), c.n());
    if n < d + 3 {
        return Err(Error::Precondition(format!(
            "Gale transform needs n >= d+3, got d = {d}, n = {n}"
        )));
    }
    let rank = c.matrix().rank();
    if rank != d + 1 {
        return Err(Error::RankDeficient { rank, expected: d + 1 });
    }
    let k = c.matrix().kernel_basis();
    if let Some(j) = (0..n).find(|&j| (0..k.rows()).all(|i| k[(i, j)].is_zero())) {
        return Err(Error::DegenerateDual(j));
    }
    Configuration::new(k)
}

/// Involutivity: the double transform is equivalent to the input up to
/// projectivity and column scaling.
pub fn gale_involution_check(c: &Configuration) -> Result<bool> {
    let back = gale_transform(&gale_transform(c)?)?;
    proj_equivalent(&back, c)
}

/// `λ_i = 1 / ∏_{j≠i} (t_i - t_j)` for distinct finite parameters.
///
/// These satisfy `Σ_i λ_i t_i^p = 0` for `0 ≤ p ≤ n-2`, which is checked on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoppaWeights {
    ts: Vec<Rat>,
    lambdas: Vec<Rat>,
}

impl GoppaWeights {
    pub fn new(ts: &[Rat]) -> Result<Self> {
        for (i, t) in ts.iter().enumerate() {
            if ts[i + 1..].contains(t) {
                return Err(Error::DuplicateParameter(t.to_string()));
            }
        }
        let lambdas: Vec<Rat> = ts
            .iter()
            .enumerate()
            .map(|(i, ti)| {
                ts.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Rat::one(), |acc, (_, tj)| acc * (ti - tj))
                    .recip()
            })
            .collect();
        let w = GoppaWeights { ts: ts.to_vec(), lambdas };
        if let Some(p) = (0..ts.len().saturating_sub(1)).find(|&p| !w.power_sum(p).is_zero()) {
            panic!("Lagrange identity fails at power {p}");
        }
        Ok(w)
    }

    pub fn parameters(&self) -> &[Rat] {
        &self.ts
    }

    pub fn lambdas(&self) -> &[Rat] {
        &self.lambdas
    }

    /// `Σ_i λ_i t_i^p`.
    pub fn power_sum(&self, p: usize) -> Rat {
        self.ts
            .iter()
            .zip(&self.lambdas)
            .map(|(t, l)| l * num_traits::pow(t.clone(), p))
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct GoppaWitness {
    /// Veronese configuration `ν_d(t_i)`.
    pub primal: Configuration,
    /// Columns `λ_i ν_{n-d-2}(t_i)`.
    pub dual: Configuration,
    pub orthogonal: bool,
    pub matches_kernel_dual: bool,
    pub dual_on_rnc: bool,
}

impl GoppaWitness {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.matches_kernel_dual && self.dual_on_rnc
    }
}

/// Builds the explicit Gale dual of `n` points on the rational normal curve
/// of degree `d` and checks it three ways: exact orthogonality, agreement
/// with the kernel-basis dual, and lying on a rational normal curve.
pub fn goppa_witness(ts: &[Rat], d: usize) -> Result<GoppaWitness> {
    let n = ts.len();
    if d == 0 || n < d + 3 {
        return Err(Error::Precondition(format!("need 1 <= d and n >= d+3, got d = {d}, n = {n}")));
    }
    let weights = GoppaWeights::new(ts)?;
    let params: Vec<Param> = ts.iter().cloned().map(Param::Finite).collect();
    let primal = veronese_config(d, &params)?;
    let mut g = veronese_config(n - d - 2, &params)?.matrix().clone();
    for (j, l) in weights.lambdas().iter().enumerate() {
        g.scale_column(j, l);
    }
    let dual = Configuration::new(g)?;
    let orthogonal = (primal.matrix() * &dual.matrix().transpose()).is_zero();
    let matches_kernel_dual = proj_equivalent(&dual, &gale_transform(&primal)?)?;
    let dual_on_rnc = on_rnc(&dual)?;
    Ok(GoppaWitness {
        primal,
        dual,
        orthogonal,
        matches_kernel_dual,
        dual_on_rnc,
    })
}

/// `Σ_i λ_i ν_{m-1}(t_i) ν_{m-1}(t_i)ᵀ` for `2m` distinct parameters; the
/// zero matrix certifies that the configuration is its own Gale dual with
/// column scales `λ_i`.
pub fn self_association_matrix(ts: &[Rat]) -> Result<Mat> {
    if ts.is_empty() || !ts.len().is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "self-association needs an even, positive number of parameters, got {}",
            ts.len()
        )));
    }
    let m = ts.len() / 2;
    let w = GoppaWeights::new(ts)?;
    // entry (a, b) is Σ λ_i t_i^{a+b}
    Ok(Mat::from_fn(m, m, |a, b| w.power_sum(a + b)))
}

/// Literal outer-product form of [`self_association_matrix`].
pub fn self_association_outer(ts: &[Rat]) -> Result<Mat> {
    let m = ts.len() / 2;
    let w = GoppaWeights::new(ts)?;
    let mut acc = Mat::zeros(m, m);
    for (t, l) in ts.iter().zip(w.lambdas()) {
        let v: Vec<Rat> = (0..m).map(|p| num_traits::pow(t.clone(), p)).collect();
        for a in 0..m {
            for b in 0..m {
                acc[(a, b)] += l * &v[a] * &v[b];
            }
        }
    }
    Ok(acc)
}

/// The identification `Δ(d+1, n) ≅ Δ(n-d-1, n)`, `x ↦ 1 - x`.
pub fn dual_linearization(l: &Linearization) -> Result<Linearization> {
    let (d, n) = (l.d(), l.n());
    if n < d + 3 {
        return Err(Error::Precondition(format!("need n >= d+3, got d = {d}, n = {n}")));
    }
    let x = l.weights().iter().map(|w| Rat::one() - w).collect();
    Linearization::new(n - d - 2, n, x)
}
