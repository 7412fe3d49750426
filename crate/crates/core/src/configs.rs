//! Point configurations in projective space, Veronese maps and rational
//! normal curves.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{format_rat, is_zero_vec, normalize_projective, parallel, Mat, Rat, Span};

/// A point of the projective line: a finite parameter or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Finite(Rat),
    Infinity,
}

impl Param {
    pub fn finite(r: Rat) -> Self {
        Param::Finite(r)
    }

    pub fn int(n: i64) -> Self {
        Param::Finite(crate::exactlin::int(n))
    }

    /// Homogeneous coordinates `(1, t)`, with `∞ = (0, 1)`.
    pub fn homogeneous(&self) -> [Rat; 2] {
        match self {
            Param::Finite(t) => [Rat::one(), t.clone()],
            Param::Infinity => [Rat::zero(), Rat::one()],
        }
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Param::Finite(t) => Some(t),
            Param::Infinity => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Param::Infinity),
            other => crate::exactlin::parse_rat(other).map(Param::Finite),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(t) => write!(f, "{}", format_rat(t)),
            Param::Infinity => write!(f, "inf"),
        }
    }
}

pub(crate) fn check_distinct(ts: &[Param]) -> Result<()> {
    for (i, a) in ts.iter().enumerate() {
        if ts[i + 1..].contains(a) {
            return Err(Error::DuplicateParameter(a.to_string()));
        }
    }
    Ok(())
}

/// A point of `P^d`, equal to any nonzero multiple of itself.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() || is_zero_vec(&coords) {
            return Err(Error::DimensionMismatch(
                "a projective point needs a nonzero coordinate".into(),
            ));
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Representative with first nonzero coordinate equal to one.
    pub fn normalized(&self) -> Vec<Rat> {
        normalize_projective(&self.coords)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        parallel(&self.coords, &other.coords)
    }
}

impl Eq for ProjPoint {}

/// `n` points of `P^d`, stored as the columns of a `(d+1) × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    d: usize,
    matrix: Mat,
}

impl Configuration {
    pub fn new(matrix: Mat) -> Result<Self> {
        if matrix.rows() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "a configuration in P^d needs d >= 1, got {} rows",
                matrix.rows()
            )));
        }
        if matrix.cols() == 0 {
            return Err(Error::DimensionMismatch("a configuration needs n >= 1 points".into()));
        }
        if let Some(j) = (0..matrix.cols()).find(|&j| is_zero_vec(&matrix.column(j))) {
            return Err(Error::DimensionMismatch(format!("column {j} is zero")));
        }
        Ok(Configuration {
            d: matrix.rows() - 1,
            matrix,
        })
    }

    pub fn from_points(points: &[ProjPoint]) -> Result<Self> {
        let rows = points.first().map_or(0, |p| p.coords.len());
        let columns: Vec<Vec<Rat>> = points.iter().map(|p| p.coords.clone()).collect();
        Configuration::new(Mat::from_columns(rows, &columns)?)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        ProjPoint {
            coords: self.matrix.column(i),
        }
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.n()).map(|i| self.point(i)).collect()
    }

    /// Sub-configuration on the given columns, in the given order.
    pub fn select(&self, idx: &[usize]) -> Configuration {
        Configuration {
            d: self.d,
            matrix: self.matrix.select_columns(idx),
        }
    }

    /// True iff every `min(d+1, n)` columns are linearly independent.
    pub fn in_general_position(&self) -> bool {
        let k = (self.d + 1).min(self.n());
        subsets(self.n(), k).all(|s| self.matrix.select_columns(&s).rank() == k)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// `(1, t, t², …, t^d)`; the point at infinity maps to `(0, …, 0, 1)`.
pub fn veronese_point(d: usize, t: &Param) -> ProjPoint {
    let coords = match t {
        Param::Finite(t) => {
            let mut v = Vec::with_capacity(d + 1);
            let mut pow = Rat::one();
            for _ in 0..=d {
                v.push(pow.clone());
                pow *= t;
            }
            v
        }
        Param::Infinity => {
            let mut v = vec![Rat::zero(); d + 1];
            v[d] = Rat::one();
            v
        }
    };
    ProjPoint { coords }
}

pub fn veronese_config(d: usize, ts: &[Param]) -> Result<Configuration> {
    if d == 0 {
        return Err(Error::Precondition("Veronese map needs d >= 1".into()));
    }
    check_distinct(ts)?;
    let points: Vec<ProjPoint> = ts.iter().map(|t| veronese_point(d, t)).collect();
    Configuration::from_points(&points)
}

/// A parametrized rational normal curve through `d+3` points.
///
/// In the normalized frame the curve is `x_i(t) = p_i / (p_i t + 1)`, i.e.
/// `x_i(t) = p_i ∏_{j≠i} (p_j t + 1)` after clearing denominators. `frame`
/// maps normalized coordinates back to the original ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RncParam {
    frame: Mat,
    frame_inv: Mat,
    normal: Vec<Rat>,
    parameters: Vec<Param>,
}

impl RncParam {
    pub fn frame(&self) -> &Mat {
        &self.frame
    }

    /// Normalized coordinates `p_i` of the last fitted point.
    pub fn normal_point(&self) -> &[Rat] {
        &self.normal
    }

    /// Parameters of the fitted points, in input order.
    pub fn parameters(&self) -> &[Param] {
        &self.parameters
    }

    /// The curve point at parameter `t`, in original coordinates.
    pub fn point_at(&self, t: &Param) -> ProjPoint {
        let [t0, t1] = t.homogeneous();
        let factors: Vec<Rat> = self.normal.iter().map(|p| p * &t1 + &t0).collect();
        let x: Vec<Rat> = (0..self.normal.len())
            .map(|i| {
                factors
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(self.normal[i].clone(), |acc, (_, f)| acc * f)
            })
            .collect();
        ProjPoint {
            coords: self.frame.mul_vec(&x),
        }
    }

    /// The parameter at which the curve passes through `q`, if it does.
    pub fn parameter_of(&self, q: &ProjPoint) -> Option<Param> {
        let y = self.frame_inv.mul_vec(q.coords());
        let nonzero: Vec<usize> = (0..y.len()).filter(|&i| !y[i].is_zero()).collect();
        match nonzero.len() {
            0 => None,
            1 => Some(Param::Finite(-self.normal[nonzero[0]].recip())),
            k if k < y.len() => None,
            _ => {
                // 1/y_i = a + s/p_i for all i, with t = a/s (t = ∞ when s = 0).
                let eq = |i: usize| (self.normal[i].recip(), y[i].recip());
                let (u0, r0) = eq(0);
                let (u1, r1) = eq(1);
                let s = (&r0 - &r1) / (&u0 - &u1);
                let a = &r0 - &s * &u0;
                let consistent = (2..y.len()).all(|i| {
                    let (u, r) = eq(i);
                    &a + &s * &u == r
                });
                if !consistent {
                    None
                } else if s.is_zero() {
                    Some(Param::Infinity)
                } else {
                    Some(Param::Finite(a / s))
                }
            }
        }
    }

    pub fn contains(&self, q: &ProjPoint) -> bool {
        self.parameter_of(q).is_some()
    }
}

/// Fits the unique rational normal curve through `d+3` points of `P^d` in
/// linearly general position.
///
/// Points `1..=d+1` go to the coordinate points, point `d+2` to the unit
/// point (parameter `∞`) and point `d+3` to parameter `0`.
pub fn fit_rnc(points: &[ProjPoint]) -> Result<RncParam> {
    let dim = points.first().map_or(0, |p| p.coords.len());
    if dim < 2 || points.len() != dim + 2 {
        return Err(Error::DimensionMismatch(format!(
            "fit_rnc needs d+3 points in P^d, got {} points with {} coordinates",
            points.len(),
            dim
        )));
    }
    let d = dim - 1;
    let config = Configuration::from_points(points)?;
    if !config.in_general_position() {
        return Err(Error::DegeneratePosition(format!(
            "some {} of the points fail to span P^{d}",
            d + 1
        )));
    }
    let base = config.matrix().select_columns(&(0..=d).collect::<Vec<_>>());
    let base_inv = base.inverse().expect("general position makes the base invertible");
    let scales = base_inv.mul_vec(points[d + 1].coords());
    let mut frame = base;
    for (j, c) in scales.iter().enumerate() {
        frame.scale_column(j, c);
    }
    let frame_inv = frame.inverse().expect("scaled base stays invertible");
    let normal = frame_inv.mul_vec(points[d + 2].coords());
    if normal.iter().any(Zero::is_zero) {
        return Err(Error::DegeneratePosition(
            "last point has a zero coordinate in the normalized frame".into(),
        ));
    }
    for i in 0..normal.len() {
        if normal[i + 1..].contains(&normal[i]) {
            return Err(Error::DegeneratePosition(
                "last point has a repeated coordinate in the normalized frame".into(),
            ));
        }
    }
    let mut parameters: Vec<Param> = normal.iter().map(|p| Param::Finite(-p.recip())).collect();
    parameters.push(Param::Infinity);
    parameters.push(Param::Finite(Rat::zero()));
    Ok(RncParam {
        frame,
        frame_inv,
        normal,
        parameters,
    })
}

/// True iff every point lies on the rational normal curve through the
/// first `d+3` points.
pub fn on_rnc(c: &Configuration) -> Result<bool> {
    let d = c.d();
    if c.n() < d + 3 {
        return Err(Error::Precondition(format!(
            "on_rnc needs n >= d+3 = {}, got n = {}",
            d + 3,
            c.n()
        )));
    }
    let points = c.points();
    let curve = fit_rnc(&points[..d + 3])?;
    Ok(points[d + 3..].iter().all(|q| curve.contains(q)))
}

fn check_same_shape(a: &Configuration, b: &Configuration) -> Result<()> {
    if a.d() != b.d() || a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "configurations of shape (d={}, n={}) and (d={}, n={})",
            a.d(),
            a.n(),
            b.d(),
            b.n()
        )));
    }
    Ok(())
}

/// Returns an invertible `A` with `A·a_i ∥ b_i` for all `i`, if one exists.
///
/// Uses a projective frame among the columns of `a` when one is found;
/// otherwise falls back to [`projectivity_via_minors`].
pub fn projectivity(a: &Configuration, b: &Configuration) -> Result<Option<Mat>> {
    check_same_shape(a, b)?;
    match find_frame(a.matrix()) {
        Some(frame) => Ok(projectivity_via_frame(a, b, &frame)),
        None => projectivity_via_minors(a, b),
    }
}

pub fn proj_equivalent(a: &Configuration, b: &Configuration) -> Result<bool> {
    Ok(projectivity(a, b)?.is_some())
}

/// `d+2` column indices of `m` forming a projective frame, found greedily.
pub(crate) fn find_frame(m: &Mat) -> Option<Vec<usize>> {
    let dim = m.rows();
    let mut span = Span::new(dim);
    let mut basis = Vec::with_capacity(dim);
    for j in 0..m.cols() {
        if span.insert(&m.column(j)) {
            basis.push(j);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return None;
    }
    let inv = m.select_columns(&basis).inverse()?;
    let extra = (0..m.cols())
        .filter(|j| !basis.contains(j))
        .find(|&j| inv.mul_vec(&m.column(j)).iter().all(|c| !c.is_zero()))?;
    basis.push(extra);
    Some(basis)
}

/// Frame normalization `F` with `F e_k ∥ m_{frame[k]}` and `F (1,…,1) = m_{frame[d+1]}`.
fn frame_matrix(m: &Mat, frame: &[usize]) -> Option<Mat> {
    let dim = m.rows();
    let mut base = m.select_columns(&frame[..dim]);
    let scales = base.inverse()?.mul_vec(&m.column(frame[dim]));
    if scales.iter().any(Zero::is_zero) {
        return None;
    }
    for (j, s) in scales.iter().enumerate() {
        base.scale_column(j, s);
    }
    Some(base)
}

/// Projectivity through a frame of `a` (column indices `frame`).
pub fn projectivity_via_frame(a: &Configuration, b: &Configuration, frame: &[usize]) -> Option<Mat> {
    let fa = frame_matrix(a.matrix(), frame)?;
    let fb = frame_matrix(b.matrix(), frame)?;
    let m = &fb * &fa.inverse()?;
    let ok = (0..a.n()).all(|i| parallel(&m.mul_vec(&a.matrix().column(i)), &b.matrix().column(i)));
    ok.then_some(m)
}

/// Solves the linear system `(A a_i)_j b_{i,p} = (A a_i)_p b_{i,j}` in the
/// entries of `A` (the 2×2 minors of `[A a_i | b_i]` against a pivot row `p`
/// of `b_i`), then looks for an invertible solution.
pub fn projectivity_via_minors(a: &Configuration, b: &Configuration) -> Result<Option<Mat>> {
    check_same_shape(a, b)?;
    let dim = a.d() + 1;
    let unknowns = dim * dim;
    let mut rows = Vec::new();
    for i in 0..a.n() {
        let ai = a.matrix().column(i);
        let bi = b.matrix().column(i);
        let p = bi.iter().position(|x| !x.is_zero()).expect("columns are nonzero");
        for j in (0..dim).filter(|&j| j != p) {
            let mut row = vec![Rat::zero(); unknowns];
            for k in 0..dim {
                row[j * dim + k] += &ai[k] * &bi[p];
                row[p * dim + k] -= &ai[k] * &bi[j];
            }
            rows.push(row);
        }
    }
    let system = Mat::from_rows(unknowns, rows)?;
    let kernel = system.kernel_basis();
    let as_matrix = |v: &[Rat]| Mat::from_fn(dim, dim, |r, c| v[r * dim + c].clone());
    match kernel.rows() {
        0 => Ok(None),
        1 => {
            let m = as_matrix(kernel.row(0));
            Ok((!m.det()?.is_zero()).then_some(m))
        }
        k => {
            const ATTEMPTS: i64 = 16;
            for s in 1..=ATTEMPTS {
                let mut v = vec![Rat::zero(); unknowns];
                let mut coef = Rat::one();
                for r in 0..k {
                    for (x, y) in v.iter_mut().zip(kernel.row(r)) {
                        *x += &coef * y;
                    }
                    coef *= crate::exactlin::int(s + 1);
                }
                let m = as_matrix(&v);
                if !m.det()?.is_zero() {
                    return Ok(Some(m));
                }
            }
            Err(Error::Indeterminate(format!(
                "solution space of dimension {k} has no invertible element among {ATTEMPTS} samples"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};

    fn params(ts: &[i64]) -> Vec<Param> {
        ts.iter().map(|&t| Param::int(t)).collect()
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::new(c.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn veronese_points() {
        assert_eq!(veronese_point(2, &Param::int(0)).coords(), &[int(1), int(0), int(0)]);
        assert_eq!(
            veronese_point(3, &Param::int(2)).coords(),
            &[int(1), int(2), int(4), int(8)]
        );
        assert_eq!(veronese_point(2, &Param::Infinity).coords(), &[int(0), int(0), int(1)]);
    }

    #[test]
    fn veronese_configs() {
        let c = veronese_config(1, &[Param::int(0), Param::int(1), Param::Infinity]).unwrap();
        assert_eq!(c.matrix(), &Mat::from_ints(&[&[1, 1, 0], &[0, 1, 1]]));
        let c = veronese_config(2, &params(&[0, 1, 2, 3])).unwrap();
        assert_eq!(c.matrix(), &Mat::from_ints(&[&[1, 1, 1, 1], &[0, 1, 2, 3], &[0, 1, 4, 9]]));
        assert!(c.in_general_position());
        assert!(matches!(
            veronese_config(2, &params(&[0, 1, 1])),
            Err(Error::DuplicateParameter(_))
        ));
    }

    #[test]
    fn fit_rnc_on_the_line() {
        let pts = [pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1]), pt(&[1, 2])];
        let curve = fit_rnc(&pts).unwrap();
        assert_eq!(curve.normal_point(), &[int(1), int(2)]);
        assert_eq!(
            curve.parameters(),
            &[
                Param::Finite(int(-1)),
                Param::Finite(rat(-1, 2)),
                Param::Infinity,
                Param::Finite(int(0))
            ]
        );
        for (p, t) in pts.iter().zip(curve.parameters()) {
            assert_eq!(&curve.point_at(t), p);
        }
        // every point of P^1 is on the curve
        assert!(curve.contains(&pt(&[3, -7])));
    }

    #[test]
    fn fit_rnc_conic() {
        let c = veronese_config(2, &params(&[0, 1, 2, 3, 4])).unwrap();
        let curve = fit_rnc(&c.points()).unwrap();
        for (p, t) in c.points().iter().zip(curve.parameters()) {
            assert_eq!(&curve.point_at(t), p);
        }
        assert!(on_rnc(&c).unwrap());
        let more = veronese_config(2, &params(&[0, 1, 2, 3, 4, 5, -3])).unwrap();
        assert!(on_rnc(&more).unwrap());
    }

    #[test]
    fn fit_rnc_rejects_collinear() {
        let pts = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0]), pt(&[0, 0, 1]), pt(&[1, 2, 3])];
        assert!(matches!(fit_rnc(&pts), Err(Error::DegeneratePosition(_))));
    }

    #[test]
    fn point_off_the_conic() {
        // conic through ν(0..4) is y² = xz; (1, 1, 2) violates it.
        let mut cols = veronese_config(2, &params(&[0, 1, 2, 3, 4, 5])).unwrap().matrix().columns();
        *cols.last_mut().unwrap() = vec![int(1), int(1), int(2)];
        let c = Configuration::new(Mat::from_columns(3, &cols).unwrap()).unwrap();
        assert!(!on_rnc(&c).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let a = veronese_config(2, &params(&[0, 1, 2, 3, 5])).unwrap();
        assert!(proj_equivalent(&a, &a).unwrap());

        let g = Mat::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let mut m = &g * a.matrix();
        for (j, s) in [2, -1, 3, 7, -5].iter().enumerate() {
            m.scale_column(j, &int(*s));
        }
        let b = Configuration::new(m).unwrap();
        assert!(proj_equivalent(&a, &b).unwrap());
        assert!(proj_equivalent(&b, &a).unwrap());
    }

    #[test]
    fn cross_ratio_distinguishes_four_points() {
        // cross-ratios of (0, 1, ∞, 2) and (0, 1, ∞, 3) are 2 and 3.
        let a = veronese_config(1, &[Param::int(0), Param::int(1), Param::Infinity, Param::int(2)]).unwrap();
        let b = veronese_config(1, &[Param::int(0), Param::int(1), Param::Infinity, Param::int(3)]).unwrap();
        assert!(!proj_equivalent(&a, &b).unwrap());
        assert!(!projectivity_via_minors(&a, &b).unwrap().is_some());
    }

    #[test]
    fn minors_route_without_frame() {
        // three points on P^2 with a repeated point: no frame, solution space of dimension >= 2
        let a = Configuration::new(Mat::from_ints(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert!(find_frame(a.matrix()).is_none());
        assert!(proj_equivalent(&a, &a).unwrap());
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
    }
}
