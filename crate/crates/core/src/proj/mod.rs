//! Projective points, hyperplane forms, codimension-2 flats and lines.

mod embed;
mod rnc;

pub use embed::{segre, veronese, veronese_coords};
pub use rnc::{dual_rnc, moment_vector, osculates, point_on_rnc, rnc_through, RNC};

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

/// A point of `P^n`, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

/// Linear forms are points of the dual space and share the representation.
pub type HyperplaneForm = ProjPoint;

impl ProjPoint {
    pub fn new(mut coords: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::ZeroVector);
        };
        for c in coords.iter_mut() {
            *c /= &lead;
        }
        Ok(Self { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    /// Ambient dimension `n` (the point has `n + 1` coordinates).
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Value of the pairing with a vector of the dual space.
    pub fn pair(&self, other: &[Rational]) -> Rational {
        crate::exact::dot(&self.coords, other)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords.iter().map(|c| c.to_string()).join(":")
        )
    }
}

/// Matrix whose rows are the coordinate vectors of `points`.
pub fn points_matrix(points: &[ProjPoint]) -> Result<Matrix> {
    let cols = points.first().map_or(0, |p| p.coords.len());
    Matrix::from_rows(cols, points.iter().map(|p| p.coords.clone()).collect())
}

/// True iff every subset of at most `n + 1` points is independent.
pub fn general_position(points: &[ProjPoint], n: usize) -> bool {
    dependent_subset(points, n).is_none()
}

/// A minimal dependent subset of size at most `n + 1`, if any.
///
/// All points must live in `P^n`.
pub fn dependent_subset(points: &[ProjPoint], n: usize) -> Option<Vec<usize>> {
    assert!(
        points.iter().all(|p| p.n() == n),
        "points must lie in P^{n}"
    );
    let m = points.len();
    let full = (n + 1).min(m);
    let rows: Vec<&[Rational]> = points.iter().map(|p| p.coords()).collect();
    let rank_of =
        |idx: &[usize]| Matrix::from_fn(idx.len(), n + 1, |i, j| rows[idx[i]][j].clone()).rank();
    let bad = (0..m).combinations(full).find(|idx| rank_of(idx) < full)?;
    // Shrink to a minimal dependent subset inside the offending one.
    for k in 2..=full {
        if let Some(sub) = bad
            .iter()
            .copied()
            .combinations(k)
            .find(|idx| rank_of(idx) < k)
        {
            return Some(sub);
        }
    }
    Some(bad)
}

/// Error-returning form of [`general_position`].
pub fn require_general_position(points: &[ProjPoint], n: usize) -> Result<()> {
    match dependent_subset(points, n) {
        Some(subset) => Err(Error::NotGeneralPosition { subset }),
        None => Ok(()),
    }
}

/// The matrix `T` with `T e_i ∝ frame[i]` for `i <= n` and
/// `T (1, …, 1) = frame[n + 1]`, for `n + 2` points of `P^n`.
pub fn standard_frame(frame: &[ProjPoint]) -> Result<Matrix> {
    let n = frame.first().map_or(0, ProjPoint::n);
    if frame.len() != n + 2 {
        return Err(Error::Precondition(format!(
            "a frame of P^{n} has {} points",
            n + 2
        )));
    }
    let basis = Matrix::from_fn(n + 1, n + 1, |i, j| frame[j].coords[i].clone());
    let lambda = basis
        .solve(frame[n + 1].coords())
        .filter(|l| l.iter().all(|x| !x.is_zero()))
        .ok_or_else(|| Error::Degenerate("frame points are not in general position".into()))?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| {
        &basis[(i, j)] * &lambda[j]
    }))
}

/// A projective transformation `g` with `g p_i ∝ q_i` for all `i`, if one
/// exists. The first `n + 2` points of each list must form a frame.
pub fn projective_equivalence(p: &[ProjPoint], q: &[ProjPoint]) -> Option<Matrix> {
    let n = p.first()?.n();
    if p.len() != q.len() || p.len() < n + 2 || q.iter().chain(p).any(|x| x.n() != n) {
        return None;
    }
    let tp = standard_frame(&p[..n + 2]).ok()?;
    let tq = standard_frame(&q[..n + 2]).ok()?;
    let g = tq.mul(&tp.inverse()?);
    let maps = p
        .iter()
        .zip(q)
        .all(|(a, b)| ProjPoint::new(g.mul_vec(a.coords())).ok().as_ref() == Some(b));
    maps.then_some(g)
}

fn two_row_matrix(rows: Matrix, what: &str) -> Result<Matrix> {
    if rows.rows() != 2 || rows.cols() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "{what} needs a 2 x (n+1) matrix, got {} x {}",
            rows.rows(),
            rows.cols()
        )));
    }
    if rows.rank() != 2 {
        return Err(Error::Degenerate(format!("{what} rows are dependent")));
    }
    Ok(rows)
}

fn minors(rows: &Matrix) -> Vec<Rational> {
    (0..rows.cols())
        .tuple_combinations()
        .map(|(i, j)| &rows[(0, i)] * &rows[(1, j)] - &rows[(0, j)] * &rows[(1, i)])
        .collect()
}

/// Codimension-2 flat cut out by two independent linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat2 {
    rows: Matrix,
}

impl Flat2 {
    pub fn new(rows: Matrix) -> Result<Self> {
        Ok(Self {
            rows: two_row_matrix(rows, "flat")?,
        })
    }

    pub fn from_forms(a: &[Rational], b: &[Rational]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(
                "flat forms differ in length".into(),
            ));
        }
        Self::new(Matrix::from_rows(a.len(), vec![a.to_vec(), b.to_vec()])?)
    }

    pub fn n(&self) -> usize {
        self.rows.cols() - 1
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        (0..2).all(|r| p.pair(self.rows.row(r)).is_zero())
    }

    /// Plücker coordinates: the 2x2 minors `p_ij`, `i < j`, in lexicographic order.
    pub fn plucker(&self) -> Vec<Rational> {
        minors(&self.rows)
    }

    /// Plücker coordinates as a projective point; equal iff the flats are.
    pub fn plucker_point(&self) -> ProjPoint {
        ProjPoint::new(self.plucker()).expect("rank 2")
    }

    /// The same flat with its defining rows replaced by `g * rows`.
    pub fn transform_rows(&self, g: &Matrix) -> Result<Self> {
        Self::new(g.mul(&self.rows))
    }
}

/// Line spanned by two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpan {
    rows: Matrix,
}

impl LineSpan {
    pub fn new(rows: Matrix) -> Result<Self> {
        Ok(Self {
            rows: two_row_matrix(rows, "line")?,
        })
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        if p.n() != q.n() {
            return Err(Error::DimensionMismatch(
                "line endpoints differ in dimension".into(),
            ));
        }
        Self::new(Matrix::from_rows(
            p.n() + 1,
            vec![p.coords.clone(), q.coords.clone()],
        )?)
    }

    pub fn n(&self) -> usize {
        self.rows.cols() - 1
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    /// The point `s * u + t * w` for spanning rows `u`, `w`.
    pub fn point_at(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        (0..self.rows.cols())
            .map(|j| s * &self.rows[(0, j)] + t * &self.rows[(1, j)])
            .collect()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.rows
            .vstack(&Matrix::from_rows(self.rows.cols(), vec![p.coords.clone()]).unwrap())
            .rank()
            == 2
    }

    pub fn plucker(&self) -> Vec<Rational> {
        minors(&self.rows)
    }

    /// Plücker coordinates as a projective point; equal iff the lines are.
    pub fn plucker_point(&self) -> ProjPoint {
        ProjPoint::new(self.plucker()).expect("rank 2")
    }

    /// Parameter `(s : t)` of a point of the line, or `None` if it is off the line.
    pub fn parameter_of(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let sol = self.rows.transpose().solve(p.coords())?;
        ProjPoint::new(sol).ok()
    }
}

/// The flat of the dual space formed by the hyperplanes containing `l`.
///
/// The spanning points become the defining forms, so the Plücker
/// coordinates of the result equal those of `l` with the identity index map.
pub fn line_to_dual_flat(l: &LineSpan) -> Flat2 {
    Flat2 {
        rows: l.rows.clone(),
    }
}

/// Inverse of [`line_to_dual_flat`].
pub fn dual_flat_to_line(f: &Flat2) -> LineSpan {
    LineSpan {
        rows: f.rows.clone(),
    }
}

/// Basis of the points of the flat, as rows.
pub fn flat_points(f: &Flat2) -> Matrix {
    f.rows.kernel()
}
