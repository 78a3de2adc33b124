//! Codependence determinants, monoid linear systems and the monoidal complex.
//!
//! A flat `Z(A)` is given by a `2 × (n+1)` matrix `A`. The pencil of
//! hyperplanes through it is parametrized by `(t_1 : t_2) ↦ t_1 a_1 + t_2 a_2`,
//! so the hyperplane through `Z` and `p` has parameter `(a_1 · p, a_2 · p)`.
//! The last input point `q` is the centre of projection: lines through `q`
//! are read in the coordinates of `T^{-1}`, where `T e_0 = q`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binary_resultant, dot, interpolate_dense, monomials, substitution_matrix, Matrix, MultiPoly,
    Rational,
};
use crate::proj::{flat_points, require_general_position, Flat2, ProjPoint, RNC};
use crate::quadrics::flat_conditions;

/// Matrix whose row `i` evaluates the `nd` monomials `x_a y_0^(d-1-e) y_1^e`
/// (block `a`, position `e`) at `(x_i, y_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodepMatrix {
    pub matrix: Matrix,
    pub xs: Vec<Vec<Rational>>,
    pub ys: Vec<Vec<Rational>>,
    pub d: usize,
}

impl CodepMatrix {
    pub fn det(&self) -> Rational {
        self.matrix.det().expect("square by construction")
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }
}

fn codep_row(x: &[Rational], y: &[Rational], d: usize) -> Vec<Rational> {
    let powers = |v: &Rational| {
        let mut out = vec![Rational::one()];
        for k in 1..d {
            out.push(&out[k - 1] * v);
        }
        out
    };
    let (p0, p1) = (powers(&y[0]), powers(&y[1]));
    let mut row = Vec::with_capacity(x.len() * d);
    for xa in x {
        for e in 0..d {
            row.push(xa * &p0[d - 1 - e] * &p1[e]);
        }
    }
    row
}

/// Codependence matrix of `nd` pairs. Coordinates are taken as given, so
/// rescaling a pair rescales its row.
pub fn codependence_matrix(
    xs: &[Vec<Rational>],
    ys: &[Vec<Rational>],
    d: usize,
) -> Result<CodepMatrix> {
    let n = xs.first().map_or(0, Vec::len);
    if d == 0 || n == 0 {
        return Err(Error::Precondition(
            "need d >= 1 and nonempty points".into(),
        ));
    }
    if xs.len() != n * d || ys.len() != n * d {
        return Err(Error::DimensionMismatch(format!(
            "need {} pairs for n = {n}, d = {d}; got {} and {}",
            n * d,
            xs.len(),
            ys.len()
        )));
    }
    if xs.iter().any(|x| x.len() != n) || ys.iter().any(|y| y.len() != 2) {
        return Err(Error::DimensionMismatch(
            "points of P^(n-1) or P^1 have the wrong size".into(),
        ));
    }
    let rows = xs.iter().zip(ys).map(|(x, y)| codep_row(x, y, d)).collect();
    Ok(CodepMatrix {
        matrix: Matrix::from_rows(n * d, rows)?,
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        d,
    })
}

/// `T` with first column `q` and the remaining standard basis vectors, the
/// one at the first nonzero coordinate of `q` left out.
fn centring_matrix(q: &[Rational]) -> Result<Matrix> {
    let pivot = q
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::ZeroVector)?;
    let n1 = q.len();
    let others: Vec<usize> = (0..n1).filter(|&j| j != pivot).collect();
    Ok(Matrix::from_fn(n1, n1, |i, c| {
        if c == 0 {
            q[i].clone()
        } else if others[c - 1] == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// The codependence matrix attached to the raw point vectors `points`
/// (`nd + 1` of them, the last one is the centre) and the flat rows.
pub fn membership_matrix(points: &[Vec<Rational>], rows: &Matrix) -> Result<CodepMatrix> {
    let n = rows
        .cols()
        .checked_sub(1)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::DimensionMismatch("flat must live in P^n with n >= 1".into()))?;
    if rows.rows() != 2 {
        return Err(Error::DimensionMismatch(
            "a flat needs exactly two rows".into(),
        ));
    }
    let Some((q, rest)) = points.split_last() else {
        return Err(Error::Precondition("no points given".into()));
    };
    if rest.is_empty() || rest.len() % n != 0 {
        return Err(Error::Precondition(format!(
            "need nd + 1 points with d >= 1 in P^{n}, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| p.len() != n + 1) {
        return Err(Error::DimensionMismatch(format!(
            "points must have {} coordinates",
            n + 1
        )));
    }
    let t_inv = centring_matrix(q)?
        .inverse()
        .expect("triangular up to permutation");
    let xs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| t_inv.mul_vec(p)[1..].to_vec())
        .collect();
    let ys: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| vec![dot(rows.row(0), p), dot(rows.row(1), p)])
        .collect();
    codependence_matrix(&xs, &ys, rest.len() / n)
}

/// Determinant of [`membership_matrix`].
pub fn membership_determinant(points: &[Vec<Rational>], rows: &Matrix) -> Result<Rational> {
    Ok(membership_matrix(points, rows)?.det())
}

fn checked_matrix(points: &[ProjPoint], z: &Flat2) -> Result<CodepMatrix> {
    if points.iter().any(|p| p.n() != z.n()) {
        return Err(Error::DimensionMismatch(
            "points and flat live in different spaces".into(),
        ));
    }
    require_general_position(points, z.n())?;
    let raw: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    membership_matrix(&raw, z.rows())
}

/// True iff some degree-`d` `Z`-monoid passes through all `nd + 1` points.
pub fn monoidal_membership(points: &[ProjPoint], z: &Flat2) -> Result<bool> {
    Ok(checked_matrix(points, z)?.det().is_zero())
}

/// Dimension of the kernel of the membership matrix at `z`. If `z` contains
/// an input point, the first such point is elected as the centre, so the
/// kernel has dimension at least `d - 1`.
pub fn monoidal_kernel_dim(points: &[ProjPoint], z: &Flat2) -> Result<usize> {
    let mut order = points.to_vec();
    if let Some(i) = points.iter().position(|p| z.contains(p)) {
        let centre = order.remove(i);
        order.push(centre);
    }
    Ok(checked_matrix(&order, z)?.kernel_dim())
}

/// Equation of the monoidal complex of `2d + 1` points of the plane, in the
/// coordinates of the point `z` that plays the role of the flat.
pub fn curve_equation_p2(points: &[ProjPoint], d: usize) -> Result<MultiPoly> {
    if points.iter().any(|p| p.n() != 2) {
        return Err(Error::Precondition(
            "curve equations are only produced in the plane".into(),
        ));
    }
    if d == 0 || points.len() != 2 * d + 1 {
        return Err(Error::Precondition(format!(
            "need 2d + 1 = {} points, got {}",
            2 * d + 1,
            points.len()
        )));
    }
    require_general_position(points, 2)?;
    let raw: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let degree = d * (d - 1);
    let needed = monomials(3, degree as u32).len();
    let mut grid = Vec::with_capacity(needed + 10);
    for i in 0..=degree as i64 {
        for j in 0..=(degree as i64 - i) {
            grid.push((i, j));
        }
    }
    // Oversamples off the triangle; their consistency guards the interpolation.
    grid.extend((1..=10).map(|k| (-k, 2 * k + 1)));
    let samples = grid
        .into_iter()
        .map(|(i, j)| {
            let (z1, z2) = (
                Rational::from_integer(i.into()),
                Rational::from_integer(j.into()),
            );
            let rows = Matrix::from_rows(
                3,
                vec![
                    vec![z1.clone(), -Rational::one(), Rational::zero()],
                    vec![z2.clone(), Rational::zero(), -Rational::one()],
                ],
            )?;
            Ok((vec![z1, z2], membership_determinant(&raw, &rows)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = interpolate_dense(3, degree as u32, &samples)?;
    if poly.is_zero() {
        return Err(Error::WholeGrassmannian);
    }
    Ok(poly.primitive())
}

/// Projective dimension of the degree-`d` forms vanishing to order `d - 1`
/// along a flat of codimension `c` in `P^n`.
pub fn monoid_space_dim(n: usize, d: usize, c: usize) -> Result<u64> {
    if d < 2 || c < 2 || c > n {
        return Err(Error::Precondition(format!(
            "need d >= 2 and 2 <= c <= n, got n = {n}, d = {d}, c = {c}"
        )));
    }
    let b = |a: usize, k: usize| crate::exact::binomial(a as u64, k as u64);
    Ok(b(c + d - 2, d - 1) * (n - c + 1) as u64 + b(c + d - 1, d) - 1)
}

/// Basis of the degree-`d` forms whose partial derivatives of order up to
/// `d - 2` vanish on the flat cut out by the rows of `forms`.
///
/// Writes `x = Σ a_k z_k + Σ b_l y_l` with `z` spanning the flat and `y` the
/// pivot unit vectors of `forms`; the conditions are the coefficients of the
/// monomials of `b`-degree at most `d - 2`.
pub fn monoid_basis_codim(forms: &Matrix, d: usize) -> Result<Vec<MultiPoly>> {
    let n1 = forms.cols();
    let c = forms.rank();
    if c != forms.rows() || c == 0 || c >= n1 {
        return Err(Error::Precondition(format!(
            "need independent forms cutting a nonempty flat, got rank {c} of {} in {n1} variables",
            forms.rows()
        )));
    }
    if d < 1 {
        return Err(Error::Precondition("need d >= 1".into()));
    }
    let (_, pivots) = forms.rref();
    let flat = forms.kernel();
    let params = flat.vstack(&Matrix::from_fn(c, n1, |l, j| {
        if pivots[l] == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    }));
    let subs: Vec<MultiPoly> = (0..n1)
        .map(|j| MultiPoly::linear(&params.column(j)))
        .collect();
    let full = substitution_matrix(d as u32, &subs, d as u32);
    let flat_dim = n1 - c;
    let keep: Vec<usize> = monomials(n1, d as u32)
        .iter()
        .enumerate()
        .filter(|(_, e)| (e[flat_dim..].iter().sum::<u32>() as usize) + 2 <= d)
        .map(|(i, _)| i)
        .collect();
    let kernel = full.select_rows(&keep).kernel();
    Ok((0..kernel.rows())
        .map(|r| MultiPoly::from_coefficients(n1, d as u32, kernel.row(r)))
        .collect())
}

/// Basis of the degree-`d` `Z`-monoids.
pub fn monoid_basis(z: &Flat2, d: usize) -> Result<Vec<MultiPoly>> {
    if d < 2 {
        return Err(Error::Precondition("need d >= 2".into()));
    }
    monoid_basis_codim(z.rows(), d)
}

/// A degree-`d` `Z`-monoid through all points, if one exists.
pub fn monoid_through_points(
    z: &Flat2,
    d: usize,
    points: &[ProjPoint],
) -> Result<Option<MultiPoly>> {
    if points.iter().any(|p| p.n() != z.n()) {
        return Err(Error::DimensionMismatch(
            "points and flat live in different spaces".into(),
        ));
    }
    let basis = monoid_basis(z, d)?;
    let rows = points
        .iter()
        .map(|p| basis.iter().map(|f| f.eval(p.coords())).collect())
        .collect();
    let kernel = Matrix::from_rows(basis.len(), rows)?.kernel();
    if kernel.rows() == 0 {
        return Ok(None);
    }
    let combo = basis
        .iter()
        .zip(kernel.row(0))
        .fold(MultiPoly::zero(z.n() + 1), |acc, (f, c)| {
            acc.add(&f.scale(c))
        });
    Ok(Some(combo.primitive()))
}

/// True iff the curve meets the flat: the two pulled-back forms share a root.
pub fn rnc_meets_flat(c: &RNC, z: &Flat2) -> Result<bool> {
    if c.n() != z.n() {
        return Err(Error::DimensionMismatch(
            "curve and flat live in different spaces".into(),
        ));
    }
    let f = c.pullback(z.rows().row(0));
    let g = c.pullback(z.rows().row(1));
    if f.is_zero() || g.is_zero() {
        return Ok(true);
    }
    Ok(binary_resultant(&f, &g)?.is_zero())
}

/// True iff some quadric contains both the curve and the flat.
pub fn exists_quadric_through_curve_and_flat(c: &RNC, z: &Flat2) -> Result<bool> {
    let n = c.n();
    if n != z.n() {
        return Err(Error::DimensionMismatch(
            "curve and flat live in different spaces".into(),
        ));
    }
    let subs: Vec<MultiPoly> = (0..=n)
        .map(|j| MultiPoly::from_coefficients(2, n as u32, c.coeff().row(j)))
        .collect();
    let on_curve = substitution_matrix(2, &subs, 2 * n as u32);
    let system = on_curve.vstack(&flat_conditions(&flat_points(z), 2));
    Ok(system.rank() < system.cols())
}
