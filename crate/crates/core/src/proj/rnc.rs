//! Rational normal curves `γ(s, t) = M · (s^n, s^(n-1) t, …, t^n)`.

use num_traits::{One, Zero};

use super::{require_general_position, standard_frame, ProjPoint};
use crate::error::{Error, Result};
use crate::exact::{binomial, BinaryForm, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RNC {
    coeff: Matrix,
}

/// `(s^n, s^(n-1) t, …, t^n)`.
pub fn moment_vector(n: usize, s: &Rational, t: &Rational) -> Vec<Rational> {
    (0..=n)
        .map(|k| num_traits::pow(s.clone(), n - k) * num_traits::pow(t.clone(), k))
        .collect()
}

impl RNC {
    pub fn new(coeff: Matrix) -> Result<Self> {
        if coeff.rows() < 2 {
            return Err(Error::DimensionMismatch("a curve needs n >= 1".into()));
        }
        if coeff.det()?.is_zero() {
            return Err(Error::Degenerate(
                "curve coefficient matrix is singular".into(),
            ));
        }
        Ok(Self { coeff })
    }

    pub fn standard(n: usize) -> Self {
        Self {
            coeff: Matrix::identity(n + 1),
        }
    }

    pub fn n(&self) -> usize {
        self.coeff.rows() - 1
    }

    pub fn coeff(&self) -> &Matrix {
        &self.coeff
    }

    pub fn point_raw(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        self.coeff.mul_vec(&moment_vector(self.n(), s, t))
    }

    /// Curve point at a parameter of `P^1`.
    pub fn point_at(&self, param: &ProjPoint) -> ProjPoint {
        let c = param.coords();
        ProjPoint::new(self.point_raw(&c[0], &c[1])).expect("coefficient matrix is invertible")
    }

    /// The binary form `h(γ(s, t))` of degree `n`.
    pub fn pullback(&self, form: &[Rational]) -> BinaryForm {
        BinaryForm::new(self.coeff.vec_mul(form)).expect("n >= 1")
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        point_on_rnc(self, p).is_some()
    }

    /// Whether both curves have the same image. `n + 3` points of a rational
    /// normal curve determine it, so sampling that many parameters suffices.
    pub fn same_image(&self, other: &RNC) -> bool {
        if self.n() != other.n() {
            return false;
        }
        sample_params(self.n() + 3)
            .iter()
            .all(|q| other.contains(&self.point_at(q)))
    }
}

/// `count` distinct parameters: `(0:1)` followed by `(1:0), (1:1), (1:2), …`.
fn sample_params(count: usize) -> Vec<ProjPoint> {
    let mut out = vec![ProjPoint::from_i64(&[0, 1]).unwrap()];
    out.extend((0..count.saturating_sub(1) as i64).map(|k| ProjPoint::from_i64(&[1, k]).unwrap()));
    out.truncate(count);
    out
}

/// Parameter `(s : t)` of `p` on the curve, or `None` if `p` is off it.
pub fn point_on_rnc(c: &RNC, p: &ProjPoint) -> Option<ProjPoint> {
    let n = c.n();
    if p.n() != n {
        return None;
    }
    let y = c.coeff.solve(p.coords())?;
    if !y[0].is_zero() {
        let t = &y[1] / &y[0];
        let mut power = Rational::one();
        for yk in &y {
            if yk != &(&y[0] * &power) {
                return None;
            }
            power *= &t;
        }
        return Some(ProjPoint::new(vec![Rational::one(), t]).unwrap());
    }
    if y[..n].iter().all(Zero::is_zero) {
        return Some(ProjPoint::from_i64(&[0, 1]).unwrap());
    }
    None
}

/// The unique rational normal curve through `n + 3` points in general
/// position in `P^n`.
pub fn rnc_through(points: &[ProjPoint]) -> Result<RNC> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("no points given".into()));
    };
    let n = first.n();
    if n < 1 || points.len() != n + 3 || points.iter().any(|p| p.n() != n) {
        return Err(Error::Precondition(format!(
            "need n + 3 points in P^n with n >= 1, got {} points in P^{n}",
            points.len()
        )));
    }
    require_general_position(points, n)?;

    // Frame: T e_i ∝ p_i and T (1, …, 1) = p_{n+1}.
    let frame = standard_frame(&points[..n + 2])?;
    let w = frame
        .solve(points[n + 2].coords())
        .ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
    if w.iter().any(Zero::is_zero) {
        return Err(Error::Degenerate(
            "last point lies on a coordinate hyperplane of the frame".into(),
        ));
    }
    // In the frame, x_i(τ) = 1 / (τ - b_i) meets e_i at b_i, the unit point
    // at infinity and w at τ = 0.
    let b: Vec<Rational> = w.iter().map(|wi| -wi.recip()).collect();
    for i in 0..=n {
        for j in 0..i {
            if b[i] == b[j] {
                return Err(Error::Degenerate("frame parameters collide".into()));
            }
        }
    }
    let mut curve = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut g = BinaryForm::new(vec![Rational::one()]).unwrap();
        for (j, bj) in b.iter().enumerate() {
            if j != i {
                g = g.mul(&BinaryForm::new(vec![-bj.clone(), Rational::one()]).unwrap());
            }
        }
        for (k, c) in g.coeffs().iter().enumerate() {
            curve[(i, k)] = c.clone();
        }
    }
    let c = RNC::new(frame.mul(&curve))?;
    if let Some(i) = points.iter().position(|p| !c.contains(p)) {
        return Err(Error::Degenerate(format!(
            "constructed curve misses input point {i}"
        )));
    }
    Ok(c)
}

/// Osculating-hyperplane curve of `c` in the dual space.
///
/// For the standard curve the form at `(a : b)` has coordinates
/// `(-1)^k C(n,k) a^k b^(n-k)`, which pulls back to `(b s - a t)^n`; a
/// general coefficient matrix `M` acts on forms by `M^(-T)`.
pub fn dual_rnc(c: &RNC) -> RNC {
    let n = c.n();
    let mut n0 = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        n0[(k, n - k)] =
            Rational::from_integer((sign * binomial(n as u64, k as u64) as i64).into());
    }
    let inv_t = c
        .coeff
        .inverse()
        .expect("invertible by construction")
        .transpose();
    RNC {
        coeff: inv_t.mul(&n0),
    }
}

/// Whether the hyperplane `h` meets `c` at `param` with contact order `n`.
pub fn osculates(c: &RNC, h: &[Rational], param: &ProjPoint) -> bool {
    let p = param.coords();
    let local = BinaryForm::vanishing_at(&p[0], &p[1]).pow(c.n());
    c.pullback(h).divide_exact(&local).is_some()
}
