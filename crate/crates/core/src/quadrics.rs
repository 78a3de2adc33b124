//! Quadrics through points and flats, adjoint points, the Castelnuovo
//! route to rational normal curves, and the Torelli classifier.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{
    evaluation_functional, monomials, substitution_matrix, Matrix, MultiPoly, Rational,
};
use crate::proj::{
    flat_points, point_on_rnc, require_general_position, rnc_through, Flat2, ProjPoint, RNC,
};
use crate::rng::XorShift64Star;
use crate::steiner::{intertwiner_solve, Verdict};

/// Quadric `x^T Q x` with `Q` symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: Matrix,
}

impl QuadraticForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.transpose() != matrix {
            return Err(Error::Precondition(
                "quadratic form matrix must be symmetric".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// From a homogeneous quadratic polynomial.
    pub fn from_poly(f: &MultiPoly) -> Result<Self> {
        if !f.is_zero() && f.total_degree() != Some(2) || !f.is_homogeneous() {
            return Err(Error::Precondition("not a quadratic form".into()));
        }
        let n1 = f.n_vars();
        let half = Rational::new(1.into(), 2.into());
        let mut q = Matrix::zeros(n1, n1);
        for (e, c) in f.terms() {
            let idx: Vec<usize> = (0..n1)
                .flat_map(|i| std::iter::repeat_n(i, e[i] as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                q[(i, i)] = c.clone();
            } else {
                q[(i, j)] = c * &half;
                q[(j, i)] = c * &half;
            }
        }
        Ok(Self { matrix: q })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn to_poly(&self) -> MultiPoly {
        let n1 = self.matrix.rows();
        let coeffs: Vec<Rational> = monomials(n1, 2)
            .iter()
            .map(|e| {
                let idx: Vec<usize> = (0..n1)
                    .flat_map(|i| std::iter::repeat_n(i, e[i] as usize))
                    .collect();
                let (i, j) = (idx[0], idx[1]);
                if i == j {
                    self.matrix[(i, i)].clone()
                } else {
                    &self.matrix[(i, j)] + &self.matrix[(j, i)]
                }
            })
            .collect();
        MultiPoly::from_coefficients(n1, 2, &coeffs)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        crate::exact::dot(x, &self.matrix.mul_vec(x))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Conditions on degree-`degree` forms meaning "vanishes on the span of the
/// rows of `points`": coefficients of the pullback under the parametrization.
pub fn flat_conditions(points: &Matrix, degree: u32) -> Matrix {
    let subs: Vec<MultiPoly> = (0..points.cols())
        .map(|j| MultiPoly::linear(&points.column(j)))
        .collect();
    substitution_matrix(degree, &subs, degree)
}

fn evaluation_matrix(points: &[ProjPoint], n1: usize) -> Result<Matrix> {
    if points.iter().any(|p| p.n() + 1 != n1) {
        return Err(Error::DimensionMismatch(
            "points live in different spaces".into(),
        ));
    }
    Matrix::from_rows(
        monomials(n1, 2).len(),
        points
            .iter()
            .map(|p| evaluation_functional(2, p.coords()))
            .collect(),
    )
}

/// Number of independent conditions the points impose on quadrics.
pub fn conditions_imposed(points: &[ProjPoint]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    Ok(evaluation_matrix(points, first.n() + 1)?.rank())
}

/// A quadric through all points containing the flat, if any.
pub fn quadric_containing(points: &[ProjPoint], z: &Flat2) -> Result<Option<QuadraticForm>> {
    let n1 = z.n() + 1;
    let system = evaluation_matrix(points, n1)?.vstack(&flat_conditions(&flat_points(z), 2));
    let kernel = system.kernel();
    if kernel.rows() == 0 {
        return Ok(None);
    }
    let f = MultiPoly::from_coefficients(n1, 2, kernel.row(0)).primitive();
    Ok(Some(QuadraticForm::from_poly(&f)?))
}

pub fn exists_quadric_containing(points: &[ProjPoint], z: &Flat2) -> Result<bool> {
    Ok(quadric_containing(points, z)?.is_some())
}

/// Outcome of sampling flats through a candidate adjoint point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    /// True iff every sampled flat admitted a quadric.
    pub adjoint: bool,
    pub trials_run: usize,
    /// A flat through `q` with no quadric through it and the points.
    pub witness: Option<Flat2>,
}

/// Random flat through `q`: two random combinations of the forms vanishing
/// at `q`, re-drawn while dependent.
pub fn random_flat_through(q: &ProjPoint, rng: &mut XorShift64Star) -> Flat2 {
    let ann = Matrix::from_rows(q.n() + 1, vec![q.coords().to_vec()])
        .unwrap()
        .kernel();
    loop {
        let g = Matrix::from_fn(2, ann.rows(), |_, _| {
            Rational::from_integer(rng.int_in(-9, 9).into())
        });
        if let Ok(f) = Flat2::new(g.mul(&ann)) {
            return f;
        }
    }
}

/// Tests adjointness of `q` on `trials` seeded flats through it.
pub fn is_adjoint_sampled(
    points: &[ProjPoint],
    q: &ProjPoint,
    trials: usize,
    seed: u64,
) -> Result<AdjointReport> {
    if let Some(i) = points.iter().position(|p| p == q) {
        return Err(Error::Precondition(format!("q coincides with point {i}")));
    }
    if q.n() < 2 {
        return Err(Error::Precondition(
            "flats of codimension 2 need n >= 2".into(),
        ));
    }
    let mut rng = XorShift64Star::new(seed);
    for k in 0..trials {
        let z = random_flat_through(q, &mut rng);
        if !exists_quadric_containing(points, &z)? {
            return Ok(AdjointReport {
                adjoint: false,
                trials_run: k + 1,
                witness: Some(z),
            });
        }
    }
    Ok(AdjointReport {
        adjoint: true,
        trials_run: trials,
        witness: None,
    })
}

/// The rational normal curve through `m >= 2n + 3` points imposing at most
/// `2n + 1` conditions on quadrics, verified on every point.
pub fn castelnuovo_rnc(points: &[ProjPoint]) -> Result<Option<RNC>> {
    let n = points.first().map_or(0, ProjPoint::n);
    if n == 0 || points.len() < 2 * n + 3 {
        return Err(Error::Precondition(format!(
            "need at least 2n + 3 = {} points, got {}",
            2 * n + 3,
            points.len()
        )));
    }
    require_general_position(points, n)?;
    if conditions_imposed(points)? > 2 * n + 1 {
        return Ok(None);
    }
    let c = rnc_through(&points[..n + 3])?;
    if points[n + 3..]
        .iter()
        .all(|p| point_on_rnc(&c, p).is_some())
    {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// Geometric verdict on two arrangements with possibly isomorphic bundles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorelliVerdict {
    SameArrangement,
    /// Every dual point of both arrangements lies on the curve.
    CommonVeroneseCurve(RNC),
    NonIsomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorelliOutcome {
    pub verdict: TorelliVerdict,
    /// The intertwiner solver's answer on the fundamental tensors.
    pub solver: Verdict,
}

impl TorelliVerdict {
    pub fn isomorphic(&self) -> bool {
        !matches!(self, TorelliVerdict::NonIsomorphic)
    }
}

/// Classifies two arrangements of `m >= 2n + 3` hyperplanes and checks the
/// answer against the intertwiner solver.
pub fn torelli_classify(a1: &Arrangement, a2: &Arrangement) -> Result<TorelliOutcome> {
    let (n, m) = (a1.n(), a1.m());
    if a2.n() != n || a2.m() != m {
        return Err(Error::DimensionMismatch(format!(
            "arrangements have (n, m) = ({n}, {m}) and ({}, {})",
            a2.n(),
            a2.m()
        )));
    }
    if m < 2 * n + 3 {
        return Err(Error::HypothesisNotMet(format!(
            "need m >= 2n + 3 = {}, got m = {m}",
            2 * n + 3
        )));
    }
    let verdict = if a1.sorted_forms() == a2.sorted_forms() {
        TorelliVerdict::SameArrangement
    } else {
        match castelnuovo_rnc(a1.forms())? {
            Some(c) if a2.forms().iter().all(|f| point_on_rnc(&c, f).is_some()) => {
                TorelliVerdict::CommonVeroneseCurve(c)
            }
            _ => TorelliVerdict::NonIsomorphic,
        }
    };
    let solver = intertwiner_solve(&a1.fundamental_tensor()?, &a2.fundamental_tensor()?)?;
    match (&solver, verdict.isomorphic()) {
        (Verdict::Indeterminate { dim }, _) => Err(Error::CrossValidation(format!(
            "solver left a {dim}-dimensional space of maps undecided"
        ))),
        (Verdict::Iso { .. }, true) | (Verdict::NoHom { .. }, false) => {
            Ok(TorelliOutcome { verdict, solver })
        }
        (s, _) => Err(Error::CrossValidation(format!(
            "classifier says {verdict:?} but the solver found {} maps (iso: {})",
            s.solution_dim(),
            s.is_iso()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, rat};
    use crate::proj::{dual_rnc, line_to_dual_flat, LineSpan};
    use crate::restriction::is_super_jumping;
    use num_traits::Zero;

    fn random_points(rng: &mut XorShift64Star, n: usize, m: usize) -> Vec<ProjPoint> {
        loop {
            let p: Vec<ProjPoint> = (0..m)
                .map(|_| ProjPoint::new(rng.nonzero_vector(n + 1, -6, 6)).unwrap())
                .collect();
            if require_general_position(&p, n).is_ok() {
                return p;
            }
        }
    }

    fn random_flat(rng: &mut XorShift64Star, n: usize) -> Flat2 {
        loop {
            if let Ok(f) = Flat2::new(Matrix::from_fn(2, n + 1, |_, _| rng.rational_in(-5, 5))) {
                return f;
            }
        }
    }

    fn on_curve(c: &RNC, params: &[i64]) -> Vec<ProjPoint> {
        params
            .iter()
            .map(|&t| c.point_at(&ProjPoint::from_i64(&[1, t]).unwrap()))
            .collect()
    }

    #[test]
    fn quadratic_form_round_trip() {
        let f =
            MultiPoly::from_coefficients(3, 2, &[rat(1), rat(3), rat(-4), rat(0), rat(1), rat(2)]);
        let q = QuadraticForm::from_poly(&f).unwrap();
        assert_eq!(q.to_poly(), f);
        let x = [rat(2), rat(-1), rat(5)];
        assert_eq!(q.eval(&x), f.eval(&x));
        assert!(QuadraticForm::new(Matrix::from_i64(&[&[1, 2], &[0, 1]])).is_err());
    }

    #[test]
    fn condition_counts() {
        let mut rng = XorShift64Star::new(3);
        assert_eq!(
            conditions_imposed(&random_points(&mut rng, 2, 5)).unwrap(),
            5
        );
        let conic = RNC::standard(2);
        assert_eq!(
            conditions_imposed(&on_curve(&conic, &[-3, -2, -1, 0, 1, 2, 3])).unwrap(),
            5
        );
        for n in 2..=3 {
            for m in 1..=2 * n + 1 {
                assert_eq!(
                    conditions_imposed(&random_points(&mut rng, n, m)).unwrap(),
                    m
                );
            }
            let many = random_points(&mut rng, n, 12);
            assert_eq!(
                conditions_imposed(&many).unwrap() as u64,
                binomial(n as u64 + 2, 2).min(12)
            );
        }
        let cubic = RNC::standard(3);
        for m in 7..=10 {
            let p: Vec<i64> = (0..m as i64).map(|k| k - 4).collect();
            assert_eq!(conditions_imposed(&on_curve(&cubic, &p)).unwrap(), 7);
        }
    }

    #[test]
    fn few_points_always_admit_a_quadric() {
        let mut rng = XorShift64Star::new(4);
        for n in 2..=3 {
            for m in 1..=2 * n {
                let p = random_points(&mut rng, n, m);
                let z = random_flat(&mut rng, n);
                let q = quadric_containing(&p, &z).unwrap().unwrap();
                assert!(p.iter().all(|x| q.eval(x.coords()).is_zero()));
                let basis = flat_points(&z);
                let last = basis.rows() - 1;
                let x: Vec<Rational> = (0..=n)
                    .map(|j| rat(3) * &basis[(0, j)] - &basis[(last, j)])
                    .collect();
                assert!(q.eval(&x).is_zero());
            }
        }
    }

    /// Dimension of the intersection of the two quadric systems from their bases.
    fn intersection_dim(points: &[ProjPoint], z: &Flat2) -> usize {
        let n1 = z.n() + 1;
        let through = evaluation_matrix(points, n1).unwrap().kernel();
        let containing = flat_conditions(&flat_points(z), 2).kernel();
        through.rows() + containing.rows() - through.vstack(&containing).rank()
    }

    #[test]
    fn agrees_with_basis_intersection() {
        let mut rng = XorShift64Star::new(5);
        for n in 2..=3 {
            for _ in 0..10 {
                let p = random_points(&mut rng, n, 2 * n + 1);
                // Flats inside the hyperplane spanned by the first n points.
                let h =
                    Matrix::from_rows(n + 1, p[..n].iter().map(|x| x.coords().to_vec()).collect())
                        .unwrap()
                        .kernel();
                let special = loop {
                    let extra = Matrix::from_fn(1, n + 1, |_, _| rng.rational_in(-4, 4));
                    if let Ok(f) = Flat2::new(h.vstack(&extra)) {
                        break f;
                    }
                };
                for z in [special, random_flat(&mut rng, n)] {
                    assert_eq!(
                        exists_quadric_containing(&p, &z).unwrap(),
                        intersection_dim(&p, &z) > 0
                    );
                }
            }
        }
    }

    #[test]
    fn invariant_under_coordinate_change() {
        let mut rng = XorShift64Star::new(6);
        let p = random_points(&mut rng, 3, 7);
        for k in 0..10 {
            let z = if k % 2 == 0 {
                random_flat_through(&p[0], &mut rng)
            } else {
                random_flat(&mut rng, 3)
            };
            let g = loop {
                let g = Matrix::from_fn(4, 4, |_, _| rng.rational_in(-3, 3));
                if !g.det().unwrap().is_zero() {
                    break g;
                }
            };
            let moved: Vec<ProjPoint> = p
                .iter()
                .map(|x| ProjPoint::new(g.mul_vec(x.coords())).unwrap())
                .collect();
            let moved_z = Flat2::new(z.rows().mul(&g.inverse().unwrap())).unwrap();
            assert_eq!(
                exists_quadric_containing(&p, &z).unwrap(),
                exists_quadric_containing(&moved, &moved_z).unwrap()
            );
        }
    }

    #[test]
    fn super_jumping_lines_via_quadrics() {
        let mut rng = XorShift64Star::new(7);
        for (n, m) in [(2, 6), (2, 7), (3, 8)] {
            let a = loop {
                if let Ok(a) = Arrangement::new(random_points(&mut rng, n, m)) {
                    break a;
                }
            };
            let t = a.fundamental_tensor().unwrap();
            for _ in 0..15 {
                let l = loop {
                    let u = ProjPoint::new(rng.nonzero_vector(n + 1, -5, 5)).unwrap();
                    let w = ProjPoint::new(rng.nonzero_vector(n + 1, -5, 5)).unwrap();
                    if let Ok(l) = LineSpan::through(&u, &w) {
                        break l;
                    }
                };
                assert_eq!(
                    is_super_jumping(&t, &l).unwrap(),
                    exists_quadric_containing(a.forms(), &line_to_dual_flat(&l)).unwrap()
                );
            }
        }
    }

    #[test]
    fn adjoint_points_of_a_curve() {
        let c = RNC::standard(2);
        let p = on_curve(&c, &[-3, -2, -1, 0, 1, 2, 3]);
        let q = c.point_at(&ProjPoint::from_i64(&[1, 5]).unwrap());
        let report = is_adjoint_sampled(&p, &q, 10, 1).unwrap();
        assert!(report.adjoint && report.witness.is_none());
        let off = ProjPoint::from_i64(&[1, 2, 3]).unwrap();
        let report = is_adjoint_sampled(&p, &off, 10, 1).unwrap();
        assert!(!report.adjoint);
        let z = report.witness.unwrap();
        assert!(z.contains(&off) && !exists_quadric_containing(&p, &z).unwrap());
        assert!(is_adjoint_sampled(&p, &p[2], 5, 1).is_err());

        let mut rng = XorShift64Star::new(8);
        let generic = random_points(&mut rng, 2, 7);
        let q = ProjPoint::new(rng.nonzero_vector(3, -5, 5)).unwrap();
        assert!(!is_adjoint_sampled(&generic, &q, 10, 2).unwrap().adjoint);
    }

    #[test]
    fn castelnuovo_recovers_curves() {
        let conic = RNC::new(Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[2, 0, 1]])).unwrap();
        let p = on_curve(&conic, &[-3, -2, -1, 0, 1, 2, 4]);
        let found = castelnuovo_rnc(&p).unwrap().unwrap();
        assert!(found.same_image(&conic));
        let mut rng = XorShift64Star::new(9);
        let generic = random_points(&mut rng, 2, 7);
        assert!(castelnuovo_rnc(&generic).unwrap().is_none());
        assert_eq!(conditions_imposed(&generic).unwrap(), 6);
        let cubic = RNC::standard(3);
        let p = on_curve(&cubic, &[-4, -3, -2, -1, 0, 1, 2, 3, 5]);
        assert_eq!(conditions_imposed(&p).unwrap(), 7);
        assert!(castelnuovo_rnc(&p).unwrap().unwrap().same_image(&cubic));
        assert!(castelnuovo_rnc(&p[..8]).is_err());
    }

    fn osculating(c: &RNC, params: &[i64]) -> Arrangement {
        Arrangement::new(on_curve(&dual_rnc(c), params)).unwrap()
    }

    #[test]
    fn torelli_cases() {
        let c = RNC::standard(2);
        let a = osculating(&c, &[-3, -2, -1, 0, 1, 2, 3]);
        let mut reordered = a.forms().to_vec();
        reordered.reverse();
        let out = torelli_classify(&a, &Arrangement::new(reordered).unwrap()).unwrap();
        assert_eq!(out.verdict, TorelliVerdict::SameArrangement);
        assert!(out.solver.is_iso());

        let b = osculating(&c, &[-5, -4, 4, 5, 6, 7, 9]);
        let out = torelli_classify(&a, &b).unwrap();
        assert!(matches!(
            out.verdict,
            TorelliVerdict::CommonVeroneseCurve(_)
        ));
        assert!(out.solver.is_iso());

        let mut rng = XorShift64Star::new(10);
        let g1 = Arrangement::new(random_points(&mut rng, 2, 7)).unwrap();
        let g2 = Arrangement::new(random_points(&mut rng, 2, 7)).unwrap();
        let out = torelli_classify(&g1, &g2).unwrap();
        assert_eq!(out.verdict, TorelliVerdict::NonIsomorphic);
        assert_eq!(out.solver, Verdict::NoHom { dim: 0 });

        let small = osculating(&c, &[0, 1, 2, 3, 4, 5]);
        assert!(matches!(
            torelli_classify(&small, &small),
            Err(Error::HypothesisNotMet(_))
        ));
    }
}
