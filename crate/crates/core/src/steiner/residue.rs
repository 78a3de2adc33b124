//! Explicit isomorphism between the logarithmic bundle of hyperplanes
//! osculating a rational normal curve and the Schwarzenberger bundle.
//!
//! Notation: `h(σ)` is the osculating form of the curve at `σ`, so that
//! `h(σ) · γ(τ) = (σ_1 τ_0 - σ_0 τ_1)^n`. The form `f_i` equals `κ_i h(p_i)`.
//! `V` is identified with `S^n A` by `Φ`, defined by `h(σ) · Φ(P) = P(σ)`,
//! hence `f_i(Φ(P)) = κ_i P(p_i)`.
//!
//! `β(g)_i = res_{p_i} ω_g = -g(p_i) / D_i` with
//! `D_i = Π_{j≠i} (t_j s_i - s_j t_i)`, and
//! `α(u)_i = β(u ℓ_q^n)_i / (κ_i ℓ_q(p_i)^n)` with `ℓ_q = t_q s - s_q t`.
//! Then `t_H(α(u), Φ(P)) = β(P u)` for all `P`, `u`.

use num_traits::{One, Zero};

use super::SteinerTensor;
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{BinaryForm, Matrix, Rational};
use crate::proj::{dual_rnc, point_on_rnc, ProjPoint, RNC};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueIntertwiner {
    /// `S^(m-n-2) A → I_H` in the kernel basis of the arrangement.
    pub alpha: Matrix,
    /// `S^(m-2) A → W` in the basis `e_k - e_m`.
    pub beta: Matrix,
    /// `Φ : S^n A → V`.
    pub v_map: Matrix,
}

impl ResidueIntertwiner {
    /// Checks `fiber_H(Φ(x^j)) · α = β · slice^S_j` for every monomial `x^j`.
    pub fn verify(&self, log: &SteinerTensor, schwarzenberger: &SteinerTensor) -> bool {
        (0..self.v_map.cols()).all(|j| {
            let v = self.v_map.column(j);
            let lhs = match log.fiber_map(&v) {
                Ok(f) => f.mul(&self.alpha),
                Err(_) => return false,
            };
            lhs == self.beta.mul(&schwarzenberger.slices()[j])
        })
    }

    /// The Schwarzenberger tensor re-expressed on `V` through `Φ^{-1}`, so
    /// that `fiber_H(v) · α = β · fiber(v)` for every `v ∈ V`.
    pub fn transported_schwarzenberger(
        &self,
        schwarzenberger: &SteinerTensor,
    ) -> Result<SteinerTensor> {
        let inv = self
            .v_map
            .inverse()
            .ok_or_else(|| Error::Degenerate("V identification is singular".into()))?;
        schwarzenberger.change_v_basis(&inv)
    }
}

/// Parameters of the dual points of `a` on the osculating curve of `c`.
pub fn osculating_parameters(a: &Arrangement, c: &RNC) -> Option<Vec<ProjPoint>> {
    let dual = dual_rnc(c);
    a.forms().iter().map(|f| point_on_rnc(&dual, f)).collect()
}

fn eval_monomial_basis(degree: usize, k: usize, s: &Rational, t: &Rational) -> Rational {
    num_traits::pow(s.clone(), degree - k) * num_traits::pow(t.clone(), k)
}

pub fn build_residue_intertwiner(
    a: &Arrangement,
    c: &RNC,
    params: &[ProjPoint],
    q: &ProjPoint,
) -> Result<ResidueIntertwiner> {
    let (n, m) = (a.n(), a.m());
    if c.n() != n || params.len() != m || params.iter().chain([q]).any(|p| p.n() != 1) {
        return Err(Error::Precondition(
            "curve, arrangement and parameters do not match".into(),
        ));
    }
    if m < n + 2 {
        return Err(Error::Precondition("need m >= n + 2".into()));
    }
    let dual = dual_rnc(c);
    let coords = |p: &ProjPoint| (p.coords()[0].clone(), p.coords()[1].clone());

    let mut kappa = Vec::with_capacity(m);
    for (i, (f, p)) in a.forms().iter().zip(params).enumerate() {
        let (s, t) = coords(p);
        let h = dual.point_raw(&s, &t);
        let lead = f.coords().iter().position(|x| !x.is_zero()).unwrap();
        if h[lead].is_zero() || ProjPoint::new(h.clone())? != *f {
            return Err(Error::Precondition(format!(
                "form {i} does not osculate the curve at its parameter"
            )));
        }
        kappa.push(&f.coords()[lead] / &h[lead]);
    }
    for i in 0..m {
        for j in 0..i {
            if params[i] == params[j] {
                return Err(Error::Precondition(format!(
                    "parameters {j} and {i} coincide"
                )));
            }
        }
        if params[i] == *q {
            return Err(Error::Precondition(format!(
                "q coincides with parameter {i}"
            )));
        }
    }

    let denom: Vec<Rational> = (0..m)
        .map(|i| {
            let (si, ti) = coords(&params[i]);
            (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    let (sj, tj) = coords(&params[j]);
                    tj * &si - sj * &ti
                })
                .fold(Rational::one(), |acc, x| acc * x)
        })
        .collect();
    let residue = |values: &[Rational]| -> Vec<Rational> {
        values.iter().zip(&denom).map(|(g, d)| -(g / d)).collect()
    };

    // β on the monomial basis of S^(m-2) A.
    let deg_w = m - 2;
    let mut beta = Matrix::zeros(m - 1, m - 1);
    for k in 0..=deg_w {
        let values: Vec<Rational> = params
            .iter()
            .map(|p| {
                let (s, t) = coords(p);
                eval_monomial_basis(deg_w, k, &s, &t)
            })
            .collect();
        let res = residue(&values);
        for (i, r) in res.into_iter().take(m - 1).enumerate() {
            beta[(i, k)] = r;
        }
    }

    // α on the monomial basis of S^(m-n-2) A.
    let (sq, tq) = coords(q);
    let ell_q = BinaryForm::vanishing_at(&sq, &tq).pow(n);
    let (_, pivots) = a.kernel_basis().rref();
    let deg_i = m - n - 2;
    let mut alpha = Matrix::zeros(m - n - 1, deg_i + 1);
    for k in 0..=deg_i {
        let mut u = vec![Rational::zero(); deg_i + 1];
        u[k] = Rational::one();
        let product = BinaryForm::new(u)?.mul(&ell_q);
        let values: Vec<Rational> = params
            .iter()
            .map(|p| {
                let (s, t) = coords(p);
                product.eval(&s, &t)
            })
            .collect();
        let res = residue(&values);
        let relation: Vec<Rational> = (0..m)
            .map(|i| {
                let (s, t) = coords(&params[i]);
                &res[i] / (&kappa[i] * ell_q.eval(&s, &t))
            })
            .collect();
        let coords_i: Vec<Rational> = pivots.iter().map(|&pc| relation[pc].clone()).collect();
        if a.kernel_basis().vec_mul(&coords_i) != relation {
            return Err(Error::Degenerate(
                "residue vector is not a relation among the forms".into(),
            ));
        }
        for (r, x) in coords_i.into_iter().enumerate() {
            alpha[(r, k)] = x;
        }
    }

    // Φ = (D^T)^{-1} where h(σ) = D · moment(σ).
    let v_map = dual
        .coeff()
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Degenerate("dual curve matrix is singular".into()))?;
    Ok(ResidueIntertwiner { alpha, beta, v_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;
    use crate::steiner::{intertwiner_solve, schwarzenberger_tensor, Verdict};

    fn osculating_arrangement(c: &RNC, params: &[ProjPoint]) -> Arrangement {
        let dual = dual_rnc(c);
        Arrangement::new(params.iter().map(|p| dual.point_at(p)).collect()).unwrap()
    }

    fn params(list: &[[i64; 2]]) -> Vec<ProjPoint> {
        list.iter()
            .map(|p| ProjPoint::from_i64(p).unwrap())
            .collect()
    }

    #[test]
    fn residues_sum_to_zero() {
        let c = RNC::standard(2);
        let ps = params(&[[1, 0], [0, 1], [1, 1], [1, -1], [1, 2], [2, 1]]);
        let a = osculating_arrangement(&c, &ps);
        let r =
            build_residue_intertwiner(&a, &c, &ps, &ProjPoint::from_i64(&[1, 5]).unwrap()).unwrap();
        // Recover the m-th residue as minus the sum of the others, then
        // compare against the direct formula.
        for k in 0..r.beta.cols() {
            let (s, t) = (ps[5].coords()[0].clone(), ps[5].coords()[1].clone());
            let g = num_traits::pow(s.clone(), 4 - k) * num_traits::pow(t.clone(), k);
            let d: Rational = (0..5)
                .map(|j| &ps[j].coords()[1] * &s - &ps[j].coords()[0] * &t)
                .fold(Rational::one(), |acc, x| acc * x);
            let last = -(g / d);
            let total: Rational = r.beta.column(k).into_iter().fold(last, |acc, x| acc + x);
            assert!(total.is_zero());
        }
    }

    #[test]
    fn identity_holds_and_maps_are_invertible() {
        let mut rng = XorShift64Star::new(44);
        for (n, m) in [(2, 5), (2, 6), (2, 7), (3, 8)] {
            let c = loop {
                let g = Matrix::from_fn(n + 1, n + 1, |_, _| rng.rational_in(-3, 3));
                if let Ok(c) = RNC::new(g) {
                    break c;
                }
            };
            let ps: Vec<ProjPoint> = (0..m as i64)
                .map(|k| ProjPoint::from_i64(&[1, k - 2]).unwrap())
                .collect();
            let a = osculating_arrangement(&c, &ps);
            let log = a.fundamental_tensor().unwrap();
            let schw = schwarzenberger_tensor(n, m).unwrap();
            let q = ProjPoint::from_i64(&[1, 40]).unwrap();
            let r = build_residue_intertwiner(&a, &c, &ps, &q).unwrap();
            assert!(r.verify(&log, &schw));
            assert_eq!(r.alpha.rank(), m - n - 1);
            assert_eq!(r.beta.rank(), m - 1);
            // A different q gives the same pair.
            let r2 = build_residue_intertwiner(&a, &c, &ps, &ProjPoint::from_i64(&[0, 1]).unwrap())
                .unwrap();
            assert_eq!(r, r2);
            // The solver agrees once the V identification is applied.
            let moved = r.transported_schwarzenberger(&schw).unwrap();
            assert!(matches!(
                intertwiner_solve(&log, &moved).unwrap(),
                Verdict::Iso { .. }
            ));
        }
    }

    #[test]
    fn parameters_are_recovered_from_the_curve() {
        let c = RNC::standard(3);
        let ps = params(&[[1, 0], [0, 1], [1, 1], [1, -1], [1, 2], [2, 1], [1, 3]]);
        let a = osculating_arrangement(&c, &ps);
        assert_eq!(osculating_parameters(&a, &c).unwrap(), ps);
    }

    #[test]
    fn preconditions() {
        let c = RNC::standard(2);
        let ps = params(&[[1, 0], [0, 1], [1, 1], [1, -1], [1, 2]]);
        let a = osculating_arrangement(&c, &ps);
        assert!(build_residue_intertwiner(&a, &c, &ps, &ps[2]).is_err());
        let mut shuffled = ps.clone();
        shuffled.swap(0, 1);
        assert!(build_residue_intertwiner(
            &a,
            &c,
            &shuffled,
            &ProjPoint::from_i64(&[1, 9]).unwrap()
        )
        .is_err());
    }
}
