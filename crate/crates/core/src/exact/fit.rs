use num_traits::One;

use super::matrix::Matrix;
use super::poly::{eval_monomial, monomials, MultiPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Basis of the degree-`degree` forms in `n_vars` variables annihilated by
/// every constraint. Each constraint is a linear functional given by its
/// values on the graded-lex monomial basis.
pub fn fit_vanishing(
    n_vars: usize,
    degree: u32,
    constraints: &[Vec<Rational>],
) -> Result<Vec<MultiPoly>> {
    let n_mono = monomials(n_vars, degree).len();
    let m = Matrix::from_rows(n_mono, constraints.to_vec())?;
    let kernel = m.kernel();
    Ok((0..kernel.rows())
        .map(|i| MultiPoly::from_coefficients(n_vars, degree, kernel.row(i)))
        .collect())
}

/// Evaluation functional of the degree-`degree` monomials at `point`.
pub fn evaluation_functional(degree: u32, point: &[Rational]) -> Vec<Rational> {
    monomials(point.len(), degree)
        .iter()
        .map(|e| eval_monomial(e, point))
        .collect()
}

/// Matrix of `F ↦ F(subs)` on degree-`degree` forms in `subs.len()`
/// variables. Columns follow the source monomial basis, rows the monomials of
/// degree `target_degree` in the substitutes' variables. Every substitute must
/// be homogeneous with `degree * deg(sub) = target_degree`.
pub fn substitution_matrix(degree: u32, subs: &[MultiPoly], target_degree: u32) -> Matrix {
    let target_vars = subs.first().map_or(0, MultiPoly::n_vars);
    let source = monomials(subs.len(), degree);
    let n_rows = monomials(target_vars, target_degree).len();
    let mut out = Matrix::zeros(n_rows, source.len());
    for (j, e) in source.iter().enumerate() {
        let image = MultiPoly::from_terms(subs.len(), [(e.clone(), Rational::one())]).compose(subs);
        for (i, c) in image.coefficients(target_degree).into_iter().enumerate() {
            out[(i, j)] = c;
        }
    }
    out
}

/// The unique polynomial of degree at most `degree` in the `n_vars - 1`
/// affine coordinates matching the samples, homogenized to degree `degree`
/// with `x0` as the homogenizing variable (the chart is `x0 = 1`).
pub fn interpolate_dense(
    n_vars: usize,
    degree: u32,
    samples: &[(Vec<Rational>, Rational)],
) -> Result<MultiPoly> {
    let basis = monomials(n_vars, degree);
    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for (point, value) in samples {
        if point.len() + 1 != n_vars {
            return Err(Error::DimensionMismatch(format!(
                "affine sample has {} coordinates, expected {}",
                point.len(),
                n_vars - 1
            )));
        }
        let mut full = Vec::with_capacity(n_vars);
        full.push(Rational::one());
        full.extend(point.iter().cloned());
        rows.push(
            basis
                .iter()
                .map(|e| eval_monomial(e, &full))
                .collect::<Vec<_>>(),
        );
        rhs.push(value.clone());
    }
    let a = Matrix::from_rows(basis.len(), rows)?;
    let b = Matrix::from_fn(rhs.len(), 1, |i, _| rhs[i].clone());
    let rank_a = a.rank();
    if a.hstack(&b).rank() > rank_a {
        return Err(Error::InconsistentSamples);
    }
    if rank_a < basis.len() {
        return Err(Error::Underdetermined {
            rank: rank_a,
            needed: basis.len(),
        });
    }
    let x = a.solve(&rhs).ok_or(Error::InconsistentSamples)?;
    Ok(MultiPoly::from_coefficients(n_vars, degree, &x))
}
