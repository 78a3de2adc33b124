//! Arrangements of hyperplanes in general position, association and the
//! fundamental tensor.
//!
//! Forms are stored as the rows of `F` (`m × (n+1)`). The kernel basis `B`
//! (`(m-n-1) × m`, reduced row echelon form) spans the relations
//! `{λ : Σ λ_i f_i = 0}`, so `B · F = 0`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};
use crate::proj::{require_general_position, segre, veronese, HyperplaneForm, ProjPoint};
use crate::steiner::SteinerTensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    forms: Vec<HyperplaneForm>,
    matrix: Matrix,
    kernel: Matrix,
}

impl Arrangement {
    /// Validates general position and caches the relation basis.
    pub fn new(forms: Vec<HyperplaneForm>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Precondition(
                "an arrangement needs at least one hyperplane".into(),
            ));
        };
        let n = first.n();
        if forms.iter().any(|f| f.n() != n) {
            return Err(Error::DimensionMismatch(
                "forms live in different spaces".into(),
            ));
        }
        require_general_position(&forms, n)?;
        let matrix = Matrix::from_rows(n + 1, forms.iter().map(|f| f.coords().to_vec()).collect())?;
        let kernel = matrix.transpose().kernel();
        Ok(Self {
            forms,
            matrix,
            kernel,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| ProjPoint::from_i64(r))
                .collect::<Result<_>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.matrix.cols() - 1
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    /// The forms, which are also the dual points of the arrangement.
    pub fn forms(&self) -> &[HyperplaneForm] {
        &self.forms
    }

    pub fn form_matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Rows span the relations among the forms.
    pub fn kernel_basis(&self) -> &Matrix {
        &self.kernel
    }

    /// Normalized forms in lexicographic order, for unordered comparison.
    pub fn sorted_forms(&self) -> Vec<HyperplaneForm> {
        self.forms.iter().cloned().sorted().collect()
    }

    fn require_relations(&self) -> Result<()> {
        if self.m() < self.n() + 2 {
            return Err(Error::Precondition(format!(
                "{} hyperplanes in P^{} satisfy no linear relation",
                self.m(),
                self.n()
            )));
        }
        Ok(())
    }

    /// The associated arrangement in `P(I_H)`: form `i` is column `i` of `B`.
    pub fn associated(&self) -> Result<Arrangement> {
        self.require_relations()?;
        let forms = (0..self.m())
            .map(|i| ProjPoint::new(self.kernel.column(i)))
            .collect::<Result<_>>()?;
        Arrangement::new(forms)
    }

    /// Tensor `t(a, v) = (a_k f_k(v))_k` with `I` in the `B` basis and `W` in
    /// the basis `e_k - e_m`, `k = 1..m-1`.
    pub fn fundamental_tensor(&self) -> Result<SteinerTensor> {
        self.require_relations()?;
        let (m, n) = (self.m(), self.n());
        let dim_i = m - n - 1;
        let slices = (0..=n)
            .map(|j| {
                Matrix::from_fn(m - 1, dim_i, |k, r| {
                    &self.kernel[(r, k)] * &self.matrix[(k, j)]
                })
            })
            .collect();
        SteinerTensor::new(dim_i, m - 1, slices)
    }

    /// Coordinates in the `B` basis of a relation vector `a ∈ I_H`.
    pub fn relation_coordinates(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.kernel
            .transpose()
            .solve(a)
            .ok_or_else(|| Error::Precondition("vector is not a relation among the forms".into()))
    }
}

fn dependent_with_independent_facets(rows: Vec<Vec<Rational>>) -> Result<bool> {
    let m = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let full = Matrix::from_rows(cols, rows)?;
    if m < 2 || full.rank() != m - 1 {
        return Ok(false);
    }
    Ok((0..m).all(|skip| {
        let keep: Vec<usize> = (0..m).filter(|&i| i != skip).collect();
        full.select_rows(&keep).rank() == m - 1
    }))
}

/// Segre criterion: the images `s(p_i, q_i)` are dependent while every
/// proper subset is independent.
pub fn is_associated_pair(p: &[ProjPoint], q: &[ProjPoint]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(format!(
            "configurations have {} and {} points",
            p.len(),
            q.len()
        )));
    }
    let rows = p
        .iter()
        .zip(q)
        .map(|(a, b)| segre(a, b).coords().to_vec())
        .collect();
    dependent_with_independent_facets(rows)
}

/// Degree-2 Veronese criterion for `2n + 2` points of `P^n`.
pub fn is_self_associated(p: &[ProjPoint]) -> Result<bool> {
    let n = p.first().map_or(0, ProjPoint::n);
    if p.len() != 2 * n + 2 || n == 0 {
        return Err(Error::Precondition(format!(
            "self-association needs 2n + 2 points in P^n, got {} in P^{n}",
            p.len()
        )));
    }
    let rows = p.iter().map(|x| veronese(x, 2).coords().to_vec()).collect();
    dependent_with_independent_facets(rows)
}
