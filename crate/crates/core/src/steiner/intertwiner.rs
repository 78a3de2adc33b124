use num_traits::Zero;

use super::SteinerTensor;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

/// Outcome of solving for maps between two Steiner resolutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// An invertible pair with `g_w · slice_j = slice2_j · g_i` for all `j`.
    Iso { g_i: Matrix, g_w: Matrix },
    /// The solution space is zero, or one-dimensional with a singular generator.
    NoHom { dim: usize },
    /// Solution space of dimension at least two; undecided without stability.
    Indeterminate { dim: usize },
}

impl Verdict {
    pub fn solution_dim(&self) -> usize {
        match self {
            Verdict::Iso { .. } => 1,
            Verdict::NoHom { dim } | Verdict::Indeterminate { dim } => *dim,
        }
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, Verdict::Iso { .. })
    }
}

/// Solves `G_W · slice_j = slice2_j · G_I` for all `j` over the entries of
/// `(G_I, G_W)`. Lifts of bundle maps to resolutions are unique, so the
/// solution space is the space of bundle maps.
pub fn intertwiner_solve(t: &SteinerTensor, t2: &SteinerTensor) -> Result<Verdict> {
    if t.dim_v() != t2.dim_v() || t.dim_i() != t2.dim_i() || t.dim_w() != t2.dim_w() {
        return Err(Error::DimensionMismatch(format!(
            "tensors have shapes (V, I, W) = ({}, {}, {}) and ({}, {}, {})",
            t.dim_v(),
            t.dim_i(),
            t.dim_w(),
            t2.dim_v(),
            t2.dim_i(),
            t2.dim_w()
        )));
    }
    let (di, dw) = (t.dim_i(), t.dim_w());
    let gi_var = |l: usize, i: usize| l * di + i;
    let gw_var = |w: usize, k: usize| di * di + w * dw + k;
    let unknowns = di * di + dw * dw;

    let mut rows = Vec::with_capacity(t.dim_v() * dw * di);
    for (s, s2) in t.slices().iter().zip(t2.slices()) {
        for w in 0..dw {
            for i in 0..di {
                let mut row = vec![Rational::zero(); unknowns];
                for k in 0..dw {
                    row[gw_var(w, k)] += &s[(k, i)];
                }
                for l in 0..di {
                    row[gi_var(l, i)] -= &s2[(w, l)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = Matrix::from_rows(unknowns, rows)?.kernel();
    match kernel.rows() {
        0 => Ok(Verdict::NoHom { dim: 0 }),
        1 => {
            let x = kernel.row(0);
            let g_i = Matrix::from_fn(di, di, |l, i| x[gi_var(l, i)].clone());
            let g_w = Matrix::from_fn(dw, dw, |w, k| x[gw_var(w, k)].clone());
            if g_i.det()?.is_zero() || g_w.det()?.is_zero() {
                Ok(Verdict::NoHom { dim: 1 })
            } else {
                Ok(Verdict::Iso { g_i, g_w })
            }
        }
        dim => Ok(Verdict::Indeterminate { dim }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;
    use crate::steiner::schwarzenberger_tensor;

    fn invertible(rng: &mut XorShift64Star, n: usize) -> Matrix {
        loop {
            let g = Matrix::from_fn(n, n, |_, _| rng.rational_in(-3, 3));
            if !g.det().unwrap().is_zero() {
                return g;
            }
        }
    }

    #[test]
    fn self_intertwiner_is_scalar() {
        let t = schwarzenberger_tensor(2, 6).unwrap();
        match intertwiner_solve(&t, &t).unwrap() {
            Verdict::Iso { g_i, g_w } => {
                let c = g_i[(0, 0)].clone();
                assert_eq!(g_i, Matrix::identity(t.dim_i()).scale(&c));
                assert_eq!(g_w, Matrix::identity(t.dim_w()).scale(&c));
            }
            other => panic!("expected Iso, got {other:?}"),
        }
    }

    #[test]
    fn basis_changes_are_recovered() {
        let mut rng = XorShift64Star::new(17);
        let t = schwarzenberger_tensor(2, 5).unwrap();
        let (gi, gw) = (
            invertible(&mut rng, t.dim_i()),
            invertible(&mut rng, t.dim_w()),
        );
        // t2 = G_W t G_I^{-1}, so G_W^{-1} t2 = t G_I^{-1}, i.e. a pair maps t2 to t.
        let t2 = t.transform(&gi, &gw).unwrap();
        let Verdict::Iso { g_i, g_w } = intertwiner_solve(&t, &t2).unwrap() else {
            panic!("expected Iso");
        };
        for (s, s2) in t.slices().iter().zip(t2.slices()) {
            assert_eq!(g_w.mul(s), s2.mul(&g_i));
        }
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = schwarzenberger_tensor(2, 5).unwrap();
        let b = schwarzenberger_tensor(2, 6).unwrap();
        assert!(matches!(
            intertwiner_solve(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
