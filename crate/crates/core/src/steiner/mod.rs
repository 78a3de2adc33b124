//! Steiner tensors `t ∈ V* ⊗ I* ⊗ W`, stored as `dim V` slices `I → W`.
//!
//! The bundle is the cokernel of `I ⊗ O(-1) → W ⊗ O`, whose fiber at `[v]`
//! is the cokernel of [`SteinerTensor::fiber_map`]. Logarithmic bundles of
//! arrangements, Schwarzenberger bundles and arbitrary Steiner data share
//! this representation.

mod cohomology;
mod intertwiner;
mod residue;

pub use cohomology::{closed_form_h0, cohomology_dims, euler_characteristic};
pub use intertwiner::{intertwiner_solve, Verdict};
pub use residue::{build_residue_intertwiner, osculating_parameters, ResidueIntertwiner};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, Matrix, Rational};
use crate::rng::XorShift64Star;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTensor {
    dim_i: usize,
    dim_w: usize,
    slices: Vec<Matrix>,
}

impl SteinerTensor {
    /// Validates shapes and `dim_w - dim_i = dim_v - 1`.
    pub fn new(dim_i: usize, dim_w: usize, slices: Vec<Matrix>) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::DimensionMismatch(
                "a tensor needs at least one slice".into(),
            ));
        }
        if let Some(j) = slices
            .iter()
            .position(|s| s.rows() != dim_w || s.cols() != dim_i)
        {
            return Err(Error::DimensionMismatch(format!(
                "slice {j} is {}x{}, expected {dim_w}x{dim_i}",
                slices[j].rows(),
                slices[j].cols()
            )));
        }
        if dim_w != dim_i + slices.len() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "dim W - dim I must equal n = {}, got {dim_w} - {dim_i}",
                slices.len() - 1
            )));
        }
        Ok(Self {
            dim_i,
            dim_w,
            slices,
        })
    }

    /// Dimension of the projective space the bundle lives on.
    pub fn n(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn dim_v(&self) -> usize {
        self.slices.len()
    }

    pub fn dim_i(&self) -> usize {
        self.dim_i
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn slices(&self) -> &[Matrix] {
        &self.slices
    }

    /// `Σ_j v_j · slice_j`.
    pub fn fiber_map(&self, v: &[Rational]) -> Result<Matrix> {
        if v.len() != self.dim_v() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries, tensor has dim V = {}",
                v.len(),
                self.dim_v()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(self.combine(v))
    }

    fn combine(&self, v: &[Rational]) -> Matrix {
        let mut acc = Matrix::zeros(self.dim_w, self.dim_i);
        for (vj, s) in v.iter().zip(&self.slices) {
            if !vj.is_zero() {
                acc = acc.add(&s.scale(vj));
            }
        }
        acc
    }

    pub fn injective_at(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.fiber_map(v)?.rank() == self.dim_i)
    }

    /// Checks injectivity at `trials` seeded random points. A `false` is a
    /// proof of failure; `true` is only probabilistic evidence.
    pub fn certify_injectivity(&self, trials: usize, seed: u64) -> bool {
        let mut rng = XorShift64Star::new(seed);
        (0..trials).all(|_| {
            let v = rng.nonzero_vector(self.dim_v(), -9, 9);
            self.injective_at(&v).unwrap_or(false)
        })
    }

    /// Exchanges the roles of `V` and `I`: the new slice `k` has entry
    /// `[w, v]` equal to the old `slice_v[w, k]`.
    pub fn associated_steiner(&self) -> SteinerTensor {
        let slices = (0..self.dim_i)
            .map(|k| {
                Matrix::from_fn(self.dim_w, self.dim_v(), |w, v| {
                    self.slices[v][(w, k)].clone()
                })
            })
            .collect();
        SteinerTensor {
            dim_i: self.dim_v(),
            dim_w: self.dim_w,
            slices,
        }
    }

    /// The tensor with fiber map `v ↦ fiber_map(g v)`: new slice `j` is
    /// `Σ_k g[k, j] slice_k`.
    pub fn change_v_basis(&self, g: &Matrix) -> Result<SteinerTensor> {
        if !g.is_square() || g.rows() != self.dim_v() {
            return Err(Error::DimensionMismatch(
                "V basis change has the wrong size".into(),
            ));
        }
        let slices = (0..self.dim_v())
            .map(|j| self.combine(&g.column(j)))
            .collect();
        SteinerTensor::new(self.dim_i, self.dim_w, slices)
    }

    /// The tensor `G_W · slice_j · G_I^{-1}` for invertible `G_I`, `G_W`.
    pub fn transform(&self, g_i: &Matrix, g_w: &Matrix) -> Result<SteinerTensor> {
        let g_i_inv = g_i
            .inverse()
            .ok_or_else(|| Error::Degenerate("I basis change is singular".into()))?;
        if g_w.det()?.is_zero() {
            return Err(Error::Degenerate("W basis change is singular".into()));
        }
        let slices = self
            .slices
            .iter()
            .map(|s| g_w.mul(s).mul(&g_i_inv))
            .collect();
        SteinerTensor::new(self.dim_i, self.dim_w, slices)
    }
}

/// Multiset of line-bundle degrees `a_1 >= … >= a_n` on a line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType(Vec<usize>);

impl SplittingType {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(d^r, (d-1)^(n-r))`.
    pub fn generic(n: usize, d: usize, r: usize) -> Self {
        let mut v = vec![d; r];
        v.extend(std::iter::repeat_n(d.saturating_sub(1), n - r));
        Self::new(v)
    }
}

fn require_log_range(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n + 2 {
        return Err(Error::Precondition(format!(
            "need n >= 1 and m >= n + 2, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// Chern coefficients `c_1, …, c_n` of the logarithmic bundle of `m`
/// hyperplanes in `P^n`: the expansion of `(1 - ht)^{-(m-n-1)}`.
pub fn chern_coeffs(n: usize, m: usize) -> Result<Vec<u64>> {
    require_log_range(n, m)?;
    Ok((1..=n)
        .map(|i| binomial((m - n - 2 + i) as u64, i as u64))
        .collect())
}

/// The unique `(d, r)` with `m = n d + 1 + r` and `0 <= r < n`.
pub fn normalization_split(n: usize, m: usize) -> Result<(usize, usize)> {
    require_log_range(n, m)?;
    Ok(((m - 1) / n, (m - 1) % n))
}

/// Multiplication `S^n A ⊗ S^(m-n-2) A → S^(m-2) A` in monomial bases
/// `s^(e-k) t^k`; slice `j` multiplies by `s^(n-j) t^j`.
pub fn schwarzenberger_tensor(n: usize, m: usize) -> Result<SteinerTensor> {
    require_log_range(n, m)?;
    let (dim_i, dim_w) = (m - n - 1, m - 1);
    let slices = (0..=n)
        .map(|j| {
            Matrix::from_fn(dim_w, dim_i, |k, i| {
                if k == i + j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    SteinerTensor::new(dim_i, dim_w, slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn chern_examples() {
        assert_eq!(chern_coeffs(2, 6).unwrap(), vec![3, 6]);
        assert_eq!(chern_coeffs(2, 4).unwrap(), vec![1, 1]);
        for n in 1..5 {
            for m in n + 2..n + 9 {
                assert_eq!(chern_coeffs(n, m).unwrap()[0], (m - n - 1) as u64);
            }
        }
        assert!(chern_coeffs(2, 3).is_err());
    }

    #[test]
    fn chern_matches_series_expansion() {
        // Oracle: multiply out (1 + ht + h^2t^2 + …)^(m-n-1) truncated at t^n.
        for n in 1..5 {
            for m in n + 2..n + 8 {
                let mut series = vec![0u64; n + 1];
                series[0] = 1;
                for _ in 0..m - n - 1 {
                    let mut next = vec![0u64; n + 1];
                    for (i, a) in series.iter().enumerate() {
                        for item in next.iter_mut().skip(i) {
                            *item += a;
                        }
                    }
                    series = next;
                }
                assert_eq!(chern_coeffs(n, m).unwrap(), series[1..].to_vec());
            }
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_split(2, 5).unwrap(), (2, 0));
        assert_eq!(normalization_split(2, 6).unwrap(), (2, 1));
        assert_eq!(normalization_split(3, 7).unwrap(), (2, 0));
        for n in 1..5 {
            for m in n + 2..40 {
                let (d, r) = normalization_split(n, m).unwrap();
                assert_eq!(n * d + 1 + r, m);
                assert!(r < n);
            }
        }
    }

    #[test]
    fn schwarzenberger_slices_are_shifts() {
        let t = schwarzenberger_tensor(2, 5).unwrap();
        assert_eq!((t.dim_v(), t.dim_i(), t.dim_w()), (3, 2, 4));
        for s in t.slices() {
            for c in 0..s.cols() {
                let col = s.column(c);
                assert!(col.iter().all(|x| x.is_zero() || x.is_one()));
                assert_eq!(col.iter().filter(|x| x.is_one()).count(), 1);
            }
        }
        let f = t.fiber_map(&[rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(f, Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]));
    }

    #[test]
    fn fiber_map_is_linear_and_rejects_zero() {
        let t = schwarzenberger_tensor(3, 8).unwrap();
        let u = vec![rat(1), rat(-2), rat(0), rat(5)];
        let v = vec![rat(3), rat(1), rat(4), rat(-1)];
        let sum: Vec<Rational> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        assert_eq!(
            t.fiber_map(&sum).unwrap(),
            t.fiber_map(&u).unwrap().add(&t.fiber_map(&v).unwrap())
        );
        assert_eq!(t.fiber_map(&vec![rat(0); 4]), Err(Error::ZeroVector));
    }

    #[test]
    fn schwarzenberger_is_injective_everywhere_sampled() {
        for (n, m) in [(1, 4), (2, 5), (2, 7), (3, 8)] {
            assert!(schwarzenberger_tensor(n, m)
                .unwrap()
                .certify_injectivity(30, 4));
        }
    }

    #[test]
    fn degenerate_tensor_fails_at_witness() {
        // slice_1 = -slice_0, so v = (1, 1) kills the fiber map.
        let s0 = Matrix::from_i64(&[&[1], &[0]]);
        let t = SteinerTensor::new(1, 2, vec![s0.clone(), s0.scale(&rat(-1))]).unwrap();
        assert!(!t.injective_at(&[rat(1), rat(1)]).unwrap());
        assert!(t.injective_at(&[rat(1), rat(0)]).unwrap());
    }

    #[test]
    fn association_is_an_involution_and_swaps_schwarzenberger_roles() {
        for (n, m) in [(1, 5), (2, 5), (2, 7), (3, 8)] {
            let t = schwarzenberger_tensor(n, m).unwrap();
            let a = t.associated_steiner();
            assert_eq!(a.associated_steiner(), t);
            // Multiplication is symmetric: the associated tensor is the
            // Schwarzenberger tensor with n' = m - n - 2 and the same m.
            assert_eq!(a, schwarzenberger_tensor(m - n - 2, m).unwrap());
        }
    }

    #[test]
    fn v_basis_change_composes_with_fiber_map() {
        let t = schwarzenberger_tensor(2, 6).unwrap();
        let g = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let t2 = t.change_v_basis(&g).unwrap();
        let v = vec![rat(2), rat(-1), rat(3)];
        assert_eq!(
            t2.fiber_map(&v).unwrap(),
            t.fiber_map(&g.mul_vec(&v)).unwrap()
        );
    }

    #[test]
    fn splitting_type_helpers() {
        assert_eq!(SplittingType::generic(3, 2, 1).degrees(), &[2, 1, 1]);
        assert_eq!(SplittingType::new(vec![0, 2]).degrees(), &[2, 0]);
        assert_eq!(SplittingType::new(vec![0, 2]).total(), 2);
    }
}
