use std::collections::HashMap;

use super::SteinerTensor;
use num_traits::Zero;

use crate::exact::{binomial, monomials, Exponents, Matrix};

/// `dim S^a V* = C(n + a, n)`, zero for negative `a`.
fn sym_dim(n: usize, a: i64) -> usize {
    if a < 0 {
        0
    } else {
        binomial(n as u64 + a as u64, n as u64) as usize
    }
}

/// Matrix of `X ⊗ S^a → Y ⊗ S^(a+1)`, `x ⊗ g ↦ Σ_j maps[j](x) ⊗ x_j g`,
/// with `maps[j]` of shape `dim Y × dim X`. Row index `y * N_(a+1) + mono`.
fn multiplication_matrix(maps: &[Matrix], a: i64) -> Matrix {
    let nv = maps.len();
    let (dy, dx) = (maps[0].rows(), maps[0].cols());
    if a < 0 {
        return Matrix::zeros(dy * sym_dim(nv - 1, a + 1), 0);
    }
    let src = monomials(nv, a as u32);
    let dst = monomials(nv, a as u32 + 1);
    let index: HashMap<&Exponents, usize> = dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut out = Matrix::zeros(dy * dst.len(), dx * src.len());
    for (gi, g) in src.iter().enumerate() {
        for (j, map) in maps.iter().enumerate() {
            let mut e = g.clone();
            e[j] += 1;
            let row_mono = index[&e];
            for x in 0..dx {
                for y in 0..dy {
                    let v = &map[(y, x)];
                    if !v.is_zero() {
                        out[(y * dst.len() + row_mono, x * src.len() + gi)] += v;
                    }
                }
            }
        }
    }
    out
}

/// `(h^0, …, h^n)` of the twist `E(k)` of the cokernel bundle, read off the
/// long exact sequence of `0 → I ⊗ O(k-1) → W ⊗ O(k) → E(k) → 0`.
///
/// `H^0` uses `μ_k : I ⊗ S^(k-1) → W ⊗ S^k`; `H^n` of the line bundles is
/// handled through the Serre-dual map `W* ⊗ S^a → I* ⊗ S^(a+1)` with
/// `a = -k-n-1`, built from transposed slices.
pub fn cohomology_dims(t: &SteinerTensor, k: i64) -> Vec<usize> {
    let n = t.n();
    let (di, dw) = (t.dim_i(), t.dim_w());
    if n == 0 {
        return vec![dw - t.slices()[0].rank()];
    }
    let mu_rank = multiplication_matrix(t.slices(), k - 1).rank();
    let transposed: Vec<Matrix> = t.slices().iter().map(Matrix::transpose).collect();
    let a = -k - n as i64 - 1;
    let nu_rank = multiplication_matrix(&transposed, a).rank();

    let mut h = vec![0usize; n + 1];
    h[0] = dw * sym_dim(n, k) - mu_rank;
    // Kernel of H^n(I(k-1)) → H^n(W(k)) and its cokernel.
    let top_kernel = di * sym_dim(n, a + 1) - nu_rank;
    h[n] = dw * sym_dim(n, a) - nu_rank;
    h[n - 1] += top_kernel;
    h
}

/// `χ(E(k)) = dim W · χ(O(k)) - dim I · χ(O(k-1))`.
pub fn euler_characteristic(t: &SteinerTensor, k: i64) -> i64 {
    let n = t.n();
    let chi_o = |j: i64| -> i64 {
        let mut num = 1i128;
        let mut den = 1i128;
        for i in 1..=n as i128 {
            num *= j as i128 + i;
            den *= i;
        }
        (num / den) as i64
    };
    t.dim_w() as i64 * chi_o(k) - t.dim_i() as i64 * chi_o(k - 1)
}

/// `(n+1) C(k+n-1, n) - C(k+n, n) + m C(k+n-1, n-1)` for `k >= 0`: the
/// number of sections of the twisted logarithmic bundle of `m` hyperplanes.
pub fn closed_form_h0(n: usize, m: usize, k: usize) -> i64 {
    assert!(n >= 1);
    let c = |a: usize, b: usize| binomial(a as u64, b as u64) as i64;
    (n as i64 + 1) * c(k + n - 1, n) - c(k + n, n) + m as i64 * c(k + n - 1, n - 1)
}
