//! Restriction of Steiner bundles to lines.
//!
//! On a line the dual bundle is the kernel of `W* ⊗ O → I* ⊗ O(1)`, so for
//! `E|_l = ⊕ O(a_i)` the section counts `h_k = h^0(E*|_l(k))` satisfy
//! `h_k - h_(k-1) = #{i : a_i <= k}`. Only ranks of exact matrices are used.

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{dot, BinaryForm, Matrix, Rational};
use crate::proj::{LineSpan, ProjPoint};
use crate::steiner::{normalization_split, SplittingType, SteinerTensor};

/// Fiber maps `T0`, `T1` at the two spanning points of a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPencil {
    pub t0: Matrix,
    pub t1: Matrix,
    pub line: LineSpan,
}

pub fn restrict_to_line(t: &SteinerTensor, l: &LineSpan) -> Result<MatrixPencil> {
    if l.n() != t.n() {
        return Err(Error::DimensionMismatch(format!(
            "line lives in P^{}, tensor on P^{}",
            l.n(),
            t.n()
        )));
    }
    Ok(MatrixPencil {
        t0: t.fiber_map(l.rows().row(0))?,
        t1: t.fiber_map(l.rows().row(1))?,
        line: l.clone(),
    })
}

impl MatrixPencil {
    /// `Φ_k : W* ⊗ S^k → I* ⊗ S^(k+1)`, `w ⊗ g ↦ (s T0ᵀ w + t T1ᵀ w) g`.
    /// Rows are indexed `i * (k+2) + e`, columns `w * (k+1) + e`, where `e`
    /// is the power of `t`.
    fn section_matrix(&self, k: usize) -> Matrix {
        let (dw, di) = (self.t0.rows(), self.t0.cols());
        let mut out = Matrix::zeros(di * (k + 2), dw * (k + 1));
        for w in 0..dw {
            for i in 0..di {
                let (a, b) = (&self.t0[(w, i)], &self.t1[(w, i)]);
                for e in 0..=k {
                    out[(i * (k + 2) + e, w * (k + 1) + e)] += a;
                    out[(i * (k + 2) + e + 1, w * (k + 1) + e)] += b;
                }
            }
        }
        out
    }

    /// `h^0(E*|_l(k))`.
    pub fn dual_sections(&self, k: usize) -> usize {
        self.t0.rows() * (k + 1) - self.section_matrix(k).rank()
    }

    fn check_injective(&self) -> Result<()> {
        for (idx, t) in [&self.t0, &self.t1].into_iter().enumerate() {
            if t.rank() != t.cols() {
                return Err(Error::Precondition(format!(
                    "fiber map is not injective at spanning point {idx} {:?}",
                    self.line.rows().row(idx)
                )));
            }
        }
        Ok(())
    }

    pub fn splitting_type(&self) -> Result<SplittingType> {
        self.check_injective()?;
        let n = self.t0.rows() - self.t0.cols();
        let mut degrees = Vec::with_capacity(n);
        let mut previous = 0usize;
        let mut k = 0usize;
        // Every a_i is at most dim W.
        let bound = self.t0.rows();
        while degrees.len() < n && k <= bound {
            let h = self.dual_sections(k);
            let at_most_k = h - previous;
            while degrees.len() < at_most_k.min(n) {
                degrees.push(k);
            }
            previous = h;
            k += 1;
        }
        if degrees.len() != n {
            return Err(Error::Degenerate("section counts did not stabilize".into()));
        }
        Ok(SplittingType::new(degrees))
    }
}

pub fn splitting_type(t: &SteinerTensor, l: &LineSpan) -> Result<SplittingType> {
    restrict_to_line(t, l)?.splitting_type()
}

/// True iff the splitting type differs from `(d^r, (d-1)^(n-r))`, where
/// `m = nd + 1 + r` and `m - 1 = dim W`.
pub fn is_jumping(t: &SteinerTensor, l: &LineSpan) -> Result<bool> {
    let (d, r) = normalization_split(t.n(), t.dim_w() + 1)?;
    Ok(splitting_type(t, l)? != SplittingType::generic(t.n(), d, r))
}

/// True iff `O` is a summand of `E|_l`, i.e. the restricted dual has a section.
pub fn is_super_jumping(t: &SteinerTensor, l: &LineSpan) -> Result<bool> {
    let pencil = restrict_to_line(t, l)?;
    pencil.check_injective()?;
    Ok(pencil.dual_sections(0) > 0)
}

/// Parameter on `l` of its intersection with the hyperplane `f`.
fn meet_parameter(l: &LineSpan, f: &[Rational]) -> Result<(Rational, Rational)> {
    let (fu, fw) = (dot(f, l.rows().row(0)), dot(f, l.rows().row(1)));
    if fu.is_zero() && fw.is_zero() {
        return Err(Error::Degenerate("line lies inside a hyperplane".into()));
    }
    Ok((fw, -fu))
}

/// Basis of the functionals vanishing at `p`.
fn annihilator(p: &[Rational]) -> Matrix {
    Matrix::from_rows(p.len(), vec![p.to_vec()])
        .unwrap()
        .kernel()
}

/// The canonical projective connection along a non-jumping line `l` of an
/// arrangement with `m = nd + 1`: transports the line `lambda` through `x`
/// to a line through `x2`.
///
/// Solves for the degree-`d` map `ψ : l → H_m` with `ψ(l ∩ H_i) ∈ H_i` for
/// `i < m` and `ψ(x) ∝ lambda ∩ H_m`, then returns `span(x2, ψ(x2))`.
pub fn connection_map(
    a: &Arrangement,
    l: &LineSpan,
    x: &ProjPoint,
    lambda: &LineSpan,
    x2: &ProjPoint,
) -> Result<LineSpan> {
    let (n, m) = (a.n(), a.m());
    if (m - 1) % n != 0 {
        return Err(Error::Precondition(format!(
            "need m = nd + 1, got m = {m}, n = {n}"
        )));
    }
    let d = (m - 1) / n;
    if l.n() != n || lambda.n() != n || x.n() != n || x2.n() != n {
        return Err(Error::DimensionMismatch(
            "line and points must live in P^n".into(),
        ));
    }
    let forms = a.form_matrix();
    for (name, p) in [("x", x), ("x2", x2)] {
        if !l.contains(p) {
            return Err(Error::Precondition(format!("{name} is not on the line")));
        }
        if let Some(i) = (0..m).find(|&i| p.pair(forms.row(i)).is_zero()) {
            return Err(Error::Precondition(format!(
                "{name} lies on hyperplane {i}"
            )));
        }
    }
    if !lambda.contains(x) {
        return Err(Error::Precondition("lambda does not pass through x".into()));
    }
    let fm = forms.row(m - 1);
    let (su, sw) = meet_parameter(lambda, fm)?;
    let target = lambda.point_at(&su, &sw);
    let x_param = l.parameter_of(x).expect("checked above");

    let dim = n + 1;
    let unknowns = (d + 1) * dim;
    let var = |k: usize, c: usize| k * dim + c;
    let moment = |s: &Rational, t: &Rational| -> Vec<Rational> {
        (0..=d)
            .map(|k| num_traits::pow(s.clone(), d - k) * num_traits::pow(t.clone(), k))
            .collect()
    };
    let mut rows = Vec::new();
    for k in 0..=d {
        let mut row = vec![Rational::zero(); unknowns];
        for c in 0..dim {
            row[var(k, c)] = fm[c].clone();
        }
        rows.push(row);
    }
    let mut push_condition = |functional: &[Rational], s: &Rational, t: &Rational| {
        let mono = moment(s, t);
        let mut row = vec![Rational::zero(); unknowns];
        for k in 0..=d {
            for c in 0..dim {
                row[var(k, c)] = &mono[k] * &functional[c];
            }
        }
        rows.push(row);
    };
    for i in 0..m - 1 {
        let (s, t) = meet_parameter(l, forms.row(i))?;
        push_condition(forms.row(i), &s, &t);
    }
    let ann = annihilator(&target);
    let (xs, xt) = (&x_param.coords()[0], &x_param.coords()[1]);
    for g in 0..ann.rows() {
        push_condition(ann.row(g), xs, xt);
    }
    let kernel = Matrix::from_rows(unknowns, rows)?.kernel();
    if kernel.rows() != 1 {
        return Err(Error::NonUniqueMap { dim: kernel.rows() });
    }
    let coeffs = kernel.row(0);
    let evaluate = |p: &ProjPoint| -> Vec<Rational> {
        let param = l.parameter_of(p).expect("point on line");
        let mono = moment(&param.coords()[0], &param.coords()[1]);
        (0..dim)
            .map(|c| {
                (0..=d)
                    .map(|k| &mono[k] * &coeffs[var(k, c)])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    };
    if evaluate(x).iter().all(Zero::is_zero) {
        return Err(Error::Degenerate(
            "connection map vanishes at the base point".into(),
        ));
    }
    let image = ProjPoint::new(evaluate(x2))
        .map_err(|_| Error::Degenerate("connection map vanishes at the target point".into()))?;
    LineSpan::through(x2, &image)
}

/// A map `P^1 → P^(n-1)` given by `n` binary forms of one degree.
pub type BinaryMap = Vec<BinaryForm>;

/// Basis of the maps `ψ` of degree `e` with `targets[i] · ψ(params[i]) = 0`
/// and, if given, `ψ(anchor.0) ∝ anchor.1`.
pub fn psi_finder(
    params: &[ProjPoint],
    targets: &[ProjPoint],
    e: usize,
    anchor: Option<(&ProjPoint, &ProjPoint)>,
) -> Result<Vec<BinaryMap>> {
    if params.len() != targets.len() {
        return Err(Error::DimensionMismatch(
            "one target per parameter is required".into(),
        ));
    }
    let n = match (targets.first(), anchor) {
        (Some(t), _) => t.coords().len(),
        (None, Some((_, p))) => p.coords().len(),
        (None, None) => return Err(Error::Precondition("no conditions given".into())),
    };
    if targets.iter().any(|t| t.coords().len() != n) || params.iter().any(|p| p.n() != 1) {
        return Err(Error::DimensionMismatch(
            "inconsistent target or parameter sizes".into(),
        ));
    }
    let unknowns = n * (e + 1);
    let row_for = |functional: &[Rational], param: &ProjPoint| -> Vec<Rational> {
        let (s, t) = (&param.coords()[0], &param.coords()[1]);
        let mut row = vec![Rational::zero(); unknowns];
        for a in 0..n {
            for k in 0..=e {
                row[a * (e + 1) + k] = &functional[a]
                    * num_traits::pow(s.clone(), e - k)
                    * num_traits::pow(t.clone(), k);
            }
        }
        row
    };
    let mut rows: Vec<Vec<Rational>> = params
        .iter()
        .zip(targets)
        .map(|(p, t)| row_for(t.coords(), p))
        .collect();
    if let Some((param, point)) = anchor {
        if point.coords().len() != n {
            return Err(Error::DimensionMismatch(
                "anchor point has the wrong size".into(),
            ));
        }
        let ann = annihilator(point.coords());
        rows.extend((0..ann.rows()).map(|g| row_for(ann.row(g), param)));
    }
    let kernel = Matrix::from_rows(unknowns, rows)?.kernel();
    Ok((0..kernel.rows())
        .map(|r| {
            let x = kernel.row(r);
            (0..n)
                .map(|a| BinaryForm::new(x[a * (e + 1)..(a + 1) * (e + 1)].to_vec()).unwrap())
                .collect()
        })
        .collect())
}

/// Evaluates a map at a parameter.
pub fn eval_map(psi: &[BinaryForm], param: &ProjPoint) -> Vec<Rational> {
    psi.iter()
        .map(|f| f.eval(&param.coords()[0], &param.coords()[1]))
        .collect()
}
