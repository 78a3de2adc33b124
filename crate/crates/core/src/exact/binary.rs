use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Binary form of degree `d`; `coeffs[k]` multiplies `s^(d-k) t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch(
                "a binary form needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// The linear form `b*s - a*t`, vanishing exactly at `(a : b)`.
    pub fn vanishing_at(a: &Rational, b: &Rational) -> Self {
        Self {
            coeffs: vec![b.clone(), -a.clone()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(s.clone(), d - k) * num_traits::pow(t.clone(), k);
        }
        acc
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "adding forms of different degree"
        );
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self {
            coeffs: vec![Rational::one()],
        };
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient by `divisor`, or `None` when the division leaves a
    /// remainder. Works on the `t`-coefficients from the top, so it also
    /// handles factors vanishing at `(0 : 1)`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let dd = divisor.degree();
        if dd > self.degree() {
            return if self.is_zero() {
                Some(Self::zero(0))
            } else {
                None
            };
        }
        // Strip common powers of s (coefficient index d) and t (index 0)
        // by treating both as polynomials in t with s = 1, after padding.
        // Homogeneous division: f = q * g with deg q = deg f - deg g.
        let qd = self.degree() - dd;
        // Solve the linear system coefficientwise; it is triangular once we
        // pick the first nonzero coefficient of the divisor.
        let lead = divisor.coeffs.iter().position(|c| !c.is_zero())?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rational::zero(); qd + 1];
        for i in 0..=qd {
            let c = &rem[i + lead] / &divisor.coeffs[lead];
            if !c.is_zero() {
                for (j, g) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * g;
                }
            }
            q[i] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self { coeffs: q })
        } else {
            None
        }
    }
}

/// Sylvester resultant of two binary forms of positive degree. Vanishes
/// exactly when the forms share a projective root.
pub fn binary_resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return Err(Error::Precondition(
            "resultant needs forms of positive degree".into(),
        ));
    }
    let size = m + n;
    let mut syl = Matrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.coeffs.iter().enumerate() {
            syl[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs.iter().enumerate() {
            syl[(n + i, i + k)] = c.clone();
        }
    }
    syl.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn resultant_examples() {
        // s*t and s^2 share (0:1)
        assert_eq!(
            binary_resultant(&form(&[0, 1, 0]), &form(&[1, 0, 0])).unwrap(),
            rat(0)
        );
        let r = binary_resultant(&form(&[1, 0]), &form(&[0, 1])).unwrap();
        assert!(r == rat(1) || r == rat(-1));
        assert_eq!(
            binary_resultant(&form(&[0, 0]), &form(&[1, 1])),
            Err(Error::ZeroForm)
        );
    }

    #[test]
    fn shared_linear_factor_kills_resultant() {
        let l = form(&[2, -3]);
        let f = l.mul(&form(&[1, 4, -1]));
        let g = l.mul(&form(&[5, 0, 2]));
        assert_eq!(binary_resultant(&f, &g).unwrap(), rat(0));
        assert_ne!(
            binary_resultant(&form(&[1, 4, -1, 2]), &form(&[5, 0, 2, 1])).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn exact_division() {
        let l = BinaryForm::vanishing_at(&rat(1), &rat(2));
        let f = l.pow(3).mul(&form(&[1, 1]));
        assert_eq!(f.divide_exact(&l.pow(3)).unwrap(), form(&[1, 1]));
        assert!(form(&[1, 0, 1]).divide_exact(&form(&[1, 1])).is_none());
        // divisor vanishing at (0:1): s
        assert_eq!(
            form(&[1, 2, 0]).divide_exact(&form(&[1, 0])).unwrap(),
            form(&[1, 2])
        );
        // divisor t
        assert_eq!(
            form(&[0, 1, 2]).divide_exact(&form(&[0, 1])).unwrap(),
            form(&[1, 2])
        );
    }
}
