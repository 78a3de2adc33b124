use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Binomial coefficient C(n, k) for nonnegative arguments (0 when k > n).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All exponent vectors of total degree `degree` in `n_vars` variables, in
/// graded lexicographic order with `x0 > x1 > ...` (so `x0^degree` first).
pub fn monomials(n_vars: usize, degree: u32) -> Vec<Exponents> {
    fn rec(n_vars: usize, degree: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if n_vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(n_vars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n_vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n_vars, degree, &mut Vec::with_capacity(n_vars), &mut out);
    out
}

/// Evaluates the monomial with exponents `e` at `point`.
pub(crate) fn eval_monomial(e: &[u32], point: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (x, &k) in point.iter().zip(e) {
        if k > 0 {
            acc *= num_traits::pow(x.clone(), k as usize);
        }
    }
    acc
}

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(vec![0; n_vars], c);
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(e, Rational::one());
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Self {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n_vars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Homogeneous polynomial of degree `degree` with the given coefficient
    /// vector in the graded-lex monomial basis.
    pub fn from_coefficients(n_vars: usize, degree: u32, coeffs: &[Rational]) -> Self {
        let basis = monomials(n_vars, degree);
        assert_eq!(
            basis.len(),
            coeffs.len(),
            "coefficient vector length mismatch"
        );
        Self::from_terms(n_vars, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    /// Coefficients on the graded-lex basis of degree `degree` monomials.
    pub fn coefficients(&self, degree: u32) -> Vec<Rational> {
        monomials(self.n_vars, degree)
            .iter()
            .map(|e| self.terms.get(e).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in graded-lex order (highest first).
    pub fn terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(e, _)| Reverse((e.iter().sum::<u32>(), (*e).clone())));
        v
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.n_vars,
            "evaluation point has wrong length"
        );
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * eval_monomial(e, point);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.n_vars, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.n_vars).map(|i| self.partial(i)).collect()
    }

    /// Substitutes `subs[i]` for the variable `x_i`; all substitutes must
    /// share the same variable count, which becomes the result's.
    pub fn compose(&self, subs: &[MultiPoly]) -> Self {
        assert_eq!(
            subs.len(),
            self.n_vars,
            "one substitute per variable required"
        );
        let target = subs.first().map_or(0, |p| p.n_vars);
        let mut out = Self::zero(target);
        // Cache powers of each substitute.
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|p| vec![Self::constant(p.n_vars, Rational::one()), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Homogenizes to degree `degree` by inserting a new variable `x0` in
    /// front of the existing ones.
    pub fn homogenize(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.n_vars + 1);
        for (e, c) in &self.terms {
            let d: u32 = e.iter().sum();
            assert!(d <= degree, "term degree exceeds homogenization degree");
            let mut f = Vec::with_capacity(e.len() + 1);
            f.push(degree - d);
            f.extend_from_slice(e);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Rescales to integer coefficients with content 1 and a positive
    /// leading coefficient in graded-lex order.
    pub fn primitive(&self) -> Self {
        let Some((_, lead)) = self
            .terms()
            .first()
            .map(|(e, c)| ((*e).clone(), (*c).clone()))
        else {
            return self.clone();
        };
        let denom_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut factor = Rational::new(denom_lcm, content);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Plain text rendering such as `3*x*y - 4*x*z + y*z`.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.n_vars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], p)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Default variable names: `x, y, z` for three variables, `s, t` for two,
    /// otherwise `x0, x1, ...`.
    pub fn default_names(n_vars: usize) -> Vec<String> {
        match n_vars {
            2 => vec!["s".into(), "t".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            _ => (0..n_vars).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn render_default(&self) -> String {
        let names = Self::default_names(self.n_vars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.render(&refs)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.render_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn monomial_order_is_graded_lex() {
        assert_eq!(
            monomials(3, 2),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(4, 3).len() as u64, binomial(6, 3));
    }

    #[test]
    fn arithmetic_and_render() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let p = x
            .mul(&y)
            .scale(&rat(3))
            .sub(&x.mul(&z).scale(&rat(4)))
            .add(&y.mul(&z));
        assert_eq!(p.render_default(), "3*x*y - 4*x*z + y*z");
        assert_eq!(p.eval(&[rat(1), rat(2), rat(3)]), rat(0));
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.scale(&rat(-2)).primitive(), p);
    }

    #[test]
    fn compose_and_partials() {
        // (s + t)^2 with x = s + t, y = s - t composed into x*y
        let s = MultiPoly::var(2, 0);
        let t = MultiPoly::var(2, 1);
        let xy = MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1));
        let c = xy.compose(&[s.add(&t), s.sub(&t)]);
        assert_eq!(c, s.pow(2).sub(&t.pow(2)));
        assert_eq!(c.partial(0), s.scale(&rat(2)));
    }

    #[test]
    fn homogenize_inserts_leading_variable() {
        let t = MultiPoly::var(1, 0);
        let p = t.scale(&rat(2)).add(&MultiPoly::constant(1, rat(1)));
        let h = p.homogenize(1);
        assert_eq!(h.coefficients(1), vec![rat(1), rat(2)]);
    }
}
