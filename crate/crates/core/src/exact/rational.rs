use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a"` or `"a/b"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let r: Rational = t.parse().ok()?;
    Some(r)
}
