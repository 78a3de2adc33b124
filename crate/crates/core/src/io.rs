//! JSON records for inputs and outputs. Rationals are written as strings
//! such as `"-3/2"` so that no floating point value ever appears.
//!
//! Shape errors in a record surface as [`Error::Malformed`]; domain checks
//! such as general position are left to the operations themselves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Matrix, MultiPoly, Rational};
use crate::proj::{Flat2, LineSpan, ProjPoint, RNC};
use crate::steiner::SteinerTensor;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn parse_rat(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| malformed(format!("not a rational number: {text:?}")))
}

pub fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn parse_vector(v: &[String], len: usize) -> Result<Vec<Rational>> {
    if v.len() != len {
        return Err(malformed(format!(
            "expected {len} entries, found {}",
            v.len()
        )));
    }
    v.iter().map(|x| parse_rat(x)).collect()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rat_strings(m.row(i))).collect()
}

pub fn parse_matrix(rows: &[Vec<String>], n_rows: usize, n_cols: usize) -> Result<Matrix> {
    if rows.len() != n_rows {
        return Err(malformed(format!(
            "expected {n_rows} rows, found {}",
            rows.len()
        )));
    }
    let parsed = rows
        .iter()
        .map(|r| parse_vector(r, n_cols))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(n_cols, parsed).map_err(|e| malformed(e.to_string()))
}

fn parse_point(v: &[String], n: usize) -> Result<ProjPoint> {
    ProjPoint::new(parse_vector(v, n + 1)?)
        .map_err(|_| malformed("the zero vector is not a projective point"))
}

/// Points of `P^n`, or the forms of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsRecord {
    pub n: usize,
    #[serde(alias = "forms")]
    pub points: Vec<Vec<String>>,
}

impl PointsRecord {
    pub fn from_points(n: usize, points: &[ProjPoint]) -> Self {
        Self {
            n,
            points: points.iter().map(|p| rat_strings(p.coords())).collect(),
        }
    }

    pub fn to_points(&self) -> Result<Vec<ProjPoint>> {
        self.points.iter().map(|p| parse_point(p, self.n)).collect()
    }
}

/// Two rows of length `n + 1`: the forms of a flat, or the points of a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowsRecord {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl RowsRecord {
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            n: m.cols() - 1,
            rows: matrix_strings(m),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        parse_matrix(&self.rows, 2, self.n + 1)
    }

    pub fn to_flat(&self) -> Result<Flat2> {
        Flat2::new(self.to_matrix()?).map_err(|_| malformed("flat rows must be independent"))
    }

    pub fn to_line(&self) -> Result<LineSpan> {
        LineSpan::new(self.to_matrix()?).map_err(|_| malformed("line points must be distinct"))
    }
}

/// A batch of lines of `P^n`, each given by two spanning points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesRecord {
    pub n: usize,
    pub lines: Vec<Vec<Vec<String>>>,
}

impl LinesRecord {
    pub fn from_lines(n: usize, lines: &[LineSpan]) -> Self {
        Self {
            n,
            lines: lines.iter().map(|l| matrix_strings(l.rows())).collect(),
        }
    }

    pub fn to_lines(&self) -> Result<Vec<LineSpan>> {
        self.lines
            .iter()
            .map(|rows| {
                RowsRecord {
                    n: self.n,
                    rows: rows.clone(),
                }
                .to_line()
            })
            .collect()
    }
}

/// Slices `slice_j : I → W`, one per coordinate of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub n: usize,
    pub dim_i: usize,
    pub dim_w: usize,
    pub slices: Vec<Vec<Vec<String>>>,
}

impl TensorRecord {
    pub fn from_tensor(t: &SteinerTensor) -> Self {
        Self {
            n: t.n(),
            dim_i: t.dim_i(),
            dim_w: t.dim_w(),
            slices: t.slices().iter().map(matrix_strings).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<SteinerTensor> {
        if self.slices.len() != self.n + 1 {
            return Err(malformed(format!(
                "expected {} slices, found {}",
                self.n + 1,
                self.slices.len()
            )));
        }
        let slices = self
            .slices
            .iter()
            .map(|s| parse_matrix(s, self.dim_w, self.dim_i))
            .collect::<Result<Vec<_>>>()?;
        SteinerTensor::new(self.dim_i, self.dim_w, slices)
    }
}

/// Coefficient matrix `M` of the curve `γ = M · (s^n, ..., t^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RncRecord {
    pub n: usize,
    pub coeff: Vec<Vec<String>>,
}

impl RncRecord {
    pub fn from_rnc(c: &RNC) -> Self {
        Self {
            n: c.n(),
            coeff: matrix_strings(c.coeff()),
        }
    }

    pub fn to_rnc(&self) -> Result<RNC> {
        RNC::new(parse_matrix(&self.coeff, self.n + 1, self.n + 1)?)
            .map_err(|_| malformed("curve coefficient matrix is singular"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

/// Sparse polynomial in graded-lex order, with an optional plain rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub n_vars: usize,
    pub terms: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl PolyRecord {
    pub fn from_poly(p: &MultiPoly, with_text: bool) -> Self {
        Self {
            n_vars: p.n_vars(),
            terms: p
                .terms()
                .into_iter()
                .map(|(e, c)| TermRecord {
                    exponents: e.clone(),
                    coefficient: c.to_string(),
                })
                .collect(),
            text: with_text.then(|| p.render_default()),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exponents.len() != self.n_vars {
                    return Err(malformed(format!(
                        "term has {} exponents for {} variables",
                        t.exponents.len(),
                        self.n_vars
                    )));
                }
                Ok((t.exponents.clone(), parse_rat(&t.coefficient)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPoly::from_terms(self.n_vars, terms))
    }
}

/// Structured report of a failed operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        Self {
            error: e.kind().to_string(),
            message: e.to_string(),
            subset: match e {
                Error::NotGeneralPosition { subset } => Some(subset.clone()),
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::steiner::schwarzenberger_tensor;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        let text = serde_json::to_string(x).unwrap();
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, x);
    }

    #[test]
    fn points_round_trip() {
        let p = vec![
            ProjPoint::new(vec![rat(2), ratio(-3, 4), rat(0)]).unwrap(),
            ProjPoint::from_i64(&[0, 1, 5]).unwrap(),
        ];
        let rec = PointsRecord::from_points(2, &p);
        round_trip(&rec);
        assert_eq!(rec.to_points().unwrap(), p);
        assert_eq!(rec.points[0], vec!["1", "-3/8", "0"]);
        let forms: PointsRecord =
            serde_json::from_str(r#"{"n":1,"forms":[["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(forms.to_points().unwrap().len(), 2);
    }

    #[test]
    fn malformed_inputs() {
        let bad = PointsRecord {
            n: 2,
            points: vec![vec!["1".into(), "x".into(), "0".into()]],
        };
        assert!(bad.to_points().unwrap_err().is_malformed());
        let short = PointsRecord {
            n: 2,
            points: vec![vec!["1".into(), "0".into()]],
        };
        assert!(short.to_points().unwrap_err().is_malformed());
        let zero = PointsRecord {
            n: 1,
            points: vec![vec!["0".into(), "0".into()]],
        };
        assert!(zero.to_points().unwrap_err().is_malformed());
        let dependent = RowsRecord {
            n: 2,
            rows: vec![
                vec!["1".into(), "2".into(), "3".into()],
                vec!["2".into(), "4".into(), "6".into()],
            ],
        };
        assert!(dependent.to_flat().unwrap_err().is_malformed());
    }

    #[test]
    fn tensor_and_curve_round_trip() {
        let t = schwarzenberger_tensor(2, 6).unwrap();
        let rec = TensorRecord::from_tensor(&t);
        round_trip(&rec);
        assert_eq!(rec.to_tensor().unwrap(), t);
        let c = RNC::standard(3);
        let rec = RncRecord::from_rnc(&c);
        round_trip(&rec);
        assert_eq!(rec.to_rnc().unwrap(), c);
    }

    #[test]
    fn polynomial_round_trip() {
        let p = MultiPoly::from_coefficients(
            3,
            2,
            &[rat(0), rat(3), rat(-4), rat(0), ratio(1, 2), rat(0)],
        );
        let rec = PolyRecord::from_poly(&p, true);
        round_trip(&rec);
        assert_eq!(rec.to_poly().unwrap(), p);
        assert_eq!(rec.terms[0].exponents, vec![1, 1, 0]);
    }

    #[test]
    fn lines_and_errors() {
        let l = LineSpan::through(
            &ProjPoint::from_i64(&[1, 0, 0]).unwrap(),
            &ProjPoint::from_i64(&[0, 1, 2]).unwrap(),
        )
        .unwrap();
        let rec = LinesRecord::from_lines(2, std::slice::from_ref(&l));
        round_trip(&rec);
        assert_eq!(rec.to_lines().unwrap(), vec![l]);
        let e = Error::NotGeneralPosition {
            subset: vec![0, 1, 2],
        };
        let r = ErrorRecord::from(&e);
        assert_eq!(r.error, "not_general_position");
        assert_eq!(r.subset, Some(vec![0, 1, 2]));
        round_trip(&r);
    }
}
