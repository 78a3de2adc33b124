use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use logbundle::arrangement::{is_self_associated, Arrangement};
use logbundle::exact::{evaluation_functional, fit_vanishing, MultiPoly, Rational};
use logbundle::io::{
    matrix_strings, parse_vector, LinesRecord, PointsRecord, PolyRecord, RncRecord, RowsRecord,
    TensorRecord,
};
use logbundle::monoidal::{
    curve_equation_p2, monoid_basis, monoid_through_points, monoidal_kernel_dim,
    monoidal_membership,
};
use logbundle::proj::{require_general_position, rnc_through, ProjPoint, RNC};
use logbundle::quadrics::{
    castelnuovo_rnc, conditions_imposed, is_adjoint_sampled, torelli_classify, TorelliVerdict,
};
use logbundle::restriction::{connection_map, is_jumping, is_super_jumping, splitting_type};
use logbundle::steiner::{
    chern_coeffs, cohomology_dims, euler_characteristic, intertwiner_solve, schwarzenberger_tensor,
    SteinerTensor, Verdict,
};
use logbundle::Error;

use crate::{CliError, Command, Global};

type CliResult<T> = Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> CliResult<(usize, Vec<ProjPoint>)> {
    let rec: PointsRecord = read_json(path)?;
    Ok((rec.n, rec.to_points()?))
}

fn load_arrangement(path: &Path) -> CliResult<Arrangement> {
    Ok(Arrangement::new(load_points(path)?.1)?)
}

/// A tensor file, or an arrangement whose fundamental tensor is meant.
#[derive(Deserialize)]
#[serde(untagged)]
enum TensorSource {
    Tensor(TensorRecord),
    Forms(PointsRecord),
}

fn load_tensor(path: &Path) -> CliResult<SteinerTensor> {
    match read_json::<TensorSource>(path)? {
        TensorSource::Tensor(rec) => Ok(rec.to_tensor()?),
        TensorSource::Forms(rec) => Ok(Arrangement::new(rec.to_points()?)?.fundamental_tensor()?),
    }
}

fn parse_point_arg(text: &str) -> CliResult<ProjPoint> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    let coords = parse_vector(&parts, parts.len())?;
    ProjPoint::new(coords)
        .map_err(|_| CliError::Input("the zero vector is not a projective point".into()))
}

/// Quadrics through `2n + 1` points of the curve, which span its quadric ideal.
fn curve_equations(c: &RNC) -> CliResult<Vec<MultiPoly>> {
    let n = c.n();
    let cons: Vec<Vec<Rational>> = (0..=2 * n as i64)
        .map(|k| {
            let p = c.point_at(&ProjPoint::from_i64(&[1, k]).expect("nonzero"));
            evaluation_functional(2, p.coords())
        })
        .collect();
    Ok(fit_vanishing(n + 1, 2, &cons)?
        .iter()
        .map(MultiPoly::primitive)
        .collect())
}

fn poly_json(p: &MultiPoly) -> Value {
    serde_json::to_value(PolyRecord::from_poly(p, true)).expect("plain record")
}

fn curve_json(c: &RNC) -> CliResult<Value> {
    let equations: Vec<Value> = curve_equations(c)?.iter().map(poly_json).collect();
    Ok(json!({ "curve": RncRecord::from_rnc(c), "equations": equations }))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Iso { g_i, g_w } => json!({
            "kind": "iso",
            "dim": 1,
            "g_i": matrix_strings(g_i),
            "g_w": matrix_strings(g_w),
        }),
        Verdict::NoHom { dim } => json!({ "kind": "no_hom", "dim": dim }),
        Verdict::Indeterminate { dim } => json!({ "kind": "indeterminate", "dim": dim }),
    }
}

fn with_summary(mut doc: Value, global: &Global, summary: impl FnOnce() -> String) -> Value {
    if global.pretty {
        doc["summary"] = Value::String(summary());
    }
    doc
}

fn per_line<T>(
    input: &Path,
    lines: &Path,
    f: impl Fn(&SteinerTensor, &logbundle::proj::LineSpan) -> logbundle::Result<T>,
) -> CliResult<Vec<T>> {
    let t = load_tensor(input)?;
    let batch: LinesRecord = read_json(lines)?;
    if batch.n != t.n() {
        return Err(Error::DimensionMismatch(format!(
            "lines live in P^{} but the bundle on P^{}",
            batch.n,
            t.n()
        ))
        .into());
    }
    batch
        .to_lines()?
        .iter()
        .map(|l| f(&t, l).map_err(CliError::from))
        .collect()
}

fn count_true(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

pub fn run(command: &Command, global: &Global) -> CliResult<Value> {
    match command {
        Command::GpCheck { points } => {
            let (n, pts) = load_points(points)?;
            require_general_position(&pts, n)?;
            Ok(with_summary(
                json!({ "general_position": true, "n": n, "count": pts.len() }),
                global,
                || format!("{} points of P^{n} are in general position", pts.len()),
            ))
        }
        Command::Associate { points } => {
            let b = load_arrangement(points)?.associated()?;
            let doc = serde_json::to_value(PointsRecord::from_points(b.n(), b.forms()))
                .expect("plain record");
            Ok(with_summary(doc, global, || {
                format!("{} associated points of P^{}", b.m(), b.n())
            }))
        }
        Command::SelfAssociated { points } => {
            let (_, pts) = load_points(points)?;
            let answer = is_self_associated(&pts)?;
            Ok(with_summary(
                json!({ "self_associated": answer }),
                global,
                || format!("self-associated: {answer}"),
            ))
        }
        Command::Tensor { forms } => {
            let t = load_arrangement(forms)?.fundamental_tensor()?;
            let doc = serde_json::to_value(TensorRecord::from_tensor(&t)).expect("plain record");
            Ok(with_summary(doc, global, || {
                format!(
                    "tensor with dim V = {}, dim I = {}, dim W = {}",
                    t.dim_v(),
                    t.dim_i(),
                    t.dim_w()
                )
            }))
        }
        Command::Chern { n, m } => {
            let c = chern_coeffs(*n, *m)?;
            Ok(with_summary(
                json!({ "n": n, "m": m, "coefficients": c }),
                global,
                || format!("c = {c:?}"),
            ))
        }
        Command::Cohomology { input, k } => {
            let t = load_tensor(input)?;
            let dims = cohomology_dims(&t, *k);
            let euler = euler_characteristic(&t, *k);
            Ok(with_summary(
                json!({ "k": k, "dims": dims, "euler": euler }),
                global,
                || format!("h^q(E({k})) = {dims:?}, euler characteristic {euler}"),
            ))
        }
        Command::SplittingType { input, lines } => {
            let types = per_line(input, lines, splitting_type)?;
            let degrees: Vec<Vec<usize>> = types.iter().map(|s| s.degrees().to_vec()).collect();
            Ok(with_summary(
                json!({ "splitting_types": degrees }),
                global,
                || format!("{} lines processed", degrees.len()),
            ))
        }
        Command::JumpTest { input, lines } => {
            let flags = per_line(input, lines, is_jumping)?;
            Ok(with_summary(json!({ "jumping": flags }), global, || {
                format!(
                    "{} of {} lines are jumping",
                    count_true(&flags),
                    flags.len()
                )
            }))
        }
        Command::SuperJumpTest { input, lines } => {
            let flags = per_line(input, lines, is_super_jumping)?;
            Ok(with_summary(
                json!({ "super_jumping": flags }),
                global,
                || {
                    format!(
                        "{} of {} lines are super-jumping",
                        count_true(&flags),
                        flags.len()
                    )
                },
            ))
        }
        Command::Connection { forms, query } => {
            #[derive(Deserialize)]
            struct Query {
                n: usize,
                line: Vec<Vec<String>>,
                x: Vec<String>,
                lambda: Vec<Vec<String>>,
                x2: Vec<String>,
            }
            let a = load_arrangement(forms)?;
            let q: Query = read_json(query)?;
            let line = RowsRecord {
                n: q.n,
                rows: q.line,
            }
            .to_line()?;
            let lambda = RowsRecord {
                n: q.n,
                rows: q.lambda,
            }
            .to_line()?;
            let point = |v: &[String]| -> CliResult<ProjPoint> {
                ProjPoint::new(parse_vector(v, q.n + 1)?)
                    .map_err(|_| CliError::Input("zero point".into()))
            };
            let image = connection_map(&a, &line, &point(&q.x)?, &lambda, &point(&q.x2)?)?;
            let doc =
                serde_json::to_value(RowsRecord::from_matrix(image.rows())).expect("plain record");
            Ok(with_summary(doc, global, || {
                "transported line through x2".to_string()
            }))
        }
        Command::JumpingCurve { points } => {
            let (n, pts) = load_points(points)?;
            if n != 2 || pts.len() % 2 == 0 {
                return Err(Error::Precondition(format!(
                    "jumping curves are emitted for 2d + 1 lines of the plane, got {} in P^{n}",
                    pts.len()
                ))
                .into());
            }
            let eq = curve_equation_p2(&pts, (pts.len() - 1) / 2)?;
            let text = eq.render_default();
            Ok(with_summary(
                json!({ "equation": PolyRecord::from_poly(&eq, true) }),
                global,
                || text,
            ))
        }
        Command::MonoidBasis { flat, d } => {
            let z = read_json::<RowsRecord>(flat)?.to_flat()?;
            let basis = monoid_basis(&z, *d)?;
            let polys: Vec<Value> = basis.iter().map(|p| poly_json(&p.primitive())).collect();
            Ok(with_summary(
                json!({ "d": d, "basis": polys }),
                global,
                || format!("{} independent monoids of degree {d}", basis.len()),
            ))
        }
        Command::MonoidThrough { flat, points, d } => {
            let z = read_json::<RowsRecord>(flat)?.to_flat()?;
            let (_, pts) = load_points(points)?;
            let found = monoid_through_points(&z, *d, &pts)?;
            let present = found.is_some();
            Ok(with_summary(
                json!({ "present": present, "monoid": found.as_ref().map(poly_json) }),
                global,
                || match &found {
                    Some(p) => p.render_default(),
                    None => "no monoid through the points".to_string(),
                },
            ))
        }
        Command::Membership { points, flat } => {
            let (_, pts) = load_points(points)?;
            let z = read_json::<RowsRecord>(flat)?.to_flat()?;
            let member = monoidal_membership(&pts, &z)?;
            let kernel = monoidal_kernel_dim(&pts, &z)?;
            Ok(with_summary(
                json!({ "member": member, "kernel_dim": kernel }),
                global,
                || format!("member: {member}, kernel dimension {kernel}"),
            ))
        }
        Command::RncThrough { points } => {
            let (_, pts) = load_points(points)?;
            let c = rnc_through(&pts)?;
            let doc = curve_json(&c)?;
            Ok(with_summary(doc, global, || {
                format!("rational normal curve of degree {}", c.n())
            }))
        }
        Command::Schwarzenberger { n, m } => {
            let t = schwarzenberger_tensor(*n, *m)?;
            let doc = serde_json::to_value(TensorRecord::from_tensor(&t)).expect("plain record");
            Ok(with_summary(doc, global, || {
                format!("Schwarzenberger tensor for n = {n}, m = {m}")
            }))
        }
        Command::Iso { first, second } => {
            let v = intertwiner_solve(&load_tensor(first)?, &load_tensor(second)?)?;
            Ok(with_summary(verdict_json(&v), global, || {
                format!(
                    "solution space of dimension {}, isomorphic: {}",
                    v.solution_dim(),
                    v.is_iso()
                )
            }))
        }
        Command::Torelli { first, second } => {
            let out = torelli_classify(&load_arrangement(first)?, &load_arrangement(second)?)?;
            let (name, witness) = match &out.verdict {
                TorelliVerdict::SameArrangement => ("SameArrangement", Value::Null),
                TorelliVerdict::CommonVeroneseCurve(c) => ("CommonVeroneseCurve", curve_json(c)?),
                TorelliVerdict::NonIsomorphic => ("NonIsomorphic", Value::Null),
            };
            let doc =
                json!({ "verdict": name, "curve": witness, "solver": verdict_json(&out.solver) });
            Ok(with_summary(doc, global, || {
                format!(
                    "{name}; intertwiner space of dimension {}",
                    out.solver.solution_dim()
                )
            }))
        }
        Command::Adjoint { points, q } => {
            let (_, pts) = load_points(points)?;
            let q = parse_point_arg(q)?;
            let report = is_adjoint_sampled(&pts, &q, global.trials, global.seed)?;
            let witness = report
                .witness
                .as_ref()
                .map(|z| RowsRecord::from_matrix(z.rows()));
            let doc = json!({
                "adjoint": report.adjoint,
                "trials_run": report.trials_run,
                "seed": global.seed,
                "witness": witness,
            });
            Ok(with_summary(doc, global, || {
                if report.adjoint {
                    format!(
                        "every one of {} sampled flats admits a quadric",
                        report.trials_run
                    )
                } else {
                    "not adjoint: the witness flat admits no quadric".to_string()
                }
            }))
        }
        Command::Castelnuovo { points } => {
            let (n, pts) = load_points(points)?;
            let conditions = conditions_imposed(&pts)?;
            let curve = castelnuovo_rnc(&pts)?;
            let curve_doc = match &curve {
                Some(c) => curve_json(c)?,
                None => Value::Null,
            };
            Ok(with_summary(
                json!({ "conditions": conditions, "bound": 2 * n + 1, "curve": curve_doc }),
                global,
                || {
                    format!(
                        "{conditions} conditions on quadrics; curve found: {}",
                        curve.is_some()
                    )
                },
            ))
        }
    }
}
