use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qplane::classify::classify_cubic;
use qplane::field::{FieldExt, FieldRef, NumberField, Scalar};
use qplane::hesse::HesseCurve;
use qplane::io::{self, classification_json, order_report_json, verdict_json};
use qplane::order::{Caps, OrderEngine};
use qplane::parse::{parse_form, parse_qpoly, parse_scalar};
use qplane::point::ProjPoint;
use qplane::table1::{ec_two_torsion_row, omega_field, zeta6_field, RowType, Table1Row};
use qplane::verdict::verdict_many;
use qplane::{Error, Result};

#[derive(Parser)]
#[command(name = "qplane", version, about = "Point schemes, σ and verdicts for 3-dimensional quadratic algebras")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest power of σ tried when fitting linear extensions.
    #[arg(long, global = true, default_value_t = 60)]
    fit_cap: u64,
    /// Largest multiple tried when computing point orders.
    #[arg(long, global = true, default_value_t = 200)]
    torsion_cap: u64,
    /// Coefficient field for --cubic, --alpha, --lambda and points, as "name: minpoly".
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the point scheme of an algebra file, or a cubic given with --cubic.
    Classify {
        file: Option<PathBuf>,
        #[arg(long)]
        cubic: Option<String>,
    },
    /// ‖σ‖ and |σ| with witnesses.
    Order { files: Vec<PathBuf> },
    /// Full report for each algebra file.
    Verdict { files: Vec<PathBuf> },
    /// Build one of the standard algebras by type, with its parameters.
    Table1 {
        #[arg(long = "type")]
        row: String,
        /// α; "omega" and "zeta6" select Q(ω) and Q(ζ₆).
        #[arg(long)]
        alpha: Option<String>,
        /// "a, b, c", or "s" for the 2-torsion point on λ = 1.
        #[arg(long)]
        ec_point: Option<String>,
        /// Write the algebra file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Group law on the Hesse cubic x³ + y³ + z³ = λxyz.
    Ec {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum)]
        op: EcOp,
        /// Points separated by ';', each "a, b, c".
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 200)]
        cap: u64,
    },
    /// Hessian and second Hessian of a cubic.
    Hessian {
        #[arg(long)]
        cubic: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EcOp {
    Add,
    Order,
    Torsion3,
}

fn field(cli: &Cli) -> Result<FieldRef> {
    let Some(spec) = &cli.field else {
        return Ok(NumberField::rationals());
    };
    let (name, poly) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("--field expects \"name: minpoly\", got {spec:?}")))?;
    let name = name.trim();
    NumberField::new(name, parse_qpoly(poly, name)?)
}

fn parse_point(src: &str, k: &FieldRef) -> Result<ProjPoint> {
    let inner = src.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three coordinates, got {src:?}")));
    }
    let c: Vec<Scalar> = parts.iter().map(|p| parse_scalar(p, k)).collect::<Result<_>>()?;
    ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])
}

fn caps(cli: &Cli) -> Caps {
    Caps {
        fit: cli.fit_cap,
        torsion: cli.torsion_cap,
    }
}

fn emit(cli: &Cli, v: Value, text: String) {
    let out = if cli.json {
        serde_json::to_string_pretty(&v).expect("serializable")
    } else {
        text
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn run(cli: &Cli) -> Result<()> {
    caps(cli).validate()?;
    match &cli.cmd {
        Cmd::Classify { file, cubic } => {
            let g = match (file, cubic) {
                (Some(f), None) => io::load_algebra(f)?
                    .point_scheme()
                    .cubic()
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput("the point scheme is P2 (type P)".into()))?,
                (None, Some(c)) => parse_form(c, &field(cli)?)?,
                _ => return Err(Error::InvalidInput("give either a file or --cubic".into())),
            };
            let c = classify_cubic(&g)?;
            let comps: Vec<String> = c
                .components
                .iter()
                .map(|x| format!("  {} (multiplicity {})", x.equation, x.multiplicity))
                .collect();
            let text = format!("type {}\ncubic {}\ncomponents\n{}", c.type_label, c.cubic, comps.join("\n"));
            emit(cli, classification_json(&c), text);
        }
        Cmd::Order { files } => {
            let mut out = Vec::new();
            let mut text = Vec::new();
            for f in files {
                let a = io::load_algebra(f)?;
                let e = OrderEngine::new(&a, caps(cli))?;
                let n = e.sigma_norm()?;
                let o = e.sigma_order()?;
                let mut v = json!({
                    "file": f.display().to_string(),
                    "type": e.type_label(),
                    "sigma_norm": order_report_json(&n),
                    "sigma_order": order_report_json(&o),
                });
                if let Some(t) = &n.witness {
                    v["witness"] = io::matrix_json(t);
                }
                out.push(v);
                let w = n.witness.map(|t| format!(" witness {t}")).unwrap_or_default();
                text.push(format!("{}: ‖σ‖ = {} |σ| = {}{w}", f.display(), n.result, o.result));
            }
            emit(cli, single_or_list(out), text.join("\n"));
        }
        Cmd::Verdict { files } => {
            let algs: Vec<_> = files.iter().map(|f| io::load_algebra(f)).collect::<Result<_>>()?;
            let mut out = Vec::new();
            let mut text = Vec::new();
            for (f, r) in files.iter().zip(verdict_many(&algs, caps(cli))) {
                let r = r?;
                let mut v = verdict_json(&r);
                v["file"] = json!(f.display().to_string());
                out.push(v);
                text.push(format!(
                    "{}: type {}, ‖σ‖ = {}, |σ| = {}, fat point {}, Proj finite over center {}, A finite over center {}\n  {}",
                    f.display(),
                    r.type_label,
                    r.sigma_norm.result,
                    r.sigma_order.result,
                    r.has_fat_point,
                    r.proj_finite_over_center,
                    r.algebra_finite_over_center,
                    r.beilinson_parameterization
                ));
            }
            emit(cli, single_or_list(out), text.join("\n"));
        }
        Cmd::Table1 { row, alpha, ec_point, emit: path } => {
            let row: RowType = row.parse()?;
            let r = if ec_point.as_deref().map(str::trim) == Some("s") {
                if row != RowType::EC {
                    return Err(Error::InvalidParameter("--ec-point s belongs to the EC row".into()));
                }
                ec_two_torsion_row()
            } else {
                let (k, a) = match alpha.as_deref().map(str::trim) {
                    Some("omega") => {
                        let w = omega_field();
                        (w.clone(), Some(w.generator()))
                    }
                    Some("zeta6") => {
                        let z = zeta6_field();
                        (z.clone(), Some(z.generator()))
                    }
                    Some(s) => {
                        let k = field(cli)?;
                        (k.clone(), Some(parse_scalar(s, &k)?))
                    }
                    None => (field(cli)?, None),
                };
                let p = ec_point
                    .as_ref()
                    .map(|s| parse_point(s, &k).map(|p| p.coords().clone()))
                    .transpose()?;
                Table1Row::new(row, &k, a, p)?
            };
            let alg = r.algebra();
            if let Some(path) = path {
                std::fs::write(path, io::algebra_to_json(&alg) + "\n")
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            let rels = alg.relation_strings();
            let v = json!({
                "row": r.row().as_str(),
                "type": r.type_label(),
                "field": io::FieldSpec::of(alg.field()),
                "relations": rels,
                "point_scheme": io::point_scheme_json(&r.expected_point_scheme()),
            });
            let text = format!(
                "row {} (type {})\nrelations\n  {}\npoint scheme {}",
                r.row().as_str(),
                r.type_label(),
                rels.join("\n  "),
                r.expected_point_scheme()
            );
            emit(cli, v, text);
        }
        Cmd::Ec { lambda, op, points, cap } => {
            let k = field(cli)?;
            let curve = HesseCurve::new(parse_scalar(lambda, &k)?)?;
            let pts: Vec<_> = points
                .as_deref()
                .unwrap_or("")
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_point(s, &k).and_then(|p| curve.point(p)))
                .collect::<Result<_>>()?;
            match op {
                EcOp::Add => {
                    let [p, q] = pts.as_slice() else {
                        return Err(Error::InvalidInput("add needs exactly two points".into()));
                    };
                    let s = p.add(q)?;
                    emit(cli, json!({"sum": io::hesse_point_json(&s)}), s.to_string());
                }
                EcOp::Order => {
                    let [p] = pts.as_slice() else {
                        return Err(Error::InvalidInput("order needs exactly one point".into()));
                    };
                    let r = p.order(*cap)?;
                    emit(cli, json!({"order": r}), r.to_string());
                }
                EcOp::Torsion3 => {
                    let t = curve.three_torsion()?;
                    let k = t[0].point().field().clone();
                    let v: Vec<Value> = t.iter().map(io::hesse_point_json).collect();
                    let text: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                    emit(
                        cli,
                        json!({"points": v, "field": io::FieldSpec::of(&k)}),
                        text.join("\n"),
                    );
                }
            }
        }
        Cmd::Hessian { cubic } => {
            let g = parse_form(cubic, &field(cli)?)?;
            let h = g.hessian()?;
            let z = g.second_hessian_is_zero()?;
            emit(
                cli,
                json!({"hessian": h.to_string(), "second_hessian_zero": z}),
                format!("hessian {h}\nsecond hessian zero: {z}"),
            );
        }
    }
    Ok(())
}

fn single_or_list(mut v: Vec<Value>) -> Value {
    if v.len() == 1 {
        v.pop().unwrap()
    } else {
        Value::Array(v)
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            return fail("usage", first, 1);
        }
    };
    if let Cmd::Order { files } | Cmd::Verdict { files } = &cli.cmd {
        if files.is_empty() {
            return fail("usage", "at least one algebra file is required", 1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), &e.to_string(), if e.is_internal() { 2 } else { 1 }),
    }
}
