//! Command-line front end. Every command produces one JSON document on
//! standard output; failures are JSON too.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::algebra::MultiPoly;
use crate::divisor::{normalize, MultiplicityVector, PointDivisor, ProjPoint};
use crate::error::Error;
use crate::exponents::{classify, compute_exponents};
use crate::leading_term::{leading_coefficient_report, sigma, sigma_closed_form, two_block_closed_form};
use crate::matrix_m::{degeneracy_witness, degeneration_scan, det_d, is_degenerate, reduce_d1};
use crate::schur::schur_identity_report;
use crate::terao::{check_classes, check_prop74, terao_status, LineArrangement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "divexp", version, about = "Exponents of divisors on the projective line")]
struct Cli {
    /// Read the request as JSON from standard input.
    #[arg(long)]
    json_in: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exponents and a certified basis of the derivation module.
    Exponents(DivisorFlags),
    /// Closed-form case and predicted exponents of a multiplicity vector.
    Classify(MultFlag),
    /// The symbolic determinant d.
    Det(MultFlag),
    /// d with the forced factors divided out.
    D1(MultFlag),
    /// Whether a derivation of degree ñ/2 - 1 exists.
    Degenerate(DivisorFlags),
    /// Zeros of d1 on a grid of rational values.
    Scan(ScanFlags),
    /// Signed sum over admissible partitions.
    Sigma(SigmaFlags),
    /// Leading term of d against Laplace development.
    LeadingCheck(MultFlag),
    /// d1 against the rectangular Schur polynomial.
    SchurCheck(MultFlag),
    /// Sufficient conditions for Terao's conjecture.
    Terao(TeraoFlags),
}

#[derive(Debug, Args)]
struct MultFlag {
    /// Comma-separated multiplicities.
    #[arg(long, value_delimiter = ',', required = true)]
    mult: Vec<u32>,
}

#[derive(Debug, Args)]
struct DivisorFlags {
    /// JSON file `{points, mult}`.
    #[arg(long, conflicts_with_all = ["mult", "points"])]
    divisor: Option<std::path::PathBuf>,
    #[arg(long, value_delimiter = ',', requires = "points")]
    mult: Option<Vec<u32>>,
    /// Comma-separated points, `inf` for infinity.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "mult")]
    points: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct ScanFlags {
    #[arg(long, value_delimiter = ',', required = true)]
    mult: Vec<u32>,
    /// Grid values, either a list or an integer range `a..b`.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    grid: String,
}

#[derive(Debug, Args)]
struct SigmaFlags {
    #[arg(long)]
    mr: u32,
    #[arg(long)]
    u: u32,
}

#[derive(Debug, Args)]
struct TeraoFlags {
    /// JSON file `{lines: [["a","b","c"], ...]}`.
    #[arg(long)]
    arrangement: std::path::PathBuf,
}

/// Wire form of a divisor.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorInput {
    pub points: Vec<String>,
    pub mult: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementInput {
    pub lines: Vec<Vec<String>>,
}

/// A validated request, reached from flags or from `--json-in`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Request {
    Exponents { divisor: DivisorInput },
    Classify { mult: Vec<u32> },
    Det { mult: Vec<u32> },
    D1 { mult: Vec<u32> },
    Degenerate { divisor: DivisorInput },
    Scan { mult: Vec<u32>, grid: Vec<String> },
    Sigma { mr: u32, u: u32 },
    LeadingCheck { mult: Vec<u32> },
    SchurCheck { mult: Vec<u32> },
    Terao { arrangement: ArrangementInput },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Schema(String),
    Io(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Schema(_) => EXIT_USAGE,
            Failure::Io(_) | Failure::Compute(_) => EXIT_FAILURE,
        }
    }

    fn to_json(&self) -> Value {
        let (code, message) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Schema(m) => ("schema", m.clone()),
            Failure::Io(m) => ("io", m.clone()),
            Failure::Compute(e) => (e.code(), e.to_string()),
        };
        json!({ "error": code, "message": message })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

fn parse_grid(text: &str) -> Result<Vec<String>, Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let parse = |s: &str| {
            s.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad grid bound `{s}`")))
        };
        let (lo, hi) = (parse(a)?, parse(b)?);
        return Ok((lo..=hi).map(|v| v.to_string()).collect());
    }
    Ok(text.split(',').map(|s| s.trim().to_string()).collect())
}

impl Command {
    fn into_request(self) -> Result<Request, Failure> {
        let divisor = |f: DivisorFlags| -> Result<DivisorInput, Failure> {
            match (f.divisor, f.mult, f.points) {
                (Some(path), None, None) => read_json(&path),
                (None, Some(mult), Some(points)) => Ok(DivisorInput { points, mult }),
                _ => Err(Failure::Usage("give --divisor or both --mult and --points".into())),
            }
        };
        Ok(match self {
            Command::Exponents(f) => Request::Exponents { divisor: divisor(f)? },
            Command::Classify(f) => Request::Classify { mult: f.mult },
            Command::Det(f) => Request::Det { mult: f.mult },
            Command::D1(f) => Request::D1 { mult: f.mult },
            Command::Degenerate(f) => Request::Degenerate { divisor: divisor(f)? },
            Command::Scan(f) => Request::Scan { mult: f.mult, grid: parse_grid(&f.grid)? },
            Command::Sigma(f) => Request::Sigma { mr: f.mr, u: f.u },
            Command::LeadingCheck(f) => Request::LeadingCheck { mult: f.mult },
            Command::SchurCheck(f) => Request::SchurCheck { mult: f.mult },
            Command::Terao(f) => Request::Terao { arrangement: read_json(&f.arrangement)? },
        })
    }
}

fn int_json(v: &num_bigint::BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::from(v.to_string()), Value::from)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_json(p: &MultiPoly) -> Value {
    let variables: Vec<String> = (0..p.nvars()).map(MultiPoly::var_name).collect();
    json!({ "variables": variables, "text": p.to_string(), "terms": p.to_repr() })
}

fn build_divisor(input: &DivisorInput) -> Result<PointDivisor, Failure> {
    let points = input.points.iter().map(|s| ProjPoint::parse(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(normalize(&points, &input.mult)?)
}

fn normalization_json(d: &PointDivisor) -> Value {
    json!({
        "mult": d.mult().entries(),
        "points": d.points().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "input_order": d.input_order(),
        "z": strings(d.z()),
        "mobius": strings(d.mobius()),
    })
}

fn mult(v: &[u32]) -> Result<MultiplicityVector, Failure> {
    Ok(MultiplicityVector::from_unsorted(v.to_vec())?)
}

fn execute(req: &Request) -> Result<Value, Failure> {
    Ok(match req {
        Request::Exponents { divisor } => {
            let d = build_divisor(divisor)?;
            let pair = compute_exponents(&d)?;
            let class = classify(d.mult())?;
            json!({
                "e1": pair.e1,
                "e2": pair.e2,
                "basis": [pair.basis.0, pair.basis.1],
                "case_tag": class.tag,
                "predicted": class.predicted,
                "normalization": normalization_json(&d),
            })
        }
        Request::Classify { mult: m } => {
            let m = mult(m)?;
            let c = classify(&m)?;
            json!({ "mult": m.entries(), "case_tag": c.tag, "predicted": c.predicted })
        }
        Request::Det { mult: m } => {
            let m = mult(m)?;
            json!({ "mult": m.entries(), "d": poly_json(&det_d(&m)?) })
        }
        Request::D1 { mult: m } => {
            let m = mult(m)?;
            json!({ "mult": m.entries(), "d1": poly_json(&reduce_d1(&m)?) })
        }
        Request::Degenerate { divisor } => {
            let d = build_divisor(divisor)?;
            let degenerate = is_degenerate(&d)?;
            let witness = if degenerate { degeneracy_witness(&d)? } else { None };
            json!({
                "degenerate": degenerate,
                "witness": witness,
                "normalization": normalization_json(&d),
            })
        }
        Request::Scan { mult: m, grid } => {
            let m = mult(m)?;
            let grid = grid.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            let scan = degeneration_scan(&m, &grid)?;
            let mut v = serde_json::to_value(&scan).expect("scan serializes");
            v["d1"] = poly_json(&scan.d1);
            v["mult"] = json!(m.entries());
            v
        }
        Request::Sigma { mr, u } => {
            let value = sigma(*mr, *u)?;
            let closed = sigma_closed_form(*mr, *u)?;
            // the two-block formula carries the sign (-1)^⌊m_last/2⌋ with m_last = 2
            let two_block = (*u == 2).then(|| int_json(&-two_block_closed_form(*mr, 2)));
            json!({
                "m_r": mr,
                "u": u,
                "value": int_json(&value),
                "closed_form": int_json(&closed),
                "two_block_closed_form": two_block,
                "agree": value == closed,
            })
        }
        Request::LeadingCheck { mult: m } => {
            let m = mult(m)?;
            let r = leading_coefficient_report(&m)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["mult"] = json!(m.entries());
            v
        }
        Request::SchurCheck { mult: m } => {
            let m = mult(m)?;
            let r = schur_identity_report(&m)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["mult"] = json!(m.entries());
            v
        }
        Request::Terao { arrangement } => {
            let a = LineArrangement::from_strings(&arrangement.lines)?;
            let status = terao_status(&a)?;
            let mut v = serde_json::to_value(&status).expect("status serializes");
            v["line_reports"] = serde_json::to_value(check_classes(&a)?).expect("serializes");
            v["prop74"] = serde_json::to_value(check_prop74(&a)?).expect("serializes");
            v
        }
    })
}

fn parse_request(args: &[String], stdin: &mut dyn Read) -> Result<Request, Failure> {
    let cli = Cli::try_parse_from(args).map_err(|e| Failure::Usage(e.to_string()))?;
    if cli.json_in {
        if cli.command.is_some() {
            return Err(Failure::Usage("--json-in takes no subcommand".into()));
        }
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| Failure::Io(e.to_string()))?;
        return serde_json::from_str(&text).map_err(|e| Failure::Schema(e.to_string()));
    }
    match cli.command {
        Some(c) => c.into_request(),
        None => Err(Failure::Usage("missing subcommand (or --json-in)".into())),
    }
}

/// Exit code and JSON text for one invocation.
pub fn run(args: &[String], stdin: &mut dyn Read) -> (i32, String) {
    // help and version are not failures
    if let Err(e) = Cli::try_parse_from(args) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            return (EXIT_OK, e.to_string());
        }
    }
    let outcome = parse_request(args, stdin).and_then(|req| execute(&req));
    match outcome {
        Ok(v) => (EXIT_OK, render(&v)),
        Err(f) => (f.exit_code(), render(&f.to_json())),
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    const SCHEMA: &str = include_str!("../../../schemas/cli.schema.json");

    fn call(args: &str) -> (i32, Value) {
        call_with(args, "")
    }

    fn call_with(args: &str, stdin: &str) -> (i32, Value) {
        let argv: Vec<String> = std::iter::once("divexp").chain(args.split_whitespace()).map(String::from).collect();
        let (code, out) = run(&argv, &mut stdin.as_bytes());
        (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args}: {e}: {out}")))
    }

    /// Violations of `#/<pointer>` in the shipped schema.
    fn schema_errors(pointer: &str, instance: &Value) -> Vec<String> {
        let mut schema: Value = serde_json::from_str(SCHEMA).unwrap();
        let obj = schema.as_object_mut().unwrap();
        obj.remove("$id");
        obj.insert("$ref".into(), Value::String(format!("#/{pointer}")));
        let validator = jsonschema::validator_for(&schema).unwrap();
        validator.iter_errors(instance).map(|e| e.to_string()).collect()
    }

    fn validate(pointer: &str, instance: &Value) {
        let errors = schema_errors(pointer, instance);
        assert!(errors.is_empty(), "{pointer}: {errors:?}\n{instance:#}");
    }

    fn polynomial_text(v: &Value, key: &str) -> String {
        v[key]["text"].as_str().unwrap().replace(' ', "")
    }

    #[test]
    fn schema_rejects_malformed() {
        assert!(!schema_errors("responses/sigma", &json!({"m_r": 2})).is_empty());
        assert!(!schema_errors("request", &json!({"command": "det", "mult": [0]})).is_empty());
        assert!(!schema_errors("error", &json!({"error": "nope", "message": ""})).is_empty());
    }

    #[test]
    fn exponents_example() {
        let (code, v) = call("exponents --mult 5,1,1,1 --points inf,0,1,2");
        assert_eq!(code, EXIT_OK);
        assert_eq!((v["e1"].as_u64(), v["e2"].as_u64()), (Some(3), Some(5)));
        validate("responses/exponents", &v);
    }

    #[test]
    fn sigma_example() {
        let (code, v) = call("sigma --mr 2 --u 3");
        assert_eq!(code, EXIT_OK);
        assert_eq!(v["value"], json!(-4));
        assert_eq!(v["agree"], json!(true));
        validate("responses/sigma", &v);
        let (_, v) = call("sigma --mr 2 --u 2");
        assert_eq!(v["two_block_closed_form"], json!(3));
    }

    #[test]
    fn d1_example() {
        let (code, v) = call("d1 --mult 3,2,2,1");
        assert_eq!(code, EXIT_OK);
        let text = polynomial_text(&v, "d1");
        assert!(text == "-2*z3+z4" || text == "2*z3-z4", "{text}");
        validate("responses/d1", &v);
    }

    #[test]
    fn every_command_matches_schema() {
        let dir = std::env::temp_dir().join(format!("divexp-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let divisor = dir.join("divisor.json");
        std::fs::write(&divisor, r#"{"points": ["0", "inf", "1", "-1"], "mult": [3, 3, 1, 1]}"#).unwrap();
        let arrangement = dir.join("arrangement.json");
        std::fs::write(&arrangement, r#"{"lines": [["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"]]}"#)
            .unwrap();
        let cases = [
            ("exponents", format!("exponents --divisor {}", divisor.display())),
            ("degenerate", format!("degenerate --divisor {}", divisor.display())),
            ("degenerate", "degenerate --mult 3,3,1,1 --points 0,inf,1,2".to_string()),
            ("classify", "classify --mult 4,2,1,1".to_string()),
            ("det", "det --mult 3,3,1,1".to_string()),
            ("d1", "d1 --mult 6,4,3,2,1".to_string()),
            ("scan", "scan --mult 3,3,1,1 --grid -3..3".to_string()),
            ("scan", "scan --mult 3,2,2,1 --grid -1,1/2,2".to_string()),
            ("sigma", "sigma --mr 3 --u 5".to_string()),
            ("leading-check", "leading-check --mult 2,2,2,2".to_string()),
            ("schur-check", "schur-check --mult 4,4,1,1,1,1".to_string()),
            ("terao", format!("terao --arrangement {}", arrangement.display())),
        ];
        for (name, args) in &cases {
            let (code, v) = call(args);
            assert_eq!(code, EXIT_OK, "{args}: {v}");
            validate(&format!("responses/{name}"), &v);
        }
        let (_, v) = call(&format!("degenerate --divisor {}", divisor.display()));
        assert_eq!(v["degenerate"], json!(true));
        let (_, v) = call("schur-check --mult 4,4,1,1,1,1");
        assert_eq!(v["match"], json!(true));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn json_in_requests() {
        let requests = [
            ("exponents", json!({"command": "exponents", "divisor": {"points": ["inf", "0", "1", "2"], "mult": [5, 1, 1, 1]}})),
            ("classify", json!({"command": "classify", "mult": [3, 3, 1, 1]})),
            ("scan", json!({"command": "scan", "mult": [3, 3, 1, 1], "grid": ["-1", "1", "2"]})),
            ("sigma", json!({"command": "sigma", "mr": 2, "u": 2})),
            ("terao", json!({"command": "terao", "arrangement": {"lines": [["1","0","0"],["0","1","0"],["1","-1","0"]]}})),
        ];
        for (name, req) in &requests {
            validate("request", req);
            let (code, v) = call_with("--json-in", &req.to_string());
            assert_eq!(code, EXIT_OK, "{req}: {v}");
            validate(&format!("responses/{name}"), &v);
        }
    }

    #[test]
    fn output_is_deterministic() {
        let argv: Vec<String> =
            ["divexp", "exponents", "--mult", "3,2,2,1", "--points", "0,inf,1,2"].map(String::from).to_vec();
        let first = run(&argv, &mut std::io::empty());
        let second = run(&argv, &mut std::io::empty());
        assert_eq!(first, second);
    }

    #[test]
    fn error_exit_codes() {
        for (args, stdin, code, kind) in [
            ("", "", EXIT_USAGE, "usage"),
            ("sigma --mr 2", "", EXIT_USAGE, "usage"),
            ("--json-in", r#"{"command": "sigma", "mr": 2}"#, EXIT_USAGE, "schema"),
            ("--json-in", r#"{"command": "classify", "mult": [2, 2], "extra": 1}"#, EXIT_USAGE, "schema"),
            ("sigma --mr 1 --u 3", "", EXIT_FAILURE, "invalid_input"),
            ("det --mult 3,2,1,1", "", EXIT_FAILURE, "odd_total"),
            ("exponents --mult 2,2,2 --points 0,1,1", "", EXIT_FAILURE, "duplicate_points"),
            ("terao --arrangement /nonexistent/arrangement.json", "", EXIT_FAILURE, "io"),
        ] {
            let (got, v) = call_with(args, stdin);
            assert_eq!(got, code, "{args} {stdin}: {v}");
            assert_eq!(v["error"], json!(kind), "{args} {stdin}: {v}");
            validate("error", &v);
        }
    }

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
