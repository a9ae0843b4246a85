//! The `telescope` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors (the message carries the
//! library's error name), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use telescopic::construct::{
    build, enumerate_collect, family, validate_minimal, ConstructionRequest, FamilySpec,
};
use telescopic::minimize::minimize_telescopic;
use telescopic::num::{parse_natural, parse_natural_list};
use telescopic::oracle::{self, apery_bf};
use telescopic::seqcore::gcd_profile;
use telescopic::telescopic::telescopic_witness;
use telescopic::transforms::{apply_program_traced, morph, TransformProgram, TransformStep};
use telescopic::verify::{verify, VerifyOptions};
use telescopic::{Error, Execution, IntPolynomial, Natural, Sequence, Telescopic};

#[derive(Debug, Parser)]
#[command(name = "telescope", version, about = "Telescopic sequences and free numerical semigroups")]
struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Most Apéry elements to print.
    #[arg(long, global = true, default_value_t = 10_000, value_name = "N")]
    apery_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gcd profile, telescopic test, minimality and semigroup invariants.
    Analyze {
        #[arg(value_parser = parse_sequence)]
        sequence: Sequence,
    },
    /// Reduce a telescopic sequence to a minimal one.
    Minimize {
        #[arg(value_parser = parse_sequence)]
        sequence: Sequence,
    },
    /// Build a telescopic sequence from (d, c, z) data.
    Construct {
        #[arg(long, value_parser = parse_nat)]
        d: Natural,
        /// c_2..c_k.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        c: NatList,
        /// z_2..z_k (z_1 is always d).
        #[arg(long, value_parser = parse_list)]
        z: NatList,
        /// Fail unless the result is minimal.
        #[arg(long)]
        require_minimal: bool,
    },
    /// Emit a member of a standard family.
    Family(FamilyArgs),
    /// Apply one step or a JSON program file.
    Transform(TransformArgs),
    /// Emit the program taking the first sequence to the second.
    Morph {
        #[arg(value_parser = parse_sequence)]
        from: Sequence,
        #[arg(value_parser = parse_sequence)]
        to: Sequence,
    },
    /// Cross-check closed forms against brute force.
    Verify {
        #[arg(value_parser = parse_sequence)]
        sequence: Sequence,
        /// Polynomial coefficients c0,c1,... for the sum identities.
        #[arg(long, value_parser = parse_poly, default_value = "0,1")]
        poly: IntPolynomial,
        /// Modulus for the Apéry sum identity (default g_1).
        #[arg(long, value_parser = parse_nat)]
        t: Option<Natural>,
    },
    /// List telescopic sequences with the given gcd and c-values.
    Enumerate {
        #[arg(long, value_parser = parse_nat)]
        d: Natural,
        #[arg(long, value_parser = parse_list)]
        c: NatList,
        #[arg(long, value_parser = parse_nat)]
        z_bound: Natural,
        #[arg(long)]
        minimal_only: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["geometric", "supersymmetric", "compound"])))]
struct FamilyArgs {
    /// a,b,k: g_i = a^(k-i) b^(i-1).
    #[arg(long, value_parser = parse_list, value_name = "A,B,K")]
    geometric: Option<NatList>,
    /// a_1,...,a_k pairwise coprime: g_i = (a_1...a_k)/a_i.
    #[arg(long, value_parser = parse_list, value_name = "LIST")]
    supersymmetric: Option<NatList>,
    /// a_1,...,a_(k-1);b_1,...,b_(k-1).
    #[arg(long, value_parser = parse_pair, value_name = "ALIST;BLIST")]
    compound: Option<(Vec<Natural>, Vec<Natural>)>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("step").required(true).args(["program", "rho", "tau", "pi"])))]
struct TransformArgs {
    #[arg(value_parser = parse_sequence)]
    sequence: Sequence,
    /// JSON array of steps.
    #[arg(long, value_name = "FILE")]
    program: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    rho: Option<usize>,
    #[arg(long, value_parser = parse_list, value_name = "G,M")]
    tau: Option<NatList>,
    #[arg(long, value_name = "N")]
    pi: Option<usize>,
}

fn parse_sequence(s: &str) -> Result<Sequence, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_nat(s: &str) -> Result<Natural, String> {
    parse_natural(s).map_err(|e| e.to_string())
}

/// A comma-separated list, kept as one clap value.
#[derive(Debug, Clone)]
struct NatList(Vec<Natural>);

fn parse_list(s: &str) -> Result<NatList, String> {
    parse_natural_list(s).map(NatList).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(Vec<Natural>, Vec<Natural>), String> {
    let (a, b) = s.split_once(';').ok_or("expected two lists separated by ';'")?;
    Ok((parse_list(a)?.0, parse_list(b)?.0))
}

fn parse_poly(s: &str) -> Result<IntPolynomial, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A command's outcome: JSON payload, text lines, and diagnostics.
struct Output {
    result: Value,
    text: Vec<String>,
    diagnostics: Vec<String>,
    exit: i32,
}

impl Output {
    fn new(result: Value, text: Vec<String>) -> Self {
        Output {
            result,
            text,
            diagnostics: Vec::new(),
            exit: 0,
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    operation: &'a str,
    input: Value,
    result: Value,
    diagnostics: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn list(v: &[Natural]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Runs the CLI on `args` (including the program name), writing to the given
/// streams, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let (operation, input) = describe(&cli.command);
    let result = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            if cli.json {
                let report = json!({
                    "operation": operation,
                    "input": input,
                    "error": { "name": e.name(), "message": e.to_string() },
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"));
            }
            let _ = writeln!(err, "error: {}: {e}", e.name());
            return 1;
        }
    };
    if cli.json {
        let report = Report {
            operation,
            input,
            result: result.result,
            diagnostics: result.diagnostics,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        for line in &result.text {
            let _ = writeln!(out, "{line}");
        }
        for d in &result.diagnostics {
            let _ = writeln!(err, "note: {d}");
        }
    }
    result.exit
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Analyze { sequence } => ("analyze", json!({ "sequence": sequence })),
        Command::Minimize { sequence } => ("minimize", json!({ "sequence": sequence })),
        Command::Construct {
            d,
            c,
            z,
            require_minimal,
        } => (
            "construct",
            json!({
                "d": d.to_string(),
                "c": c.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "z": z.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "require_minimal": require_minimal,
            }),
        ),
        Command::Family(f) => ("family", family_spec(f).map(|s| to_value(&s)).unwrap_or(Value::Null)),
        Command::Transform(t) => (
            "transform",
            json!({
                "sequence": t.sequence,
                "program": t.program.as_ref().map(|p| p.display().to_string()),
                "rho": t.rho,
                "tau": t.tau.as_ref().map(|v| list(&v.0)),
                "pi": t.pi,
            }),
        ),
        Command::Morph { from, to } => ("morph", json!({ "from": from, "to": to })),
        Command::Verify { sequence, poly, t } => (
            "verify",
            json!({
                "sequence": sequence,
                "poly": poly.to_string(),
                "t": t.as_ref().map(ToString::to_string),
            }),
        ),
        Command::Enumerate {
            d,
            c,
            z_bound,
            minimal_only,
            limit,
        } => (
            "enumerate",
            json!({
                "d": d.to_string(),
                "c": c.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "z_bound": z_bound.to_string(),
                "minimal_only": minimal_only,
                "limit": limit,
            }),
        ),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Analyze { sequence } => analyze(sequence, cli.apery_cap),
        Command::Minimize { sequence } => minimize(sequence),
        Command::Construct {
            d,
            c,
            z,
            require_minimal,
        } => construct(
            ConstructionRequest::new(d.clone(), c.0.clone(), z.0.clone()),
            *require_minimal,
        ),
        Command::Family(f) => {
            let g = family(&family_spec(f)?)?;
            Ok(Output::new(json!({ "sequence": g }), vec![g.to_string()]))
        }
        Command::Transform(t) => transform(t),
        Command::Morph { from, to } => {
            let p = morph(from, to)?;
            let array = serde_json::to_string(&p).expect("json");
            Ok(Output::new(
                json!({ "program": p, "notation": p.to_string() }),
                vec![array],
            ))
        }
        Command::Verify { sequence, poly, t } => {
            let opts = VerifyOptions {
                poly: poly.clone(),
                t: t.clone(),
                ..VerifyOptions::default()
            };
            let checks = verify(sequence, &opts)?;
            let text = checks
                .iter()
                .map(|c| {
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    format!("{verdict} {}: {} | {}", c.name, c.closed, c.oracle)
                })
                .collect();
            let failed = checks.iter().filter(|c| !c.pass).count();
            let mut o = Output::new(json!({ "checks": checks, "failed": failed }), text);
            if failed > 0 {
                o.diagnostics.push(format!("{failed} check(s) failed"));
                o.exit = 1;
            }
            Ok(o)
        }
        Command::Enumerate {
            d,
            c,
            z_bound,
            minimal_only,
            limit,
        } => {
            let found = enumerate_collect(d, &c.0, z_bound, *minimal_only, *limit, Execution::default());
            let text = found.iter().map(ToString::to_string).collect();
            Ok(Output::new(
                json!({ "count": found.len(), "sequences": found }),
                text,
            ))
        }
    }
}

fn family_spec(f: &FamilyArgs) -> Result<FamilySpec, Error> {
    if let Some(NatList(v)) = &f.geometric {
        let [a, b, k] = v.as_slice() else {
            return Err(Error::InvalidFamilyParameters {
                reason: format!("--geometric takes a,b,k; got {} values", v.len()),
            });
        };
        return Ok(FamilySpec::Geometric {
            a: a.clone(),
            b: b.clone(),
            k: k.clone(),
        });
    }
    if let Some(NatList(v)) = &f.supersymmetric {
        return Ok(FamilySpec::Supersymmetric(v.clone()));
    }
    let (a, b) = f.compound.clone().expect("clap requires one family");
    Ok(FamilySpec::Compound { a, b })
}

fn analyze(g: &Sequence, cap: usize) -> Result<Output, Error> {
    let profile = gcd_profile(g)?;
    let witness = telescopic_witness(g)?;
    let minimal = oracle::is_minimal_bf(g)?;
    let generators = oracle::minimal_generators(g)?;
    let mut text = vec![
        format!("sequence: {g}"),
        format!("gcd: {}", profile.gcd()),
        format!("prefix gcds: {}", list(profile.prefix_gcds())),
        format!("c: {}", list(profile.c_values())),
    ];
    let mut result = json!({
        "sequence": g,
        "gcd": profile.gcd().to_string(),
        "prefix_gcds": to_value(&Sequence::new(profile.prefix_gcds().to_vec())?),
        "c": profile.c_values().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "telescopic": witness.is_none(),
        "witness": witness,
        "z_decomposition": Value::Null,
        "minimal": minimal,
        "minimal_generators": generators,
        "semigroup": Value::Null,
    });
    let mut diagnostics = Vec::new();
    let tele = match witness {
        Some(j) => {
            text.push(format!("telescopic: false (witness j={j})"));
            None
        }
        None => {
            let t = Telescopic::new(g)?;
            let z = t.decomposition();
            text.push("telescopic: true".into());
            text.push(format!("z: {}", list(&z.z)));
            result["z_decomposition"] = to_value(&z);
            Some(t)
        }
    };
    text.push(format!("minimal: {minimal}"));
    text.push(format!("minimal generators: {generators}"));

    if profile.gcd() == &Natural::from(1u32) {
        let summary = oracle::gaps(g)?;
        let (apery, source) = match tele.as_ref().map(|t| t.apery(telescopic::telescopic::DEFAULT_APERY_CAP, Execution::default())) {
            Some(Ok(a)) => (a, "closed"),
            Some(Err(Error::SizeCapExceeded { .. })) | None => (apery_bf(g, g.head())?, "oracle"),
            Some(Err(e)) => return Err(e),
        };
        let total = apery.len();
        let truncated = total > cap;
        let shown = &apery[..total.min(cap)];
        if truncated {
            diagnostics.push(format!("Apéry set truncated to {cap} of {total} elements"));
        }
        text.push(format!("frobenius: {}", summary.frobenius));
        text.push(format!("genus: {}", summary.genus));
        text.push(format!("embedding dimension: {}", summary.embedding_dimension));
        let marker = if truncated {
            format!(",... ({total} total, truncated)")
        } else {
            String::new()
        };
        text.push(format!("apery ({source}, mod {}): {}{marker}", g.head(), list(shown)));
        result["semigroup"] = json!({
            "frobenius": summary.frobenius.to_string(),
            "genus": summary.genus.to_string(),
            "embedding_dimension": summary.embedding_dimension,
            "apery": {
                "modulus": g.head().to_string(),
                "source": source,
                "values": shown.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "total": total,
                "truncated": truncated,
            },
        });
    } else {
        diagnostics.push(format!(
            "gcd is {}; the complement is infinite, so no Frobenius number, genus or Apéry set",
            profile.gcd()
        ));
    }
    Ok(Output {
        result,
        text,
        diagnostics,
        exit: 0,
    })
}

fn minimize(g: &Sequence) -> Result<Output, Error> {
    let (out, trace) = minimize_telescopic(g)?;
    let mut text = vec![out.to_string()];
    for (i, s) in trace.steps.iter().enumerate() {
        let w = &s.witness;
        let which = match w.m {
            Some(m) => format!("case 2 (n={}, m={m})", w.n),
            None => format!("case 1 (n={})", w.n),
        };
        text.push(format!("step {}: {which}: {} -> {}", i + 1, s.before, s.after));
    }
    Ok(Output::new(
        json!({ "sequence": out, "steps": trace.len(), "trace": trace }),
        text,
    ))
}

fn construct(req: ConstructionRequest, require_minimal: bool) -> Result<Output, Error> {
    let g = build(&req)?;
    let violation = validate_minimal(&req)?;
    if require_minimal {
        if let Some(v) = violation {
            return Err(Error::PreconditionViolated {
                reason: format!("the built sequence {g} is not minimal ({v})"),
            });
        }
    }
    let mut text = vec![g.to_string()];
    text.push(match violation {
        None => "minimal: true".into(),
        Some(v) => format!("minimal: false ({v})"),
    });
    Ok(Output::new(
        json!({ "sequence": g, "minimal": violation.is_none(), "violation": violation }),
        text,
    ))
}

fn transform(t: &TransformArgs) -> Result<Output, Error> {
    let program = if let Some(path) = &t.program {
        let body = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            input: path.display().to_string(),
            reason: e.to_string(),
        })?;
        serde_json::from_str::<TransformProgram>(&body).map_err(|e| Error::Parse {
            input: path.display().to_string(),
            reason: e.to_string(),
        })?
    } else if let Some(n) = t.rho {
        TransformProgram::new(vec![TransformStep::Rho { n }])
    } else if let Some(n) = t.pi {
        TransformProgram::new(vec![TransformStep::Pi { n }])
    } else {
        let v = &t.tau.as_ref().expect("clap requires one step").0;
        let [g, m] = v.as_slice() else {
            return Err(Error::InvalidParameters {
                reason: format!("--tau takes G,M; got {} values", v.len()),
            });
        };
        TransformProgram::new(vec![TransformStep::Tau {
            g: g.clone(),
            m: m.clone(),
        }])
    };
    let trace = apply_program_traced(&t.sequence, &program)?;
    let last = trace.last().expect("trace starts with the input").clone();
    let mut text = vec![last.to_string()];
    if program.len() > 1 {
        for (i, (step, s)) in program.steps.iter().zip(&trace[1..]).enumerate() {
            text.push(format!("step {}: {step} -> {s}", i + 1));
        }
    }
    Ok(Output::new(
        json!({ "sequence": last, "program": program, "trace": trace }),
        text,
    ))
}
